#include "dissipchain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dissipchain/errors.hpp"
#include "dissipchain/linalg.hpp"
#include "dissipchain/model.hpp"

namespace dissipchain::entanglement {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kHermitianTol = 1e-9;
constexpr double kEigenvalueFloor = -1e-7;
constexpr double kSpectrumClamp = -1e-10;
// Positive rounding dust below this is zeroed before the square root, which
// would otherwise blow eps-level eigenvalue noise up to sqrt(eps) in the
// lambdas of rank-deficient spin-flip products.
constexpr double kSpectrumFloor = 1e-14;

const ComplexMatrix& spin_flip() {
  static const ComplexMatrix y2 =
      linalg::kron(model::sigma_y(), model::sigma_y());
  return y2;
}

SitePair normalized(SitePair pair) {
  if (pair.first > pair.second) std::swap(pair.first, pair.second);
  return pair;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, SitePair keep, int n) {
  if (n < 2) throw SiteOutOfRange("partial_trace needs at least two sites");
  const int dim = 1 << n;
  if (!rho.is_square() || rho.rows() != dim) {
    throw DimensionMismatch("partial_trace: state dimension " +
                            std::to_string(rho.rows()) + " does not match " +
                            std::to_string(n) + " sites");
  }
  const auto [a, b] = keep;
  if (a < 1 || a > n || b < 1 || b > n) {
    throw SiteOutOfRange("kept site outside 1.." + std::to_string(n));
  }
  if (a == b) throw SiteOutOfRange("kept sites must be distinct");

  // site s occupies bit n-s, so site 1 is the highest bit
  const int a_bit = n - a;
  const int b_bit = n - b;
  std::vector<int> traced_bits;
  for (int s = 1; s <= n; ++s) {
    if (s != a && s != b) traced_bits.push_back(n - s);
  }

  ComplexMatrix out(4, 4);
  const int patterns = 1 << traced_bits.size();
  for (int ia = 0; ia < 2; ++ia)
    for (int ib = 0; ib < 2; ++ib)
      for (int ja = 0; ja < 2; ++ja)
        for (int jb = 0; jb < 2; ++jb) {
          Complex sum = 0.0;
          for (int pat = 0; pat < patterns; ++pat) {
            int base = 0;
            for (std::size_t k = 0; k < traced_bits.size(); ++k) {
              if (pat >> k & 1) base |= 1 << traced_bits[k];
            }
            const int row = base | ia << a_bit | ib << b_bit;
            const int col = base | ja << a_bit | jb << b_bit;
            sum += rho(row, col);
          }
          out(ia * 2 + ib, ja * 2 + jb) = sum;
        }
  return out;
}

WoottersSpectrum wootters_spectrum(const ComplexMatrix& rho4) {
  if (!rho4.is_square() || rho4.rows() != 4) {
    throw InvalidState("concurrence is defined for 4x4 two-qubit states");
  }
  if (!rho4.is_finite()) {
    throw InvalidState("two-qubit state has non-finite entries");
  }
  if (std::abs(rho4.trace() - Complex(1.0)) > kTraceTol) {
    throw InvalidState("two-qubit state trace differs from 1");
  }
  if ((rho4 - rho4.adjoint()).frobenius_norm() > kHermitianTol) {
    throw InvalidState("two-qubit state is not Hermitian within tolerance");
  }

  const ComplexMatrix rho = rho4.hermitian_part();
  const auto eig = linalg::hermitian_eig(rho);
  if (eig.eigenvalues.front() < kEigenvalueFloor) {
    throw InvalidState("two-qubit state has eigenvalue " +
                       std::to_string(eig.eigenvalues.front()));
  }

  // sqrt(rho) from the spectral form, tiny negative weights clipped
  ComplexMatrix scaled = eig.eigenvectors;
  for (int col = 0; col < 4; ++col) {
    const double root = std::sqrt(std::max(eig.eigenvalues[col], 0.0));
    for (int row = 0; row < 4; ++row) scaled(row, col) *= root;
  }
  const ComplexMatrix root = scaled * eig.eigenvectors.adjoint();

  const ComplexMatrix& flip = spin_flip();
  const ComplexMatrix rho_tilde = flip * rho.conjugate() * flip;
  const ComplexMatrix core = (root * rho_tilde * root).hermitian_part();
  const auto mu = linalg::hermitian_eig(core).eigenvalues;  // ascending

  const double floor = kSpectrumFloor * std::max(1.0, core.frobenius_norm());
  WoottersSpectrum spectrum{};
  for (int i = 0; i < 4; ++i) {
    const double value = mu[3 - i];
    if (value < kSpectrumClamp) {
      throw NotPSD("spin-flip spectrum has eigenvalue " + std::to_string(value));
    }
    spectrum.lambdas[i] = value < floor ? 0.0 : std::sqrt(value);
  }
  return spectrum;
}

double concurrence(const ComplexMatrix& rho4) {
  const WoottersSpectrum s = wootters_spectrum(rho4);
  const double c = s.lambdas[0] - s.lambdas[1] - s.lambdas[2] - s.lambdas[3];
  return std::clamp(c, 0.0, 1.0);
}

ConcurrenceSeries concurrence_series(const dynamics::Trajectory& traj,
                                     std::vector<SitePair> pairs) {
  const int n = traj.spec.n_sites;
  for (auto& pair : pairs) {
    pair = normalized(pair);
    if (pair.first < 1 || pair.second > n || pair.first == pair.second) {
      throw SiteOutOfRange("pair (" + std::to_string(pair.first) + "," +
                           std::to_string(pair.second) + ") outside 1.." +
                           std::to_string(n));
    }
  }

  ConcurrenceSeries series{traj.times, std::move(pairs), {}};
  series.values.reserve(traj.states.size());
  for (const auto& state : traj.states) {
    const ComplexMatrix rho = model::devectorize(state);
    std::vector<double> row;
    row.reserve(series.pairs.size());
    for (const auto& pair : series.pairs) {
      row.push_back(concurrence(partial_trace(rho, pair, n)));
    }
    series.values.push_back(std::move(row));
  }
  return series;
}

BirthClassification sudden_birth(const ConcurrenceSeries& series, SitePair pair,
                                 double tol, int window) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("sudden_birth: tol must be positive");
  }
  if (window < 1) {
    throw GridTooCoarse("sudden_birth: window must be at least 1");
  }
  const auto& times = series.times;
  if (static_cast<int>(times.size()) < 2 * window) {
    throw GridTooCoarse("sudden_birth: need at least 2*window grid points");
  }
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) {
    throw GridTooCoarse("sudden_birth: grid must ascend");
  }
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    if (std::abs(times[k + 1] - times[k] - dt) > 1e-9 * dt) {
      throw GridTooCoarse("sudden_birth: grid must be uniform");
    }
  }

  const SitePair wanted = normalized(pair);
  int pair_index = -1;
  for (std::size_t p = 0; p < series.pairs.size(); ++p) {
    if (series.pairs[p] == wanted) {
      pair_index = static_cast<int>(p);
      break;
    }
  }
  if (pair_index < 0) {
    throw UnknownPair("pair (" + std::to_string(wanted.first) + "," +
                      std::to_string(wanted.second) + ") is not in the series");
  }

  bool any_above = false;
  std::size_t first_above = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (series.values[k][pair_index] > tol) {
      any_above = true;
      first_above = k;
      break;
    }
  }
  if (!any_above) return {BirthKind::Never, std::nullopt};

  for (int k = 1; k <= window; ++k) {
    if (series.values[k][pair_index] > tol) {
      return {BirthKind::Immediate, std::nullopt};
    }
  }
  return {BirthKind::Sudden, times[first_above]};
}

}  // namespace dissipchain::entanglement
