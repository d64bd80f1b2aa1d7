#include "dissipchain/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dissipchain/errors.hpp"
#include "dissipchain/linalg.hpp"

namespace dissipchain::dynamics {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kResidualTarget = 1e-13;  // refinement goal past the contract
constexpr double kHorizonCap = 1048576.0;  // 2^20
constexpr double kTraceTol = 1e-9;
constexpr double kHermitianTol = 1e-9;
constexpr double kEigenvalueFloor = -1e-7;
constexpr double kFamilyTol = 1e-8;

void require_density(const ComplexMatrix& rho, int dim) {
  if (!rho.is_square() || rho.rows() != dim) {
    throw DimensionMismatch("state dimension does not match the generator");
  }
  if (!rho.is_finite()) {
    throw InvalidState("state has non-finite entries");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > kTraceTol) {
    throw InvalidState("state trace differs from 1 beyond tolerance");
  }
  if ((rho - rho.adjoint()).frobenius_norm() > kHermitianTol) {
    throw InvalidState("state is not Hermitian within tolerance");
  }
  const auto eig = linalg::hermitian_eig(rho.hermitian_part());
  if (eig.eigenvalues.front() < kEigenvalueFloor) {
    throw InvalidState("state has eigenvalue " +
                       std::to_string(eig.eigenvalues.front()));
  }
}

// Projects accumulated rounding off the physical manifold: hermitize and
// rescale the trace back to one.
model::StateVector cleaned(const model::StateVector& v) {
  ComplexMatrix rho = model::devectorize(v).hermitian_part();
  const Complex trace = rho.trace();
  if (std::abs(trace) > 0.5) rho *= Complex(1.0) / trace;
  return model::vectorize(rho);
}

// Reads f from the relaxed state of an open three-site chain. The five other
// entries the one-parameter family fixes must agree with the (3,3) readout.
double fit_f(const ComplexMatrix& rho) {
  const double f = std::real(rho(3, 3));
  const struct {
    int row, col;
    double sign;
  } pattern[] = {{5, 5, 1.0}, {6, 6, 1.0}, {3, 5, -1.0}, {3, 6, 1.0}, {5, 6, -1.0}};
  for (const auto& entry : pattern) {
    const Complex value = rho(entry.row, entry.col);
    if (std::abs(std::real(value) - entry.sign * f) > kFamilyTol ||
        std::abs(std::imag(value)) > kFamilyTol) {
      throw NoConvergence("relaxed state is outside the single-parameter steady family");
    }
  }
  return f;
}

}  // namespace

Trajectory propagate(const model::Liouvillian& gen, const ComplexMatrix& rho0,
                     const std::vector<double>& times) {
  require_density(rho0, gen.spec.dimension());
  if (times.empty()) {
    throw std::invalid_argument("propagate: time grid is empty");
  }
  if (times.front() != 0.0) {
    throw std::invalid_argument("propagate: time grid must start at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("propagate: times must ascend strictly");
    }
  }

  Trajectory traj{times, {}, gen.spec};
  traj.states.reserve(times.size());
  traj.states.push_back(model::vectorize(rho0));
  if (times.size() == 1) return traj;

  const double dt = times[1] - times[0];
  bool uniform = true;
  for (std::size_t k = 1; k + 1 < times.size() && uniform; ++k) {
    uniform = std::abs(times[k + 1] - times[k] - dt) <= 1e-9 * dt;
  }

  if (uniform) {
    const ComplexMatrix step = linalg::matexp(gen.matrix, dt);
    for (std::size_t k = 1; k < times.size(); ++k) {
      traj.states.push_back(step * traj.states.back());
    }
  } else {
    for (std::size_t k = 1; k < times.size(); ++k) {
      traj.states.push_back(linalg::matexp_apply(gen.matrix, traj.states.back(),
                                                 times[k] - times[k - 1]));
    }
  }
  return traj;
}

SteadyStateReport steady_state_from(const model::Liouvillian& gen,
                                    const ComplexMatrix& rho0) {
  require_density(rho0, gen.spec.dimension());
  const KernelReport kernel = kernel_report(gen);
  const ComplexMatrix& m = gen.matrix;

  model::StateVector v = cleaned(model::vectorize(rho0));
  double residual = inf_norm(m * v);
  double elapsed = 0.0;
  ComplexMatrix step;
  bool have_step = false;

  // Each pass doubles the horizon: the step propagator starts as exp(M) and
  // squares once the elapsed horizon has caught up with it.
  while (residual > kResidualTol) {
    if (elapsed >= kHorizonCap) {
      throw NoConvergence("residual " + std::to_string(residual) +
                          " above threshold at horizon " +
                          std::to_string(elapsed));
    }
    if (!have_step) {
      step = linalg::matexp(m, 1.0);
      have_step = true;
    } else if (elapsed >= 2.0) {
      step = step * step;
    }
    v = cleaned(step * v);
    elapsed = elapsed == 0.0 ? 1.0 : elapsed * 2.0;
    residual = inf_norm(m * v);
  }

  // A residual at the detection threshold still leaves slow-mode remnants of
  // order residual/gap in the state; a few more doublings push it to the
  // rounding floor so derived quantities agree across the degenerate kernel.
  for (int extra = 0; extra < 8 && residual > kResidualTarget &&
                      elapsed < kHorizonCap;
       ++extra) {
    if (!have_step) {
      step = linalg::matexp(m, 1.0);
      have_step = true;
    } else if (elapsed >= 2.0) {
      step = step * step;
    }
    model::StateVector candidate = cleaned(step * v);
    const double candidate_residual = inf_norm(m * candidate);
    if (candidate_residual >= residual) break;
    v = std::move(candidate);
    residual = candidate_residual;
    elapsed = elapsed == 0.0 ? 1.0 : elapsed * 2.0;
  }

  ComplexMatrix rho_inf = model::devectorize(v);
  std::optional<double> f;
  if (gen.spec.n_sites == 3 && gen.spec.boundary == model::Boundary::Open) {
    f = fit_f(rho_inf);
  }
  return {kernel.dimension, std::move(rho_inf), residual, elapsed, f};
}

KernelReport kernel_report(const model::Liouvillian& gen) {
  auto basis = linalg::kernel_basis(gen.matrix, linalg::kDefaultRankTol);
  const int dimension = static_cast<int>(basis.size());
  return {dimension, std::move(basis)};
}

int commutant_dimension(const std::vector<ComplexMatrix>& links) {
  if (links.empty()) {
    throw std::invalid_argument("commutant_dimension: need at least one operator");
  }
  const int d = links.front().rows();
  for (const auto& l : links) {
    if (!l.is_square() || l.rows() != d) {
      throw DimensionMismatch("commutant_dimension: operators must share one square dimension");
    }
  }
  const int d2 = d * d;
  const ComplexMatrix ident = ComplexMatrix::identity(d);
  ComplexMatrix stacked(static_cast<int>(links.size()) * d2, d2);
  for (std::size_t k = 0; k < links.size(); ++k) {
    const ComplexMatrix block =
        linalg::kron(ident, links[k].transpose()) - linalg::kron(links[k], ident);
    for (int r = 0; r < d2; ++r)
      for (int c = 0; c < d2; ++c)
        stacked(static_cast<int>(k) * d2 + r, c) = block(r, c);
  }
  return static_cast<int>(linalg::kernel_basis(stacked, linalg::kDefaultRankTol).size());
}

}  // namespace dissipchain::dynamics
