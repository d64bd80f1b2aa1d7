#include "dissipchain/model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "dissipchain/errors.hpp"
#include "dissipchain/linalg.hpp"

namespace dissipchain::model {

const ComplexMatrix& sigma_minus() {
  static const ComplexMatrix op(2, 2, {0.0, 0.0, 1.0, 0.0});
  return op;
}

const ComplexMatrix& sigma_plus() {
  static const ComplexMatrix op(2, 2, {0.0, 1.0, 0.0, 0.0});
  return op;
}

const ComplexMatrix& sigma_y() {
  static const ComplexMatrix op(2, 2,
                                {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
  return op;
}

const ComplexMatrix& sigma_z() {
  static const ComplexMatrix op(2, 2, {1.0, 0.0, 0.0, -1.0});
  return op;
}

const ComplexMatrix& identity2() {
  static const ComplexMatrix op = ComplexMatrix::identity(2);
  return op;
}

ChainSpec::ChainSpec(int n, Boundary b, std::vector<double> rates)
    : n_sites(n), boundary(b), link_rates(std::move(rates)) {
  if (n_sites < 2) {
    throw std::invalid_argument("chain needs at least two sites");
  }
  if (n_sites > 16) {
    throw std::invalid_argument("chain length beyond 16 sites is not supported");
  }
  const int expected = boundary == Boundary::Open ? n_sites - 1 : n_sites;
  if (link_count() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) +
                                " link rates, got " +
                                std::to_string(link_count()));
  }
  bool any_positive = false;
  for (double r : link_rates) {
    if (!std::isfinite(r) || r < 0.0) {
      throw std::invalid_argument("link rates must be finite and nonnegative");
    }
    any_positive = any_positive || r > 0.0;
  }
  if (!any_positive) {
    throw std::invalid_argument("at least one link rate must be positive");
  }
}

ComplexMatrix lowering_operator(int site, int n) {
  if (n < 1) throw SiteOutOfRange("chain length must be positive");
  if (site < 1 || site > n) {
    throw SiteOutOfRange("site " + std::to_string(site) + " outside 1.." +
                         std::to_string(n));
  }
  ComplexMatrix op = ComplexMatrix::identity(1);
  for (int s = 1; s <= n; ++s) {
    op = linalg::kron(op, s == site ? sigma_minus() : identity2());
  }
  return op;
}

ComplexMatrix link_operator(int link, const ChainSpec& spec) {
  if (link < 1 || link > spec.link_count()) {
    throw LinkOutOfRange("link " + std::to_string(link) + " outside 1.." +
                         std::to_string(spec.link_count()));
  }
  const int first = link;
  const int second = link % spec.n_sites + 1;  // wraps only for the closing link
  return lowering_operator(first, spec.n_sites) +
         lowering_operator(second, spec.n_sites);
}

Liouvillian liouvillian(const ChainSpec& spec) {
  const int dim = spec.dimension();
  const ComplexMatrix ident = ComplexMatrix::identity(dim);
  ComplexMatrix m(dim * dim, dim * dim);
  for (int link = 1; link <= spec.link_count(); ++link) {
    const double rate = spec.link_rates[link - 1];
    if (rate == 0.0) continue;
    const ComplexMatrix l = link_operator(link, spec);
    const ComplexMatrix ll = l.adjoint() * l;
    m += Complex(2.0 * rate) * linalg::kron(l, l.conjugate());
    m -= Complex(rate) * linalg::kron(ll, ident);
    m -= Complex(rate) * linalg::kron(ident, ll.transpose());
  }
  return {std::move(m), spec};
}

StateVector vectorize(const ComplexMatrix& rho) {
  if (!rho.is_square()) {
    throw DimensionMismatch("vectorize needs a square matrix");
  }
  return rho.data();  // row-major storage is already row-stacked
}

ComplexMatrix devectorize(const StateVector& v) {
  const int d = static_cast<int>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d < 1 || static_cast<std::size_t>(d) * d != v.size()) {
    throw DimensionMismatch("vector length " + std::to_string(v.size()) +
                            " is not a perfect square");
  }
  return ComplexMatrix(d, d, v);
}

double total_excitation(const ComplexMatrix& rho) {
  if (!rho.is_square()) {
    throw DimensionMismatch("total_excitation needs a square matrix");
  }
  const int d = rho.rows();
  int n = 0;
  while ((1 << n) < d) ++n;
  if (d < 2 || (1 << n) != d) {
    throw DimensionMismatch("dimension " + std::to_string(d) +
                            " is not a power of two");
  }
  double total = 0.0;
  for (int b = 0; b < d; ++b) {
    // with |e> mapped to bit 0, a basis index with fewer set bits holds more
    // excitations
    const int excitations = n - std::popcount(static_cast<unsigned>(b));
    total += std::real(rho(b, b)) * excitations;
  }
  return total;
}

int basis_index(const std::string& label) {
  if (label.empty() || label.size() > 16) {
    throw UnknownLabel("state label must have 1..16 characters");
  }
  int index = 0;
  for (char ch : label) {
    if (ch != 'e' && ch != 'g') {
      throw UnknownLabel("state label must use only 'e' and 'g': " + label);
    }
    index = index * 2 + (ch == 'g' ? 1 : 0);
  }
  return index;
}

ComplexMatrix basis_state_density(const std::string& label) {
  const int index = basis_index(label);
  const int dim = 1 << label.size();
  ComplexMatrix rho(dim, dim);
  rho(index, index) = 1.0;
  return rho;
}

}  // namespace dissipchain::model
