#include "dissipchain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dissipchain/errors.hpp"

namespace dissipchain::linalg {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagTarget = 1e-14;  // relative to ||h||_F
constexpr double kHermitianDefectTol = 1e-8;
constexpr double kPsdFloor = -1e-8;
constexpr double kTaylorTol = 1e-16;

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  const int n = a.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One Jacobi rotation zeroing a(p,q). The 2x2 plane rotation diagonalizing
// the [[a_pp, a_pq], [a_qp, a_qq]] block is applied as a ← U†aU and
// accumulated into the eigenvector columns of v.
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const double app = std::real(a(p, p));
  const double aqq = std::real(a(q, q));
  const double tau = (app - aqq) / (2.0 * mag);
  const double t =
      (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex phase = apq / mag;
  const Complex sp = s * phase;
  const Complex spc = s * std::conj(phase);

  const int n = a.rows();
  for (int r = 0; r < n; ++r) {
    const Complex arp = a(r, p);
    const Complex arq = a(r, q);
    a(r, p) = c * arp + spc * arq;
    a(r, q) = -sp * arp + c * arq;
  }
  for (int col = 0; col < n; ++col) {
    const Complex apc = a(p, col);
    const Complex aqc = a(q, col);
    a(p, col) = c * apc + sp * aqc;
    a(q, col) = -spc * apc + c * aqc;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = std::real(a(p, p));
  a(q, q) = std::real(a(q, q));
  for (int r = 0; r < n; ++r) {
    const Complex vrp = v(r, p);
    const Complex vrq = v(r, q);
    v(r, p) = c * vrp + spc * vrq;
    v(r, q) = -sp * vrp + c * vrq;
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  }
  return out;
}

HermitianEigResult hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square() || h.rows() == 0) {
    throw DimensionMismatch("hermitian_eig needs a nonempty square matrix");
  }
  const double scale = std::max(1.0, h.frobenius_norm());
  if ((h - h.adjoint()).frobenius_norm() > kHermitianDefectTol * scale) {
    throw NotHermitian("matrix deviates from its adjoint beyond tolerance");
  }

  const int n = h.rows();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = kOffDiagTarget * a.frobenius_norm();

  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) {
    throw NoConvergence("Jacobi iteration hit the sweep limit");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](int lhs, int rhs) {
    return std::real(a(lhs, lhs)) < std::real(a(rhs, rhs));
  });

  HermitianEigResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    result.eigenvalues[k] = std::real(a(order[k], order[k]));
    for (int r = 0; r < n; ++r) result.eigenvectors(r, k) = v(r, order[k]);
  }
  return result;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const HermitianEigResult eig = hermitian_eig(h);
  if (eig.eigenvalues.front() < kPsdFloor) {
    throw NotPSD("minimum eigenvalue " + std::to_string(eig.eigenvalues.front()) +
                 " is below the PSD tolerance");
  }
  const int n = h.rows();
  ComplexMatrix scaled = eig.eigenvectors;
  for (int col = 0; col < n; ++col) {
    const double root = std::sqrt(std::max(eig.eigenvalues[col], 0.0));
    for (int row = 0; row < n; ++row) scaled(row, col) *= root;
  }
  return (scaled * eig.eigenvectors.adjoint()).hermitian_part();
}

std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw DimensionMismatch("kernel_basis needs a nonempty matrix");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("kernel_basis: tol must be positive");
  }
  const ComplexMatrix gram = m.adjoint() * m;
  const double mass = std::real(gram.trace());  // == ||m||_F^2
  const HermitianEigResult eig = hermitian_eig(gram);
  const double threshold = tol * std::sqrt(std::max(mass, 0.0));

  // The Gram eigenvalue only estimates the squared residual; with tol^2 near
  // the rounding floor of m†m the estimate can sit above the cutoff for a
  // vector the contract accepts, so membership is decided by the residual
  // ||m v|| itself.
  std::vector<ComplexVector> basis;
  for (int k = 0; k < gram.rows(); ++k) {
    ComplexVector vec(gram.rows());
    for (int r = 0; r < gram.rows(); ++r) vec[r] = eig.eigenvectors(r, k);
    if (two_norm(m * vec) <= threshold) basis.push_back(std::move(vec));
  }
  return basis;
}

ComplexMatrix matexp(const ComplexMatrix& m, double t) {
  if (!m.is_square() || m.rows() == 0) {
    throw DimensionMismatch("matexp needs a nonempty square matrix");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("matexp: time must be nonnegative");
  }
  const int n = m.rows();
  ComplexMatrix result = ComplexMatrix::identity(n);
  const double theta = m.one_norm() * t;
  if (theta == 0.0) return result;

  int squarings = 0;
  if (theta > 0.5) squarings = static_cast<int>(std::ceil(std::log2(theta / 0.5)));
  ComplexMatrix scaled = Complex(t / std::ldexp(1.0, squarings)) * m;

  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = term * scaled;
    term *= Complex(1.0 / k);
    result += term;
    if (term.one_norm() < kTaylorTol) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

ComplexVector matexp_apply(const ComplexMatrix& m, const ComplexVector& v,
                           double t) {
  if (m.cols() != static_cast<int>(v.size())) {
    throw DimensionMismatch("matexp_apply: vector length " +
                            std::to_string(v.size()) + " does not match " +
                            std::to_string(m.cols()) + " columns");
  }
  return matexp(m, t) * v;
}

}  // namespace dissipchain::linalg
