#pragma once

#include <vector>

#include "dissipchain/complex_matrix.hpp"

namespace dissipchain::linalg {

// Default relative tolerance deciding which singular directions count as
// kernel: ten orders of magnitude above double-precision noise at the 64x64
// problem sizes this library targets.
inline constexpr double kDefaultRankTol = 1e-9;

struct HermitianEigResult {
  std::vector<double> eigenvalues;  // real, ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

// Kronecker product: out[(i*b.rows+k),(j*b.cols+l)] = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations. Input may deviate from exact Hermiticity by at most
// 1e-8 * max(1, ||h||_F); anything worse throws NotHermitian. Throws
// NoConvergence if the off-diagonal mass has not dropped below
// 1e-14 * ||h||_F within 100 sweeps.
HermitianEigResult hermitian_eig(const ComplexMatrix& h);

// Hermitian square root of a positive semidefinite matrix. Eigenvalues in
// [-1e-8, 0) are clamped to zero; below that throws NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

// Orthonormal basis of {v : ||m v||_2 <= tol * ||m||_F * ||v||_2}, obtained
// from the eigenvectors of m†m with eigenvalue <= tol^2 * ||m||_F^2. Empty
// when the kernel is trivial. Rectangular m is accepted (kernel of the map
// C^cols -> C^rows).
std::vector<ComplexVector> kernel_basis(const ComplexMatrix& m,
                                        double tol = kDefaultRankTol);

// exp(m * t) by scaling and squaring: scale so the 1-norm is at most 0.5,
// run the Taylor series until the term norm falls below 1e-16, square back.
ComplexMatrix matexp(const ComplexMatrix& m, double t);

// exp(m * t) * v.
ComplexVector matexp_apply(const ComplexMatrix& m, const ComplexVector& v,
                           double t);

}  // namespace dissipchain::linalg
