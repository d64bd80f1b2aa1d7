#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dissipchain {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix. The one carrier used for qubit operators,
// density matrices and superoperators alike; row-major storage means the flat
// data() vector is already the row-stacked vectorization of the matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::initializer_list<Complex> entries);
  ComplexMatrix(int rows, int cols, ComplexVector entries);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const Complex& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix hermitian_part() const;  // (a + a†)/2

  Complex trace() const;
  double frobenius_norm() const;
  double one_norm() const;  // max absolute column sum
  double max_abs() const;
  bool is_finite() const;

  const ComplexVector& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  ComplexVector data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v);

double inf_norm(const ComplexVector& v);
double two_norm(const ComplexVector& v);

}  // namespace dissipchain
