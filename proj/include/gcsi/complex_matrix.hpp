#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gcsi {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. The universal carrier for operators
/// and module elements.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<double>& d);
  static ComplexMatrix diagonal(const std::vector<Complex>& d);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix column(std::size_t j) const;  // as rows x 1

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  /// ||A - A^*||_F, zero for Hermitian inputs.
  double hermitian_defect() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex alpha, const ComplexMatrix& a);
ComplexMatrix operator*(double alpha, const ComplexMatrix& a);

bool same_shape(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Frobenius inner product sum_ij conj(a_ij) b_ij.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gcsi
