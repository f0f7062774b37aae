#include "gcsi/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace gcsi {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = Complex{d[i], 0.0};
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  if (r == 0) throw std::invalid_argument("from_rows: empty matrix");
  const std::size_t c = rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::column(std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("column index");
  ComplexMatrix m(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, j);
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double ComplexMatrix::hermitian_defect() const {
  if (!is_square()) return frobenius_norm();
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(s);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!same_shape(a, b)) throw std::invalid_argument("matrix add: shape mismatch");
  ComplexMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m.entries()[i] = a.entries()[i] + b.entries()[i];
  return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!same_shape(a, b)) throw std::invalid_argument("matrix sub: shape mismatch");
  ComplexMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m.entries()[i] = a.entries()[i] - b.entries()[i];
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix mul: inner dimension mismatch");
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

ComplexMatrix operator*(Complex alpha, const ComplexMatrix& a) {
  ComplexMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m.entries()[i] = alpha * a.entries()[i];
  return m;
}

ComplexMatrix operator*(double alpha, const ComplexMatrix& a) {
  return Complex{alpha, 0.0} * a;
}

bool same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!same_shape(a, b)) throw std::invalid_argument("frobenius_distance: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!same_shape(a, b)) throw std::invalid_argument("frobenius_inner: shape mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    s += std::conj(a.entries()[i]) * b.entries()[i];
  return s;
}

}  // namespace gcsi
