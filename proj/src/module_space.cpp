#include "gcsi/module_space.hpp"

#include <cmath>
#include <stdexcept>

namespace gcsi {

ModuleElement::ModuleElement(const ModuleSpace& space, ComplexMatrix value)
    : space_(space), value_(std::move(value)) {
  if (space_.n == 0 || space_.k == 0)
    throw std::invalid_argument("ModuleElement: degenerate space");
  if (value_.rows() != space_.n || value_.cols() != space_.k)
    throw std::invalid_argument("ModuleElement: value shape does not match space");
  if (!value_.all_finite())
    throw std::invalid_argument("ModuleElement: non-finite entries");
}

ComplexMatrix inner(const ModuleElement& x, const ModuleElement& y) {
  if (!(x.space() == y.space()))
    throw std::invalid_argument("inner: elements live in different spaces");
  return cross_gram(x.value(), y.value());
}

double elem_norm(const ModuleElement& x, const Tolerances& tol) {
  return op_norm(x.value(), tol);
}

ModuleElement apply_op(const ComplexMatrix& a, const ModuleElement& x) {
  if (!a.is_square() || a.rows() != x.space().n)
    throw std::invalid_argument("apply_op: operator shape does not match space");
  return ModuleElement(x.space(), a * x.value());
}

double cs_margin(const ModuleElement& x, const ModuleElement& y,
                 const Tolerances& tol) {
  return elem_norm(x, tol) * elem_norm(y, tol) -
         op_norm(inner(x, y), tol);
}

ModuleElement random_element(const ModuleSpace& space, Rng& rng) {
  return ModuleElement(space, rng.ginibre(space.n, space.k));
}

ModuleElement normalized(const ModuleElement& x, bool* was_zero,
                         const Tolerances& tol) {
  const double nrm = elem_norm(x, tol);
  if (was_zero) *was_zero = (nrm == 0.0);
  if (nrm == 0.0) return x;
  return ModuleElement(x.space(), (1.0 / nrm) * x.value());
}

ModuleElement basis_element(const ModuleSpace& space, std::size_t row,
                            std::size_t col) {
  if (row >= space.n || col >= space.k)
    throw std::out_of_range("basis_element: index outside space");
  ComplexMatrix v(space.n, space.k);
  v(row, col) = Complex{1.0, 0.0};
  return ModuleElement(space, v);
}

ModuleElement embed_vector(const ModuleSpace& space, const ComplexMatrix& v) {
  if (v.cols() != 1 || v.rows() != space.n)
    throw std::invalid_argument("embed_vector: expected an n x 1 vector");
  ComplexMatrix m(space.n, space.k);
  for (std::size_t i = 0; i < space.n; ++i) m(i, 0) = v(i, 0);
  return ModuleElement(space, m);
}

}  // namespace gcsi
