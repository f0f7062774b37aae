#pragma once

#include <cstdint>
#include <cstddef>

#include "gcsi/complex_matrix.hpp"
#include "gcsi/linalg.hpp"
#include "gcsi/rng.hpp"

namespace gcsi {

/// The Hilbert module C^{n x k} over the matrix algebra M_k(C), with
/// inner product <x, y> = x^* y (conjugate-linear in the first slot).
struct ModuleSpace {
  std::size_t n = 1;
  std::size_t k = 1;

  friend bool operator==(const ModuleSpace&, const ModuleSpace&) = default;
};

class ModuleElement {
 public:
  ModuleElement() : value_(1, 1) {}
  ModuleElement(const ModuleSpace& space, ComplexMatrix value);

  const ModuleSpace& space() const { return space_; }
  const ComplexMatrix& value() const { return value_; }
  ComplexMatrix& value() { return value_; }

 private:
  ModuleSpace space_;
  ComplexMatrix value_;
};

/// <x, y> = x^* y in M_k(C). Throws on space mismatch.
ComplexMatrix inner(const ModuleElement& x, const ModuleElement& y);

/// Module norm ||x|| = sqrt(|| <x,x> ||) = sigma_max(x).
double elem_norm(const ModuleElement& x, const Tolerances& tol = {});

/// Left action of an n x n operator.
ModuleElement apply_op(const ComplexMatrix& a, const ModuleElement& x);

/// ||x|| ||y|| - ||<x,y>||, nonnegative up to rounding.
double cs_margin(const ModuleElement& x, const ModuleElement& y,
                 const Tolerances& tol = {});

/// Element with iid standard complex Gaussian entries.
ModuleElement random_element(const ModuleSpace& space, Rng& rng);

/// x / ||x||; sets *was_zero instead of dividing when ||x|| = 0.
ModuleElement normalized(const ModuleElement& x, bool* was_zero = nullptr,
                         const Tolerances& tol = {});

/// Single-entry basis element with 1 at (row, col).
ModuleElement basis_element(const ModuleSpace& space, std::size_t row,
                            std::size_t col);

/// Embeds an n-vector (n x 1 matrix) into column 0 of an n x k element.
ModuleElement embed_vector(const ModuleSpace& space, const ComplexMatrix& v);

}  // namespace gcsi
