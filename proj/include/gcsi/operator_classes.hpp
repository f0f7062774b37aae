#pragma once

#include <cstddef>
#include <optional>

#include "gcsi/complex_matrix.hpp"
#include "gcsi/engine.hpp"
#include "gcsi/linalg.hpp"
#include "gcsi/module_space.hpp"

namespace gcsi {

/// Class membership with a scale-stable defect. Witness is an element (a
/// k = 1 column for the spectral classes) present whenever holds is false.
struct ClassVerdict {
  bool holds = false;
  double defect = 0.0;
  std::optional<ModuleElement> witness;
};

/// AA^* = A^*A, defect = ||AA^* - A^*A|| / max(1, ||A||^2).
ClassVerdict is_normal(const ComplexMatrix& a, const Tolerances& tol = {});

/// |A|^2 <= |A^*|^2, defect from the most negative eigenvalue of
/// AA^* - A^*A over max(1, ||A||^2).
ClassVerdict is_cohyponormal(const ComplexMatrix& a, const Tolerances& tol = {});

/// |A^*| <= |A|, defect from the most negative eigenvalue of |A| - |A^*|
/// over max(1, ||A||).
ClassVerdict is_semi_hyponormal(const ComplexMatrix& a, const Tolerances& tol = {});

/// sup over unit x of ||Ax||^2 - ||A^2 x|| ||x||, clamped at zero and
/// normalized by max(1, ||A||^2). holds means paranormal.
ClassVerdict paranormal_defect(const ComplexMatrix& a, const ModuleSpace& space,
                               const SearchConfig& cfg = {},
                               const Tolerances& tol = {});

/// rank(A) == rank(A^2), i.e. N(A) = N(A^2) in finite dimension.
bool kernel_equality(const ComplexMatrix& a, const Tolerances& tol = {});

/// N(A) subset of N(A^*): A^* annihilates every kernel basis column.
bool kernel_containment(const ComplexMatrix& a, const Tolerances& tol = {});

struct ClassificationReport {
  ClassVerdict normal;
  ClassVerdict cohyponormal;
  ClassVerdict semi_hyponormal;
  ClassVerdict paranormal;
  GcsiVerdict gcsi;
  bool kernel_eq = false;
  bool kernel_cont = false;
  std::size_t rank = 0;
  std::size_t rank_squared = 0;
  bool lattice_ok = false;
};

/// Cross-checks the implications that must hold between the verdicts:
/// normal => semi-hyponormal => paranormal and not non-member; membership
/// implies both kernel conditions and paranormality.
bool lattice_consistent(const ClassificationReport& r);

/// Runs every predicate plus the inequality search and the lattice check.
ClassificationReport classify(const ComplexMatrix& a, const ModuleSpace& space,
                              const SearchConfig& cfg = {},
                              const Tolerances& tol = {});

}  // namespace gcsi
