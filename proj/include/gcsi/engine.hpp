#pragma once

#include <cstdint>
#include <vector>

#include "gcsi/complex_matrix.hpp"
#include "gcsi/linalg.hpp"
#include "gcsi/module_space.hpp"

namespace gcsi {

/// Sentinel magnitude for margins of pairs where a radius vanishes and the
/// log scale degenerates. Real margins stay far below this.
constexpr double kBigMargin = 1e9;

struct SearchConfig {
  std::uint64_t seed = 1;
  int restarts = 32;
  int samples_per_restart = 512;
  int refine_iters = 60;
  double step_decay = 0.7;
  double member_threshold = 0.95;
};

/// Throws std::invalid_argument on nonsensical budgets.
void validate(const SearchConfig& cfg);

struct LambdaMin {
  double value = 0.0;
  bool infeasible = false;
};

/// Smallest exponent lambda in [0, 1] with r0 <= r1^lambda * r2^(1-lambda),
/// from monotonicity of lambda -> lambda log r1 + (1-lambda) log r2.
/// Infeasible (no exponent works, reported as 1) when r2 < r0 >= r1 or
/// r2 = 0 < r0.
LambdaMin lambda_min_from_radii(double r0, double r1, double r2);

struct PairStatistics {
  double r0 = 0.0;  // || <Ax, y> ||
  double r1 = 0.0;  // ||Ax|| ||y||
  double r2 = 0.0;  // ||Ay|| ||x||
  double lambda_min = 0.0;
  bool infeasible = false;
};

PairStatistics pair_stats(const ComplexMatrix& a, const ModuleElement& x,
                          const ModuleElement& y, const Tolerances& tol = {});

enum class Membership { member, non_member, undecided };

const char* to_string(Membership m);

struct GcsiCertificate {
  ModuleElement x, y;
  PairStatistics stats;
};

struct GcsiVerdict {
  Membership membership = Membership::undecided;
  double lambda_star = 0.0;  // sup over tested pairs of lambda_min
  std::vector<GcsiCertificate> certificates;
  ModuleSpace space;
  SearchConfig config;
};

/// Searches for the worst pair exponent lambda_min; membership is decided
/// against config.member_threshold and 1 - tol.ineq_tol.
GcsiVerdict gcsi_index(const ComplexMatrix& a, const ModuleSpace& space,
                       const SearchConfig& cfg = {}, const Tolerances& tol = {});

struct FixedLambdaResult {
  double worst_margin = kBigMargin;  // min over sampled pairs of the log margin
  bool binding = false;              // false when no sampled pair had r0 > 0
  ModuleElement x, y;
  PairStatistics stats;
};

/// Log-scale margin lambda log r1 + (1-lambda) log r2 - log r0, minimized
/// over sampled pairs. Throws std::domain_error unless 0 < lambda < 1.
FixedLambdaResult check_fixed_lambda(const ComplexMatrix& a, double lambda,
                                     const ModuleSpace& space,
                                     const SearchConfig& cfg = {},
                                     const Tolerances& tol = {});

/// Exhaustive real-angle grid reference for real 2 x 2 operators on C^2:
/// both elements run over (cos t, sin t), t in [0, pi). Grid must be >= 2.
double brute_force_index_2d(const ComplexMatrix& a, int grid,
                            const Tolerances& tol = {});

struct SqrtFormResult {
  double worst_margin = kBigMargin;  // min of |||A|^{1/2}x|| |||A|^{1/2}y|| - r0
  ModuleElement x, y;
};

/// Worst linear margin of || <Ax, y> || <= || |A|^{1/2} x || || |A|^{1/2} y ||
/// over unit pairs.
SqrtFormResult sqrt_form_margin(const ComplexMatrix& a, const ModuleSpace& space,
                                const SearchConfig& cfg = {},
                                const Tolerances& tol = {});

struct EqualityDefectResult {
  double defect = kBigMargin;
  bool binding = false;  // any sampled y with all three radii positive
  ModuleElement y;
};

/// sup over sampled y of |log r0 - lambda log r1 - (1-lambda) log r2| at
/// fixed x; pairs with a vanishing radius are excluded. Zero x is invalid;
/// Ax = 0 is a domain error.
EqualityDefectResult equality_defect(const ComplexMatrix& a, const ModuleElement& x,
                                     double lambda, const SearchConfig& cfg = {},
                                     const Tolerances& tol = {});

struct MinLambdaDefect {
  double defect = kBigMargin;
  double lambda = 0.5;
  bool binding = false;
};

/// min over lambda in (0, 1) of the sampled equality defect at x. The inner
/// max over a fixed y sample of |a_j - lambda b_j| is convex in lambda, so
/// the minimum is located by ternary search.
MinLambdaDefect equality_defect_min_lambda(const ComplexMatrix& a,
                                           const ModuleElement& x,
                                           const SearchConfig& cfg = {},
                                           const Tolerances& tol = {});

/// Deterministic candidate pairs: basis elements, their images under A, and
/// kernel directions of A and A^2 paired against the basis.
std::vector<std::pair<ModuleElement, ModuleElement>> standard_pair_candidates(
    const ComplexMatrix& a, const ModuleSpace& space, const Tolerances& tol = {});

}  // namespace gcsi
