#include "gcsi/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "search.hpp"

namespace gcsi {

namespace {

constexpr double kRelGuard = 1e-12;

void require_operator(const ComplexMatrix& a, const ModuleSpace& space,
                      const char* who) {
  if (!a.is_square() || a.rows() != space.n)
    throw std::invalid_argument(std::string(who) + ": operator shape does not match space");
  if (!a.all_finite())
    throw std::invalid_argument(std::string(who) + ": operator has non-finite entries");
}

struct Radii {
  double r0, r1, r2;
};

Radii compute_radii(const ComplexMatrix& a, const ModuleElement& x,
                    const ModuleElement& y, const Tolerances& tol) {
  const ComplexMatrix ax = a * x.value();
  const ComplexMatrix ay = a * y.value();
  Radii r;
  r.r1 = op_norm(ax, tol) * op_norm(y.value(), tol);
  r.r2 = op_norm(ay, tol) * op_norm(x.value(), tol);
  r.r0 = op_norm(cross_gram(ax, y.value()), tol);
  return r;
}

/// Zeroes entries far below the element scale, aiming at exact certificates
/// once the search has converged near a sparse pair.
ModuleElement snapped(const ModuleElement& e) {
  const double scale = e.value().max_abs();
  ComplexMatrix v = e.value();
  for (auto& z : v.entries()) {
    double re = std::abs(z.real()) <= 1e-9 * scale ? 0.0 : z.real();
    double im = std::abs(z.imag()) <= 1e-9 * scale ? 0.0 : z.imag();
    z = Complex{re, im};
  }
  return ModuleElement(e.space(), v);
}

}  // namespace

void validate(const SearchConfig& cfg) {
  if (cfg.restarts < 1 || cfg.samples_per_restart < 1 || cfg.refine_iters < 0)
    throw std::invalid_argument("SearchConfig: budgets must be positive");
  if (!(cfg.step_decay > 0.0) || !(cfg.step_decay < 1.0))
    throw std::invalid_argument("SearchConfig: step_decay must lie in (0, 1)");
  if (!(cfg.member_threshold > 0.0) || !(cfg.member_threshold < 1.0))
    throw std::invalid_argument("SearchConfig: member_threshold must lie in (0, 1)");
}

LambdaMin lambda_min_from_radii(double r0, double r1, double r2) {
  if (!(r0 >= 0.0) || !(r1 >= 0.0) || !(r2 >= 0.0))
    throw std::invalid_argument("lambda_min_from_radii: radii must be nonnegative");
  const double scale = std::max({r0, r1, r2});
  // The r2-dominance test runs first: with r0 <= r2 every exponent works,
  // and float ties at r0 = r1 = r2 must not fall into the infeasible case.
  if (r0 <= r2 + kRelGuard * scale) return {0.0, false};
  if (r2 == 0.0) return {1.0, true};
  if (r0 >= r1 * (1.0 - kRelGuard)) return {1.0, true};
  const double v = std::log(r0 / r2) / std::log(r1 / r2);
  return {std::clamp(v, 0.0, 1.0), false};
}

PairStatistics pair_stats(const ComplexMatrix& a, const ModuleElement& x,
                          const ModuleElement& y, const Tolerances& tol) {
  require_operator(a, x.space(), "pair_stats");
  const Radii r = compute_radii(a, x, y, tol);
  PairStatistics st;
  st.r0 = r.r0;
  st.r1 = r.r1;
  st.r2 = r.r2;
  const LambdaMin lm = lambda_min_from_radii(r.r0, r.r1, r.r2);
  st.lambda_min = lm.value;
  st.infeasible = lm.infeasible;
  return st;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non_member";
    default: return "undecided";
  }
}

std::vector<std::pair<ModuleElement, ModuleElement>> standard_pair_candidates(
    const ComplexMatrix& a, const ModuleSpace& space, const Tolerances& tol) {
  std::vector<std::pair<ModuleElement, ModuleElement>> out;
  std::vector<ModuleElement> basis;
  for (std::size_t i = 0; i < space.n; ++i)
    for (std::size_t c = 0; c < space.k; ++c)
      basis.push_back(basis_element(space, i, c));

  const std::size_t dim = basis.size();
  if (dim <= 96) {
    for (const auto& x : basis)
      for (const auto& y : basis) out.emplace_back(x, y);
  } else {
    for (std::size_t i = 0; i < 96; ++i)
      for (std::size_t j = 0; j < 96; ++j)
        out.emplace_back(basis[i], basis[j]);
  }

  for (const auto& x : basis) {
    bool zero = false;
    ModuleElement img = normalized(apply_op(a, x), &zero, tol);
    if (zero) continue;
    out.emplace_back(x, img);
    out.emplace_back(img, x);
  }

  auto add_kernel_pairs = [&](const ComplexMatrix& null_basis) {
    for (std::size_t j = 0; j < null_basis.cols(); ++j) {
      ModuleElement z = embed_vector(space, null_basis.column(j));
      bool zero = false;
      ModuleElement img = normalized(apply_op(a, z), &zero, tol);
      if (!zero) out.emplace_back(z, img);
      for (std::size_t i = 0; i < std::min<std::size_t>(space.n, 8); ++i) {
        out.emplace_back(basis_element(space, i, 0), z);
        out.emplace_back(z, basis_element(space, i, 0));
      }
    }
  };
  add_kernel_pairs(rank_nullspace(a, tol).null_basis);
  add_kernel_pairs(rank_nullspace(a * a, tol).null_basis);
  return out;
}

GcsiVerdict gcsi_index(const ComplexMatrix& a, const ModuleSpace& space,
                       const SearchConfig& cfg, const Tolerances& tol) {
  require_operator(a, space, "gcsi_index");
  validate(cfg);

  auto objective = [&](const ModuleElement& x, const ModuleElement& y) {
    const Radii r = compute_radii(a, x, y, tol);
    const LambdaMin lm = lambda_min_from_radii(r.r0, r.r1, r.r2);
    return lm.infeasible ? 1.0 : lm.value;
  };
  auto structured = [&](const ModuleElement& x, const ModuleElement&)
      -> std::optional<std::pair<ModuleElement, ModuleElement>> {
    bool zero = false;
    ModuleElement img = normalized(apply_op(a, x), &zero, tol);
    if (zero) return std::nullopt;
    return std::make_pair(x, img);
  };

  auto seeds = standard_pair_candidates(a, space, tol);
  auto best = detail::maximize_pairs(space, objective, seeds, cfg, tol, structured);

  GcsiVerdict verdict;
  verdict.space = space;
  verdict.config = cfg;
  if (!best.found) {
    verdict.membership = Membership::member;
    verdict.lambda_star = 0.0;
    return verdict;
  }

  // Try sparser variants of the winning pair; keep them only when they do
  // not lose objective value.
  for (const auto& [sx, sy] : {std::pair{snapped(best.x), snapped(best.y)},
                               std::pair{snapped(best.x), best.y},
                               std::pair{best.x, snapped(best.y)}}) {
    bool zx = false, zy = false;
    ModuleElement nx = normalized(sx, &zx, tol);
    ModuleElement ny = normalized(sy, &zy, tol);
    if (zx || zy) continue;
    const double v = objective(nx, ny);
    if (v >= best.value) {
      best.value = v;
      best.x = nx;
      best.y = ny;
    }
  }

  verdict.lambda_star = best.value;
  GcsiCertificate cert{best.x, best.y, pair_stats(a, best.x, best.y, tol)};
  verdict.certificates.push_back(std::move(cert));
  if (best.value >= 1.0 - tol.ineq_tol)
    verdict.membership = Membership::non_member;
  else if (best.value <= cfg.member_threshold)
    verdict.membership = Membership::member;
  else
    verdict.membership = Membership::undecided;
  return verdict;
}

FixedLambdaResult check_fixed_lambda(const ComplexMatrix& a, double lambda,
                                     const ModuleSpace& space,
                                     const SearchConfig& cfg, const Tolerances& tol) {
  require_operator(a, space, "check_fixed_lambda");
  validate(cfg);
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::domain_error("check_fixed_lambda: lambda must lie in (0, 1)");

  auto margin = [&](const ModuleElement& x, const ModuleElement& y) {
    const Radii r = compute_radii(a, x, y, tol);
    if (r.r0 == 0.0) return kBigMargin;
    if (r.r2 == 0.0 || r.r1 == 0.0) return -kBigMargin;
    return lambda * std::log(r.r1) + (1.0 - lambda) * std::log(r.r2) - std::log(r.r0);
  };
  auto objective = [&](const ModuleElement& x, const ModuleElement& y) {
    return -margin(x, y);
  };
  auto structured = [&](const ModuleElement& x, const ModuleElement&)
      -> std::optional<std::pair<ModuleElement, ModuleElement>> {
    bool zero = false;
    ModuleElement img = normalized(apply_op(a, x), &zero, tol);
    if (zero) return std::nullopt;
    return std::make_pair(x, img);
  };

  auto seeds = standard_pair_candidates(a, space, tol);
  auto best = detail::maximize_pairs(space, objective, seeds, cfg, tol, structured);

  FixedLambdaResult out;
  if (!best.found) return out;
  out.worst_margin = -best.value;
  out.binding = out.worst_margin < kBigMargin;
  out.x = best.x;
  out.y = best.y;
  if (out.binding) out.stats = pair_stats(a, best.x, best.y, tol);
  return out;
}

double brute_force_index_2d(const ComplexMatrix& a, int grid, const Tolerances& tol) {
  if (!a.is_square() || a.rows() != 2)
    throw std::invalid_argument("brute_force_index_2d: expected a 2 x 2 operator");
  for (const auto& z : a.entries())
    if (z.imag() != 0.0)
      throw std::invalid_argument("brute_force_index_2d: expected real entries");
  if (grid < 2) throw std::invalid_argument("brute_force_index_2d: grid too small");

  const double a00 = a(0, 0).real(), a01 = a(0, 1).real();
  const double a10 = a(1, 0).real(), a11 = a(1, 1).real();

  std::vector<double> c(grid), s(grid), ax0(grid), ax1(grid), nax(grid);
  for (int i = 0; i < grid; ++i) {
    const double t = 3.14159265358979323846 * static_cast<double>(i) / grid;
    c[i] = std::cos(t);
    s[i] = std::sin(t);
    ax0[i] = a00 * c[i] + a01 * s[i];
    ax1[i] = a10 * c[i] + a11 * s[i];
    nax[i] = std::hypot(ax0[i], ax1[i]);
  }

  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double r0 = std::abs(ax0[i] * c[j] + ax1[i] * s[j]);
      const LambdaMin lm = lambda_min_from_radii(r0, nax[i], nax[j]);
      const double v = lm.infeasible ? 1.0 : lm.value;
      if (v > best) best = v;
    }
  }
  (void)tol;
  return best;
}

SqrtFormResult sqrt_form_margin(const ComplexMatrix& a, const ModuleSpace& space,
                                const SearchConfig& cfg, const Tolerances& tol) {
  require_operator(a, space, "sqrt_form_margin");
  validate(cfg);
  const std::size_t n = space.n;

  // B = |A|^{1/2} from one spectral decomposition of A^*A.
  const HermEigen he = herm_eig(gram(a), tol);
  ComplexMatrix b(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double f = std::pow(std::max(0.0, he.values[j]), 0.25);
    if (f == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k2 = 0; k2 < n; ++k2)
        b(i, k2) += f * he.vectors(i, j) * std::conj(he.vectors(k2, j));
  }

  auto margin = [&](const ModuleElement& x, const ModuleElement& y) {
    const ComplexMatrix ax = a * x.value();
    const double r0 = op_norm(cross_gram(ax, y.value()), tol);
    return op_norm(b * x.value(), tol) * op_norm(b * y.value(), tol) - r0;
  };
  auto objective = [&](const ModuleElement& x, const ModuleElement& y) {
    return -margin(x, y);
  };

  auto seeds = standard_pair_candidates(a, space, tol);
  // Contrapositive candidates: defect directions of |A| - |A*| paired with
  // their pullback through the polar isometry.
  const PolarParts polar = polar_decompose(a, tol);
  const ComplexMatrix abs_adj = abs_op(a.adjoint(), tol);
  ComplexMatrix diff = polar.positive - abs_adj;
  const HermEigen hd = herm_eig(diff, tol);
  const ComplexMatrix ustar = polar.partial_isometry.adjoint();
  for (std::size_t j = 0; j < n; ++j) {
    if (hd.values[j] >= -1e-14) continue;
    const ComplexMatrix z = hd.vectors.column(j);
    seeds.emplace_back(embed_vector(space, ustar * z), embed_vector(space, z));
    seeds.emplace_back(embed_vector(space, z), embed_vector(space, ustar * z));
  }

  auto best = detail::maximize_pairs(space, objective, seeds, cfg, tol, nullptr);
  SqrtFormResult out;
  if (!best.found) return out;
  out.worst_margin = -best.value;
  out.x = best.x;
  out.y = best.y;
  return out;
}

EqualityDefectResult equality_defect(const ComplexMatrix& a, const ModuleElement& x,
                                     double lambda, const SearchConfig& cfg,
                                     const Tolerances& tol) {
  require_operator(a, x.space(), "equality_defect");
  validate(cfg);
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::domain_error("equality_defect: lambda must lie in (0, 1)");
  bool zero = false;
  const ModuleElement xu = normalized(x, &zero, tol);
  if (zero) throw std::invalid_argument("equality_defect: x must be nonzero");
  const ComplexMatrix ax = a * xu.value();
  if (ax.max_abs() == 0.0)
    throw std::domain_error("equality_defect: Ax = 0, hypothesis requires Ax != 0");

  auto objective = [&](const ModuleElement& y) {
    const Radii r = compute_radii(a, xu, y, tol);
    if (r.r0 == 0.0 || r.r1 == 0.0 || r.r2 == 0.0) return -kBigMargin;
    return std::abs(std::log(r.r0) - lambda * std::log(r.r1) -
                    (1.0 - lambda) * std::log(r.r2));
  };

  std::vector<ModuleElement> seeds;
  const ModuleSpace& space = xu.space();
  for (std::size_t i = 0; i < space.n; ++i)
    for (std::size_t c = 0; c < space.k; ++c)
      seeds.push_back(basis_element(space, i, c));
  seeds.push_back(xu);
  seeds.push_back(ModuleElement(space, ax));

  auto best = detail::maximize_single(space, objective, seeds, cfg, tol);
  EqualityDefectResult out;
  if (!best.found || best.value == -kBigMargin) return out;
  out.defect = best.value;
  out.binding = true;
  out.y = best.x;
  return out;
}

MinLambdaDefect equality_defect_min_lambda(const ComplexMatrix& a,
                                           const ModuleElement& x,
                                           const SearchConfig& cfg,
                                           const Tolerances& tol) {
  require_operator(a, x.space(), "equality_defect_min_lambda");
  validate(cfg);
  bool zero = false;
  const ModuleElement xu = normalized(x, &zero, tol);
  if (zero) throw std::invalid_argument("equality_defect_min_lambda: x must be nonzero");
  const ComplexMatrix ax = a * xu.value();
  if (ax.max_abs() == 0.0)
    throw std::domain_error("equality_defect_min_lambda: Ax = 0");

  const ModuleSpace& space = xu.space();
  std::vector<ModuleElement> ys;
  for (std::size_t i = 0; i < space.n; ++i)
    for (std::size_t c = 0; c < space.k; ++c)
      ys.push_back(basis_element(space, i, c));
  ys.push_back(xu);
  ys.push_back(ModuleElement(space, ax));
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(restart));
    for (int s = 0; s < cfg.samples_per_restart; ++s) {
      auto y = detail::random_unit(space, rng, tol);
      if (y) ys.push_back(*y);
    }
  }

  std::vector<std::pair<double, double>> terms;  // (a_j, b_j)
  for (const auto& yraw : ys) {
    bool zy = false;
    ModuleElement y = normalized(yraw, &zy, tol);
    if (zy) continue;
    const Radii r = compute_radii(a, xu, y, tol);
    if (r.r0 == 0.0 || r.r1 == 0.0 || r.r2 == 0.0) continue;
    terms.emplace_back(std::log(r.r0 / r.r2), std::log(r.r1 / r.r2));
  }

  MinLambdaDefect out;
  if (terms.empty()) return out;
  auto g = [&](double lam) {
    double m = 0.0;
    for (const auto& [aj, bj] : terms) m = std::max(m, std::abs(aj - lam * bj));
    return m;
  };
  double lo = 1e-3, hi = 1.0 - 1e-3;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) <= g(m2))
      hi = m2;
    else
      lo = m1;
  }
  out.lambda = 0.5 * (lo + hi);
  out.defect = g(out.lambda);
  out.binding = true;
  return out;
}

}  // namespace gcsi
