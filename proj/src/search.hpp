#pragma once

// Derivative-free maximizers over unit module elements, shared by the
// inequality engine and the operator class predicates. Restarts are
// independent units keyed by seed XOR restart-index and merged by
// (value, restart order), so results do not depend on execution schedule.

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "gcsi/engine.hpp"
#include "gcsi/module_space.hpp"
#include "gcsi/rng.hpp"

namespace gcsi::detail {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct PairSearchResult {
  double value = kNegInf;
  bool found = false;
  ModuleElement x, y;
};

struct SingleSearchResult {
  double value = kNegInf;
  bool found = false;
  ModuleElement x;
};

inline int scaled_samples(const SearchConfig& cfg, const ModuleSpace& space) {
  const std::size_t dim = space.n * space.k;
  const std::size_t factor = (dim + 23) / 24;
  return cfg.samples_per_restart * static_cast<int>(factor == 0 ? 1 : factor);
}

inline std::optional<ModuleElement> random_unit(const ModuleSpace& space, Rng& rng,
                                                const Tolerances& tol) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool zero = false;
    ModuleElement e = normalized(random_element(space, rng), &zero, tol);
    if (!zero) return e;
  }
  return std::nullopt;
}

/// Random step in the tangent-ish directions at e, renormalized.
inline std::optional<ModuleElement> perturb(const ModuleElement& e, double step,
                                            Rng& rng, const Tolerances& tol) {
  ComplexMatrix d = rng.ginibre(e.space().n, e.space().k);
  const Complex overlap = frobenius_inner(e.value(), d);
  const double fro2 = frobenius_inner(e.value(), e.value()).real();
  if (fro2 > 0.0) d = d - (overlap / fro2) * e.value();
  const double dn = d.frobenius_norm();
  if (dn == 0.0) return std::nullopt;
  const double scale = step * e.value().frobenius_norm() / dn;
  bool zero = false;
  ModuleElement out = normalized(ModuleElement(e.space(), e.value() + scale * d),
                                 &zero, tol);
  if (zero) return std::nullopt;
  return out;
}

/// Maximizes objective(x, y) over pairs of unit elements. Seeds are
/// normalized and evaluated first; zero seeds are skipped. The optional
/// structured callback proposes an extra refinement move per iteration.
template <class F, class S>
PairSearchResult maximize_pairs(const ModuleSpace& space, F&& objective,
                                const std::vector<std::pair<ModuleElement, ModuleElement>>& seeds,
                                const SearchConfig& cfg, const Tolerances& tol,
                                S&& structured) {
  PairSearchResult best;
  auto consider = [&](const ModuleElement& x, const ModuleElement& y) {
    const double v = objective(x, y);
    if (!best.found || v > best.value) {
      best.value = v;
      best.x = x;
      best.y = y;
      best.found = true;
    }
    return v;
  };

  for (const auto& [sx, sy] : seeds) {
    bool zx = false, zy = false;
    ModuleElement x = normalized(sx, &zx, tol);
    ModuleElement y = normalized(sy, &zy, tol);
    if (zx || zy) continue;
    consider(x, y);
  }

  const int samples = scaled_samples(cfg, space);
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(restart));
    PairSearchResult local;
    for (int s = 0; s < samples; ++s) {
      auto x = random_unit(space, rng, tol);
      auto y = random_unit(space, rng, tol);
      if (!x || !y) continue;
      const double v = objective(*x, *y);
      if (!local.found || v > local.value) {
        local.value = v;
        local.x = *x;
        local.y = *y;
        local.found = true;
      }
    }
    if (!local.found) continue;

    double step = 0.5;
    for (int it = 0; it < cfg.refine_iters; ++it) {
      bool improved = false;
      auto try_pair = [&](const std::optional<ModuleElement>& px,
                          const std::optional<ModuleElement>& py) {
        const ModuleElement& cx = px ? *px : local.x;
        const ModuleElement& cy = py ? *py : local.y;
        if (!px && !py) return;
        const double v = objective(cx, cy);
        if (v > local.value) {
          local.value = v;
          local.x = cx;
          local.y = cy;
          improved = true;
        }
      };
      try_pair(perturb(local.x, step, rng, tol), std::nullopt);
      try_pair(std::nullopt, perturb(local.y, step, rng, tol));
      try_pair(perturb(local.x, step, rng, tol), perturb(local.y, step, rng, tol));
      if constexpr (!std::is_same_v<std::decay_t<S>, std::nullptr_t>) {
        auto prop = structured(local.x, local.y);
        if (prop) try_pair(prop->first, prop->second);
      }
      if (!improved) step *= cfg.step_decay;
    }

    if (!best.found || local.value > best.value) {
      best.value = local.value;
      best.x = local.x;
      best.y = local.y;
      best.found = true;
    }
  }
  return best;
}

template <class F>
PairSearchResult maximize_pairs(const ModuleSpace& space, F&& objective,
                                const std::vector<std::pair<ModuleElement, ModuleElement>>& seeds,
                                const SearchConfig& cfg, const Tolerances& tol) {
  return maximize_pairs(space, std::forward<F>(objective), seeds, cfg, tol, nullptr);
}

/// Single-element variant of maximize_pairs.
template <class F>
SingleSearchResult maximize_single(const ModuleSpace& space, F&& objective,
                                   const std::vector<ModuleElement>& seeds,
                                   const SearchConfig& cfg, const Tolerances& tol) {
  SingleSearchResult best;
  auto consider = [&](const ModuleElement& x) {
    const double v = objective(x);
    if (!best.found || v > best.value) {
      best.value = v;
      best.x = x;
      best.found = true;
    }
  };
  for (const auto& s : seeds) {
    bool zero = false;
    ModuleElement x = normalized(s, &zero, tol);
    if (zero) continue;
    consider(x);
  }

  const int samples = scaled_samples(cfg, space);
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(restart));
    SingleSearchResult local;
    for (int s = 0; s < samples; ++s) {
      auto x = random_unit(space, rng, tol);
      if (!x) continue;
      const double v = objective(*x);
      if (!local.found || v > local.value) {
        local.value = v;
        local.x = *x;
        local.found = true;
      }
    }
    if (!local.found) continue;

    double step = 0.5;
    for (int it = 0; it < cfg.refine_iters; ++it) {
      bool improved = false;
      for (int rep = 0; rep < 2; ++rep) {
        auto px = perturb(local.x, step, rng, tol);
        if (!px) continue;
        const double v = objective(*px);
        if (v > local.value) {
          local.value = v;
          local.x = *px;
          improved = true;
        }
      }
      if (!improved) step *= cfg.step_decay;
    }

    if (!best.found || local.value > best.value) {
      best.value = local.value;
      best.x = local.x;
      best.found = true;
    }
  }
  return best;
}

}  // namespace gcsi::detail
