#include "gcsi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gcsi {

namespace {

constexpr double kHermRelTol = 1e-8;
constexpr int kMaxJacobiSweeps = 128;

double offdiag_mass(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void require_square(const ComplexMatrix& a, const char* who) {
  if (!a.is_square() || a.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": square matrix required");
}

void require_hermitian(const ComplexMatrix& a, const char* who) {
  const double scale = std::max(1.0, a.frobenius_norm());
  if (a.hermitian_defect() > kHermRelTol * scale)
    throw std::invalid_argument(std::string(who) + ": input is not Hermitian");
}

}  // namespace

ComplexMatrix gram(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < n; ++p) {
      const Complex c = std::conj(a(i, p));
      if (c == Complex{0.0, 0.0}) continue;
      for (std::size_t q = p; q < n; ++q) g(p, q) += c * a(i, q);
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    g(p, p) = Complex{g(p, p).real(), 0.0};
    for (std::size_t q = p + 1; q < n; ++q) g(q, p) = std::conj(g(p, q));
  }
  return g;
}

ComplexMatrix cross_gram(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("cross_gram: row count mismatch");
  ComplexMatrix g(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const Complex c = std::conj(a(i, p));
      if (c == Complex{0.0, 0.0}) continue;
      for (std::size_t q = 0; q < b.cols(); ++q) g(p, q) += c * b(i, q);
    }
  return g;
}

HermEigen herm_eig(const ComplexMatrix& h, const Tolerances& tol) {
  require_square(h, "herm_eig");
  require_hermitian(h, "herm_eig");
  const std::size_t n = h.rows();

  // Symmetrize to kill representation noise, then rotate.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  if (scale > 0.0) {
    const double threshold = tol.eig_tol * scale;
    int sweep = 0;
    for (; sweep < kMaxJacobiSweeps; ++sweep) {
      if (offdiag_mass(a) <= threshold) break;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const Complex apq = a(p, q);
          const double r = std::abs(apq);
          if (r <= scale * 1e-300) continue;
          const Complex phase = apq / r;  // e^{i phi}
          const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
          const double sign_tau = tau >= 0.0 ? 1.0 : -1.0;
          const double t = sign_tau / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // A <- G^* A with G = I except G(p,p)=c, G(p,q)=s*phase,
          // G(q,p)=-s*conj(phase), G(q,q)=c.
          for (std::size_t j = 0; j < n; ++j) {
            const Complex apj = a(p, j), aqj = a(q, j);
            a(p, j) = c * apj - s * phase * aqj;
            a(q, j) = s * std::conj(phase) * apj + c * aqj;
          }
          // A <- A G
          for (std::size_t i = 0; i < n; ++i) {
            const Complex aip = a(i, p), aiq = a(i, q);
            a(i, p) = c * aip - s * std::conj(phase) * aiq;
            a(i, q) = s * phase * aip + c * aiq;
          }
          // V <- V G
          for (std::size_t i = 0; i < n; ++i) {
            const Complex vip = v(i, p), viq = v(i, q);
            v(i, p) = c * vip - s * std::conj(phase) * viq;
            v(i, q) = s * phase * vip + c * viq;
          }
          a(p, q) = Complex{0.0, 0.0};
          a(q, p) = Complex{0.0, 0.0};
          a(p, p) = Complex{a(p, p).real(), 0.0};
          a(q, q) = Complex{a(q, q).real(), 0.0};
        }
      }
    }
    if (sweep == kMaxJacobiSweeps)
      throw std::runtime_error("herm_eig: Jacobi sweep limit reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  HermEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

double psd_max_eigenvalue(const ComplexMatrix& g, const Tolerances& tol) {
  const std::size_t n = g.rows();
  if (n == 1) return g(0, 0).real();
  if (n == 2) {
    const double a = g(0, 0).real(), d = g(1, 1).real();
    const double half = 0.5 * (a + d);
    const double gap = 0.5 * (a - d);
    return half + std::sqrt(gap * gap + std::norm(g(0, 1)));
  }
  return herm_eig(g, tol).values.front();
}

double op_norm(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.cols() == 1 || a.rows() == 1) return a.frobenius_norm();
  const bool tall = a.rows() >= a.cols();
  const ComplexMatrix g = tall ? gram(a) : gram(a.adjoint());
  return std::sqrt(std::max(0.0, psd_max_eigenvalue(g, tol)));
}

Svd svd(const ComplexMatrix& a, const Tolerances& tol) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) throw std::invalid_argument("svd: empty matrix");
  if (m < n) {
    Svd t = svd(a.adjoint(), tol);
    Svd out;
    out.singular_values = std::move(t.singular_values);
    out.left = std::move(t.right);
    out.right = std::move(t.left);
    return out;
  }

  // One-sided Jacobi on the columns of A. Orthogonalizing the columns
  // directly keeps tiny singular values at working precision; the route
  // through A^*A floors them near sqrt(machine epsilon), above rank_tol.
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double thresh = 1e-14;
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double g11 = 0.0, g22 = 0.0;
        Complex g12{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) {
          g11 += std::norm(w(i, p));
          g22 += std::norm(w(i, q));
          g12 += std::conj(w(i, p)) * w(i, q);
        }
        const double mag = std::abs(g12);
        if (g11 == 0.0 || g22 == 0.0 || mag <= thresh * std::sqrt(g11 * g22))
          continue;
        rotated = true;
        const Complex alpha = g12 / mag;
        const double tau = (g22 - g11) / (2.0 * mag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Complex sa = s * alpha;
        const Complex sca = s * std::conj(alpha);
        for (std::size_t i = 0; i < m; ++i) {
          const Complex wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - sca * wq;
          w(i, q) = sa * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - sca * vq;
          v(i, q) = sa * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) s2 += std::norm(w(i, j));
    norms[j] = std::sqrt(s2);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  Svd out;
  out.singular_values.resize(n);
  out.right = ComplexMatrix(n, n);
  out.left = ComplexMatrix(m, n);
  const std::size_t r = n;
  std::vector<bool> filled(r, false);
  std::vector<std::size_t> deficient;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = norms[src];
    for (std::size_t i = 0; i < n; ++i) out.right(i, j) = v(i, src);
    if (norms[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.left(i, j) = w(i, src) / norms[src];
      filled[j] = true;
    } else {
      deficient.push_back(j);
    }
  }

  // Kernel-side left columns: deterministic completion, picking for each
  // slot the standard basis vector with the largest residual after
  // projecting out the columns already in place.
  for (std::size_t j : deficient) {
    std::vector<Complex> best(m, Complex{0.0, 0.0});
    double best_nrm = -1.0;
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<Complex> u(m, Complex{0.0, 0.0});
      u[b] = Complex{1.0, 0.0};
      for (std::size_t prev = 0; prev < r; ++prev) {
        if (!filled[prev]) continue;
        Complex proj{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) proj += std::conj(out.left(i, prev)) * u[i];
        for (std::size_t i = 0; i < m; ++i) u[i] -= proj * out.left(i, prev);
      }
      double nrm = 0.0;
      for (const auto& z : u) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      if (nrm > best_nrm) {
        best_nrm = nrm;
        best = u;
      }
    }
    if (best_nrm <= 1e-6)
      throw std::runtime_error("svd: left basis completion failed");
    for (std::size_t i = 0; i < m; ++i) out.left(i, j) = best[i] / best_nrm;
    filled[j] = true;
  }
  return out;
}

ComplexMatrix abs_op(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "abs_op");
  const std::size_t n = a.rows();
  const Svd sv = svd(a, tol);
  ComplexMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = sv.singular_values[j];
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        p(i, k) += s * sv.right(i, j) * std::conj(sv.right(k, j));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex sym = 0.5 * (p(i, j) + std::conj(p(j, i)));
      p(i, j) = sym;
      p(j, i) = std::conj(sym);
    }
  return p;
}

ComplexMatrix frac_power(const ComplexMatrix& p, double t, const Tolerances& tol) {
  if (!(t > 0.0)) throw std::invalid_argument("frac_power: exponent must be positive");
  require_square(p, "frac_power");
  const HermEigen he = herm_eig(p, tol);
  const double scale = std::max({1.0, std::abs(he.values.front()), std::abs(he.values.back())});
  const std::size_t n = p.rows();
  ComplexMatrix out(n, n);
  const double floor = 1e-13 * std::max(std::abs(he.values.front()),
                                        std::abs(he.values.back()));
  for (std::size_t j = 0; j < n; ++j) {
    double lam = he.values[j];
    if (lam < -tol.psd_tol * scale)
      throw std::domain_error("frac_power: matrix is not positive semidefinite");
    // Eigensolver noise on an exactly singular input sits near eps * ||p||;
    // fractional exponents would blow it up past the rank cutoff.
    lam = lam <= floor ? 0.0 : lam;
    const double f = std::pow(lam, t);
    if (f == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        out(i, k) += f * he.vectors(i, j) * std::conj(he.vectors(k, j));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex sym = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = sym;
      out(j, i) = std::conj(sym);
    }
  return out;
}

LoewnerResult loewner_leq(const ComplexMatrix& p, const ComplexMatrix& q,
                          const Tolerances& tol) {
  if (!same_shape(p, q)) throw std::invalid_argument("loewner_leq: shape mismatch");
  const ComplexMatrix d = q - p;
  const HermEigen he = herm_eig(d, tol);
  LoewnerResult out;
  out.min_eigenvalue = he.values.back();
  const double norm_d = std::max(std::abs(he.values.front()), std::abs(he.values.back()));
  out.holds = out.min_eigenvalue >= -tol.psd_tol * std::max(1.0, norm_d);
  if (!out.holds) out.witness = he.vectors.column(d.rows() - 1);
  return out;
}

RankNullspace rank_nullspace(const ComplexMatrix& a, const Tolerances& tol) {
  const std::size_t n = a.cols();
  ComplexMatrix work = a;
  if (a.rows() < n) {
    // Zero rows leave the column geometry alone and give svd enough right
    // vectors to span the whole nullspace.
    work = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) work(i, j) = a(i, j);
  }
  const Svd s = svd(work, tol);
  RankNullspace out;
  out.singular_values = s.singular_values;
  const double smax = out.singular_values[0];
  const double cutoff = tol.rank_tol * smax;
  std::size_t rank = 0;
  while (rank < n && out.singular_values[rank] > cutoff && out.singular_values[rank] > 0.0)
    ++rank;
  out.rank = rank;
  out.null_basis = ComplexMatrix(n, n - rank);
  for (std::size_t j = rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.null_basis(i, j - rank) = s.right(i, j);
  return out;
}

PolarParts polar_decompose(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "polar_decompose");
  const std::size_t n = a.rows();
  const Svd s = svd(a, tol);
  const double smax = s.singular_values[0];
  const double cutoff = tol.rank_tol * smax;

  PolarParts out;
  out.partial_isometry = ComplexMatrix(n, n);
  out.positive = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double sig = s.singular_values[j];
    if (sig > 0.0) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          out.positive(i, k) += sig * s.right(i, j) * std::conj(s.right(k, j));
    }
    if (sig > cutoff && sig > 0.0) {
      ++out.support_rank;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          out.partial_isometry(i, k) += s.left(i, j) * std::conj(s.right(k, j));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex sym = 0.5 * (out.positive(i, j) + std::conj(out.positive(j, i)));
      out.positive(i, j) = sym;
      out.positive(j, i) = std::conj(sym);
    }
  return out;
}

ComplexMatrix inverse(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  const Svd s = svd(a, tol);
  const double smax = s.singular_values[0];
  if (smax == 0.0 || s.singular_values[n - 1] <= tol.rank_tol * smax)
    throw std::domain_error("inverse: matrix is numerically singular");
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double inv = 1.0 / s.singular_values[j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        out(i, k) += inv * s.right(i, j) * std::conj(s.left(k, j));
  }
  return out;
}

}  // namespace gcsi
