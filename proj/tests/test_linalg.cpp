#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "gcsi/linalg.hpp"
#include "gcsi/rng.hpp"

using gcsi::Complex;
using gcsi::ComplexMatrix;
using gcsi::Tolerances;

namespace {

ComplexMatrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  gcsi::Rng rng(seed);
  return rng.ginibre(m, n);
}

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix r = random_matrix(n, n, seed);
  ComplexMatrix h = r + r.adjoint();
  for (auto& z : h.entries()) z *= 0.5;
  return h;
}

// Independent operator-norm oracle: power iteration on x -> A^*(A x).
double power_iteration_norm(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  ComplexMatrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    v(i, 0) = Complex{1.0 + 0.01 * static_cast<double>(i), 0.13 * static_cast<double>(i)};
  double sigma2 = 0.0;
  for (int it = 0; it < 400; ++it) {
    ComplexMatrix w = a.adjoint() * (a * v);
    double nrm = w.frobenius_norm();
    if (nrm == 0.0) return 0.0;
    sigma2 = nrm / v.frobenius_norm();
    for (auto& z : w.entries()) z *= 1.0 / nrm;
    v = w;
  }
  return std::sqrt(sigma2);
}

double unitary_defect(const ComplexMatrix& u) {
  return gcsi::frobenius_distance(gcsi::gram(u),
                                  ComplexMatrix::identity(u.cols()));
}

const ComplexMatrix kRemark = ComplexMatrix::from_rows(
    {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}},
     {Complex{0, 0}, Complex{0, 0}, Complex{1, 0}},
     {Complex{0, 0}, Complex{0, 0}, Complex{0, 0}}});

}  // namespace

TEST_CASE("herm_eig reconstructs random Hermitian matrices up to 32 x 32") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 21u, 32u}) {
    const ComplexMatrix h = random_hermitian(n, 1000 + n);
    const gcsi::HermEigen he = gcsi::herm_eig(h);
    REQUIRE(he.values.size() == n);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(he.values[i] >= he.values[i + 1]);
    CHECK(unitary_defect(he.vectors) < 1e-10);

    ComplexMatrix rec = he.vectors *
                        ComplexMatrix::diagonal(he.values) * he.vectors.adjoint();
    const double scale = std::max(1.0, h.frobenius_norm());
    CHECK(gcsi::frobenius_distance(rec, h) / scale < 1e-10);

    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += h(i, i).real();
    for (double v : he.values) sum += v;
    CHECK(std::abs(trace - sum) / scale < 1e-10);
  }
}

TEST_CASE("herm_eig orders diag(3,1,2) descending") {
  const gcsi::HermEigen he = gcsi::herm_eig(ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0}));
  CHECK(he.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(he.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(he.values[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(he.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(he.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(he.vectors(1, 2)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig closed cases") {
  const ComplexMatrix h =
      ComplexMatrix::from_rows({{Complex{2, 0}, Complex{1, 0}},
                                {Complex{1, 0}, Complex{2, 0}}});
  const gcsi::HermEigen he = gcsi::herm_eig(h);
  CHECK(he.values[0] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(he.values[1] == doctest::Approx(1.0).epsilon(1e-13));

  const ComplexMatrix pauli_y =
      ComplexMatrix::from_rows({{Complex{0, 0}, Complex{0, -1}},
                                {Complex{0, 1}, Complex{0, 0}}});
  const gcsi::HermEigen hy = gcsi::herm_eig(pauli_y);
  CHECK(hy.values[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(hy.values[1] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("herm_eig rejects bad input") {
  CHECK_THROWS_AS(gcsi::herm_eig(ComplexMatrix(2, 3)), std::invalid_argument);
  const ComplexMatrix nil =
      ComplexMatrix::from_rows({{Complex{0, 0}, Complex{1, 0}},
                                {Complex{0, 0}, Complex{0, 0}}});
  CHECK_THROWS_AS(gcsi::herm_eig(nil), std::invalid_argument);
}

TEST_CASE("svd reconstructs and orders, square and rectangular") {
  struct Shape { std::size_t m, n; };
  for (Shape s : {Shape{1, 1}, Shape{3, 3}, Shape{4, 2}, Shape{2, 5}, Shape{7, 7},
                  Shape{16, 16}, Shape{32, 32}}) {
    const ComplexMatrix a = random_matrix(s.m, s.n, 7 * s.m + s.n);
    const gcsi::Svd sv = gcsi::svd(a);
    const std::size_t r = std::min(s.m, s.n);
    REQUIRE(sv.singular_values.size() == r);
    for (std::size_t i = 0; i + 1 < r; ++i)
      CHECK(sv.singular_values[i] >= sv.singular_values[i + 1]);
    CHECK(sv.singular_values.back() >= 0.0);
    CHECK(unitary_defect(sv.left) < 1e-9);
    CHECK(unitary_defect(sv.right) < 1e-9);

    ComplexMatrix rec =
        sv.left * ComplexMatrix::diagonal(sv.singular_values) * sv.right.adjoint();
    CHECK(gcsi::frobenius_distance(rec, a) / std::max(1.0, a.frobenius_norm()) < 1e-10);
  }
}

TEST_CASE("svd handles rank deficiency with an orthonormal left basis") {
  // rank-2 square matrix of side 5
  const ComplexMatrix b = random_matrix(5, 2, 99);
  const ComplexMatrix c = random_matrix(2, 5, 100);
  const ComplexMatrix a = b * c;
  const gcsi::Svd sv = gcsi::svd(a);
  CHECK(unitary_defect(sv.left) < 1e-9);
  CHECK(sv.singular_values[2] < 1e-10 * sv.singular_values[0]);
  ComplexMatrix rec =
      sv.left * ComplexMatrix::diagonal(sv.singular_values) * sv.right.adjoint();
  CHECK(gcsi::frobenius_distance(rec, a) / a.frobenius_norm() < 1e-10);

  const gcsi::Svd sz = gcsi::svd(ComplexMatrix(3, 3));
  CHECK(sz.singular_values[0] == 0.0);
  CHECK(unitary_defect(sz.left) < 1e-12);
}

TEST_CASE("svd golden values") {
  const ComplexMatrix a =
      ComplexMatrix::from_rows({{Complex{0, 0}, Complex{2, 0}},
                                {Complex{0, 0}, Complex{0, 0}}});
  const gcsi::Svd sv = gcsi::svd(a);
  CHECK(sv.singular_values[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sv.singular_values[1] == doctest::Approx(0.0).epsilon(1e-14));

  const gcsi::Svd sd = gcsi::svd(ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0}));
  CHECK(sd.singular_values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(sd.singular_values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sd.singular_values[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("op_norm agrees with the power-iteration oracle") {
  for (std::uint64_t seed : {3u, 4u, 5u, 6u}) {
    const ComplexMatrix a = random_matrix(4 + seed % 3, 3 + seed % 4, seed);
    const double got = gcsi::op_norm(a);
    const double want = power_iteration_norm(a);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
  // vector fast path
  ComplexMatrix v(4, 1);
  v(0, 0) = Complex{3, 0};
  v(2, 0) = Complex{0, 4};
  CHECK(gcsi::op_norm(v) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(gcsi::op_norm(ComplexMatrix(3, 3)) == 0.0);
}

TEST_CASE("abs_op diagonals of the pinned 3 x 3 example") {
  const ComplexMatrix aa = gcsi::abs_op(kRemark);
  const ComplexMatrix as = gcsi::abs_op(kRemark.adjoint());
  const ComplexMatrix want_a = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0, 1.0});
  const ComplexMatrix want_s = ComplexMatrix::diagonal(std::vector<double>{1.0, 1.0, 0.0});
  CHECK(gcsi::frobenius_distance(aa, want_a) < 1e-12);
  CHECK(gcsi::frobenius_distance(as, want_s) < 1e-12);
}

TEST_CASE("abs_op squares back to the Gram matrix") {
  const ComplexMatrix a = random_matrix(5, 5, 42);
  const ComplexMatrix p = gcsi::abs_op(a);
  CHECK(p.hermitian_defect() < 1e-10);
  CHECK(gcsi::frobenius_distance(p * p, gcsi::gram(a)) /
            std::max(1.0, gcsi::gram(a).frobenius_norm()) <
        1e-10);
}

TEST_CASE("frac_power identities and domain errors") {
  const ComplexMatrix p = gcsi::gram(random_matrix(4, 4, 11));
  CHECK(gcsi::frobenius_distance(gcsi::frac_power(p, 1.0), p) /
            p.frobenius_norm() <
        1e-10);
  const ComplexMatrix root = gcsi::frac_power(p, 0.5);
  CHECK(gcsi::frobenius_distance(root * root, p) / p.frobenius_norm() < 1e-10);
  CHECK(gcsi::frobenius_distance(gcsi::frac_power(p, 2.0), p * p) /
            (p * p).frobenius_norm() <
        1e-10);

  const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<double>{4.0, 9.0});
  const ComplexMatrix half = gcsi::frac_power(d, 0.5);
  CHECK(half(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(half(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(gcsi::frac_power(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gcsi::frac_power(p, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(gcsi::frac_power(ComplexMatrix::diagonal(std::vector<double>{1.0, -0.5}), 0.5),
                  std::domain_error);
  // eigenvalues within -psd_tol are clamped, not rejected
  const ComplexMatrix near = ComplexMatrix::diagonal(std::vector<double>{1.0, -1e-12});
  CHECK_NOTHROW(gcsi::frac_power(near, 0.5));
}

TEST_CASE("loewner_leq verdicts and witness quality") {
  const ComplexMatrix p = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0, 1.0});
  const ComplexMatrix q = ComplexMatrix::diagonal(std::vector<double>{1.0, 1.0, 0.0});
  const gcsi::LoewnerResult no = gcsi::loewner_leq(p, q);
  CHECK(!no.holds);
  CHECK(no.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(no.witness(2, 0)) == doctest::Approx(1.0).epsilon(1e-10));

  const gcsi::LoewnerResult yes =
      gcsi::loewner_leq(ComplexMatrix::diagonal(std::vector<double>{1.0, 1.0}),
                        ComplexMatrix::diagonal(std::vector<double>{2.0, 1.0}));
  CHECK(yes.holds);
  CHECK(yes.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));

  // P <= P + G^*G always
  const ComplexMatrix g = random_matrix(4, 4, 12);
  const ComplexMatrix base = gcsi::gram(random_matrix(4, 4, 13));
  CHECK(gcsi::loewner_leq(base, base + gcsi::gram(g)).holds);

  // witness attains the reported eigenvalue
  const ComplexMatrix h = random_hermitian(5, 77);
  const gcsi::LoewnerResult lr = gcsi::loewner_leq(h, ComplexMatrix(5, 5));
  if (!lr.holds) {
    const ComplexMatrix w = lr.witness;
    const Complex ray = gcsi::frobenius_inner(w, (ComplexMatrix(5, 5) - h) * w);
    CHECK(ray.real() == doctest::Approx(lr.min_eigenvalue).epsilon(1e-8));
  }
}

TEST_CASE("rank_nullspace goldens and random ranks") {
  const gcsi::RankNullspace rr = gcsi::rank_nullspace(kRemark);
  CHECK(rr.rank == 2);
  REQUIRE(rr.null_basis.cols() == 1);
  CHECK(std::abs(rr.null_basis(1, 0)) == doctest::Approx(1.0).epsilon(1e-10));

  const gcsi::RankNullspace r2 = gcsi::rank_nullspace(kRemark * kRemark);
  CHECK(r2.rank == 1);
  CHECK(r2.null_basis.cols() == 2);

  for (std::size_t r = 1; r <= 4; ++r) {
    const ComplexMatrix a = random_matrix(5, r, 20 + r) * random_matrix(r, 5, 30 + r);
    const gcsi::RankNullspace rn = gcsi::rank_nullspace(a);
    CHECK(rn.rank == r);
    CHECK(rn.null_basis.cols() == 5 - r);
    if (rn.null_basis.cols() > 0) {
      CHECK(gcsi::op_norm(a * rn.null_basis) < 1e-8 * gcsi::op_norm(a));
      CHECK(unitary_defect(rn.null_basis) < 1e-9);
    }
  }

  CHECK(gcsi::rank_nullspace(ComplexMatrix::identity(3)).rank == 3);
  CHECK(gcsi::rank_nullspace(ComplexMatrix(3, 3)).rank == 0);
}

TEST_CASE("polar decomposition: pinned exact case and random reconstruction") {
  const gcsi::PolarParts pp = gcsi::polar_decompose(kRemark);
  CHECK(gcsi::frobenius_distance(pp.partial_isometry, kRemark) == 0.0);
  CHECK(gcsi::frobenius_distance(pp.positive,
                                 ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0, 1.0})) == 0.0);
  CHECK(pp.support_rank == 2);

  for (std::uint64_t seed : {51u, 52u, 53u}) {
    const ComplexMatrix a = random_matrix(4, 4, seed);
    const gcsi::PolarParts p = gcsi::polar_decompose(a);
    CHECK(gcsi::frobenius_distance(p.partial_isometry * p.positive, a) /
              a.frobenius_norm() <
          1e-10);
    CHECK(p.positive.hermitian_defect() < 1e-10);
    // full rank w.p. 1: U is then unitary
    CHECK(p.support_rank == 4);
    CHECK(unitary_defect(p.partial_isometry) < 1e-9);
  }

  // singular case: U^*U is the support projection, idempotent
  const ComplexMatrix s = random_matrix(4, 2, 54) * random_matrix(2, 4, 55);
  const gcsi::PolarParts p = gcsi::polar_decompose(s);
  CHECK(p.support_rank == 2);
  const ComplexMatrix proj = gcsi::gram(p.partial_isometry);
  CHECK(gcsi::frobenius_distance(proj * proj, proj) < 1e-9);
  CHECK(gcsi::frobenius_distance(p.partial_isometry * p.positive, s) /
            s.frobenius_norm() <
        1e-9);
}

TEST_CASE("inverse round trip and singularity") {
  const ComplexMatrix a = random_matrix(5, 5, 61) + 3.0 * ComplexMatrix::identity(5);
  const ComplexMatrix ainv = gcsi::inverse(a);
  CHECK(gcsi::frobenius_distance(a * ainv, ComplexMatrix::identity(5)) < 1e-9);
  CHECK(gcsi::frobenius_distance(ainv * a, ComplexMatrix::identity(5)) < 1e-9);
  CHECK_THROWS_AS(gcsi::inverse(kRemark), std::domain_error);
}

TEST_CASE("gram and cross_gram match explicit adjoint products") {
  const ComplexMatrix a = random_matrix(4, 3, 71);
  const ComplexMatrix b = random_matrix(4, 2, 72);
  CHECK(gcsi::frobenius_distance(gcsi::gram(a), a.adjoint() * a) < 1e-12);
  CHECK(gcsi::frobenius_distance(gcsi::cross_gram(a, b), a.adjoint() * b) < 1e-12);
  CHECK(gcsi::gram(a).hermitian_defect() == 0.0);
  CHECK_THROWS_AS(gcsi::cross_gram(a, ComplexMatrix(3, 2)), std::invalid_argument);
}

TEST_CASE("psd_max_eigenvalue closed form matches herm_eig") {
  for (std::uint64_t seed : {81u, 82u, 83u}) {
    const ComplexMatrix g2 = gcsi::gram(random_matrix(2, 2, seed));
    CHECK(gcsi::psd_max_eigenvalue(g2) ==
          doctest::Approx(gcsi::herm_eig(g2).values[0]).epsilon(1e-12));
    const ComplexMatrix g1 = gcsi::gram(random_matrix(1, 1, seed));
    CHECK(gcsi::psd_max_eigenvalue(g1) == doctest::Approx(g1(0, 0).real()));
    const ComplexMatrix g3 = gcsi::gram(random_matrix(3, 3, seed));
    CHECK(gcsi::psd_max_eigenvalue(g3) ==
          doctest::Approx(gcsi::herm_eig(g3).values[0]).epsilon(1e-12));
  }
}
