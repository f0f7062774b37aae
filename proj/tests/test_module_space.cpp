#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gcsi/module_space.hpp"

using gcsi::Complex;
using gcsi::ComplexMatrix;
using gcsi::ModuleElement;
using gcsi::ModuleSpace;

TEST_CASE("inner product is the adjoint-times product and matches the adjoint relation") {
  const ModuleSpace space{3, 2};
  gcsi::Rng rng(7);
  const ComplexMatrix a = rng.ginibre(3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const ModuleElement x = gcsi::random_element(space, rng);
    const ModuleElement y = gcsi::random_element(space, rng);

    const ComplexMatrix direct = x.value().adjoint() * y.value();
    CHECK(gcsi::frobenius_distance(gcsi::inner(x, y), direct) < 1e-12);

    // <Ax, y> = <x, A^*y>
    const ComplexMatrix lhs = gcsi::inner(gcsi::apply_op(a, x), y);
    const ComplexMatrix rhs = gcsi::inner(x, gcsi::apply_op(a.adjoint(), y));
    CHECK(gcsi::frobenius_distance(lhs, rhs) /
              std::max(1.0, lhs.frobenius_norm()) <
          1e-12);

    // conjugate symmetry <x,y> = <y,x>^*
    CHECK(gcsi::frobenius_distance(gcsi::inner(x, y),
                                   gcsi::inner(y, x).adjoint()) < 1e-12);
  }
}

TEST_CASE("module norm is the largest singular value") {
  const ModuleSpace space{2, 2};
  ComplexMatrix v(2, 2);
  v(0, 0) = Complex{1, 0};
  v(1, 1) = Complex{2, 0};
  CHECK(gcsi::elem_norm(ModuleElement(space, v)) == doctest::Approx(2.0).epsilon(1e-14));

  ComplexMatrix col(3, 1);
  col(0, 0) = Complex{3, 0};
  col(1, 0) = Complex{0, 4};
  CHECK(gcsi::elem_norm(ModuleElement(ModuleSpace{3, 1}, col)) ==
        doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("Cauchy-Schwarz margin is never significantly negative") {
  gcsi::Rng rng(11);
  double worst = 0.0;
  long pairs = 0;
  for (std::size_t k : {1u, 2u, 3u}) {
    const ModuleSpace space{3, k};
    for (int trial = 0; trial < 34000; ++trial) {
      const ModuleElement x = gcsi::random_element(space, rng);
      const ModuleElement y = gcsi::random_element(space, rng);
      const double m = gcsi::cs_margin(x, y);
      if (m < worst) worst = m;
      ++pairs;
    }
  }
  CHECK(pairs >= 100000);
  CHECK(worst >= -1e-10);
}

TEST_CASE("mean squared norm of Gaussian elements matches its expectation") {
  const ModuleSpace space{4, 1};
  gcsi::Rng rng(13);
  double sum = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const double nrm = gcsi::elem_norm(gcsi::random_element(space, rng));
    sum += nrm * nrm;
  }
  const double mean_over_n = sum / samples / static_cast<double>(space.n);
  CHECK(mean_over_n > 0.95);
  CHECK(mean_over_n < 1.05);
}

TEST_CASE("normalized scales to unit norm and flags zero input") {
  const ModuleSpace space{3, 2};
  gcsi::Rng rng(17);
  const ModuleElement x = gcsi::random_element(space, rng);
  bool was_zero = true;
  const ModuleElement u = gcsi::normalized(x, &was_zero);
  CHECK(!was_zero);
  CHECK(gcsi::elem_norm(u) == doctest::Approx(1.0).epsilon(1e-12));

  const ModuleElement z(space, ComplexMatrix(3, 2));
  bool zero_flag = false;
  gcsi::normalized(z, &zero_flag);
  CHECK(zero_flag);
}

TEST_CASE("basis elements and vector embedding") {
  const ModuleSpace space{3, 2};
  const ModuleElement e = gcsi::basis_element(space, 1, 0);
  CHECK(e.value()(1, 0) == Complex{1.0, 0.0});
  CHECK(e.value().frobenius_norm() == doctest::Approx(1.0));
  CHECK(gcsi::elem_norm(e) == doctest::Approx(1.0));

  ComplexMatrix v(3, 1);
  v(2, 0) = Complex{0, 1};
  const ModuleElement emb = gcsi::embed_vector(space, v);
  CHECK(emb.value().cols() == 2);
  CHECK(emb.value()(2, 0) == Complex{0.0, 1.0});
  CHECK(emb.value()(2, 1) == Complex{0.0, 0.0});
}

TEST_CASE("shape and finiteness validation") {
  const ModuleSpace space{3, 2};
  CHECK_THROWS_AS(ModuleElement(space, ComplexMatrix(2, 2)), std::invalid_argument);
  ComplexMatrix bad(3, 2);
  bad(0, 0) = Complex{std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(ModuleElement(space, bad), std::invalid_argument);

  gcsi::Rng rng(19);
  const ModuleElement x = gcsi::random_element(space, rng);
  const ModuleElement other = gcsi::random_element(ModuleSpace{3, 1}, rng);
  CHECK_THROWS_AS(gcsi::inner(x, other), std::invalid_argument);
  CHECK_THROWS_AS(gcsi::apply_op(ComplexMatrix(2, 2), x), std::invalid_argument);
}

TEST_CASE("operator action is matrix multiplication on the left") {
  const ModuleSpace space{2, 2};
  gcsi::Rng rng(23);
  const ComplexMatrix a = rng.ginibre(2, 2);
  const ModuleElement x = gcsi::random_element(space, rng);
  CHECK(gcsi::frobenius_distance(gcsi::apply_op(a, x).value(), a * x.value()) == 0.0);
}
