#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bergman/multiindex.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

long binomial(int a, int b) {
  long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

Point random_point(Rng& rng, int n) {
  Point z = Point::zero(n);
  for (int i = 0; i < n; ++i) z[i] = 0.6 * rng.cnormal();
  return z;
}

}  // namespace

TEST_CASE("multi-index basics and graded lexicographic order") {
  const MultiIndex a(std::vector<int>{2, 1});
  const MultiIndex b(std::vector<int>{1, 2});
  const MultiIndex c(std::vector<int>{0, 4});
  CHECK(a.order() == 3);
  CHECK(a.dim() == 2);
  CHECK(b < a);        // same degree, lexicographically smaller
  CHECK(a < c);        // lower total degree first
  CHECK(a.dominates(b) == false);
  CHECK(a.dominates(MultiIndex(std::vector<int>{1, 1})));
  CHECK((a + b) == MultiIndex(std::vector<int>{3, 3}));
  CHECK((a - MultiIndex(std::vector<int>{1, 0})) == MultiIndex(std::vector<int>{1, 1}));
}

TEST_CASE("basis enumeration counts, order, and inverse lookup") {
  for (int n = 1; n <= 3; ++n) {
    for (int d = 0; d <= 6; ++d) {
      const auto basis = basis_multi_indices(n, d);
      // |{m : |m| <= d}| = C(n + d, n).
      CHECK(static_cast<long>(basis.size()) == binomial(n + d, n));
      CHECK(basis_size(n, d) == static_cast<int>(basis.size()));
      for (size_t i = 0; i < basis.size(); ++i) {
        if (i + 1 < basis.size()) CHECK(basis[i] < basis[i + 1]);
        CHECK(basis_position(basis[i], d) == static_cast<int>(i));
      }
    }
  }
  CHECK(basis_position(MultiIndex(std::vector<int>{5}), 4) == -1);
}

TEST_CASE("monomials, constants, and coefficient access") {
  const MultiIndex m(std::vector<int>{2, 1});
  const Polynomial f = Polynomial::monomial(m, cd(2.0, -1.0));
  CHECK(f.dim() == 2);
  CHECK(f.degree() == 3);
  CHECK(f.term_count() == 1);
  CHECK(f.coefficient(m) == cd(2.0, -1.0));
  CHECK(f.coefficient(MultiIndex::zero(2)) == cd(0.0, 0.0));
  const Point z(std::vector<cd>{cd(0.5, 0.5), cd(0.0, 1.0)});
  const cd expect = cd(2.0, -1.0) * z[0] * z[0] * z[1];
  CHECK(std::abs(f.evaluate(z) - expect) < 1e-15);

  const Polynomial one = Polynomial::constant(2, cd(3.0, 0.0));
  CHECK(one.degree() == 0);
  CHECK(std::abs(one.evaluate(z) - cd(3.0, 0.0)) < 1e-15);

  CHECK(Polynomial::zero(2).degree() == -1);
  CHECK(Polynomial::zero(2).is_zero());
  // Exact zero coefficients are dropped.
  Polynomial g(2);
  g.set_coefficient(m, cd(1.0, 0.0));
  g.set_coefficient(m, cd(0.0, 0.0));
  CHECK(g.is_zero());
  g.add_term(m, cd(1.0, 0.0));
  g.add_term(m, cd(-1.0, 0.0));
  CHECK(g.is_zero());
}

TEST_CASE("arithmetic agrees with pointwise evaluation") {
  Rng rng(41);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      const Polynomial f = random_polynomial(n, 4, rng);
      const Polynomial g = random_polynomial(n, 3, rng);
      const Point z = random_point(rng, n);
      CHECK(std::abs((f + g).evaluate(z) - (f.evaluate(z) + g.evaluate(z))) < 1e-12);
      CHECK(std::abs((f - g).evaluate(z) - (f.evaluate(z) - g.evaluate(z))) < 1e-12);
      CHECK(std::abs((f * g).evaluate(z) - f.evaluate(z) * g.evaluate(z)) < 1e-11);
      const cd c(0.5, -2.0);
      CHECK(std::abs((f * c).evaluate(z) - c * f.evaluate(z)) < 1e-12);
      CHECK(std::abs((c * f).evaluate(z) - c * f.evaluate(z)) < 1e-12);
      Polynomial h = f;
      h += g;
      CHECK(h == f + g);
    }
  }
  // Product degree adds; convolution hits every coefficient.
  const Polynomial zpoly = Polynomial::monomial(MultiIndex(std::vector<int>{1}), 1.0);
  Polynomial onePlusZ = Polynomial::constant(1, 1.0) + zpoly;
  const Polynomial square = onePlusZ * onePlusZ;
  CHECK(square.degree() == 2);
  CHECK(square.coefficient(MultiIndex(std::vector<int>{0})) == cd(1.0, 0.0));
  CHECK(square.coefficient(MultiIndex(std::vector<int>{1})) == cd(2.0, 0.0));
  CHECK(square.coefficient(MultiIndex(std::vector<int>{2})) == cd(1.0, 0.0));
}

TEST_CASE("coefficient conjugation represents conj(f(conj z))") {
  Rng rng(42);
  const Polynomial f = random_polynomial(2, 4, rng);
  const Polynomial fc = f.conjugate_coefficients();
  const Point z = random_point(rng, 2);
  Point zc = z;
  for (int i = 0; i < 2; ++i) zc[i] = std::conj(z[i]);
  CHECK(std::abs(fc.evaluate(z) - std::conj(f.evaluate(zc))) < 1e-12);
  CHECK(fc.conjugate_coefficients() == f);
}

TEST_CASE("truncation keeps exactly the low-degree terms") {
  Rng rng(43);
  const Polynomial f = random_polynomial(2, 6, rng);
  const Polynomial t = f.truncate(3);
  CHECK(t.degree() <= 3);
  for (const auto& [m, c] : f.terms()) {
    if (m.order() <= 3) {
      CHECK(t.coefficient(m) == c);
    } else {
      CHECK(t.coefficient(m) == cd(0.0, 0.0));
    }
  }
  CHECK(f.truncate(6) == f);
  CHECK(f.truncate(-1).is_zero());
}

TEST_CASE("string form round-trips and parses literal input") {
  Rng rng(44);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      const Polynomial f = random_polynomial(n, 5, rng);
      const Polynomial back = Polynomial::parse(f.str(), n);
      REQUIRE(back.term_count() == f.term_count());
      for (const auto& [m, c] : f.terms()) {
        CHECK(std::abs(back.coefficient(m) - c) < 1e-15 * (1.0 + std::abs(c)));
      }
    }
  }
  const Polynomial lit = Polynomial::parse("1+0i + 2+0i * z1^1 + 0+1i * z1^2", 1);
  CHECK(lit.coefficient(MultiIndex(std::vector<int>{0})) == cd(1.0, 0.0));
  CHECK(lit.coefficient(MultiIndex(std::vector<int>{1})) == cd(2.0, 0.0));
  CHECK(lit.coefficient(MultiIndex(std::vector<int>{2})) == cd(0.0, 1.0));
  CHECK(Polynomial::parse("0+0i", 2).is_zero());
  CHECK_THROWS_AS((void)Polynomial::parse("nonsense", 1), std::invalid_argument);
}

TEST_CASE("random polynomials are seed-deterministic with a full basis") {
  Rng a(7), b(7), c(8);
  const Polynomial fa = random_polynomial(2, 4, a);
  const Polynomial fb = random_polynomial(2, 4, b);
  const Polynomial fc = random_polynomial(2, 4, c);
  CHECK(fa == fb);
  CHECK(fa.term_count() == static_cast<size_t>(basis_size(2, 4)));
  CHECK(fa.degree() == 4);
  bool differs = false;
  for (const auto& [m, coeff] : fa.terms()) {
    if (std::abs(coeff - fc.coefficient(m)) > 0.0) {
      differs = true;
      break;
    }
  }
  CHECK(differs);
}
