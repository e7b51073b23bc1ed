#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bergman/polynomial.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rng.hpp"
#include "bergman/spaces.hpp"

using namespace bergman;

TEST_CASE("space parameters validate their ranges") {
  CHECK_NOTHROW(SpaceParams(0.5, -0.5, 3));
  CHECK_THROWS_AS(SpaceParams(0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SpaceParams(2.0, -1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SpaceParams(2.0, 0.0, 0), std::invalid_argument);
}

TEST_CASE("gamma ratio and normalization constants") {
  CHECK(gamma_ratio(7.5, 3.5) ==
        doctest::Approx(std::tgamma(7.5) / std::tgamma(3.5)).epsilon(1e-13));
  CHECK_THROWS_AS((void)gamma_ratio(-1.0, 2.0), std::domain_error);
  // c_0 = 1 in every dimension; c_alpha = alpha + 1 on the disk.
  for (int n = 1; n <= 4; ++n) CHECK(normalization_constant(0.0, n) == doctest::Approx(1.0));
  for (double a : {0.5, 1.0, 2.5}) {
    CHECK(normalization_constant(a, 1) == doctest::Approx(a + 1.0).epsilon(1e-13));
    // Direct Gamma form in n = 2: (alpha+1)(alpha+2)/2.
    CHECK(normalization_constant(a, 2) ==
          doctest::Approx((a + 1.0) * (a + 2.0) / 2.0).epsilon(1e-13));
  }
}

TEST_CASE("mixed moments vanish off the diagonal and match on it") {
  const MultiIndex m(std::vector<int>{2, 1});
  const MultiIndex l(std::vector<int>{1, 2});
  CHECK(monomial_moment(m, l, 0.5, 2) == 0.0);
  CHECK(monomial_moment(m, m, 0.5, 2) ==
        doctest::Approx(monomial_moment(m, 0.5, 2)).epsilon(1e-15));
  CHECK(radial_moment(3, 0.5) ==
        doctest::Approx(monomial_moment(MultiIndex(std::vector<int>{3}), 0.5, 1))
            .epsilon(1e-15));
  CHECK_THROWS_AS((void)monomial_moment(m, 0.0, 3), std::invalid_argument);
}

TEST_CASE("holder frame satisfies its defining identities") {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const double p1 = rng.uniform(2.1, 8.0);
    const double p2 = rng.uniform(2.1, 8.0);
    const double a1 = rng.uniform(-0.5, 2.0);
    const double a2 = rng.uniform(-0.5, 2.0);
    const double al = rng.uniform(0.0, 2.0);
    const HolderFrame f = holder_frame(p1, a1, p2, a2, al, 1);
    CHECK(1.0 / f.q == doctest::Approx(1.0 / p1 + 1.0 / p2).epsilon(1e-12));
    CHECK(f.beta / f.q == doctest::Approx(a1 / p1 + a2 / p2).epsilon(1e-12));
    if (f.valid) {
      CHECK(1.0 / f.q + 1.0 / f.q_prime == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(f.beta / f.q + f.beta_prime / f.q_prime ==
            doctest::Approx(al).epsilon(1e-12));
      CHECK(f.q > 1.0);
    }
  }
}

TEST_CASE("degenerate frames carry their violated inequality") {
  // 1/2 + 1/2 = 1 is not < 1.
  const HolderFrame unit = holder_frame(2.0, 0.0, 2.0, 0.0, 0.0, 1);
  CHECK(!unit.valid);
  CHECK(!unit.product_in_range);
  CHECK(unit.violation == "1/p1 + 1/p2 < 1");
  // q > 1 but the weight budget fails: (1+0)/4 + (1+0)/4 = 0.5 >= 1 - 0.6.
  const HolderFrame weight = holder_frame(4.0, 0.0, 4.0, 0.0, -0.6, 1);
  CHECK(weight.q == doctest::Approx(2.0));
  CHECK(!weight.weight_in_range);
  CHECK(weight.violation == "(1+alpha1)/p1 + (1+alpha2)/p2 < 1 + alpha");
  // A healthy frame reports nothing.
  const HolderFrame good = holder_frame(4.0, 0.0, 4.0, 0.0, 0.0, 1);
  CHECK(good.valid);
  CHECK(good.product_in_range);
  CHECK(good.weight_in_range);
  CHECK(good.violation.empty());
  CHECK_THROWS_AS((void)holder_pairing_constant(unit), std::domain_error);
}

TEST_CASE("chain constant is the product of the two step constants") {
  const HolderFrame f = holder_frame(3.0, 0.5, 6.0, 1.0, 1.0, 1);
  REQUIRE(f.valid);
  CHECK(holder_chain_constant(f) ==
        doctest::Approx(holder_product_constant(f) * holder_pairing_constant(f))
            .epsilon(1e-15));
  CHECK(holder_product_constant(f) > 0.0);
  CHECK(holder_pairing_constant(f) > 0.0);
}

TEST_CASE("product Holder inequality holds on random polynomials") {
  // ||f g||_{q,beta} <= C_prod ||f||_{p1,a1} ||g||_{p2,a2}, checked by
  // quadrature on the disk.
  Rng rng(32);
  const HolderFrame fr = holder_frame(4.0, 0.0, 4.0, 0.5, 0.5, 1);
  REQUIRE(fr.valid);
  const double cp = holder_product_constant(fr);
  const QuadratureRule r1 = build_rule(1, fr.alpha1);
  const QuadratureRule r2 = build_rule(1, fr.alpha2);
  const QuadratureRule rq = build_rule(1, fr.beta);
  for (int rep = 0; rep < 50; ++rep) {
    const Polynomial f = random_polynomial(1, 5, rng);
    const Polynomial g = random_polynomial(1, 5, rng);
    const Polynomial prod = f * g;
    const double nf = lp_norm([&](const Point& z) { return f.evaluate(z); },
                              SpaceParams(fr.p1, fr.alpha1, 1), r1);
    const double ng = lp_norm([&](const Point& z) { return g.evaluate(z); },
                              SpaceParams(fr.p2, fr.alpha2, 1), r2);
    const double np = lp_norm([&](const Point& z) { return prod.evaluate(z); },
                              SpaceParams(fr.q, fr.beta, 1), rq);
    CHECK(np <= cp * nf * ng * (1.0 + 1e-10));
  }
}

TEST_CASE("pairing Holder inequality holds on random polynomials") {
  // |<u, b>_alpha| <= C_pair ||u||_{q,beta} ||b||_{q',beta'}.
  Rng rng(33);
  const HolderFrame fr = holder_frame(4.0, 0.0, 4.0, 0.0, 0.5, 1);
  REQUIRE(fr.valid);
  const double cpair = holder_pairing_constant(fr);
  const QuadratureRule ra = build_rule(1, fr.alpha);
  const QuadratureRule rq = build_rule(1, fr.beta);
  const QuadratureRule rqp = build_rule(1, fr.beta_prime);
  for (int rep = 0; rep < 50; ++rep) {
    const Polynomial u = random_polynomial(1, 6, rng);
    const Polynomial b = random_polynomial(1, 6, rng);
    const cd pair = integrate(ra, [&](const Point& z) {
      return u.evaluate(z) * std::conj(b.evaluate(z));
    });
    const double nu = lp_norm([&](const Point& z) { return u.evaluate(z); },
                              SpaceParams(fr.q, fr.beta, 1), rq);
    const double nb = lp_norm([&](const Point& z) { return b.evaluate(z); },
                              SpaceParams(fr.q_prime, fr.beta_prime, 1), rqp);
    CHECK(std::abs(pair) <= cpair * nu * nb * (1.0 + 1e-10));
  }
}

TEST_CASE("kernel power norm series agrees with quadrature") {
  const QuadratureRule rule = exact_polar_rule(0.5, 64, 129);
  for (double e : {1.5, 2.0, 3.0}) {
    for (double av : {0.0, 0.3, 0.6}) {
      const Point a = Point::disk(cd(av, 0.2 * av));
      for (double p : {2.0, 4.0, 4.0 / 3.0}) {
        const SpaceParams sp(p, 0.5, 1);
        const double series = kernel_power_norm(e, a, sp);
        const double quad = lp_norm(
            [&](const Point& z) {
              return std::pow(cd(1.0, 0.0) - z[0] * std::conj(a[0]), -e);
            },
            sp, rule);
        CHECK(series == doctest::Approx(quad).epsilon(1e-8));
      }
    }
  }
  CHECK_THROWS_AS((void)kernel_power_norm(2.0, Point::disk(cd(1.0, 0.0)),
                                          SpaceParams(2.0, 0.0, 1)),
                  std::domain_error);
  CHECK_THROWS_AS((void)kernel_power_norm(-1.0, Point::disk(cd(0.0, 0.0)),
                                          SpaceParams(2.0, 0.0, 1)),
                  std::domain_error);
}

TEST_CASE("scaled kernel norm folds the decay prefactor in front") {
  const Point a = Point::disk(cd(0.5, -0.25));
  const SpaceParams sp(2.0, 0.0, 1);
  const double base = kernel_power_norm(2.5, a, sp);
  const double c = 1.75;
  const double scaled = kernel_power_norm_scaled(2.5, c, a, sp);
  CHECK(scaled == doctest::Approx(std::pow(1.0 - abs2(a), c) * base).epsilon(1e-12));
}
