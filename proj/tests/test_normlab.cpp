#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bergman/normlab.hpp"
#include "bergman/poly_calculus.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

Polynomial zmono(int k, cd c = cd(1.0, 0.0)) {
  return Polynomial::monomial(MultiIndex(std::vector<int>{k}), c);
}

double quadrature_norm(const Polynomial& f, const SpaceParams& sp) {
  const QuadratureRule rule = build_rule(sp.n, sp.alpha);
  return lp_norm([&](const Point& z) { return f.evaluate(z); }, sp, rule);
}

}  // namespace

TEST_CASE("svd norm of the shift-symbol Hankel operator is 1/sqrt(2)") {
  // S_z on the unweighted disk space: the largest singular value of the
  // two-by-two truncation (and of every larger one) is 1/sqrt(2).
  const SpaceParams hil(2.0, 0.0, 1);
  for (int degree : {1, 6, 12}) {
    const TruncatedOperator op = small_hankel_matrix(zmono(1), hil, hil, 0.0, degree, degree);
    const NormEstimate est = opnorm_svd(op);
    CHECK(est.value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(est.method == "svd");
    CHECK(est.converged);
    REQUIRE(!est.witnesses.empty());
    // The witness is unit-norm and attains the value.
    const Polynomial g = est.witnesses[0];
    CHECK(pairing_norm(g, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
    const Polynomial image = small_hankel_apply(zmono(1), g, 0.0);
    CHECK(pairing_norm(image, 0.0) == doctest::Approx(est.value).epsilon(1e-10));
  }
  // Non-Hilbert exponents are rejected.
  const TruncatedOperator op4 = small_hankel_matrix(zmono(1), SpaceParams(4.0, 0.0, 1),
                                                    hil, 0.0, 4, 4);
  CHECK_THROWS_AS((void)opnorm_svd(op4), std::invalid_argument);
}

TEST_CASE("projected ascent reproduces the svd value on Hilbert instances") {
  Rng rng(81);
  const SpaceParams dom(2.0, 0.5, 1), cod(2.0, 0.0, 1);
  for (int rep = 0; rep < 5; ++rep) {
    const Polynomial f = random_polynomial(1, 5, rng);
    const TruncatedOperator op = small_hankel_matrix(f, dom, cod, 0.25, 8, 8);
    const NormEstimate svd = opnorm_svd(op);
    AscentConfig cfg;
    cfg.restarts = 4;
    const NormEstimate asc = opnorm_ascent(op, cfg);
    CHECK(asc.converged);
    CHECK(asc.method == "ascent");
    CHECK(asc.value == doctest::Approx(svd.value).epsilon(1e-6));
    CHECK(asc.value <= svd.value * (1.0 + 1e-9));  // ascent is a lower bound
  }
  // The dispatcher picks the exact path when both exponents are 2.
  const TruncatedOperator op = small_hankel_matrix(zmono(2), dom, cod, 0.25, 6, 6);
  CHECK(opnorm(op).method == "svd");
  CHECK(opnorm(small_hankel_matrix(zmono(2), SpaceParams(4.0, 0.0, 1), cod, 0.0, 6, 6))
            .method == "ascent");
}

TEST_CASE("functional norms are exact in the Hilbert case") {
  // sup |sum ell_j c_j| over ||h|| <= 1 equals sqrt(sum |ell_j|^2 / moment_j).
  Rng rng(82);
  const double alpha = 0.5;
  const int degree = 6;
  const auto basis = basis_multi_indices(1, degree);
  Eigen::VectorXcd ell(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index j = 0; j < ell.size(); ++j) ell(j) = rng.cnormal();
  const SpaceParams dom(2.0, alpha, 1);
  const NormEstimate est = functional_norm(ell, dom, degree);
  CHECK(est.method == "riesz");
  CHECK(est.converged);
  double riesz2 = 0.0;
  for (size_t j = 0; j < basis.size(); ++j) {
    riesz2 += std::norm(ell(static_cast<Eigen::Index>(j))) /
              monomial_moment(basis[j], alpha, 1);
  }
  CHECK(est.value == doctest::Approx(std::sqrt(riesz2)).epsilon(1e-12));
  // The unit-norm witness attains the value.
  REQUIRE(!est.witnesses.empty());
  const Eigen::VectorXcd w = coefficient_vector(est.witnesses[0], degree);
  cd action(0.0, 0.0);
  for (Eigen::Index j = 0; j < ell.size(); ++j) action += ell(j) * w(j);
  CHECK(pairing_norm(est.witnesses[0], alpha) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(action) == doctest::Approx(est.value).epsilon(1e-10));
  CHECK_THROWS_AS((void)functional_norm(ell, dom, degree + 1), std::invalid_argument);
}

TEST_CASE("functional norm witnesses stay feasible for general exponents") {
  Rng rng(83);
  const int degree = 5;
  const auto basis = basis_multi_indices(1, degree);
  Eigen::VectorXcd ell(static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index j = 0; j < ell.size(); ++j) ell(j) = rng.cnormal();
  const SpaceParams dom(4.0, 0.0, 1);
  AscentConfig cfg;
  cfg.restarts = 4;
  const NormEstimate est = functional_norm(ell, dom, degree, cfg);
  CHECK(est.converged);
  REQUIRE(!est.witnesses.empty());
  const Polynomial g = est.witnesses[0];
  CHECK(quadrature_norm(g, dom) == doctest::Approx(1.0).epsilon(1e-9));
  const Eigen::VectorXcd w = coefficient_vector(g, degree);
  cd action(0.0, 0.0);
  for (Eigen::Index j = 0; j < ell.size(); ++j) action += ell(j) * w(j);
  CHECK(std::abs(action) == doctest::Approx(est.value).epsilon(1e-9));
  // The Hilbert value lower-bounds nothing here, but the estimate must at
  // least dominate the ratio of any fixed probe, e.g. h = 1.
  Eigen::VectorXcd probe = Eigen::VectorXcd::Zero(ell.size());
  probe(0) = cd(1.0, 0.0);
  CHECK(est.value >= std::abs(ell(0)) - 1e-12);  // ||1||_{4,0} = 1
}

TEST_CASE("bilinear form norm is sandwiched and attained by its witnesses") {
  const HolderFrame frame = holder_frame(4.0, 0.0, 4.0, 0.0, 0.0, 1);
  REQUIRE(frame.valid);
  const Polynomial b = zmono(2, cd(1.0, 0.5)) + zmono(0, cd(0.25, 0.0));
  AscentConfig cfg;
  cfg.restarts = 1;
  const NormEstimate est = hankel_form_norm(b, frame, 4, cfg);
  CHECK(est.method == "alternating");
  CHECK(est.converged);
  REQUIRE(est.witnesses.size() == 2);
  const Polynomial& g = est.witnesses[0];
  const Polynomial& h = est.witnesses[1];
  const SpaceParams sp1(frame.p1, frame.alpha1, 1), sp2(frame.p2, frame.alpha2, 1);
  CHECK(quadrature_norm(g, sp1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(quadrature_norm(h, sp2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(hankel_form_value(g, h, b, frame.alpha)) ==
        doctest::Approx(est.value).epsilon(1e-9));
  // Lower bound from the constant probe pair; upper bound from Holder.
  CHECK(est.value >= std::abs(hankel_form_value(Polynomial::constant(1, 1.0),
                                                Polynomial::constant(1, 1.0), b,
                                                frame.alpha)) -
                         1e-12);
  const double dual_norm = quadrature_norm(b, SpaceParams(frame.q_prime,
                                                          frame.beta_prime, 1));
  CHECK(est.value <= holder_chain_constant(frame) * dual_norm * (1.0 + 1e-9));
}

TEST_CASE("multiplier lower bound reports the best net ratio") {
  const Polynomial f = zmono(1) + Polynomial::constant(1, cd(0.5, 0.0));
  const SpaceParams target(4.0 / 3.0, 0.0, 1);
  const QuadratureRule rule = build_rule(1, target.alpha);
  std::vector<Polynomial> net;
  net.push_back(Polynomial::constant(1, 1.0));
  net.push_back(zmono(1));
  net.push_back(zmono(2) + zmono(1, cd(0.0, 1.0)));
  const NormEstimate est = multiplier_norm_lower(f, target, net, rule);
  CHECK(est.method == "net");
  REQUIRE(!est.witnesses.empty());
  double best = 0.0;
  for (const auto& g : net) {
    const double num = lp_norm([&](const Point& z) { return f.evaluate(z) * g.evaluate(z); },
                               target, rule);
    const double den = bloch_norm(g);
    best = std::max(best, num / den);
  }
  CHECK(est.value == doctest::Approx(best).epsilon(1e-9));
  // The witness reproduces the reported ratio.
  const Polynomial& g = est.witnesses[0];
  const double num = lp_norm([&](const Point& z) { return f.evaluate(z) * g.evaluate(z); },
                             target, rule);
  CHECK(num / bloch_norm(g) == doctest::Approx(est.value).epsilon(1e-9));
}

TEST_CASE("factor-cost upper bound keeps feasibility and never exceeds its start") {
  const HolderFrame frame = holder_frame(4.0, 0.0, 4.0, 0.0, 0.0, 1);
  const SpaceParams sp1(frame.p1, frame.alpha1, 1), sp2(frame.p2, frame.alpha2, 1);
  const Polynomial f = zmono(1);

  // Trivial feasible start: f = z * 1.
  std::vector<FactorPair> init;
  init.push_back({zmono(1), Polynomial::constant(1, 1.0)});
  const OplusResult res = oplus_norm_upper(f, frame, init);
  const double init_cost = quadrature_norm(zmono(1), sp1);
  CHECK(res.init_cost == doctest::Approx(init_cost).epsilon(1e-9));
  CHECK(res.cost <= res.init_cost * (1.0 + 1e-12));
  CHECK(res.residual_rel <= 1e-2);
  // Feasibility by quadrature: the kept pairs reproduce f within tolerance.
  const QuadratureRule rule = build_rule(1, frame.beta);
  const double fnorm = quadrature_norm(f, SpaceParams(frame.q, frame.beta, 1));
  const double resid =
      lp_norm(
          [&](const Point& z) {
            cd sum(0.0, 0.0);
            for (const auto& pr : res.pairs) sum += pr.phi.evaluate(z) * pr.psi.evaluate(z);
            return sum - f.evaluate(z);
          },
          SpaceParams(frame.q, frame.beta, 1), rule);
  CHECK(resid / fnorm <= 1e-2 + 1e-12);

  // An empty start is repaired by the remainder pair (f, 1) with zero residual.
  const OplusResult fixed = oplus_norm_upper(f, frame, {});
  CHECK(fixed.used_correction);
  CHECK(fixed.residual_rel == doctest::Approx(0.0));
  CHECK(fixed.cost == doctest::Approx(init_cost).epsilon(1e-9));
  REQUIRE(fixed.pairs.size() == 1);

  // A padded redundant start gets pruned without losing feasibility.
  std::vector<FactorPair> padded = init;
  padded.push_back({zmono(3, cd(1e-9, 0.0)), Polynomial::constant(1, 1.0)});
  const OplusResult pruned = oplus_norm_upper(f, frame, padded);
  CHECK(pruned.cost <= pruned.init_cost * (1.0 + 1e-12));
  CHECK(pruned.dropped >= 1);

  CHECK_THROWS_AS(
      (void)oplus_norm_upper(f, holder_frame(2.0, 0.0, 2.0, 0.0, 0.0, 1), init),
      std::invalid_argument);
}

TEST_CASE("ascent honors warm starts and reports restart bookkeeping") {
  const SpaceParams dom(4.0, 0.0, 1), cod(2.0, 0.0, 1);
  const TruncatedOperator op = small_hankel_matrix(zmono(2), dom, cod, 0.0, 6, 6);
  AscentConfig cold;
  cold.restarts = 3;
  const NormEstimate base = opnorm_ascent(op, cold);
  CHECK(base.restarts == 3);
  CHECK(base.seed == cold.seed);
  CHECK(base.degree == 6);
  AscentConfig warm = cold;
  warm.warm_start = coefficient_vector(base.witnesses[0], 6);
  const NormEstimate again = opnorm_ascent(op, warm);
  // Warm-starting from the previous winner cannot do worse.
  CHECK(again.value >= base.value * (1.0 - 1e-9));
}
