#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bergman/atoms.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Outcome of a norm estimation.  Witnesses are unit-norm polynomials
// attaining (or lower-bounding) the reported value; re-evaluating the target
// quantity on them must reproduce `value` to high accuracy.
struct NormEstimate {
  double value = 0.0;
  std::vector<Polynomial> witnesses;
  std::string method;
  int degree = 0;
  int restarts = 0;
  uint64_t seed = 0;
  bool converged = false;
};

struct AscentConfig {
  int restarts = 8;
  int max_iters = 300;
  double tol = 1e-11;     // relative improvement threshold
  double step0 = 0.5;
  uint64_t seed = 2601;
  RuleSpec rule;          // quadrature backing the non-Hilbert norms
  std::optional<Eigen::VectorXcd> warm_start;  // extra initial point
};

// Exact operator norm for Hilbert cases (both exponents 2) via the singular
// value decomposition in moment-weighted coordinates.  Throws otherwise.
NormEstimate opnorm_svd(const TruncatedOperator& op);

// General-exponent estimate by projected gradient ascent of
// ||M c||_{codomain} / ||c||_{domain} over coefficient vectors, with seeded
// restarts; a lower bound that is tight in practice for the truncation.
NormEstimate opnorm_ascent(const TruncatedOperator& op, const AscentConfig& cfg = {});

// Dispatch: SVD when both spaces are Hilbert, ascent otherwise.
NormEstimate opnorm(const TruncatedOperator& op, const AscentConfig& cfg = {});

// Norm of the coefficient functional c -> sum_i ell_i c_i over the unit ball
// of polynomials of degree <= degree in the domain space (exact for p = 2).
NormEstimate functional_norm(const Eigen::VectorXcd& ell, const SpaceParams& domain,
                             int degree, const AscentConfig& cfg = {});

// Norm of the bilinear form (g, h) -> <g h, f>_alpha over unit balls of the
// two factor spaces, restricted to degree <= degree, by alternating exact
// linear-functional maximization.  witnesses = { g, h }.
NormEstimate hankel_form_norm(const Polynomial& f, const HolderFrame& frame,
                              int degree, const AscentConfig& cfg = {});

// Lower bound for the multiplier norm g -> f g from the Bloch space into the
// target space: the best ratio ||f g||_target / ||g||_Bloch over the supplied
// net of polynomials.  witnesses = { best g }.
NormEstimate multiplier_norm_lower(const Polynomial& f, const SpaceParams& target,
                                   const std::vector<Polynomial>& net,
                                   const QuadratureRule& rule);

// Upper estimate of the factorization cost inf sum_k ||phi_k|| ||psi_k||
// subject to f = sum_k phi_k psi_k (within residual_tol, relative).
struct OplusOptions {
  double residual_tol = 1e-2;
  bool enable_polish = false;  // least-squares refit of the largest pairs
  int polish_pairs = 12;
  int polish_degree = 24;
  RuleSpec rule;
};

struct OplusResult {
  double cost = 0.0;
  double init_cost = 0.0;      // cost of the starting configuration
  double residual_rel = 0.0;
  std::vector<FactorPair> pairs;
  size_t dropped = 0;          // pairs pruned from the start set
  bool used_correction = false;  // a remainder pair was appended
  std::string method;
};

// Starts from the given pairs (typically an atom-split certificate), prunes
// low-cost pairs, optionally refits the heavy ones by weighted least squares,
// and restores feasibility exactly by appending the remainder pair
// (f - sum phi psi, 1).  Keeps the cheapest feasible configuration seen,
// including the start, so the result never exceeds the starting cost.
OplusResult oplus_norm_upper(const Polynomial& f, const HolderFrame& frame,
                             const std::vector<FactorPair>& init,
                             const OplusOptions& opt = {});

}  // namespace bergman
