#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bergman/ball.hpp"
#include "bergman/rng.hpp"
#include "bergman/spaces.hpp"

namespace bergman {

using Evaluable = std::function<cd(const Point&)>;

// Discretization of the probability measure dv_alpha on the ball.
//
// n = 1: "exact polar" product rule, Gauss-Jacobi in t = r^2 against the
// weight (1-t)^alpha times a uniform angular grid.  Integrates z^m conj(z)^l
// exactly (up to roundoff) whenever m + l <= exactness_degree.
//
// n >= 2: seeded Monte Carlo, nodes drawn from dv_alpha itself so all weights
// are 1/N; exactness_degree is empty and integrate_real reports a standard
// error.
struct QuadratureRule {
  enum class Kind { ExactPolar, MonteCarlo };
  Kind kind = Kind::ExactPolar;
  int n = 1;
  double alpha = 0.0;
  std::vector<Point> nodes;
  std::vector<double> weights;  // sums to 1
  std::optional<int> exactness_degree;
  uint64_t seed = 0;  // Monte Carlo only
};

struct RuleSpec {
  int radial_order = 48;    // Gauss-Jacobi points (n = 1)
  int angular_order = 97;   // angular grid size (n = 1)
  long samples = 200000;    // Monte Carlo sample count (n >= 2)
  uint64_t seed = 20240901; // Monte Carlo seed
};

// Dispatches on n; throws for n > 4 (outside the supported desk range).
QuadratureRule build_rule(int n, double alpha, const RuleSpec& spec = {});

QuadratureRule exact_polar_rule(double alpha, int radial_order, int angular_order);
QuadratureRule monte_carlo_rule(int n, double alpha, long samples, uint64_t seed);

// Gauss-Jacobi nodes/weights on [0,1] for the weight (1-t)^alpha, by
// Golub-Welsch.  Weights sum to 1/(alpha+1).
void gauss_jacobi_01(int order, double alpha, std::vector<double>& t,
                     std::vector<double>& w);

struct IntegrationResult {
  double value = 0.0;
  double standard_error = 0.0;  // zero for deterministic rules
};

// Integral of a complex integrand against dv_alpha.
cd integrate(const QuadratureRule& rule, const Evaluable& f);
// Integral of a real integrand with a standard-error estimate (Monte Carlo).
IntegrationResult integrate_real(const QuadratureRule& rule,
                                 const std::function<double(const Point&)>& f);

// ( integral of |f|^p dv_alpha )^{1/p}.  Requires rule.alpha == sp.alpha and
// rule.n == sp.n; a non-finite node evaluation throws an error naming the
// offending node.
double lp_norm(const Evaluable& f, const SpaceParams& sp, const QuadratureRule& rule);

// Forelli-Rudin growth scan.  For each radius rho in radii evaluates
//   I(z) = int_B (1-|w|^2)^t / |1 - <z,w>|^{n+1+t+s} dv(w),   |z| = rho,
// by a boundary-graded panel quadrature (reduced by rotation invariance to a
// single complex slice), and reports the product I(z) (1-|z|^2)^s, which the
// growth bound says stays within constant factors for s > 0, t > -1.
struct ForelliRudinPoint {
  double radius = 0.0;
  double integral = 0.0;
  double product = 0.0;  // integral * (1-radius^2)^s
};

struct BoundaryRuleConfig {
  int panel_nodes = 16;       // Gauss-Legendre points per panel
  double min_panel = 1e-12;   // stop grading at this width
};

std::vector<ForelliRudinPoint> forelli_rudin_scan(int n, double t, double s,
                                                  const std::vector<double>& radii,
                                                  const BoundaryRuleConfig& rule = {});

}  // namespace bergman
