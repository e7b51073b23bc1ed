#pragma once

#include "bergman/polynomial.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/spaces.hpp"

namespace bergman {

// Radial derivative R f = sum_m |m| c_m z^m.
Polynomial radial_derivative(const Polynomial& f);

// Holomorphic partial derivative d f / d z_i.
Polynomial partial_derivative(const Polynomial& f, int i);

// Weighted pairing <f,g>_alpha = int f conj(g) dv_alpha, evaluated exactly
// through monomial moments (monomials are orthogonal).
cd pairing_alpha(const Polynomial& f, const Polynomial& g, double alpha);

// Norm induced by the pairing: sqrt(<f,f>_alpha); equals the A^2_alpha norm.
double pairing_norm(const Polynomial& f, double alpha);

// Grid for supremum-type seminorms: rays through the origin times a radial
// grid, each ray polished by golden-section refinement.  Estimates are lower
// bounds of the true supremum and nondecreasing under grid refinement
// (radial grids nest under doubling).
struct SupGridSpec {
  int rays = 64;          // directions (n = 1: roots of unity)
  int radial = 96;        // radial grid points k/radial
  int refine_iters = 40;  // golden-section iterations per ray
  double max_radius = 1.0 - 1e-9;
  uint64_t seed = 7;      // direction sampling for n >= 2
};

// sup over the ball of weight(|z|) * |g(z)| for a radial weight.
double sup_over_grid(const std::function<double(double)>& weight,
                     const Evaluable& g, int n, const SupGridSpec& grid);

// Bloch seminorm estimate sup (1-|z|^2) |R f(z)| and full norm
// |f(0)| + seminorm.
double bloch_seminorm(const Polynomial& f, const SupGridSpec& grid = {});
double bloch_norm(const Polynomial& f, const SupGridSpec& grid = {});

// Invariant gradient: grad(f o phi_z)(0) = J_z^T grad f(z); returns its
// Euclidean length.
double invariant_gradient_norm(const Polynomial& f, const Point& z);

// Logarithmic weight diagnostics of a symbol f for the dual exponent p' and
// weight alpha:
//   log_norm         || f(z) log(2/(1-|z|)) ||_{L^{p'}(dv_alpha)}
//   log_sup          sup (1-|z|^2)^{(n+1+alpha)/p'} |f(z)| log(2/(1-|z|^2))
//   half_log_integral int |f|^{p'} (log(2/(1-|z|^2)))^{p'/2} dv_alpha
struct LogWeightDiagnostics {
  double log_norm = 0.0;
  double log_sup = 0.0;
  double half_log_integral = 0.0;
  double dual_p = 0.0;
};

LogWeightDiagnostics log_weight_diagnostics(const Polynomial& f, double dual_p,
                                            double alpha, const QuadratureRule& rule,
                                            const SupGridSpec& grid = {});

}  // namespace bergman
