#pragma once

#include <complex>
#include <string>

#include "bergman/ball.hpp"
#include "bergman/multiindex.hpp"

namespace bergman {

// Parameters (p, alpha, n) of a weighted Bergman space A^p_alpha on the unit
// ball of C^n.  Requires p > 0 and alpha > -1.
struct SpaceParams {
  double p = 2.0;
  double alpha = 0.0;
  int n = 1;

  SpaceParams() = default;
  SpaceParams(double p_, double alpha_, int n_);
};

// exp(lgamma(a) - lgamma(b)) with signs handled for positive arguments only;
// stable for the degree <= 200 range used here.
double gamma_ratio(double a, double b);

// c_alpha = Gamma(n + alpha + 1) / (n! Gamma(alpha + 1)); normalizes the
// measure dv_alpha = c_alpha (1-|z|^2)^alpha dv to total mass 1.
double normalization_constant(double alpha, int n);

// Exact moment integral of |z^m|^2 against dv_alpha:
//   m! Gamma(n+alpha+1) / Gamma(n+|m|+alpha+1).
double monomial_moment(const MultiIndex& m, double alpha, int n);

// Mixed moment integral of z^m conj(z)^l against dv_alpha; zero unless m = l.
double monomial_moment(const MultiIndex& m, const MultiIndex& l, double alpha, int n);

// Moment depending only on the total degree, for one-diagonal arguments:
// the n = 1 moment with exponent k.
double radial_moment(int k, double alpha);

// Exponent frame produced by the Holder pairing of A^{p1}_{a1} and
// A^{p2}_{a2} against the measure dv_alpha:
//   1/q  = 1/p1 + 1/p2          beta /q  = a1/p1 + a2/p2
//   1/q + 1/q' = 1              beta/q + beta'/q' = alpha.
// Degenerate frames (q <= 1, so q' is infinite or negative) are constructed
// with valid = false rather than rejected; scenario validation decides.
struct HolderFrame {
  double p1 = 0, alpha1 = 0;
  double p2 = 0, alpha2 = 0;
  double alpha = 0;  // pairing weight
  double q = 0, beta = 0;
  double q_prime = 0, beta_prime = 0;
  int n = 1;
  bool valid = false;          // q > 1 so the conjugate pair exists
  bool product_in_range = false;  // 1/p1 + 1/p2 < 1
  bool weight_in_range = false;   // (1+a1)/p1 + (1+a2)/p2 < 1 + alpha
  std::string violation;       // first violated inequality, empty if none
};

HolderFrame holder_frame(double p1, double alpha1, double p2, double alpha2,
                         double pairing_alpha, int n);

// Sharp constants of the two Holder steps, in terms of the normalization
// constants c_alpha:
//   product step   ||f g||_{q,beta}  <= C_prod ||f||_{p1,a1} ||g||_{p2,a2}
//   pairing step   |<u,b>_alpha|     <= C_pair ||u||_{q,beta} ||b||_{q',beta'}
// and their product C_chain, which bounds |T_b(f,g)| by the three norms.
double holder_product_constant(const HolderFrame& f);
double holder_pairing_constant(const HolderFrame& f);
double holder_chain_constant(const HolderFrame& f);

// Exact norm of a kernel power by coefficient series:
//   || (1 - <., a>)^{-e} ||_{p,alpha}^p
//     = sum_k [Gamma(k + ep/2) / (k! Gamma(ep/2))]^2 k! |a|^{2k}
//           Gamma(n+alpha+1) / Gamma(n+k+alpha+1),
// using |1-<z,a>|^{-ep} = |(1-<z,a>)^{-ep/2}|^2.  Requires |a| < 1.
double kernel_power_norm(double e, const Point& a, const SpaceParams& sp);

// The same series with an extra decay (1-|a|^2)^c folded in front (atom
// normalizations); returns the norm, not its p-th power.
double kernel_power_norm_scaled(double e, double prefactor_exponent, const Point& a,
                                const SpaceParams& sp);

}  // namespace bergman
