#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "bergman/ball.hpp"

namespace bergman {

// Deterministic random streams.  The engine is std::mt19937_64 (its output
// sequence is fixed by the standard); all distributions are generated here by
// explicit algorithms so that results do not depend on the standard library
// implementation.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // Independent substream derived from (seed, tag); used so that scenarios
  // can hand out reproducible per-purpose streams.
  static Rng stream(uint64_t seed, std::string_view tag);

  uint64_t raw() { return eng_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, m).
  uint64_t below(uint64_t m);

  // Standard normal via Box-Muller (both values used).
  double normal();

  // Standard complex Gaussian (variance 1 per real part pair).
  cd cnormal();

  // Gamma(shape, 1) via Marsaglia-Tsang, shape > 0.
  double gamma(double shape);

  // Beta(a, b) from two Gammas.
  double beta(double a, double b);

  // Uniform point on the unit sphere of C^n.
  Point sphere_point(int n);

  // Point of the ball drawn from the probability measure dv_alpha:
  // |z|^2 ~ Beta(n, alpha+1), direction uniform.
  Point ball_point(int n, double alpha);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bergman
