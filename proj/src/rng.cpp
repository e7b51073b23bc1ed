#include "bergman/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(uint64_t seed, std::string_view tag) {
  uint64_t h = seed ^ 0x243f6a8885a308d3ull;
  for (char c : tag) {
    h ^= static_cast<uint64_t>(static_cast<unsigned char>(c));
    splitmix64(h);
  }
  uint64_t state = h;
  return Rng(splitmix64(state));
}

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

uint64_t Rng::below(uint64_t m) {
  if (m == 0) throw std::invalid_argument("Rng::below: empty range");
  // Rejection keeps the draw exactly uniform.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % m;
  uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return v % m;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1, u2;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cd Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return cd(re, im) / std::sqrt(2.0);
}

double Rng::gamma(double shape) {
  if (shape <= 0.0) throw std::invalid_argument("Rng::gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back (Marsaglia-Tsang section 4).
    const double g = gamma(shape + 1.0);
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

Point Rng::sphere_point(int n) {
  Point p = Point::zero(n);
  double s = 0.0;
  do {
    for (int i = 0; i < n; ++i) p[i] = cnormal();
    s = abs2(p);
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (int i = 0; i < n; ++i) p[i] *= inv;
  return p;
}

Point Rng::ball_point(int n, double alpha) {
  const double t = beta(static_cast<double>(n), alpha + 1.0);
  Point p = sphere_point(n);
  const double r = std::sqrt(t);
  for (int i = 0; i < n; ++i) p[i] *= r;
  return p;
}

}  // namespace bergman
