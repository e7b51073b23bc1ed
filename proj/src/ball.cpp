#include "bergman/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

void require_same_dim(const Point& z, const Point& w, const char* who) {
  if (z.dim() != w.dim())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

cd inner_product(const Point& z, const Point& w) {
  require_same_dim(z, w, "inner_product");
  cd s(0.0, 0.0);
  for (int i = 0; i < z.dim(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

double abs2(const Point& z) {
  double s = 0.0;
  for (int i = 0; i < z.dim(); ++i) s += std::norm(z[i]);
  return s;
}

double norm(const Point& z) { return std::sqrt(abs2(z)); }

Point mobius_map(const Point& a, const Point& z) {
  require_same_dim(a, z, "mobius_map");
  const double a2 = abs2(a);
  if (a2 >= 1.0) throw std::domain_error("mobius_map: |a| must be < 1");
  const int n = a.dim();
  if (a2 == 0.0) {
    Point r = z;
    for (int i = 0; i < n; ++i) r[i] = -r[i];
    return r;
  }
  const cd za = inner_product(z, a);
  const cd denom = cd(1.0, 0.0) - za;
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("mobius_map: 1 - <z,a> is numerically zero");
  const double s = std::sqrt(1.0 - a2);
  const cd proj_coef = za / a2;  // P_a z = proj_coef * a
  Point r = Point::zero(n);
  for (int i = 0; i < n; ++i) {
    const cd pa = proj_coef * a[i];
    const cd qa = z[i] - pa;
    r[i] = (a[i] - pa - s * qa) / denom;
  }
  return r;
}

Eigen::MatrixXcd mobius_jacobian_at_zero(const Point& a) {
  const double a2 = abs2(a);
  if (a2 >= 1.0) throw std::domain_error("mobius_jacobian_at_zero: |a| must be < 1");
  const int n = a.dim();
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
  const double s = std::sqrt(1.0 - a2);
  // First-order expansion of phi_a about 0:
  //   J h = (s/(1+s)) <h,a> a - s h.
  const double c = s / (1.0 + s);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cd v = c * a[i] * std::conj(a[j]);
      if (i == j) v -= s;
      J(i, j) = v;
    }
  }
  return J;
}

double pseudo_hyperbolic_distance(const Point& z, const Point& w) {
  require_same_dim(z, w, "pseudo_hyperbolic_distance");
  if (z.dim() == 1) {
    // Direct one-variable form |z - w| / |1 - conj(z) w|, cheaper than the
    // general map and used heavily by lattice verification; squared moduli
    // avoid the two guarded hypot calls (all values are well inside range).
    const cd num = z[0] - w[0];
    const cd den = cd(1.0, 0.0) - std::conj(z[0]) * w[0];
    return std::sqrt(std::norm(num) / std::norm(den));
  }
  return norm(mobius_map(z, w));
}

double bergman_distance(const Point& z, const Point& w) {
  const double rho = pseudo_hyperbolic_distance(z, w);
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  return std::atanh(rho);
}

bool in_metric_ball(const MetricBallSpec& ball, const Point& z) {
  return bergman_distance(ball.center, z) < ball.radius;
}

double metric_ball_volume(const Point& center, double radius) {
  if (radius <= 0.0) return 0.0;
  const double R = std::tanh(radius);
  const double z2 = abs2(center);
  const int n = center.dim();
  const double num = std::pow(R, 2 * n) * std::pow(1.0 - z2, n + 1);
  const double den = std::pow(1.0 - R * R * z2, n + 1);
  return num / den;
}

}  // namespace bergman
