#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace bergman {

using cd = std::complex<double>;

// A point of C^n.  Interior points of the unit ball satisfy abs2(z) < 1;
// constructors do not enforce this because boundary-adjacent evaluation
// points are legitimate inputs for scans.
struct Point {
  std::vector<cd> z;

  Point() = default;
  explicit Point(std::vector<cd> coords) : z(std::move(coords)) {}
  static Point zero(int n) { return Point(std::vector<cd>(static_cast<size_t>(n), cd(0.0, 0.0))); }
  // Convenience for one complex dimension.
  static Point disk(cd v) { return Point(std::vector<cd>{v}); }

  int dim() const { return static_cast<int>(z.size()); }
  cd operator[](int i) const { return z[static_cast<size_t>(i)]; }
  cd& operator[](int i) { return z[static_cast<size_t>(i)]; }
};

// Hermitian inner product <z,w> = sum_k z_k * conj(w_k).
cd inner_product(const Point& z, const Point& w);

// Squared Euclidean norm |z|^2 and norm |z|.
double abs2(const Point& z);
double norm(const Point& z);

// Involutive automorphism of the ball exchanging 0 and a:
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),  s_a = sqrt(1 - |a|^2),
// with P_a the projection onto span{a} and Q_a = I - P_a.  phi_0(z) = -z.
// Throws std::domain_error if |1 - <z,a>| is numerically zero.
Point mobius_map(const Point& a, const Point& z);

// Complex Jacobian J of phi_a at z = 0: phi_a(h) = a + J h + O(|h|^2).
// For n = 1 this is the scalar -(1 - |a|^2).
Eigen::MatrixXcd mobius_jacobian_at_zero(const Point& a);

// Pseudo-hyperbolic distance rho(z,w) = |phi_z(w)|, a Mobius invariant in [0,1).
double pseudo_hyperbolic_distance(const Point& z, const Point& w);

// Bergman (hyperbolic) distance beta(z,w) = arctanh(rho(z,w)).
double bergman_distance(const Point& z, const Point& w);

// Metric ball D(center, radius) in the Bergman distance.
struct MetricBallSpec {
  Point center;
  double radius = 0.0;
};

bool in_metric_ball(const MetricBallSpec& ball, const Point& z);

// Normalized volume of the metric ball D(z, radius):
//   v(D(z,r)) = R^{2n} (1-|z|^2)^{n+1} / (1 - R^2 |z|^2)^{n+1},  R = tanh(r).
double metric_ball_volume(const Point& center, double radius);

}  // namespace bergman
