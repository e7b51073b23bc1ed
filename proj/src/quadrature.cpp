#include "bergman/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bergman {

void gauss_jacobi_01(int order, double alpha, std::vector<double>& t,
                     std::vector<double>& w) {
  if (order < 1) throw std::invalid_argument("gauss_jacobi_01: order must be >= 1");
  if (alpha <= -1.0) throw std::invalid_argument("gauss_jacobi_01: alpha must be > -1");
  // Jacobi weight (1-x)^alpha (1+x)^0 on [-1,1]; recurrence coefficients of
  // the monic orthogonal polynomials, then Golub-Welsch.
  const double a = alpha, b = 0.0;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int k = 0; k < order; ++k) {
    const double s = 2.0 * k + a + b;
    double diag;
    if (k == 0)
      diag = (b - a) / (a + b + 2.0);
    else
      diag = (b * b - a * a) / (s * (s + 2.0));
    J(k, k) = diag;
    if (k >= 1) {
      double beta_k;
      if (k == 1)
        beta_k = 4.0 * (1.0 + a) * (1.0 + b) /
                 ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
      else
        beta_k = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                 (s * s * (s + 1.0) * (s - 1.0));
      const double off = std::sqrt(beta_k);
      J(k, k - 1) = off;
      J(k - 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_jacobi_01: eigensolver failed");
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  t.resize(static_cast<size_t>(order));
  w.resize(static_cast<size_t>(order));
  const double scale = std::pow(2.0, -(alpha + 1.0));  // map [-1,1] -> [0,1]
  for (int i = 0; i < order; ++i) {
    const double x = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    t[static_cast<size_t>(i)] = 0.5 * (x + 1.0);
    w[static_cast<size_t>(i)] = scale * mu0 * v0 * v0;
  }
}

QuadratureRule exact_polar_rule(double alpha, int radial_order, int angular_order) {
  if (angular_order < 1) throw std::invalid_argument("exact_polar_rule: angular_order >= 1");
  std::vector<double> t, w;
  gauss_jacobi_01(radial_order, alpha, t, w);
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::ExactPolar;
  rule.n = 1;
  rule.alpha = alpha;
  rule.exactness_degree =
      std::min(angular_order - 1, 4 * radial_order - 2);
  const double c = normalization_constant(alpha, 1);
  rule.nodes.reserve(static_cast<size_t>(radial_order * angular_order));
  rule.weights.reserve(static_cast<size_t>(radial_order * angular_order));
  for (int j = 0; j < radial_order; ++j) {
    const double r = std::sqrt(t[static_cast<size_t>(j)]);
    const double wj = c * w[static_cast<size_t>(j)] / angular_order;
    for (int k = 0; k < angular_order; ++k) {
      const double th = 2.0 * M_PI * k / angular_order;
      rule.nodes.push_back(Point::disk(cd(r * std::cos(th), r * std::sin(th))));
      rule.weights.push_back(wj);
    }
  }
  return rule;
}

QuadratureRule monte_carlo_rule(int n, double alpha, long samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_rule: samples >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::MonteCarlo;
  rule.n = n;
  rule.alpha = alpha;
  rule.seed = seed;
  Rng rng = Rng::stream(seed, "quadrature-mc");
  rule.nodes.reserve(static_cast<size_t>(samples));
  rule.weights.assign(static_cast<size_t>(samples), 1.0 / static_cast<double>(samples));
  for (long i = 0; i < samples; ++i) rule.nodes.push_back(rng.ball_point(n, alpha));
  return rule;
}

QuadratureRule build_rule(int n, double alpha, const RuleSpec& spec) {
  if (n < 1) throw std::invalid_argument("build_rule: n must be >= 1");
  if (n > 4)
    throw std::invalid_argument(
        "build_rule: n > 4 is outside the supported desk-scale range");
  if (n == 1) return exact_polar_rule(alpha, spec.radial_order, spec.angular_order);
  return monte_carlo_rule(n, alpha, spec.samples, spec.seed);
}

cd integrate(const QuadratureRule& rule, const Evaluable& f) {
  cd acc(0.0, 0.0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

IntegrationResult integrate_real(const QuadratureRule& rule,
                                 const std::function<double(const Point&)>& f) {
  IntegrationResult res;
  if (rule.kind == QuadratureRule::Kind::MonteCarlo) {
    // All weights are 1/N; accumulate mean and variance of the samples.
    const double N = static_cast<double>(rule.nodes.size());
    double mean = 0.0, m2 = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = f(rule.nodes[i]);
      const double d = v - mean;
      mean += d / static_cast<double>(i + 1);
      m2 += d * (v - mean);
    }
    res.value = mean;
    res.standard_error = (rule.nodes.size() > 1)
                             ? std::sqrt(m2 / (N - 1.0) / N)
                             : 0.0;
  } else {
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    res.value = acc;
    res.standard_error = 0.0;
  }
  return res;
}

double lp_norm(const Evaluable& f, const SpaceParams& sp, const QuadratureRule& rule) {
  if (rule.n != sp.n) throw std::invalid_argument("lp_norm: rule dimension != space dimension");
  if (rule.alpha != sp.alpha)
    throw std::invalid_argument("lp_norm: rule weight != space weight");
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const cd v = f(rule.nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "lp_norm: non-finite evaluation at node " << i << " = (";
      for (int k = 0; k < rule.nodes[i].dim(); ++k) {
        if (k) os << ", ";
        os << rule.nodes[i][k].real() << "+" << rule.nodes[i][k].imag() << "i";
      }
      os << ")";
      throw std::runtime_error(os.str());
    }
    acc += rule.weights[i] * std::pow(std::norm(v), sp.p / 2.0);
  }
  return std::pow(acc, 1.0 / sp.p);
}

namespace {

// Nodes/weights of Gauss-Legendre on [-1,1], computed once per order by
// Golub-Welsch (Legendre is Jacobi with alpha = beta = 0).
void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = off;
    J(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(static_cast<size_t>(order));
  w.resize(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) {
    x[static_cast<size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    w[static_cast<size_t>(i)] = 2.0 * v0 * v0;
  }
}

// Integral over [lo,hi] of g with a fixed Gauss-Legendre panel rule.
template <typename F>
double panel_integral(const F& g, double lo, double hi, const std::vector<double>& x,
                      const std::vector<double>& w) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (size_t i = 0; i < x.size(); ++i) acc += w[i] * g(mid + half * x[i]);
  return acc * half;
}

// Panels graded geometrically toward the right endpoint hi, first panel of
// width (hi-lo)/2, halving until min_panel.
template <typename F>
double graded_integral(const F& g, double lo, double hi, double min_panel,
                       const std::vector<double>& x, const std::vector<double>& w) {
  double acc = 0.0;
  double left = lo;
  double width = 0.5 * (hi - lo);
  while (width > min_panel) {
    acc += panel_integral(g, left, left + width, x, w);
    left += width;
    width *= 0.5;
  }
  acc += panel_integral(g, left, hi, x, w);
  return acc;
}

}  // namespace

std::vector<ForelliRudinPoint> forelli_rudin_scan(int n, double t, double s,
                                                  const std::vector<double>& radii,
                                                  const BoundaryRuleConfig& cfg) {
  if (t <= -1.0) throw std::invalid_argument("forelli_rudin_scan: t must be > -1");
  if (n < 1) throw std::invalid_argument("forelli_rudin_scan: n must be >= 1");
  std::vector<double> glx, glw;
  gauss_legendre(cfg.panel_nodes, glx, glw);

  // Rotation invariance reduces the ball integral to one complex slice u:
  //   I(z) = n! Gamma(t+1)/Gamma(t+n) *
  //          (1/pi) int_{|u|<1} (1-|u|^2)^{t+n-1} |1 - |z| u|^{-(n+1+t+s)} dA(u).
  const double tau = t + n - 1.0;
  const double c = n + 1.0 + t + s;
  const double front = std::exp(std::lgamma(n + 1.0) + std::lgamma(t + 1.0) -
                                std::lgamma(t + n));

  std::vector<ForelliRudinPoint> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (r < 0.0 || r >= 1.0)
      throw std::invalid_argument("forelli_rudin_scan: radii must lie in [0,1)");
    auto angular = [&](double rho) {
      // 2 * int_0^pi ((1-r rho)^2 + 4 r rho sin^2(h/2))^{-c/2} dh, graded
      // toward h = 0 where the integrand peaks.
      const double base = (1.0 - r * rho) * (1.0 - r * rho);
      const double coef = 4.0 * r * rho;
      auto g = [&](double h) {
        const double sh = std::sin(0.5 * h);
        return std::pow(base + coef * sh * sh, -0.5 * c);
      };
      // Integrate from pi down toward 0 with geometric grading at 0.
      auto grev = [&](double u) { return g(M_PI - u); };
      return 2.0 * graded_integral(grev, 0.0, M_PI, cfg.min_panel, glx, glw);
    };
    auto radial = [&](double rho) {
      return std::pow(std::max(1.0 - rho * rho, 0.0), tau) * rho * angular(rho);
    };
    const double disk = graded_integral(radial, 0.0, 1.0, cfg.min_panel, glx, glw) / M_PI;
    ForelliRudinPoint pt;
    pt.radius = r;
    pt.integral = front * disk;
    pt.product = pt.integral * std::pow(1.0 - r * r, s);
    out.push_back(pt);
  }
  return out;
}

}  // namespace bergman
