#include "bergman/poly_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman {

Polynomial radial_derivative(const Polynomial& f) {
  Polynomial r(f.dim());
  for (const auto& [m, c] : f.terms())
    if (m.order() > 0) r.add_term(m, c * static_cast<double>(m.order()));
  return r;
}

Polynomial partial_derivative(const Polynomial& f, int i) {
  Polynomial r(f.dim());
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    MultiIndex d = m;
    d[i] -= 1;
    r.add_term(d, c * static_cast<double>(m[i]));
  }
  return r;
}

cd pairing_alpha(const Polynomial& f, const Polynomial& g, double alpha) {
  if (f.dim() != g.dim()) throw std::invalid_argument("pairing_alpha: dimension mismatch");
  const int n = f.dim();
  // Iterate the sparser polynomial.
  const Polynomial& small = (f.term_count() <= g.term_count()) ? f : g;
  const Polynomial& big = (&small == &f) ? g : f;
  const bool swapped = (&small == &g);
  cd acc(0.0, 0.0);
  for (const auto& [m, c] : small.terms()) {
    const cd other = big.coefficient(m);
    if (other == cd(0.0, 0.0)) continue;
    const double mom = monomial_moment(m, alpha, n);
    if (!swapped)
      acc += c * std::conj(other) * mom;
    else
      acc += other * std::conj(c) * mom;
  }
  return acc;
}

double pairing_norm(const Polynomial& f, double alpha) {
  return std::sqrt(std::abs(pairing_alpha(f, f, alpha)));
}

namespace {

// Golden-section polish of a unimodal-near-peak profile h on [lo,hi];
// returns the best value found (never below max(h(lo), h(hi), h(seeds))).
double golden_refine(const std::function<double(double)>& h, double lo, double hi,
                     int iters) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = h(c), fd = h(d);
  double best = std::max(fc, fd);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = h(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = h(c);
    }
    best = std::max(best, std::max(fc, fd));
  }
  return best;
}

std::vector<Point> sup_directions(int n, const SupGridSpec& grid) {
  std::vector<Point> dirs;
  if (n == 1) {
    dirs.reserve(static_cast<size_t>(grid.rays));
    for (int j = 0; j < grid.rays; ++j) {
      const double th = 2.0 * M_PI * j / grid.rays;
      dirs.push_back(Point::disk(cd(std::cos(th), std::sin(th))));
    }
  } else {
    Rng rng = Rng::stream(grid.seed, "sup-grid-directions");
    dirs.reserve(static_cast<size_t>(grid.rays));
    for (int j = 0; j < grid.rays; ++j) dirs.push_back(rng.sphere_point(n));
  }
  return dirs;
}

}  // namespace

double sup_over_grid(const std::function<double(double)>& weight,
                     const Evaluable& g, int n, const SupGridSpec& grid) {
  const auto dirs = sup_directions(n, grid);
  double best = 0.0;
  for (const auto& dir : dirs) {
    auto profile = [&](double r) {
      Point z = dir;
      for (int i = 0; i < n; ++i) z[i] *= r;
      return weight(r) * std::abs(g(z));
    };
    double ray_best = 0.0;
    double arg_best = 0.0;
    for (int k = 0; k < grid.radial; ++k) {
      const double r = std::min(grid.max_radius, static_cast<double>(k) / grid.radial);
      const double v = profile(r);
      if (v > ray_best) {
        ray_best = v;
        arg_best = r;
      }
    }
    const double h = 1.0 / grid.radial;
    const double lo = std::max(0.0, arg_best - h);
    const double hi = std::min(grid.max_radius, arg_best + h);
    ray_best = std::max(ray_best, golden_refine(profile, lo, hi, grid.refine_iters));
    best = std::max(best, ray_best);
  }
  return best;
}

double bloch_seminorm(const Polynomial& f, const SupGridSpec& grid) {
  const Polynomial rf = radial_derivative(f);
  auto ev = [&rf](const Point& z) { return rf.evaluate(z); };
  return sup_over_grid([](double r) { return 1.0 - r * r; }, ev, f.dim(), grid);
}

double bloch_norm(const Polynomial& f, const SupGridSpec& grid) {
  const Point origin = Point::zero(f.dim());
  return std::abs(f.evaluate(origin)) + bloch_seminorm(f, grid);
}

double invariant_gradient_norm(const Polynomial& f, const Point& z) {
  const int n = f.dim();
  if (z.dim() != n) throw std::invalid_argument("invariant_gradient_norm: dimension mismatch");
  Eigen::VectorXcd grad(n);
  for (int i = 0; i < n; ++i) grad(i) = partial_derivative(f, i).evaluate(z);
  const Eigen::MatrixXcd J = mobius_jacobian_at_zero(z);
  const Eigen::VectorXcd tilted = J.transpose() * grad;
  return tilted.norm();
}

LogWeightDiagnostics log_weight_diagnostics(const Polynomial& f, double dual_p,
                                            double alpha, const QuadratureRule& rule,
                                            const SupGridSpec& grid) {
  if (dual_p <= 0.0) throw std::invalid_argument("log_weight_diagnostics: dual_p must be > 0");
  const int n = f.dim();
  if (rule.n != n) throw std::invalid_argument("log_weight_diagnostics: rule dimension mismatch");
  if (rule.alpha != alpha)
    throw std::invalid_argument("log_weight_diagnostics: rule weight mismatch");
  LogWeightDiagnostics d;
  d.dual_p = dual_p;

  SpaceParams sp(dual_p, alpha, n);
  auto f_log_edge = [&](const Point& z) {
    const double r = std::sqrt(abs2(z));
    return f.evaluate(z) * std::log(2.0 / (1.0 - r));
  };
  d.log_norm = lp_norm(f_log_edge, sp, rule);

  const double decay = (n + 1.0 + alpha) / dual_p;
  auto fv = [&f](const Point& z) { return f.evaluate(z); };
  d.log_sup = sup_over_grid(
      [&](double r) {
        const double om = 1.0 - r * r;
        return std::pow(om, decay) * std::log(2.0 / om);
      },
      fv, n, grid);

  auto half_log = [&](const Point& z) {
    const double om = 1.0 - abs2(z);
    const double lg = std::log(2.0 / om);
    return std::pow(std::abs(f.evaluate(z)), dual_p) * std::pow(lg, dual_p / 2.0);
  };
  d.half_log_integral = integrate_real(rule, half_log).value;
  return d;
}

}  // namespace bergman
