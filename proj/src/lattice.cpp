#include "bergman/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>
#include <stdexcept>

#include "bergman/rng.hpp"

namespace bergman {

namespace {

// Bergman distance between two points on the same Euclidean circle |z| = rho
// separated by angle theta (n = 1).
double ring_distance(double rho, double theta) {
  const cd a(rho, 0.0);
  const cd b(rho * std::cos(theta), rho * std::sin(theta));
  const double num = std::abs(a - b);
  const double den = std::abs(cd(1.0, 0.0) - std::conj(a) * b);
  const double r = num / den;
  return (r >= 1.0) ? std::numeric_limits<double>::infinity() : std::atanh(r);
}

Lattice radial_shell_lattice(double r, double rmax) {
  Lattice lat;
  lat.n = 1;
  lat.r = r;
  lat.rmax = rmax;
  lat.strategy = "radial-shell";
  lat.points.push_back(Point::zero(1));
  const double T = std::atanh(rmax);
  const int J = static_cast<int>(std::floor(T / (0.5 * r)));
  if (J == 0) return lat;  // the origin alone covers the ball
  const double delta = T / J;  // shell spacing in [r/2, r)
  for (int j = 1; j <= J; ++j) {
    const double t = j * delta;
    const double rho = std::tanh(t);
    // Smallest K whose half-gap (worst ring point to nearest lattice point)
    // is at most 0.45 r; separation is then about twice that.
    int K = 1;
    while (ring_distance(rho, M_PI / K) > 0.45 * r) ++K;
    const double offset = (j % 2 == 1) ? M_PI / K : 0.0;  // stagger odd shells
    for (int k = 0; k < K; ++k) {
      const double th = offset + 2.0 * M_PI * k / K;
      lat.points.push_back(Point::disk(cd(rho * std::cos(th), rho * std::sin(th))));
    }
  }
  return lat;
}

Lattice greedy_lattice(int n, double r, double rmax, uint64_t seed) {
  Lattice lat;
  lat.n = n;
  lat.r = r;
  lat.rmax = rmax;
  lat.strategy = "greedy";
  lat.seed = seed;
  const double T = std::atanh(rmax);
  const long pool_size = 120000;
  Rng rng = Rng::stream(seed, "lattice-pool");
  // Candidates drawn from the invariant volume (Bergman radius with CDF
  // sinh^{2n}(t)/sinh^{2n}(T)) so the pool stays dense near the boundary.
  std::vector<Point> pool;
  pool.reserve(static_cast<size_t>(pool_size) + 1);
  pool.push_back(Point::zero(n));
  const double sT = std::sinh(T);
  for (long i = 0; i < pool_size; ++i) {
    const double u = rng.uniform();
    const double t = std::asinh(sT * std::pow(u, 1.0 / (2.0 * n)));
    Point p = rng.sphere_point(n);
    const double rho = std::tanh(t);
    for (int k = 0; k < n; ++k) p[k] *= rho;
    pool.push_back(p);
  }
  // Maximal r/2-separated subset, insertion order; radial pruning keeps the
  // scan near-linear.
  std::vector<Point> kept;
  std::vector<double> kept_t;
  const double sep = 0.5 * r;
  for (const auto& cand : pool) {
    const double tc = std::atanh(std::min(std::sqrt(abs2(cand)), 1.0 - 1e-15));
    bool ok = true;
    for (size_t i = 0; i < kept.size(); ++i) {
      if (std::abs(kept_t[i] - tc) >= sep) continue;
      if (bergman_distance(kept[i], cand) < sep) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back(cand);
      kept_t.push_back(tc);
    }
  }
  lat.points = std::move(kept);
  // Pool resolution check: a fresh probe sample must already be covered at
  // radius r, otherwise the pool was too sparse for this r.
  Rng probe = Rng::stream(seed, "lattice-pool-probe");
  for (int i = 0; i < 4000; ++i) {
    const double t = T * probe.uniform();
    Point p = probe.sphere_point(n);
    const double rho = std::tanh(t);
    for (int k = 0; k < n; ++k) p[k] *= rho;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : lat.points) best = std::min(best, bergman_distance(a, p));
    if (best >= r)
      throw std::runtime_error(
          "generate_lattice: candidate pool too sparse for requested r; "
          "increase r or the pool density");
  }
  return lat;
}

}  // namespace

Lattice generate_lattice(int n, double r, double rmax, LatticeStrategy strategy,
                         uint64_t seed) {
  if (r <= 0.0) throw std::invalid_argument("generate_lattice: r must be > 0");
  if (rmax <= 0.0 || rmax >= 1.0)
    throw std::invalid_argument("generate_lattice: rmax must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("generate_lattice: n must be >= 1");
  if (strategy == LatticeStrategy::RadialShell) {
    if (n != 1)
      throw std::invalid_argument(
          "generate_lattice: radial-shell strategy is one-dimensional; use greedy");
    return radial_shell_lattice(r, rmax);
  }
  return greedy_lattice(n, r, rmax, seed);
}

LatticeReport verify_lattice(const Lattice& lat, long samples, uint64_t seed) {
  if (lat.points.empty()) throw std::invalid_argument("verify_lattice: empty lattice");
  LatticeReport rep;
  rep.count = lat.points.size();
  rep.samples = samples;
  rep.seed = seed;

  // Sort lattice points by Bergman radius; |t_i - t_j| lower-bounds the
  // pairwise distance, which prunes both scans below.
  const size_t K = lat.points.size();
  std::vector<size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> t(K);
  for (size_t i = 0; i < K; ++i)
    t[i] = std::atanh(std::min(std::sqrt(abs2(lat.points[i])), 1.0 - 1e-15));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return t[a] < t[b]; });
  std::vector<Point> pts(K);
  std::vector<double> ts(K);
  for (size_t i = 0; i < K; ++i) {
    pts[i] = lat.points[order[i]];
    ts[i] = t[order[i]];
  }

  // Minimum pairwise separation.  The comparisons run in the
  // pseudo-hyperbolic domain (atanh is monotone, so thresholds transfer) and
  // convert to the Bergman metric only on improvement.
  double min_sep = std::numeric_limits<double>::infinity();
  double min_sep_rho = 1.0;
  for (size_t i = 0; i < K; ++i) {
    for (size_t j = i + 1; j < K; ++j) {
      if (ts[j] - ts[i] >= min_sep) break;
      double rho = pseudo_hyperbolic_distance(pts[i], pts[j]);
      if (rho < min_sep_rho) {
        min_sep_rho = rho;
        min_sep = std::atanh(std::min(rho, 1.0 - 1e-15));
      }
    }
  }
  rep.min_separation = (K > 1) ? min_sep : std::numeric_limits<double>::infinity();

  // Covering and overlap by Monte Carlo over the rmax-ball.
  Rng rng = Rng::stream(seed, "lattice-verify");
  const double T = std::atanh(lat.rmax);
  double worst = 0.0;
  size_t uncovered = 0;
  long overlap_sum = 0;
  int overlap_max = 0;
  const double R4 = 4.0 * lat.r;
  const double rho4 = std::tanh(R4);
  for (long s = 0; s < samples; ++s) {
    const double tz = T * rng.uniform();
    Point z = rng.sphere_point(lat.n);
    const double rho_z = std::tanh(tz);
    for (int k = 0; k < lat.n; ++k) z[k] *= rho_z;
    // Nearest lattice point, expanding outward from the closest radius.
    size_t lo = static_cast<size_t>(
        std::lower_bound(ts.begin(), ts.end(), tz) - ts.begin());
    double best = std::numeric_limits<double>::infinity();
    double best_rho = 1.0;
    size_t i_up = lo;
    size_t i_dn = lo;
    int overlap = 0;
    // Scan upward and downward until the radial gap exceeds both the current
    // best distance and the overlap radius; distances compare in the
    // pseudo-hyperbolic domain, converted only when the minimum improves.
    bool more_up = i_up < K;
    bool more_dn = i_dn > 0;
    while (more_up || more_dn) {
      if (more_up) {
        const double gap = ts[i_up] - tz;
        if (gap >= best && gap >= R4) {
          more_up = false;
        } else {
          const double rho = pseudo_hyperbolic_distance(pts[i_up], z);
          if (rho < best_rho) {
            best_rho = rho;
            best = std::atanh(std::min(rho, 1.0 - 1e-15));
          }
          if (rho < rho4) ++overlap;
          ++i_up;
          if (i_up >= K) more_up = false;
        }
      }
      if (more_dn) {
        const double gap = tz - ts[i_dn - 1];
        if (gap >= best && gap >= R4) {
          more_dn = false;
        } else {
          const double rho = pseudo_hyperbolic_distance(pts[i_dn - 1], z);
          if (rho < best_rho) {
            best_rho = rho;
            best = std::atanh(std::min(rho, 1.0 - 1e-15));
          }
          if (rho < rho4) ++overlap;
          --i_dn;
          if (i_dn == 0) more_dn = false;
        }
      }
    }
    worst = std::max(worst, best);
    if (best >= lat.r) ++uncovered;
    overlap_sum += overlap;
    overlap_max = std::max(overlap_max, overlap);
  }
  rep.covering_gap = worst;
  rep.uncovered = uncovered;
  rep.max_overlap = overlap_max;
  rep.mean_overlap = (samples > 0) ? static_cast<double>(overlap_sum) / samples : 0.0;
  return rep;
}

std::string lattice_to_json(const Lattice& lat, const LatticeReport* report) {
  nlohmann::json j;
  j["n"] = lat.n;
  j["r"] = lat.r;
  j["rmax"] = lat.rmax;
  j["strategy"] = lat.strategy;
  j["seed"] = lat.seed;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : lat.points) {
    nlohmann::json coords = nlohmann::json::array();
    for (int i = 0; i < p.dim(); ++i)
      coords.push_back({p[i].real(), p[i].imag()});
    pts.push_back(coords);
  }
  j["points"] = pts;
  if (report) {
    j["report"] = {{"count", report->count},
                   {"min_separation", report->min_separation},
                   {"covering_gap", report->covering_gap},
                   {"uncovered", report->uncovered},
                   {"max_overlap", report->max_overlap},
                   {"mean_overlap", report->mean_overlap},
                   {"samples", report->samples},
                   {"seed", report->seed}};
  }
  return j.dump(2);
}

Lattice lattice_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Lattice lat;
  lat.n = j.at("n").get<int>();
  lat.r = j.at("r").get<double>();
  lat.rmax = j.at("rmax").get<double>();
  lat.strategy = j.at("strategy").get<std::string>();
  lat.seed = j.at("seed").get<uint64_t>();
  for (const auto& coords : j.at("points")) {
    Point p = Point::zero(lat.n);
    int i = 0;
    for (const auto& c : coords) {
      p[i] = cd(c.at(0).get<double>(), c.at(1).get<double>());
      ++i;
    }
    lat.points.push_back(p);
  }
  return lat;
}

}  // namespace bergman
