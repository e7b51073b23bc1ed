#include "bergman/atoms.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bergman {

namespace {

double admissibility_threshold(const SpaceParams& sp) {
  return sp.n * std::max(1.0, 1.0 / sp.p) + (1.0 + sp.alpha) / sp.p;
}

}  // namespace

AtomSpec::AtomSpec(Lattice lat, double b_, SpaceParams sp)
    : lattice(std::move(lat)), b(b_), space(sp) {
  if (lattice.n != space.n) {
    throw std::invalid_argument("atom lattice dimension does not match the space");
  }
  if (lattice.points.empty()) {
    throw std::invalid_argument("atom lattice is empty");
  }
  double threshold = admissibility_threshold(space);
  if (!(b > threshold)) {
    std::ostringstream os;
    os << "atom exponent violates b > n max(1, 1/p) + (1 + alpha)/p: b = " << b
       << ", bound = " << threshold;
    throw std::invalid_argument(os.str());
  }
}

double default_atom_exponent(const SpaceParams& sp) {
  return admissibility_threshold(sp) + 0.5;
}

cd atom_evaluate(const AtomSpec& spec, size_t k, const Point& z) {
  const Point& a = spec.lattice.points.at(k);
  double pref = std::pow(1.0 - abs2(a), spec.prefactor_exponent());
  return pref * std::pow(cd(1.0, 0.0) - inner_product(z, a), -spec.b);
}

Evaluable atom_evaluable(const AtomSpec& spec, size_t k) {
  const Point a = spec.lattice.points.at(k);
  double pref = std::pow(1.0 - abs2(a), spec.prefactor_exponent());
  double b = spec.b;
  return [a, pref, b](const Point& z) {
    return pref * std::pow(cd(1.0, 0.0) - inner_product(z, a), -b);
  };
}

Polynomial atom_polynomial(const AtomSpec& spec, size_t k, int degree) {
  const Point& a = spec.lattice.points.at(k);
  double pref = std::pow(1.0 - abs2(a), spec.prefactor_exponent());
  KernelSymbol sym = kernel_symbol(a, spec.b, degree, KernelVariant::Power);
  return sym.poly * cd(pref, 0.0);
}

double atom_norm(const AtomSpec& spec, size_t k) {
  return kernel_power_norm_scaled(spec.b, spec.prefactor_exponent(),
                                  spec.lattice.points.at(k), spec.space);
}

double CoefficientSequence::norm() const {
  double s = 0.0;
  for (const cd& v : values) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

SynthesisResult synthesize(const AtomSpec& spec, const CoefficientSequence& lambda,
                           int degree, const QuadratureRule& rule) {
  size_t K = spec.count();
  if (lambda.values.size() != K) {
    throw std::invalid_argument("coefficient count does not match the lattice");
  }
  SynthesisResult out;
  out.f = Polynomial::zero(spec.space.n);
  for (size_t k = 0; k < K; ++k) {
    if (lambda.values[k] == cd(0.0, 0.0)) continue;
    out.f += atom_polynomial(spec, k, degree) * lambda.values[k];
  }
  Evaluable sum = [&spec, &lambda, K](const Point& z) {
    cd acc(0.0, 0.0);
    for (size_t k = 0; k < K; ++k) {
      if (lambda.values[k] == cd(0.0, 0.0)) continue;
      acc += lambda.values[k] * atom_evaluate(spec, k, z);
    }
    return acc;
  };
  out.function_norm = lp_norm(sum, spec.space, rule);
  out.sequence_norm = lambda.norm();
  out.ratio = out.sequence_norm > 0.0 ? out.function_norm / out.sequence_norm : 0.0;
  return out;
}

Analyzer::Analyzer(AtomSpec spec, const RuleSpec& rule_spec) : spec_(std::move(spec)) {
  rule_ = build_rule(spec_.space.n, spec_.space.alpha, rule_spec);
  size_t K = spec_.count();
  size_t nodes = rule_.nodes.size();
  atom_nodes_.resize(static_cast<Eigen::Index>(nodes), static_cast<Eigen::Index>(K));
  atom_lattice_.resize(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  for (size_t k = 0; k < K; ++k) {
    const Point& a = spec_.lattice.points[k];
    double pref = std::pow(1.0 - abs2(a), spec_.prefactor_exponent());
    for (size_t i = 0; i < nodes; ++i) {
      atom_nodes_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          pref * std::pow(cd(1.0, 0.0) - inner_product(rule_.nodes[i], a), -spec_.b);
    }
    for (size_t j = 0; j < K; ++j) {
      atom_lattice_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          pref *
          std::pow(cd(1.0, 0.0) - inner_product(spec_.lattice.points[j], a), -spec_.b);
    }
  }
  // Sampling weights of the discretized reproducing formula: the kernel power
  // b reproduces against dv_{b-n-1}, and each lattice point stands in for a
  // metric ball of radius r/2 around it.
  double gamma = spec_.b - spec_.space.n - 1.0;
  double cg = normalization_constant(gamma, spec_.space.n);
  double expo =
      (spec_.space.n + 1.0 + spec_.space.alpha) / spec_.space.p - (spec_.space.n + 1.0);
  cell_scale_.resize(static_cast<Eigen::Index>(K));
  for (size_t k = 0; k < K; ++k) {
    const Point& a = spec_.lattice.points[k];
    cell_scale_(static_cast<Eigen::Index>(k)) =
        cg * std::pow(1.0 - abs2(a), expo) *
        metric_ball_volume(a, spec_.lattice.r / 2.0);
  }
}

AnalysisResult Analyzer::analyze(const Evaluable& f, const AnalysisOptions& opt) const {
  size_t K = spec_.count();
  size_t nodes = rule_.nodes.size();
  double p = spec_.space.p;

  Eigen::VectorXcd e_nodes(static_cast<Eigen::Index>(nodes));
  for (size_t i = 0; i < nodes; ++i) {
    e_nodes(static_cast<Eigen::Index>(i)) = f(rule_.nodes[i]);
  }
  Eigen::VectorXcd e_lat(static_cast<Eigen::Index>(K));
  for (size_t k = 0; k < K; ++k) {
    e_lat(static_cast<Eigen::Index>(k)) = f(spec_.lattice.points[k]);
  }

  auto pnorm = [&](const Eigen::VectorXcd& v) {
    double s = 0.0;
    for (size_t i = 0; i < nodes; ++i) {
      s += rule_.weights[i] * std::pow(std::abs(v(static_cast<Eigen::Index>(i))), p);
    }
    return std::pow(s, 1.0 / p);
  };

  AnalysisResult out;
  out.lambda.p = p;
  out.lambda.values.assign(K, cd(0.0, 0.0));
  out.reference_norm = pnorm(e_nodes);
  if (out.reference_norm == 0.0) {
    out.converged = true;
    return out;
  }

  Eigen::VectorXcd lambda = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(K));
  int worse_streak = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iters; ++it) {
    Eigen::VectorXcd mu = e_lat.cwiseProduct(cell_scale_.cast<cd>());
    Eigen::VectorXcd smu_nodes = atom_nodes_ * mu;
    Eigen::VectorXcd smu_lat = atom_lattice_ * mu;

    // Exact line search in the weighted 2-norm: theta minimizing
    // || e - theta S mu ||_2 over complex theta.
    cd num(0.0, 0.0);
    double den = 0.0;
    for (size_t i = 0; i < nodes; ++i) {
      Eigen::Index ii = static_cast<Eigen::Index>(i);
      num += rule_.weights[i] * e_nodes(ii) * std::conj(smu_nodes(ii));
      den += rule_.weights[i] * std::norm(smu_nodes(ii));
    }
    if (den == 0.0) break;
    cd theta = num / den;

    lambda += theta * mu;
    e_nodes -= theta * smu_nodes;
    e_lat -= theta * smu_lat;

    double res = pnorm(e_nodes) / out.reference_norm;
    out.residual_history.push_back(res);
    out.iterations = it + 1;
    if (res <= opt.tol) {
      out.converged = true;
      break;
    }
    if (res > prev) {
      if (++worse_streak >= 3) {
        throw std::runtime_error(
            "atomic analysis residual grew three sweeps in a row; the lattice is "
            "too coarse for this function (reduce the separation parameter r)");
      }
    } else {
      worse_streak = 0;
    }
    prev = res;
  }

  for (size_t k = 0; k < K; ++k) {
    out.lambda.values[k] = lambda(static_cast<Eigen::Index>(k));
  }
  out.residual_rel =
      out.residual_history.empty() ? 1.0 : out.residual_history.back();
  return out;
}

double Analyzer::verify_residual(const Evaluable& f, const CoefficientSequence& lambda,
                                 const RuleSpec& fine_rule) const {
  QuadratureRule fine = build_rule(spec_.space.n, spec_.space.alpha, fine_rule);
  size_t K = spec_.count();
  if (lambda.values.size() != K) {
    throw std::invalid_argument("coefficient count does not match the lattice");
  }
  std::vector<double> pref(K);
  for (size_t k = 0; k < K; ++k) {
    pref[k] = std::pow(1.0 - abs2(spec_.lattice.points[k]), spec_.prefactor_exponent());
  }
  double p = spec_.space.p;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < fine.nodes.size(); ++i) {
    const Point& z = fine.nodes[i];
    cd fv = f(z);
    cd sum(0.0, 0.0);
    for (size_t k = 0; k < K; ++k) {
      if (lambda.values[k] == cd(0.0, 0.0)) continue;
      sum += lambda.values[k] * pref[k] *
             std::pow(cd(1.0, 0.0) - inner_product(z, spec_.lattice.points[k]),
                      -spec_.b);
    }
    num += fine.weights[i] * std::pow(std::abs(fv - sum), p);
    den += fine.weights[i] * std::pow(std::abs(fv), p);
  }
  if (den == 0.0) return 0.0;
  return std::pow(num, 1.0 / p) / std::pow(den, 1.0 / p);
}

FactorizationCertificate weak_factorize(const Evaluable& f, const HolderFrame& frame,
                                        const Analyzer& analyzer,
                                        const WeakFactorOptions& opt,
                                        AnalysisResult* analysis_out) {
  if (!frame.valid) {
    throw std::invalid_argument("weak factorization needs a frame with q > 1: " +
                                (frame.violation.empty() ? std::string("degenerate")
                                                         : frame.violation));
  }
  const AtomSpec& spec = analyzer.spec();
  if (std::abs(spec.space.p - frame.q) > 1e-12 ||
      std::abs(spec.space.alpha - frame.beta) > 1e-12 || spec.space.n != frame.n) {
    throw std::invalid_argument(
        "analyzer space must realize the (q, beta) target of the frame");
  }

  SpaceParams sp1(frame.p1, frame.alpha1, frame.n);
  SpaceParams sp2(frame.p2, frame.alpha2, frame.n);
  double base1 = admissibility_threshold(sp1);
  double base2 = admissibility_threshold(sp2);
  double b1, b2;
  if (opt.b1 && opt.b2) {
    b1 = *opt.b1;
    b2 = *opt.b2;
  } else if (opt.b1) {
    b1 = *opt.b1;
    b2 = spec.b - b1;
  } else if (opt.b2) {
    b2 = *opt.b2;
    b1 = spec.b - b2;
  } else {
    double slack = spec.b - base1 - base2;
    if (!(slack > 0.0)) {
      throw std::invalid_argument(
          "atom exponent too small to split between the factor spaces");
    }
    b1 = base1 + slack / 2.0;
    b2 = base2 + slack / 2.0;
  }
  if (std::abs((b1 + b2) - spec.b) > 1e-12) {
    throw std::invalid_argument("split exponents must satisfy b1 + b2 = b");
  }
  if (!(b1 > base1) || !(b2 > base2)) {
    throw std::invalid_argument("split exponent is inadmissible for its factor space");
  }

  AnalysisResult analysis = analyzer.analyze(f, opt.analysis);
  if (analysis_out != nullptr) *analysis_out = analysis;

  FactorizationCertificate cert;
  cert.frame = frame;
  cert.lambda = analysis.lambda;
  cert.b_split1 = b1;
  cert.b_split2 = b2;
  cert.degree = opt.degree;
  cert.iterations = analysis.iterations;
  cert.flagged = !analysis.converged;
  cert.reference_norm = analysis.reference_norm;
  cert.residual_rel = analyzer.verify_residual(
      f, analysis.lambda, {.radial_order = 64, .angular_order = 192});

  double s1 = frame.q / frame.p1;
  double s2 = frame.q / frame.p2;
  size_t K = spec.count();
  cert.pairs.reserve(K);
  double cost = 0.0;
  for (size_t k = 0; k < K; ++k) {
    const Point& a = spec.lattice.points[k];
    cd lam = analysis.lambda.values[k];
    double mag = std::abs(lam);
    cd phase = mag > 0.0 ? lam / mag : cd(1.0, 0.0);

    double e1 = b1 - (frame.n + 1.0 + frame.alpha1) / frame.p1;
    double e2 = b2 - (frame.n + 1.0 + frame.alpha2) / frame.p2;
    double n1 = kernel_power_norm_scaled(b1, e1, a, sp1);
    double n2 = kernel_power_norm_scaled(b2, e2, a, sp2);
    cost += mag * n1 * n2;

    FactorPair pair;
    cd c1 = phase * std::pow(mag, s1) * std::pow(1.0 - abs2(a), e1);
    cd c2 = std::pow(mag, s2) * std::pow(1.0 - abs2(a), e2);
    pair.phi = kernel_symbol(a, b1, opt.degree).poly * c1;
    pair.psi = kernel_symbol(a, b2, opt.degree).poly * c2;
    cert.pairs.push_back(std::move(pair));
  }
  cert.cost = cost;
  cert.cost_ratio = cert.reference_norm > 0.0 ? cost / cert.reference_norm : 0.0;
  return cert;
}

namespace {

nlohmann::json frame_to_json(const HolderFrame& f) {
  return nlohmann::json{{"p1", f.p1},
                        {"alpha1", f.alpha1},
                        {"p2", f.p2},
                        {"alpha2", f.alpha2},
                        {"alpha", f.alpha},
                        {"q", f.q},
                        {"beta", f.beta},
                        {"q_prime", f.q_prime},
                        {"beta_prime", f.beta_prime},
                        {"n", f.n},
                        {"valid", f.valid},
                        {"product_in_range", f.product_in_range},
                        {"weight_in_range", f.weight_in_range},
                        {"violation", f.violation}};
}

HolderFrame frame_from_json(const nlohmann::json& j) {
  HolderFrame f;
  f.p1 = j.at("p1").get<double>();
  f.alpha1 = j.at("alpha1").get<double>();
  f.p2 = j.at("p2").get<double>();
  f.alpha2 = j.at("alpha2").get<double>();
  f.alpha = j.at("alpha").get<double>();
  f.q = j.at("q").get<double>();
  f.beta = j.at("beta").get<double>();
  f.q_prime = j.at("q_prime").get<double>();
  f.beta_prime = j.at("beta_prime").get<double>();
  f.n = j.at("n").get<int>();
  f.valid = j.at("valid").get<bool>();
  f.product_in_range = j.at("product_in_range").get<bool>();
  f.weight_in_range = j.at("weight_in_range").get<bool>();
  f.violation = j.at("violation").get<std::string>();
  return f;
}

}  // namespace

std::string certificate_to_json(const FactorizationCertificate& cert) {
  nlohmann::json j;
  j["frame"] = frame_to_json(cert.frame);
  j["b1"] = cert.b_split1;
  j["b2"] = cert.b_split2;
  j["cost"] = cert.cost;
  j["reference_norm"] = cert.reference_norm;
  j["cost_ratio"] = cert.cost_ratio;
  j["residual_rel"] = cert.residual_rel;
  j["degree"] = cert.degree;
  j["iterations"] = cert.iterations;
  j["flagged"] = cert.flagged;
  j["lambda"] = nlohmann::json::object();
  j["lambda"]["p"] = cert.lambda.p;
  auto values = nlohmann::json::array();
  for (const cd& v : cert.lambda.values) {
    values.push_back(nlohmann::json::array({v.real(), v.imag()}));
  }
  j["lambda"]["values"] = values;
  auto pairs = nlohmann::json::array();
  for (const FactorPair& p : cert.pairs) {
    pairs.push_back(nlohmann::json{{"phi", p.phi.str()}, {"psi", p.psi.str()}});
  }
  j["pairs"] = pairs;
  return j.dump(2);
}

FactorizationCertificate certificate_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FactorizationCertificate cert;
  cert.frame = frame_from_json(j.at("frame"));
  cert.b_split1 = j.at("b1").get<double>();
  cert.b_split2 = j.at("b2").get<double>();
  cert.cost = j.at("cost").get<double>();
  cert.reference_norm = j.at("reference_norm").get<double>();
  cert.cost_ratio = j.at("cost_ratio").get<double>();
  cert.residual_rel = j.at("residual_rel").get<double>();
  cert.degree = j.at("degree").get<int>();
  cert.iterations = j.at("iterations").get<int>();
  cert.flagged = j.at("flagged").get<bool>();
  cert.lambda.p = j.at("lambda").at("p").get<double>();
  for (const auto& v : j.at("lambda").at("values")) {
    cert.lambda.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  }
  for (const auto& p : j.at("pairs")) {
    FactorPair pair;
    pair.phi = Polynomial::parse(p.at("phi").get<std::string>(), cert.frame.n);
    pair.psi = Polynomial::parse(p.at("psi").get<std::string>(), cert.frame.n);
    cert.pairs.push_back(std::move(pair));
  }
  return cert;
}

}  // namespace bergman
