#include "bergman/normlab.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "bergman/poly_calculus.hpp"

namespace bergman {

namespace {

Eigen::VectorXd moment_vector(int n, int degree, double alpha) {
  auto basis = basis_multi_indices(n, degree);
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = monomial_moment(basis[i], alpha, n);
  }
  return out;
}

// Monomial values z^m at the rule nodes, graded-lex columns up to degree.
Eigen::MatrixXcd vandermonde(const QuadratureRule& rule, int n, int degree) {
  auto basis = basis_multi_indices(n, degree);
  Eigen::MatrixXcd V(static_cast<Eigen::Index>(rule.nodes.size()),
                     static_cast<Eigen::Index>(basis.size()));
  std::vector<std::vector<cd>> powers(static_cast<size_t>(n));
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& z = rule.nodes[i];
    for (int c = 0; c < n; ++c) {
      auto& tab = powers[static_cast<size_t>(c)];
      tab.assign(static_cast<size_t>(degree) + 1, cd(1.0, 0.0));
      for (int k = 1; k <= degree; ++k) tab[static_cast<size_t>(k)] = tab[static_cast<size_t>(k - 1)] * z[c];
    }
    for (size_t j = 0; j < basis.size(); ++j) {
      cd v(1.0, 0.0);
      for (int c = 0; c < n; ++c) v *= powers[static_cast<size_t>(c)][static_cast<size_t>(basis[j].e[static_cast<size_t>(c)])];
      V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return V;
}

double weighted_pnorm(const Eigen::VectorXcd& values, const std::vector<double>& w,
                      double p) {
  double s = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    s += w[i] * std::pow(std::abs(values(static_cast<Eigen::Index>(i))), p);
  }
  return std::pow(s, 1.0 / p);
}

// Shared ascent problem: maximize ||A c||_{p_cod,w_cod} / ||V c||_{p_dom,w_dom}.
struct AscentProblem {
  const Eigen::MatrixXcd& A;
  const std::vector<double>& w_cod;
  double p_cod;
  const Eigen::MatrixXcd& V;
  const std::vector<double>& w_dom;
  double p_dom;

  double ratio(const Eigen::VectorXcd& c) const {
    double den = weighted_pnorm(V * c, w_dom, p_dom);
    if (den == 0.0) return 0.0;
    return weighted_pnorm(A * c, w_cod, p_cod) / den;
  }

  // Gradient (with respect to conj c) of d/2 * |phi|^p summed with weights.
  static Eigen::VectorXcd grad_ppow(const Eigen::MatrixXcd& B,
                                    const Eigen::VectorXcd& phi,
                                    const std::vector<double>& w, double p) {
    Eigen::VectorXcd u(phi.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) {
      double a = std::abs(phi(i));
      double f = a > 0.0 ? w[static_cast<size_t>(i)] * (p / 2.0) * std::pow(a, p - 2.0)
                         : 0.0;
      u(i) = f * phi(i);
    }
    return B.adjoint() * u;
  }

  Eigen::VectorXcd grad_log_ratio(const Eigen::VectorXcd& c) const {
    Eigen::VectorXcd phi = A * c;
    Eigen::VectorXcd psi = V * c;
    double jp = 0.0, np = 0.0;
    for (Eigen::Index i = 0; i < phi.size(); ++i) {
      jp += w_cod[static_cast<size_t>(i)] * std::pow(std::abs(phi(i)), p_cod);
    }
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      np += w_dom[static_cast<size_t>(i)] * std::pow(std::abs(psi(i)), p_dom);
    }
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(c.size());
    if (jp > 0.0) g += grad_ppow(A, phi, w_cod, p_cod) / (p_cod / 2.0 * jp);
    if (np > 0.0) g -= grad_ppow(V, psi, w_dom, p_dom) / (p_dom / 2.0 * np);
    return g;
  }
};

struct AscentRun {
  double value = 0.0;
  Eigen::VectorXcd c;
  bool converged = false;
};

AscentRun run_ascent(const AscentProblem& prob, const Eigen::VectorXcd& start,
                     const AscentConfig& cfg) {
  AscentRun run;
  Eigen::VectorXcd c = start;
  double den = weighted_pnorm(prob.V * c, prob.w_dom, prob.p_dom);
  if (den == 0.0) return run;
  c /= den;
  double value = prob.ratio(c);
  double eta = cfg.step0;
  int stall = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    Eigen::VectorXcd g = prob.grad_log_ratio(c);
    double gn = g.norm();
    if (!(gn > 0.0)) break;
    g /= gn;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      Eigen::VectorXcd cand = c + eta * g;
      double nd = weighted_pnorm(prob.V * cand, prob.w_dom, prob.p_dom);
      if (nd == 0.0) {
        eta *= 0.5;
        continue;
      }
      cand /= nd;
      double v = prob.ratio(cand);
      if (v > value) {
        double gain = (v - value) / std::max(value, 1e-300);
        c = cand;
        value = v;
        accepted = true;
        stall = gain < cfg.tol ? stall + 1 : 0;
        eta = std::min(eta * 1.3, 1.0);
        break;
      }
      eta *= 0.5;
      if (eta < 1e-14) break;
    }
    if (!accepted || stall >= 4) {
      run.converged = true;
      break;
    }
  }
  run.value = value;
  run.c = c;
  return run;
}

// Best run over the warm start (if any), one deterministic extra start, and
// cfg.restarts seeded random starts.
AscentRun best_of_starts(const AscentProblem& prob, Eigen::Index dim,
                         const AscentConfig& cfg, const std::string& stream_tag,
                         const Eigen::VectorXcd* extra_start = nullptr) {
  AscentRun best;
  auto consider = [&](const Eigen::VectorXcd& start) {
    AscentRun run = run_ascent(prob, start, cfg);
    if (run.value > best.value) best = run;
  };
  if (extra_start && extra_start->size() == dim && extra_start->norm() > 0.0) {
    consider(*extra_start);
  }
  if (cfg.warm_start && cfg.warm_start->size() > 0) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim);
    Eigen::Index m = std::min(dim, cfg.warm_start->size());
    w.head(m) = cfg.warm_start->head(m);
    if (w.norm() > 0.0) consider(w);
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::stream(cfg.seed, stream_tag + std::to_string(r));
    Eigen::VectorXcd start(dim);
    for (Eigen::Index j = 0; j < dim; ++j) start(j) = rng.cnormal();
    consider(start);
  }
  return best;
}

}  // namespace

NormEstimate opnorm_svd(const TruncatedOperator& op) {
  if (op.domain.p != 2.0 || op.codomain.p != 2.0) {
    throw std::invalid_argument("opnorm_svd needs both space exponents equal to 2");
  }
  int n = op.domain.n;
  Eigen::VectorXd mom_in = moment_vector(n, op.degree_in, op.domain.alpha);
  Eigen::VectorXd mom_out = moment_vector(n, op.degree_out, op.codomain.alpha);
  Eigen::VectorXd d_in = mom_in.cwiseSqrt();
  Eigen::VectorXd d_out = mom_out.cwiseSqrt();
  Eigen::MatrixXcd S = d_out.asDiagonal() * op.matrix;
  for (Eigen::Index j = 0; j < S.cols(); ++j) S.col(j) /= d_in(j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S, Eigen::ComputeThinV);
  NormEstimate est;
  est.method = "svd";
  est.degree = op.degree_in;
  est.converged = true;
  est.value = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  if (svd.matrixV().cols() > 0) {
    Eigen::VectorXcd c = svd.matrixV().col(0);
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) /= d_in(j);
    est.witnesses.push_back(from_coefficient_vector(c, n, op.degree_in));
  }
  return est;
}

NormEstimate opnorm_ascent(const TruncatedOperator& op, const AscentConfig& cfg) {
  int n = op.domain.n;
  QuadratureRule rule_dom = build_rule(n, op.domain.alpha, cfg.rule);
  QuadratureRule rule_cod = build_rule(n, op.codomain.alpha, cfg.rule);
  Eigen::MatrixXcd V = vandermonde(rule_dom, n, op.degree_in);
  Eigen::MatrixXcd A = vandermonde(rule_cod, n, op.degree_out) * op.matrix;
  AscentProblem prob{A, rule_cod.weights, op.codomain.p,
                     V, rule_dom.weights, op.domain.p};
  AscentRun best = best_of_starts(prob, V.cols(), cfg, "ascent");
  NormEstimate est;
  est.value = best.value;
  est.converged = best.converged;
  est.method = "ascent";
  est.degree = op.degree_in;
  est.restarts = cfg.restarts;
  est.seed = cfg.seed;
  if (best.c.size() > 0) {
    est.witnesses.push_back(from_coefficient_vector(best.c, n, op.degree_in));
  }
  return est;
}

NormEstimate opnorm(const TruncatedOperator& op, const AscentConfig& cfg) {
  if (op.domain.p == 2.0 && op.codomain.p == 2.0) return opnorm_svd(op);
  return opnorm_ascent(op, cfg);
}

NormEstimate functional_norm(const Eigen::VectorXcd& ell, const SpaceParams& domain,
                             int degree, const AscentConfig& cfg) {
  Eigen::Index N = static_cast<Eigen::Index>(basis_size(domain.n, degree));
  if (ell.size() != N) {
    throw std::invalid_argument("functional coefficient count does not match degree");
  }
  NormEstimate est;
  est.degree = degree;
  if (domain.p == 2.0) {
    Eigen::VectorXd mom = moment_vector(domain.n, degree, domain.alpha);
    double s = 0.0;
    Eigen::VectorXcd u(N);
    for (Eigen::Index j = 0; j < N; ++j) {
      u(j) = std::conj(ell(j)) / mom(j);
      s += std::norm(ell(j)) / mom(j);
    }
    est.value = std::sqrt(s);
    est.method = "riesz";
    est.converged = true;
    if (est.value > 0.0) {
      est.witnesses.push_back(from_coefficient_vector(u / est.value, domain.n, degree));
    }
    return est;
  }
  QuadratureRule rule_dom = build_rule(domain.n, domain.alpha, cfg.rule);
  Eigen::MatrixXcd V = vandermonde(rule_dom, domain.n, degree);
  Eigen::MatrixXcd A(1, N);
  A.row(0) = ell.transpose();
  std::vector<double> w_cod{1.0};
  AscentProblem prob{A, w_cod, 2.0, V, rule_dom.weights, domain.p};
  // The conjugate coefficient vector is the exact maximizer for p = 2 and an
  // excellent start generally.
  Eigen::VectorXcd guess = ell.conjugate();
  AscentRun best = best_of_starts(prob, N, cfg, "func", &guess);
  est.value = best.value;
  est.method = "ascent";
  est.converged = best.converged;
  est.restarts = cfg.restarts;
  est.seed = cfg.seed;
  if (best.c.size() > 0) {
    est.witnesses.push_back(from_coefficient_vector(best.c, domain.n, degree));
  }
  return est;
}

NormEstimate hankel_form_norm(const Polynomial& f, const HolderFrame& frame,
                              int degree, const AscentConfig& cfg) {
  int n = frame.n;
  auto basis = basis_multi_indices(n, degree);
  Eigen::Index N = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd B(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      MultiIndex sum = basis[static_cast<size_t>(i)] + basis[static_cast<size_t>(j)];
      B(i, j) = std::conj(f.coefficient(sum)) * monomial_moment(sum, frame.alpha, n);
    }
  }
  SpaceParams sp1(frame.p1, frame.alpha1, n);
  SpaceParams sp2(frame.p2, frame.alpha2, n);

  AscentConfig sub = cfg;
  sub.restarts = 2;

  NormEstimate best;
  best.method = "alternating";
  best.degree = degree;
  best.restarts = cfg.restarts;
  best.seed = cfg.seed;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::stream(cfg.seed, "form" + std::to_string(r));
    Eigen::VectorXcd h(N);
    for (Eigen::Index j = 0; j < N; ++j) h(j) = rng.cnormal();
    double value = 0.0;
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(N);
    bool settled = false;
    for (int round = 0; round < 60; ++round) {
      NormEstimate gstep = functional_norm(B * h, sp1, degree, sub);
      if (gstep.witnesses.empty()) break;
      g = coefficient_vector(gstep.witnesses[0], degree);
      NormEstimate hstep = functional_norm(B.transpose() * g, sp2, degree, sub);
      if (hstep.witnesses.empty()) break;
      h = coefficient_vector(hstep.witnesses[0], degree);
      double v = hstep.value;
      if (round > 0 && std::abs(v - value) <= 1e-12 * std::max(1.0, v)) {
        value = v;
        settled = true;
        break;
      }
      value = v;
    }
    if (value > best.value) {
      best.value = value;
      best.converged = settled;
      best.witnesses.clear();
      best.witnesses.push_back(from_coefficient_vector(g, n, degree));
      best.witnesses.push_back(from_coefficient_vector(h, n, degree));
    }
  }
  return best;
}

NormEstimate multiplier_norm_lower(const Polynomial& f, const SpaceParams& target,
                                   const std::vector<Polynomial>& net,
                                   const QuadratureRule& rule) {
  NormEstimate est;
  est.method = "net";
  est.converged = true;
  for (const Polynomial& g : net) {
    double den = bloch_norm(g);
    if (!(den > 0.0)) continue;
    Polynomial prod = f * g;
    double num = lp_norm([&prod](const Point& z) { return prod.evaluate(z); }, target,
                         rule);
    double ratio = num / den;
    if (ratio > est.value) {
      est.value = ratio;
      est.witnesses = {g};
    }
  }
  return est;
}

namespace {

struct AlphaRule {
  QuadratureRule rule;
  Eigen::MatrixXcd V;  // vandermonde up to the working degree
};

}  // namespace

OplusResult oplus_norm_upper(const Polynomial& f, const HolderFrame& frame,
                             const std::vector<FactorPair>& init,
                             const OplusOptions& opt) {
  if (!frame.valid) {
    throw std::invalid_argument("factorization cost needs a frame with q > 1");
  }
  int n = frame.n;
  if (f.dim() != n && !f.is_zero()) {
    throw std::invalid_argument("symbol dimension does not match the frame");
  }
  size_t K = init.size();

  int work_degree = f.degree();
  int max_psi = 0;
  for (const FactorPair& pr : init) {
    work_degree = std::max(work_degree, pr.phi.degree() + pr.psi.degree());
    max_psi = std::max(max_psi, pr.psi.degree());
  }
  if (opt.enable_polish) {
    work_degree = std::max(work_degree, opt.polish_degree + max_psi);
  }
  work_degree = std::max(work_degree, 0);

  // One rule per distinct weight among {beta, alpha1, alpha2}; built up front
  // so references stay valid.
  std::vector<std::pair<double, AlphaRule>> rules;
  auto get_rule = [&rules](double alpha) -> AlphaRule& {
    for (auto& [a, r] : rules) {
      if (std::abs(a - alpha) < 1e-14) return r;
    }
    throw std::logic_error("weight without a prepared quadrature rule");
  };
  for (double alpha : {frame.beta, frame.alpha1, frame.alpha2}) {
    bool seen = false;
    for (auto& [a, r] : rules) seen = seen || std::abs(a - alpha) < 1e-14;
    if (seen) continue;
    AlphaRule ar;
    ar.rule = build_rule(n, alpha, opt.rule);
    ar.V = vandermonde(ar.rule, n, work_degree);
    rules.emplace_back(alpha, std::move(ar));
  }
  AlphaRule& rq = get_rule(frame.beta);
  double q = frame.q;

  auto norm_in = [&](const Polynomial& g, const SpaceParams& sp) {
    AlphaRule& ar = get_rule(sp.alpha);
    Eigen::VectorXcd vals = ar.V * coefficient_vector(g, work_degree);
    return weighted_pnorm(vals, ar.rule.weights, sp.p);
  };

  SpaceParams sp1(frame.p1, frame.alpha1, n);
  SpaceParams sp2(frame.p2, frame.alpha2, n);

  std::vector<double> pair_cost(K);
  std::vector<Polynomial> products(K);
  for (size_t k = 0; k < K; ++k) {
    pair_cost[k] = norm_in(init[k].phi, sp1) * norm_in(init[k].psi, sp2);
    products[k] = init[k].phi * init[k].psi;
  }
  double full_cost = 0.0;
  for (double c : pair_cost) full_cost += c;

  Polynomial total = Polynomial::zero(n);
  for (const Polynomial& pr : products) total += pr;

  Eigen::VectorXcd f_vals = rq.V * coefficient_vector(f, work_degree);
  double f_norm_q = weighted_pnorm(f_vals, rq.rule.weights, q);

  auto remainder_cost = [&](const Polynomial& rho) {
    return std::min(norm_in(rho, sp1), norm_in(rho, sp2));
  };
  auto residual_of = [&](const Polynomial& rho) {
    if (f_norm_q == 0.0) return rho.is_zero() ? 0.0 : 1.0;
    Eigen::VectorXcd vals = rq.V * coefficient_vector(rho, work_degree);
    return weighted_pnorm(vals, rq.rule.weights, q) / f_norm_q;
  };

  struct Candidate {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<size_t> kept;
    Polynomial correction;  // zero when unused
    bool corrected = false;
    double residual = 0.0;
    std::string method;
  };
  Candidate best;
  auto consider = [&](std::vector<size_t> kept, const Polynomial& rho,
                      double kept_cost, const std::string& how) {
    double res = residual_of(rho);
    if (res <= opt.residual_tol && kept_cost < best.cost) {
      best = Candidate{kept_cost, kept, Polynomial::zero(n), false, res, how};
    }
    double corr = remainder_cost(rho);
    double cost_c = kept_cost + corr;
    if (cost_c < best.cost) {
      best = Candidate{cost_c, std::move(kept), rho, true, 0.0, how + "+correction"};
    }
  };

  // Starting configuration (all pairs kept).
  double init_feasible_cost;
  {
    Polynomial rho0 = f - total;
    std::vector<size_t> all(K);
    for (size_t k = 0; k < K; ++k) all[k] = k;
    double res0 = residual_of(rho0);
    init_feasible_cost =
        res0 <= opt.residual_tol ? full_cost : full_cost + remainder_cost(rho0);
    consider(all, rho0, full_cost, "init");
  }

  // Prune low-cost pairs cumulatively, the remainder pair absorbing the loss.
  std::vector<size_t> order(K);
  for (size_t k = 0; k < K; ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return pair_cost[a] < pair_cost[b]; });
  std::vector<size_t> checkpoints;
  for (double frac : {0.125, 0.25, 0.5, 0.75, 1.0}) {
    size_t m = static_cast<size_t>(frac * static_cast<double>(K));
    if (m > 0 && m <= K) checkpoints.push_back(m);
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  Polynomial dropped_sum = Polynomial::zero(n);
  double dropped_cost = 0.0;
  size_t pos = 0;
  for (size_t m : checkpoints) {
    for (; pos < m; ++pos) {
      dropped_sum += products[order[pos]];
      dropped_cost += pair_cost[order[pos]];
    }
    std::vector<size_t> kept(order.begin() + static_cast<long>(m), order.end());
    std::sort(kept.begin(), kept.end());
    Polynomial rho = f - total + dropped_sum;
    consider(std::move(kept), rho, full_cost - dropped_cost, "prune");
  }

  // Optional least-squares refit of the heaviest kept pairs.
  if (opt.enable_polish && !best.kept.empty()) {
    std::vector<size_t> kept = best.kept;
    std::sort(kept.begin(), kept.end(),
              [&](size_t a, size_t b) { return pair_cost[a] > pair_cost[b]; });
    size_t m = std::min<size_t>(static_cast<size_t>(opt.polish_pairs), kept.size());
    std::vector<size_t> heavy(kept.begin(), kept.begin() + static_cast<long>(m));
    std::vector<size_t> light(kept.begin() + static_cast<long>(m), kept.end());

    auto basis = basis_multi_indices(n, opt.polish_degree);
    Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
    Eigen::Index nodes = static_cast<Eigen::Index>(rq.rule.nodes.size());
    Eigen::VectorXcd target = f_vals;
    for (size_t k : light) {
      target -= rq.V * coefficient_vector(products[k], work_degree);
    }
    Eigen::MatrixXcd Vb = vandermonde(rq.rule, n, opt.polish_degree);
    Eigen::MatrixXcd A(nodes, static_cast<Eigen::Index>(m) * nb);
    for (size_t j = 0; j < m; ++j) {
      Eigen::VectorXcd psi_vals =
          rq.V * coefficient_vector(init[heavy[j]].psi, work_degree);
      for (Eigen::Index b = 0; b < nb; ++b) {
        A.col(static_cast<Eigen::Index>(j) * nb + b) =
            Vb.col(b).cwiseProduct(psi_vals);
      }
    }
    Eigen::VectorXd sw(nodes);
    for (Eigen::Index i = 0; i < nodes; ++i) {
      sw(i) = std::sqrt(rq.rule.weights[static_cast<size_t>(i)]);
    }
    Eigen::MatrixXcd Aw = sw.asDiagonal() * A;
    Eigen::VectorXcd tw = sw.asDiagonal() * target;
    Eigen::VectorXcd sol = Aw.colPivHouseholderQr().solve(tw);

    std::vector<FactorPair> polished(m);
    Polynomial polished_total = Polynomial::zero(n);
    double polished_cost = 0.0;
    for (size_t j = 0; j < m; ++j) {
      Eigen::VectorXcd cj = sol.segment(static_cast<Eigen::Index>(j) * nb, nb);
      polished[j].phi = from_coefficient_vector(cj, n, opt.polish_degree);
      polished[j].psi = init[heavy[j]].psi;
      polished_total += polished[j].phi * polished[j].psi;
      polished_cost += norm_in(polished[j].phi, sp1) * norm_in(polished[j].psi, sp2);
    }
    double light_cost = 0.0;
    Polynomial light_total = Polynomial::zero(n);
    for (size_t k : light) {
      light_cost += pair_cost[k];
      light_total += products[k];
    }
    Polynomial rho = f - light_total - polished_total;
    double res = residual_of(rho);
    double cost_plain = polished_cost + light_cost;
    if (res <= opt.residual_tol && cost_plain < best.cost) {
      Candidate cand;
      cand.cost = cost_plain;
      cand.kept = light;
      cand.correction = Polynomial::zero(n);
      cand.corrected = false;
      cand.residual = res;
      cand.method = "polish";
      best = cand;
      // Polished pairs replace the heavy originals; stash them via kept list
      // sentinel below.
      best.kept.insert(best.kept.end(), heavy.begin(), heavy.end());
    }
    double cost_c = cost_plain + remainder_cost(rho);
    if (cost_c < best.cost) {
      Candidate cand;
      cand.cost = cost_c;
      cand.kept = light;
      cand.correction = rho;
      cand.corrected = true;
      cand.residual = 0.0;
      cand.method = "polish+correction";
      best = cand;
      best.kept.insert(best.kept.end(), heavy.begin(), heavy.end());
    }
    // Rebuild the final pair list for the polish winner.
    if (best.method == "polish" || best.method == "polish+correction") {
      OplusResult out;
      out.cost = best.cost;
      out.init_cost = init_feasible_cost;
      out.residual_rel = best.residual;
      out.dropped = K - kept.size();
      out.method = best.method;
      for (size_t k : light) out.pairs.push_back(init[k]);
      for (size_t j = 0; j < m; ++j) out.pairs.push_back(polished[j]);
      if (best.corrected) {
        out.used_correction = true;
        out.pairs.push_back(
            FactorPair{best.correction, Polynomial::constant(n, cd(1.0, 0.0))});
      }
      return out;
    }
  }

  OplusResult out;
  out.cost = best.cost;
  out.init_cost = init_feasible_cost;
  out.residual_rel = best.residual;
  out.dropped = K - best.kept.size();
  out.method = best.method;
  for (size_t k : best.kept) out.pairs.push_back(init[k]);
  if (best.corrected) {
    out.used_correction = true;
    out.pairs.push_back(
        FactorPair{best.correction, Polynomial::constant(n, cd(1.0, 0.0))});
  }
  return out;
}

}  // namespace bergman
