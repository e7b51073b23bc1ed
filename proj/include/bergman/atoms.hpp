#pragma once

#include <Eigen/Core>
#include <optional>

#include "bergman/lattice.hpp"
#include "bergman/operators.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Family of kernel atoms over a lattice for the space (p, alpha):
//   atom_k(z) = (1-|a_k|^2)^{b - (n+1+alpha)/p} (1 - <z,a_k>)^{-b}.
// Requires b > n max(1, 1/p) + (1+alpha)/p; the constructor enforces it.
struct AtomSpec {
  Lattice lattice;
  double b = 0.0;
  SpaceParams space;

  AtomSpec() = default;
  AtomSpec(Lattice lat, double b_, SpaceParams sp);

  size_t count() const { return lattice.points.size(); }
  double prefactor_exponent() const {
    return b - (space.n + 1.0 + space.alpha) / space.p;
  }
};

// Smallest admissible b plus a margin of one half.
double default_atom_exponent(const SpaceParams& sp);

cd atom_evaluate(const AtomSpec& spec, size_t k, const Point& z);
Evaluable atom_evaluable(const AtomSpec& spec, size_t k);
// Taylor truncation of atom_k (prefactor folded in).
Polynomial atom_polynomial(const AtomSpec& spec, size_t k, int degree);
// Exact norm ||atom_k||_{p,alpha} by coefficient series.
double atom_norm(const AtomSpec& spec, size_t k);

struct CoefficientSequence {
  std::vector<cd> values;
  double p = 2.0;

  double norm() const;  // little-ell-p norm
};

struct SynthesisResult {
  Polynomial f;          // truncated representation
  double function_norm = 0.0;  // quadrature norm of the exact atom sum
  double sequence_norm = 0.0;
  double ratio = 0.0;    // function_norm / sequence_norm
};

SynthesisResult synthesize(const AtomSpec& spec, const CoefficientSequence& lambda,
                           int degree, const QuadratureRule& rule);

struct AnalysisOptions {
  int max_iters = 20;
  double tol = 1e-3;  // relative residual target
};

struct AnalysisResult {
  CoefficientSequence lambda;
  std::vector<double> residual_history;  // relative residuals per iteration
  double residual_rel = 0.0;
  double reference_norm = 0.0;  // ||f||_{p,alpha}
  bool converged = false;
  int iterations = 0;
};

// Iterative analysis operator: seeds coefficients from point samples of f
// weighted by cell volumes (the discretized reproducing formula) and refines
// by residual re-sampling with an exact line search per sweep.  Atom values
// at the quadrature nodes and at the lattice are cached, so one Analyzer can
// serve a whole family of functions.  Throws if the residual grows three
// sweeps in a row (the lattice is too coarse; reduce r).
class Analyzer {
 public:
  Analyzer(AtomSpec spec, const RuleSpec& rule_spec = {.radial_order = 40,
                                                       .angular_order = 96});

  const AtomSpec& spec() const { return spec_; }
  const QuadratureRule& rule() const { return rule_; }

  AnalysisResult analyze(const Evaluable& f, const AnalysisOptions& opt = {}) const;

  // One-shot residual ||f - sum lambda_k atom_k||_{p,alpha} (exact atom
  // evaluation) against a finer independent rule.
  double verify_residual(const Evaluable& f, const CoefficientSequence& lambda,
                         const RuleSpec& fine_rule) const;

 private:
  AtomSpec spec_;
  QuadratureRule rule_;
  Eigen::MatrixXcd atom_nodes_;    // nodes x K
  Eigen::MatrixXcd atom_lattice_;  // K x K
  Eigen::VectorXd cell_scale_;     // sampling weights of the reproducing sum
};

// One factor pair of a weak factorization, with the truncated polynomial
// representations used for export.
struct FactorPair {
  Polynomial phi;
  Polynomial psi;
};

struct FactorizationCertificate {
  HolderFrame frame;
  std::vector<FactorPair> pairs;
  CoefficientSequence lambda;    // atom coefficients in the (q,beta) space
  double b_split1 = 0.0, b_split2 = 0.0;  // kernel exponents, b1 + b2 = b_q
  double cost = 0.0;             // sum ||phi_k|| ||psi_k||
  double reference_norm = 0.0;   // ||f||_{q,beta}
  double cost_ratio = 0.0;       // cost / reference_norm
  double residual_rel = 0.0;     // relative residual of the atom synthesis
  int degree = 0;
  int iterations = 0;
  bool flagged = false;          // analysis failed to reach tolerance
};

struct WeakFactorOptions {
  int degree = 40;               // truncation degree of exported pairs
  AnalysisOptions analysis;
  std::optional<double> b1;      // kernel exponent splits; defaults add 1/2
  std::optional<double> b2;      //   margin to the smallest admissible value
};

// Atom-split weak factorization of f through the (q,beta) atomic
// decomposition: phi_k carries the phase and a |lambda_k|^{q/p1} share,
// psi_k the |lambda_k|^{q/p2} share, so phi_k psi_k = lambda_k atom_k
// exactly.  Norms of the factors are evaluated by exact series.
FactorizationCertificate weak_factorize(const Evaluable& f, const HolderFrame& frame,
                                        const Analyzer& analyzer,
                                        const WeakFactorOptions& opt = {},
                                        AnalysisResult* analysis_out = nullptr);

std::string certificate_to_json(const FactorizationCertificate& cert);
FactorizationCertificate certificate_from_json(const std::string& text);

}  // namespace bergman
