#pragma once

#include <Eigen/Core>
#include <utility>

#include "bergman/polynomial.hpp"
#include "bergman/spaces.hpp"

namespace bergman {

// Finite sum of mixed monomials c * z^m conj(z)^l; the closure of analytic
// polynomials under multiplication by conjugates.  Term order is graded
// lexicographic on (m, l).
class MixedPolynomial {
 public:
  MixedPolynomial() = default;
  explicit MixedPolynomial(int n) : n_(n) {}

  static MixedPolynomial from_analytic(const Polynomial& f);
  // f(z) * conj(g(z)) as a mixed polynomial.
  static MixedPolynomial product_with_conjugate(const Polynomial& f, const Polynomial& g);

  int dim() const { return n_; }
  const std::map<std::pair<MultiIndex, MultiIndex>, cd>& terms() const { return terms_; }
  void add_term(const MultiIndex& m, const MultiIndex& l, cd c);
  cd evaluate(const Point& z) const;
  // Complex conjugate (swaps the analytic and conjugate exponents).
  MixedPolynomial conjugate() const;

 private:
  int n_ = 0;
  std::map<std::pair<MultiIndex, MultiIndex>, cd> terms_;
};

// Orthogonal (Bergman) projection P_alpha applied to a mixed polynomial:
//   P_alpha(z^m conj(z)^l) = [m >= l] moment(m)/moment(m-l) z^{m-l}.
Polynomial bergman_project(const MixedPolynomial& u, double alpha);

// Conjugate projection Q_alpha u = conj(P_alpha(conj u)).  The returned
// polynomial p represents the conjugate-analytic function z -> conj(p(z)).
Polynomial conjugate_project(const MixedPolynomial& u, double alpha);

// Fractional radial operator with kernel (1-<z,w>)^{-(n+1+alpha+s)} against
// dv_alpha; diagonal on monomials with eigenvalue
//   d_k = Gamma(k+n+1+alpha+s) Gamma(n+alpha+1) /
//         (Gamma(n+1+alpha+s) Gamma(n+k+alpha+1)),   k = |m|.
// d_0 = 1 and s = 0 is the identity.
Polynomial fractional_radial(const Polynomial& f, double alpha, double s);
double fractional_radial_eigenvalue(int total_degree, double alpha, double s, int n);

// Hankel-type bilinear form T_b(f,g) = <f g, b>_alpha (exact, via moments).
cd hankel_form_value(const Polynomial& f, const Polynomial& g, const Polynomial& b,
                     double alpha);

// Small Hankel action S_f g = P_alpha(f conj(g)); conjugate-linear in g.
Polynomial small_hankel_apply(const Polynomial& f, const Polynomial& g, double alpha);

// Dense matrix of a coefficient-space operator between graded-lex bases.
// For the small Hankel matrix the represented map is
//   coeffs_out = matrix * conj(coeffs_in),
// the conjugation being an isometry of every norm used here.
struct TruncatedOperator {
  Eigen::MatrixXcd matrix;
  int degree_in = 0;
  int degree_out = 0;
  SpaceParams domain;
  SpaceParams codomain;
  Polynomial symbol;
  double pairing_weight = 0.0;
};

TruncatedOperator small_hankel_matrix(const Polynomial& f, const SpaceParams& domain,
                                      const SpaceParams& codomain, double pairing_alpha,
                                      int degree_in, int degree_out);

// Applies op to g (handles the conjugation convention of the small Hankel
// matrix so that apply(small_hankel_matrix(f,...), g) == small_hankel_apply).
Polynomial apply(const TruncatedOperator& op, const Polynomial& g);

Eigen::VectorXcd coefficient_vector(const Polynomial& f, int degree);
Polynomial from_coefficient_vector(const Eigen::VectorXcd& v, int n, int degree);

// CSV export "row,col,re,im" of the nonzero entries.
void write_operator_csv(const TruncatedOperator& op, const std::string& path);

// Taylor truncation of a reproducing-kernel power (1 - <z,w>)^{-exponent}
// (or, for the log variant, log(2/(1 - <z,w>))) as a polynomial in z.
// tail_bound dominates the omitted tail uniformly over the closed ball via
// the geometric series with ratio |w|; infinite when no geometric bound holds.
struct KernelSymbol {
  Polynomial poly;
  double tail_bound = 0.0;
};

enum class KernelVariant { Power, Log };

KernelSymbol kernel_symbol(const Point& w, double exponent, int truncation_degree,
                           KernelVariant variant = KernelVariant::Power);

}  // namespace bergman
