#pragma once

#include <map>
#include <string>

#include "bergman/ball.hpp"
#include "bergman/multiindex.hpp"
#include "bergman/rng.hpp"

namespace bergman {

// Dense-by-terms analytic polynomial sum_m c_m z^m on C^n.  Terms are held in
// graded lexicographic order, which makes iteration, serialization, and
// coefficient vectors deterministic.  Exact-zero coefficients are dropped.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}

  static Polynomial zero(int n) { return Polynomial(n); }
  static Polynomial constant(int n, cd c);
  static Polynomial monomial(const MultiIndex& m, cd c);

  int dim() const { return n_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  const std::map<MultiIndex, cd>& terms() const { return terms_; }

  cd coefficient(const MultiIndex& m) const;
  void set_coefficient(const MultiIndex& m, cd c);
  void add_term(const MultiIndex& m, cd c);

  cd evaluate(const Point& z) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cd c) const;
  Polynomial& operator+=(const Polynomial& o);

  // Coefficients conjugated in place (represents conj(f(conj z)), an isometry
  // of every A^p_alpha).
  Polynomial conjugate_coefficients() const;

  // Terms of total degree <= max_degree.
  Polynomial truncate(int max_degree) const;

  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  // Text form "re+imi * z1^a1 ... zn^an + ...", graded lexicographic term
  // order; parse accepts the same grammar.
  std::string str() const;
  static Polynomial parse(const std::string& text, int n);

 private:
  int n_ = 0;
  std::map<MultiIndex, cd> terms_;
};

Polynomial operator*(cd c, const Polynomial& p);

// Coefficients i.i.d. standard complex Gaussian over all |m| <= degree.
Polynomial random_polynomial(int n, int degree, Rng& rng);

}  // namespace bergman
