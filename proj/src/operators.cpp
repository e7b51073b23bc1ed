#include "bergman/operators.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "bergman/poly_calculus.hpp"

namespace bergman {

MixedPolynomial MixedPolynomial::from_analytic(const Polynomial& f) {
  MixedPolynomial u(f.dim());
  const MultiIndex z0 = MultiIndex::zero(f.dim());
  for (const auto& [m, c] : f.terms()) u.add_term(m, z0, c);
  return u;
}

MixedPolynomial MixedPolynomial::product_with_conjugate(const Polynomial& f,
                                                        const Polynomial& g) {
  if (f.dim() != g.dim())
    throw std::invalid_argument("MixedPolynomial: dimension mismatch");
  MixedPolynomial u(f.dim());
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) u.add_term(a, b, ca * std::conj(cb));
  return u;
}

void MixedPolynomial::add_term(const MultiIndex& m, const MultiIndex& l, cd c) {
  if (m.dim() != n_ || l.dim() != n_)
    throw std::invalid_argument("MixedPolynomial: index dimension mismatch");
  auto key = std::make_pair(m, l);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (c != cd(0.0, 0.0)) terms_[key] = c;
  } else {
    it->second += c;
    if (it->second == cd(0.0, 0.0)) terms_.erase(it);
  }
}

cd MixedPolynomial::evaluate(const Point& z) const {
  cd acc(0.0, 0.0);
  for (const auto& [key, c] : terms_) {
    cd t = c;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < key.first[i]; ++e) t *= z[i];
      for (int e = 0; e < key.second[i]; ++e) t *= std::conj(z[i]);
    }
    acc += t;
  }
  return acc;
}

MixedPolynomial MixedPolynomial::conjugate() const {
  MixedPolynomial u(n_);
  for (const auto& [key, c] : terms_) u.add_term(key.second, key.first, std::conj(c));
  return u;
}

Polynomial bergman_project(const MixedPolynomial& u, double alpha) {
  const int n = u.dim();
  Polynomial p(n);
  for (const auto& [key, c] : u.terms()) {
    const MultiIndex& m = key.first;
    const MultiIndex& l = key.second;
    if (!m.dominates(l)) continue;
    const MultiIndex d = m - l;
    const double ratio = monomial_moment(m, alpha, n) / monomial_moment(d, alpha, n);
    p.add_term(d, c * ratio);
  }
  return p;
}

Polynomial conjugate_project(const MixedPolynomial& u, double alpha) {
  // With p = P_alpha(conj u) the represented function z -> conj(p(z)) is
  // exactly conj(P_alpha(conj u)); conjugating the coefficients again would
  // make the map conjugate-linear in u instead of linear.
  return bergman_project(u.conjugate(), alpha);
}

double fractional_radial_eigenvalue(int k, double alpha, double s, int n) {
  if (n + 1.0 + alpha + s <= 0.0)
    throw std::domain_error("fractional_radial: n+1+alpha+s must be positive");
  // The Gamma ratios cancel exactly at k = 0 and at s = 0; returning the exact
  // value keeps "s = 0 is the identity" true to the last bit.
  if (k == 0 || s == 0.0) return 1.0;
  return std::exp(std::lgamma(k + n + 1.0 + alpha + s) + std::lgamma(n + alpha + 1.0) -
                  std::lgamma(n + 1.0 + alpha + s) - std::lgamma(n + k + alpha + 1.0));
}

Polynomial fractional_radial(const Polynomial& f, double alpha, double s) {
  const int n = f.dim();
  Polynomial r(n);
  for (const auto& [m, c] : f.terms())
    r.add_term(m, c * fractional_radial_eigenvalue(m.order(), alpha, s, n));
  return r;
}

cd hankel_form_value(const Polynomial& f, const Polynomial& g, const Polynomial& b,
                     double alpha) {
  return pairing_alpha(f * g, b, alpha);
}

Polynomial small_hankel_apply(const Polynomial& f, const Polynomial& g, double alpha) {
  return bergman_project(MixedPolynomial::product_with_conjugate(f, g), alpha);
}

TruncatedOperator small_hankel_matrix(const Polynomial& f, const SpaceParams& domain,
                                      const SpaceParams& codomain, double pairing_alpha,
                                      int degree_in, int degree_out) {
  const int n = f.dim();
  if (domain.n != n || codomain.n != n)
    throw std::invalid_argument("small_hankel_matrix: dimension mismatch");
  const auto in_basis = basis_multi_indices(n, degree_in);
  const auto out_basis = basis_multi_indices(n, degree_out);
  TruncatedOperator op;
  op.degree_in = degree_in;
  op.degree_out = degree_out;
  op.domain = domain;
  op.codomain = codomain;
  op.symbol = f;
  op.pairing_weight = pairing_alpha;
  op.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out_basis.size()),
                                     static_cast<Eigen::Index>(in_basis.size()));
  // S_f(z^b) picks the coefficient of f at a = b + m for output monomial z^m:
  //   entry(m, b) = f_{b+m} moment(b+m)/moment(m).
  for (size_t col = 0; col < in_basis.size(); ++col) {
    for (size_t row = 0; row < out_basis.size(); ++row) {
      const MultiIndex a = in_basis[col] + out_basis[row];
      const cd fa = f.coefficient(a);
      if (fa == cd(0.0, 0.0)) continue;
      const double ratio = monomial_moment(a, pairing_alpha, n) /
                           monomial_moment(out_basis[row], pairing_alpha, n);
      op.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          fa * ratio;
    }
  }
  return op;
}

Eigen::VectorXcd coefficient_vector(const Polynomial& f, int degree) {
  const int n = f.dim();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis_size(n, degree));
  for (const auto& [m, c] : f.terms()) {
    const int pos = basis_position(m, degree);
    if (pos >= 0) v(pos) = c;
  }
  return v;
}

Polynomial from_coefficient_vector(const Eigen::VectorXcd& v, int n, int degree) {
  const auto basis = basis_multi_indices(n, degree);
  if (v.size() != static_cast<Eigen::Index>(basis.size()))
    throw std::invalid_argument("from_coefficient_vector: size mismatch");
  Polynomial p(n);
  for (size_t i = 0; i < basis.size(); ++i)
    if (v(static_cast<Eigen::Index>(i)) != cd(0.0, 0.0))
      p.add_term(basis[i], v(static_cast<Eigen::Index>(i)));
  return p;
}

Polynomial apply(const TruncatedOperator& op, const Polynomial& g) {
  const Eigen::VectorXcd in = coefficient_vector(g, op.degree_in).conjugate();
  const Eigen::VectorXcd out = op.matrix * in;
  return from_coefficient_vector(out, op.symbol.dim(), op.degree_out);
}

void write_operator_csv(const TruncatedOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_operator_csv: cannot open " + path);
  out << "row,col,re,im\n";
  char buf[96];
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
      const cd v = op.matrix(r, c);
      if (v == cd(0.0, 0.0)) continue;
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%.17g,%.17g\n",
                    static_cast<long long>(r), static_cast<long long>(c), v.real(),
                    v.imag());
      out << buf;
    }
  }
}

KernelSymbol kernel_symbol(const Point& w, double exponent, int truncation_degree,
                           KernelVariant variant) {
  const int n = w.dim();
  const double r = std::sqrt(abs2(w));
  if (r >= 1.0) throw std::domain_error("kernel_symbol: |w| must be < 1");
  KernelSymbol ks;
  Polynomial p(n);
  if (variant == KernelVariant::Power) {
    if (exponent <= 0.0) throw std::domain_error("kernel_symbol: exponent must be > 0");
    const double lge = std::lgamma(exponent);
    for (const auto& m : basis_multi_indices(n, truncation_degree)) {
      const int k = m.order();
      double lg = std::lgamma(k + exponent) - lge;
      cd wbar(1.0, 0.0);
      for (int i = 0; i < n; ++i) {
        lg -= std::lgamma(m[i] + 1.0);
        for (int e = 0; e < m[i]; ++e) wbar *= std::conj(w[i]);
      }
      const cd coef = std::exp(lg) * wbar;
      if (coef != cd(0.0, 0.0)) p.add_term(m, coef);
    }
    // Tail sum_{k>D} C_k(e) r^k with C_{k+1}/C_k = (k+e)/(k+1).
    if (r == 0.0) {
      ks.tail_bound = 0.0;
    } else {
      const int D = truncation_degree;
      const double cD1 =
          std::exp(std::lgamma(D + 1 + exponent) - std::lgamma(D + 2.0) - lge);
      const double growth = (exponent >= 1.0)
                                ? (D + 1.0 + exponent) / (D + 2.0)
                                : 1.0;
      const double q = r * growth;
      ks.tail_bound = (q < 1.0) ? cD1 * std::pow(r, D + 1) / (1.0 - q)
                                : std::numeric_limits<double>::infinity();
    }
  } else {
    // log(2/(1-<z,w>)) = log 2 + sum_{k>=1} <z,w>^k / k.
    p.add_term(MultiIndex::zero(n), cd(std::log(2.0), 0.0));
    for (const auto& m : basis_multi_indices(n, truncation_degree)) {
      const int k = m.order();
      if (k == 0) continue;
      double lg = std::lgamma(static_cast<double>(k));  // (k-1)!
      cd wbar(1.0, 0.0);
      for (int i = 0; i < n; ++i) {
        lg -= std::lgamma(m[i] + 1.0);
        for (int e = 0; e < m[i]; ++e) wbar *= std::conj(w[i]);
      }
      const cd coef = std::exp(lg) * wbar;
      if (coef != cd(0.0, 0.0)) p.add_term(m, coef);
    }
    const int D = truncation_degree;
    ks.tail_bound = (r < 1.0 && r > 0.0)
                        ? std::pow(r, D + 1) / ((D + 1.0) * (1.0 - r))
                        : 0.0;
  }
  ks.poly = p;
  return ks;
}

}  // namespace bergman
