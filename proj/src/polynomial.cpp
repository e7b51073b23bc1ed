#include "bergman/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bergman {

// ---- MultiIndex ------------------------------------------------------------

std::string MultiIndex::str() const {
  std::ostringstream os;
  for (int i = 0; i < dim(); ++i) {
    if (i) os << " ";
    os << "z" << (i + 1) << "^" << e[static_cast<size_t>(i)];
  }
  return os.str();
}

std::vector<MultiIndex> basis_multi_indices(int n, int max_degree) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<size_t>(n), 0);
  // Enumerate all exponent vectors of total degree d, lexicographically, for
  // d = 0..max_degree.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      cur[static_cast<size_t>(pos)] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[static_cast<size_t>(pos)] = e;
      rec(pos + 1, remaining - e);
    }
  };
  for (int d = 0; d <= max_degree; ++d) rec(0, d);
  // The recursion above yields lexicographically descending order within each
  // degree; flip to ascending to match operator<.
  std::vector<MultiIndex> sorted;
  sorted.reserve(out.size());
  size_t start = 0;
  for (int d = 0; d <= max_degree; ++d) {
    size_t count = 0;
    for (size_t i = start; i < out.size() && out[i].order() == d; ++i) ++count;
    for (size_t i = 0; i < count; ++i) sorted.push_back(out[start + count - 1 - i]);
    start += count;
  }
  return sorted;
}

int basis_size(int n, int max_degree) {
  // C(max_degree + n, n)
  double v = 1.0;
  for (int i = 1; i <= n; ++i) v = v * (max_degree + i) / i;
  return static_cast<int>(std::lround(v));
}

int basis_position(const MultiIndex& m, int max_degree) {
  const int d = m.order();
  if (d > max_degree) return -1;
  const int n = m.dim();
  // Offset of the degree-d block, then the lexicographic rank within it.
  int offset = (d == 0) ? 0 : basis_size(n, d - 1);
  // Rank of m among exponent vectors of total degree d in ascending lex order.
  int rank = 0;
  int remaining = d;
  for (int pos = 0; pos < n - 1; ++pos) {
    for (int e = 0; e < m[pos]; ++e) {
      // count vectors with this prefix and entry e at pos
      int rem = remaining - e;
      // number of ways to write rem over the remaining n-pos-1 slots
      double ways = 1.0;
      int slots = n - pos - 2;
      for (int i = 1; i <= slots; ++i) ways = ways * (rem + i) / i;
      rank += static_cast<int>(std::lround(ways));
    }
    remaining -= m[pos];
  }
  return offset + rank;
}

// ---- Polynomial ------------------------------------------------------------

Polynomial Polynomial::constant(int n, cd c) {
  Polynomial p(n);
  p.add_term(MultiIndex::zero(n), c);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& m, cd c) {
  Polynomial p(m.dim());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.order();
}

cd Polynomial::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cd(0.0, 0.0) : it->second;
}

void Polynomial::set_coefficient(const MultiIndex& m, cd c) {
  if (m.dim() != n_) throw std::invalid_argument("Polynomial: index dimension mismatch");
  if (c == cd(0.0, 0.0))
    terms_.erase(m);
  else
    terms_[m] = c;
}

void Polynomial::add_term(const MultiIndex& m, cd c) {
  if (m.dim() != n_) throw std::invalid_argument("Polynomial: index dimension mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != cd(0.0, 0.0)) terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == cd(0.0, 0.0)) terms_.erase(it);
  }
}

cd Polynomial::evaluate(const Point& z) const {
  if (z.dim() != n_) throw std::invalid_argument("Polynomial::evaluate: dimension mismatch");
  // Powers cached per coordinate up to the maximum needed exponent.
  std::vector<std::vector<cd>> pw(static_cast<size_t>(n_));
  std::vector<int> maxe(static_cast<size_t>(n_), 0);
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < n_; ++i) maxe[static_cast<size_t>(i)] = std::max(maxe[static_cast<size_t>(i)], m[i]);
  for (int i = 0; i < n_; ++i) {
    auto& v = pw[static_cast<size_t>(i)];
    v.resize(static_cast<size_t>(maxe[static_cast<size_t>(i)]) + 1);
    v[0] = cd(1.0, 0.0);
    for (int e = 1; e <= maxe[static_cast<size_t>(i)]; ++e) v[static_cast<size_t>(e)] = v[static_cast<size_t>(e - 1)] * z[i];
  }
  cd acc(0.0, 0.0);
  for (const auto& [m, c] : terms_) {
    cd t = c;
    for (int i = 0; i < n_; ++i) t *= pw[static_cast<size_t>(i)][static_cast<size_t>(m[i])];
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(*this);
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (n_ == 0 && terms_.empty()) n_ = o.n_;  // default-constructed zero adopts
  if (n_ != o.n_) throw std::invalid_argument("Polynomial: dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r(*this);
  if (r.n_ == 0 && r.terms_.empty()) r.n_ = o.n_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Polynomial: dimension mismatch");
  Polynomial r(n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma + mb, ca * cb);
  return r;
}

Polynomial Polynomial::operator*(cd c) const {
  Polynomial r(n_);
  if (c == cd(0.0, 0.0)) return r;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

Polynomial operator*(cd c, const Polynomial& p) { return p * c; }

Polynomial Polynomial::conjugate_coefficients() const {
  Polynomial r(n_);
  for (const auto& [m, c] : terms_) r.add_term(m, std::conj(c));
  return r;
}

Polynomial Polynomial::truncate(int max_degree) const {
  Polynomial r(n_);
  for (const auto& [m, c] : terms_)
    if (m.order() <= max_degree) r.add_term(m, c);
  return r;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(cd c) {
  std::string s = format_double(c.real());
  if (c.imag() >= 0.0 || std::isnan(c.imag()))
    s += "+" + format_double(c.imag()) + "i";
  else
    s += "-" + format_double(-c.imag()) + "i";
  return s;
}

}  // namespace

std::string Polynomial::str() const {
  if (terms_.empty()) return "0+0i";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_complex(c);
    for (int i = 0; i < n_; ++i)
      if (m[i] != 0) os << " * z" << (i + 1) << "^" << m[i];
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() { return i < s.size() ? s[i] : '\0'; }
};

double parse_number(Cursor& c) {
  c.skip_ws();
  size_t end = 0;
  double v = std::stod(c.s.substr(c.i), &end);
  if (end == 0) throw std::invalid_argument("Polynomial::parse: expected a number");
  c.i += end;
  return v;
}

// Complex literal "re", "re+imi", "re-imi" (no space around the inner sign).
cd parse_complex(Cursor& c) {
  double re = parse_number(c);
  if (c.peek() == 'i') {
    ++c.i;
    return cd(0.0, re);
  }
  if (c.peek() == '+' || c.peek() == '-') {
    size_t save = c.i;
    double im = parse_number(c);
    if (c.peek() == 'i') {
      ++c.i;
      return cd(re, im);
    }
    c.i = save;  // the sign began the next term
  }
  return cd(re, 0.0);
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int n) {
  Polynomial p(n);
  Cursor c{text};
  bool first = true;
  while (!c.done()) {
    if (!first) {
      c.skip_ws();
      if (c.peek() == '+')
        ++c.i;
      else if (c.peek() != '-')
        throw std::invalid_argument("Polynomial::parse: expected '+' between terms");
    }
    first = false;
    cd coeff = parse_complex(c);
    MultiIndex m = MultiIndex::zero(n);
    for (;;) {
      c.skip_ws();
      if (c.peek() != '*') break;
      ++c.i;
      c.skip_ws();
      if (c.peek() != 'z')
        throw std::invalid_argument("Polynomial::parse: expected variable after '*'");
      ++c.i;
      size_t end = 0;
      int var = std::stoi(c.s.substr(c.i), &end);
      if (end == 0 || var < 1 || var > n)
        throw std::invalid_argument("Polynomial::parse: bad variable index");
      c.i += end;
      int exp = 1;
      c.skip_ws();
      if (c.peek() == '^') {
        ++c.i;
        c.skip_ws();
        exp = std::stoi(c.s.substr(c.i), &end);
        if (end == 0 || exp < 0)
          throw std::invalid_argument("Polynomial::parse: bad exponent");
        c.i += end;
      }
      m[var - 1] += exp;
    }
    p.add_term(m, coeff);
  }
  return p;
}

Polynomial random_polynomial(int n, int degree, Rng& rng) {
  Polynomial p(n);
  for (const auto& m : basis_multi_indices(n, degree)) p.add_term(m, rng.cnormal());
  return p;
}

}  // namespace bergman
