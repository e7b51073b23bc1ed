#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace bergman {

// Exponent vector of a monomial z1^e1 ... zn^en.  All basis enumerations in
// the library use graded lexicographic order: lower total degree first, ties
// broken lexicographically on the exponent vector.
struct MultiIndex {
  std::vector<int> e;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps) : e(std::move(exps)) {}
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }

  int dim() const { return static_cast<int>(e.size()); }
  int order() const { return std::accumulate(e.begin(), e.end(), 0); }

  int operator[](int i) const { return e[static_cast<size_t>(i)]; }
  int& operator[](int i) { return e[static_cast<size_t>(i)]; }

  bool operator==(const MultiIndex& o) const { return e == o.e; }
  bool operator!=(const MultiIndex& o) const { return e != o.e; }

  // Graded lexicographic comparison; requires equal dimensions.
  bool operator<(const MultiIndex& o) const {
    int da = order(), db = o.order();
    if (da != db) return da < db;
    return e < o.e;
  }

  // Componentwise m >= l, the condition under which z^m zbar^l projects to
  // an analytic monomial.
  bool dominates(const MultiIndex& l) const {
    if (dim() != l.dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (e[static_cast<size_t>(i)] < l.e[static_cast<size_t>(i)]) return false;
    return true;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r(*this);
    for (int i = 0; i < dim(); ++i) r[i] += o[i];
    return r;
  }

  // Componentwise difference; caller must ensure *this dominates o.
  MultiIndex operator-(const MultiIndex& o) const {
    MultiIndex r(*this);
    for (int i = 0; i < dim(); ++i) r[i] -= o[i];
    return r;
  }

  std::string str() const;
};

// All multi-indices of dimension n with total degree <= max_degree, in graded
// lexicographic order.  This list is the basis layout shared by operator
// matrices and coefficient vectors.
std::vector<MultiIndex> basis_multi_indices(int n, int max_degree);

// Position of m in basis_multi_indices(m.dim(), max_degree); -1 if the degree
// exceeds max_degree.
int basis_position(const MultiIndex& m, int max_degree);

// Number of multi-indices of dimension n with total degree <= max_degree.
int basis_size(int n, int max_degree);

}  // namespace bergman
