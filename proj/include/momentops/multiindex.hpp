#ifndef MOMENTOPS_MULTIINDEX_HPP
#define MOMENTOPS_MULTIINDEX_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "momentops/matrix.hpp"
#include "momentops/scalar.hpp"

namespace momentops {

// Exponent vector nu = (n_1,...,n_d). Immutable value type.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    if (e_.empty()) throw std::invalid_argument("MultiIndex: d >= 1 required");
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }

  int dimension() const { return static_cast<int>(e_.size()); }
  int degree() const {
    int s = 0;
    for (int v : e_) s += v;
    return s;
  }
  int operator[](int i) const { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  MultiIndex plus(const MultiIndex& o) const {
    std::vector<int> r = e_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
    return MultiIndex(std::move(r));
  }

  // nu + e_i (0-based variable index)
  MultiIndex bump(int i) const {
    std::vector<int> r = e_;
    r[i] += 1;
    return MultiIndex(std::move(r));
  }

  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }

  // Graded order, ties broken by the reverse lexicographical rule used
  // throughout: of two indices with equal degree, the one whose first
  // differing position holds the larger exponent comes first.
  bool operator<(const MultiIndex& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != o.e_[i]) return e_[i] > o.e_[i];
    return false;
  }

 private:
  std::vector<int> e_;
};

// r_n^d = #{x^nu : |nu| = n} = binom(n+d-1, n)
inline std::int64_t rank_size(int n, int d) {
  if (n < 0 || d < 1) throw std::invalid_argument("rank_size: n>=0, d>=1");
  return binomial(n + d - 1, n);
}

// dim Pi_n^d = binom(n+d, n)
inline std::int64_t cumulative_size(int n, int d) {
  if (n < 0 || d < 1) throw std::invalid_argument("cumulative_size: n>=0, d>=1");
  return binomial(n + d, n);
}

namespace detail {
inline void enumerate_rec(int n, int d, std::vector<int>& cur,
                          std::vector<MultiIndex>& out) {
  if (d == 1) {
    cur.push_back(n);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = n; e >= 0; --e) {
    cur.push_back(e);
    enumerate_rec(n - e, d - 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// All degree-n multi-indices in d variables, reverse-lex order.
// For d=2: (n,0), (n-1,1), ..., (0,n).
inline std::vector<MultiIndex> enumerate(int n, int d) {
  if (n < 0 || d < 1) throw std::invalid_argument("enumerate: n>=0, d>=1");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(rank_size(n, d)));
  std::vector<int> cur;
  detail::enumerate_rec(n, d, cur, out);
  return out;
}

// Position of nu within enumerate(|nu|, d).
inline int index_position(const MultiIndex& nu) {
  int d = nu.dimension();
  int n = nu.degree();
  int pos = 0;
  for (int i = 0; i < d - 1; ++i) {
    // indices with larger exponent at slot i come first
    for (int e = n; e > nu[i]; --e)
      pos += static_cast<int>(rank_size(n - e, d - 1 - i));
    n -= nu[i];
  }
  return pos;
}

// L_{n,i}: x_i X_n = L_{n,i} X_{n+1}. 0/1 matrix, one 1 per row,
// L_{n,i} L_{n,i}^t = I. Variable index i is 1-based as in the recurrences.
template <typename T>
Matrix<T> shift_matrix(int n, int i, int d) {
  if (i < 1 || i > d) throw std::invalid_argument("shift_matrix: 1 <= i <= d");
  auto rows = enumerate(n, d);
  Matrix<T> L(static_cast<int>(rank_size(n, d)),
              static_cast<int>(rank_size(n + 1, d)));
  for (std::size_t r = 0; r < rows.size(); ++r)
    L(static_cast<int>(r), index_position(rows[r].bump(i - 1))) = T(1);
  return L;
}

}  // namespace momentops

#endif
