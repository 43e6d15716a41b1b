#ifndef MOMENTOPS_POLYNOMIAL_HPP
#define MOMENTOPS_POLYNOMIAL_HPP

#include <map>
#include <vector>

#include "momentops/multiindex.hpp"

namespace momentops {

// Sparse multivariate polynomial: multi-index -> coefficient.
template <typename T>
class Polynomial {
 public:
  explicit Polynomial(int d) : d_(d) {}

  static Polynomial constant(int d, const T& c) {
    Polynomial p(d);
    p.add_term(MultiIndex(std::vector<int>(d, 0)), c);
    return p;
  }

  static Polynomial monomial(const MultiIndex& nu, const T& c = T(1)) {
    Polynomial p(nu.dimension());
    p.add_term(nu, c);
    return p;
  }

  int dimension() const { return d_; }

  void add_term(const MultiIndex& nu, const T& c) {
    if (c == T(0)) return;
    auto it = terms_.find(nu);
    if (it == terms_.end()) {
      terms_.emplace(nu, c);
    } else {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  const std::map<MultiIndex, T>& terms() const { return terms_; }

  T coefficient(const MultiIndex& nu) const {
    auto it = terms_.find(nu);
    return it == terms_.end() ? T(0) : it->second;
  }

  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int deg = -1;
    for (const auto& [nu, c] : terms_) deg = std::max(deg, nu.degree());
    return deg;  // -1 for the zero polynomial
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [nu, c] : o.terms_) add_term(nu, c);
    return *this;
  }
  Polynomial operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
  }
  Polynomial operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [nu, c] : o.terms_) r.add_term(nu, -c);
    return r;
  }
  Polynomial operator*(const T& s) const {
    Polynomial r(d_);
    if (s == T(0)) return r;
    for (const auto& [nu, c] : terms_) r.terms_.emplace(nu, c * s);
    return r;
  }
  Polynomial operator*(const Polynomial& o) const {
    Polynomial r(d_);
    for (const auto& [nu, c] : terms_)
      for (const auto& [mu, b] : o.terms_) r.add_term(nu.plus(mu), c * b);
    return r;
  }

  Polynomial derivative(int var) const {
    Polynomial r(d_);
    for (const auto& [nu, c] : terms_) {
      if (nu[var] == 0) continue;
      std::vector<int> e = nu.exponents();
      e[var] -= 1;
      r.add_term(MultiIndex(std::move(e)), c * T(nu[var]));
    }
    return r;
  }

  T evaluate(const std::vector<T>& x) const {
    T s(0);
    for (const auto& [nu, c] : terms_) {
      T t = c;
      for (int i = 0; i < d_; ++i)
        for (int k = 0; k < nu[i]; ++k) t *= x[i];
      s += t;
    }
    return s;
  }

 private:
  int d_;
  std::map<MultiIndex, T> terms_;
};

}  // namespace momentops

#endif
