#ifndef MOMENTOPS_TESTS_SUPPORT_HPP
#define MOMENTOPS_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "momentops/ops.hpp"
#include "momentops/polynomial.hpp"
#include "momentops/random.hpp"

namespace momentops::testsupport {

inline Rational Q(long long num, long long den = 1) {
  return Rational(num) / Rational(den);
}

inline MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

// Random polynomial with rational coefficients, total degree <= deg.
template <typename T>
Polynomial<T> random_polynomial(std::mt19937_64& rng, int d, int deg) {
  Polynomial<T> p(d);
  for (int n = 0; n <= deg; ++n)
    for (const auto& nu : enumerate(n, d))
      p.add_term(nu, random_rational<T>(rng, 5, 5));
  return p;
}

// Max |entry| over all coefficient blocks.
template <typename T>
double coeff_residual(const VectorPolynomial<T>& a,
                      const VectorPolynomial<T>& b) {
  double r = 0.0;
  for (int k = 0; k <= a.n; ++k) r = std::max(r, (a.G[k] - b.G[k]).max_abs());
  return r;
}

template <typename T>
bool coeff_equal(const VectorPolynomial<T>& a, const VectorPolynomial<T>& b) {
  if (a.n != b.n) return false;
  for (int k = 0; k <= a.n; ++k)
    if (!(a.G[k] - b.G[k]).is_zero(0.0)) return false;
  return true;
}

}  // namespace momentops::testsupport

#endif
