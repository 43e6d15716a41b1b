#ifndef MOMENTOPS_UNIVARIATE_HPP
#define MOMENTOPS_UNIVARIATE_HPP

#include <stdexcept>
#include <vector>

#include "momentops/scalar.hpp"

namespace momentops {

// Coefficient vectors are ascending in the variable: c[0] + c[1] t + ...

// P_n^{(alpha,beta)} via the terminating hypergeometric sum
//   ((alpha+1)_n / n!) sum_s [(-n)_s (n+alpha+beta+1)_s / ((alpha+1)_s s!)] ((1-t)/2)^s
template <typename T>
std::vector<T> jacobi_coeffs(int n, const T& alpha, const T& beta) {
  std::vector<T> c(n + 1, T(0));
  T outer = pochhammer(alpha + T(1), n) / factorial<T>(n);
  // ((1-t)/2)^s expanded on the fly
  std::vector<T> pw(1, T(1));  // (1-t)/2 to the s-th power
  for (int s = 0; s <= n; ++s) {
    T f = outer * pochhammer(T(-n), s) * pochhammer(alpha + beta + T(n + 1), s) /
          (pochhammer(alpha + T(1), s) * factorial<T>(s));
    for (std::size_t k = 0; k < pw.size(); ++k) c[k] += f * pw[k];
    // multiply pw by (1-t)/2
    std::vector<T> next(pw.size() + 1, T(0));
    for (std::size_t k = 0; k < pw.size(); ++k) {
      next[k] += pw[k] / T(2);
      next[k + 1] -= pw[k] / T(2);
    }
    pw = std::move(next);
  }
  return c;
}

template <typename T>
T eval_poly(const std::vector<T>& c, const T& t) {
  T s(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}

// Jacobi value by the standard three-term recurrence; cheaper than the
// coefficient route at large n.
inline double jacobi_eval(int n, double alpha, double beta, double t) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * t;
  for (int m = 2; m <= n; ++m) {
    double a = 2.0 * m * (m + alpha + beta) * (2.0 * m + alpha + beta - 2.0);
    double b = (2.0 * m + alpha + beta - 1.0) *
               (alpha * alpha - beta * beta +
                t * (2.0 * m + alpha + beta) * (2.0 * m + alpha + beta - 2.0));
    double c = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) *
               (2.0 * m + alpha + beta);
    double p2 = (b * p1 - c * p0) / a;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// L_m^{(alpha)}(t) = sum_j (-1)^j binom(m+alpha, m-j) t^j / j!
template <typename T>
std::vector<T> laguerre_coeffs(int m, const T& alpha) {
  std::vector<T> c(m + 1);
  for (int j = 0; j <= m; ++j) {
    // binom(m+alpha, m-j) = (alpha+j+1)_{m-j} / (m-j)!
    T b = pochhammer(alpha + T(j + 1), m - j) / factorial<T>(m - j);
    c[j] = (j % 2 ? -b : b) / factorial<T>(j);
  }
  return c;
}

// Classical Bessel polynomials, B_n^{(a,b)}(0) = 1:
//   B_n^{(a,b)}(x) = sum_k binom(n,k) (n+a-1)_k (x/b)^k
template <typename T>
std::vector<T> bessel_coeffs(int n, const T& a, const T& b) {
  std::vector<T> c(n + 1);
  T bp(1);
  for (int k = 0; k <= n; ++k) {
    c[k] = T(binomial(n, k)) * pochhammer(a + T(n - 1), k) / bp;
    bp *= b;
  }
  return c;
}

// Bessel moment sequence mu_j = mu_0 (-b)^j / (a)_j with mu_0 = -b, the
// normalization under which <b^{(a,b)}, B_n^2> matches the classical
// h_n^{(a,b)} constants.
template <typename T>
T bessel_moment(int j, const T& a, const T& b) {
  T v = -b;
  for (int i = 0; i < j; ++i) v *= -b;
  return v / pochhammer(a, j);
}

// h_n^{(a,b)} = (-1)^{n+1} n! b / ((2n+a-1)(a)_{n-1}), with h_0 = -b.
template <typename T>
T bessel_norm(int n, const T& a, const T& b) {
  if (n == 0) return -b;
  T v = factorial<T>(n) * b / ((T(2 * n) + a - T(1)) * pochhammer(a, n - 1));
  return (n % 2 == 0) ? -v : v;
}

// h_m^{(alpha)} = Gamma(alpha+m+1)/m!, in units of Gamma(alpha+1):
// laguerre_norm returns (alpha+1)_m / m! * gamma0 where gamma0 = Gamma(alpha+1)
// is supplied by the caller (exact when alpha+1 is a positive integer).
template <typename T>
T laguerre_norm(int m, const T& alpha, const T& gamma0) {
  return gamma0 * pochhammer(alpha + T(1), m) / factorial<T>(m);
}

// Gamma at a positive integer argument, exact.
template <typename T>
T gamma_integer(int n) {
  if (n < 1) throw std::invalid_argument("gamma_integer: need n >= 1");
  return factorial<T>(n - 1);
}

}  // namespace momentops

#endif
