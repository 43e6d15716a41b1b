#ifndef MOMENTOPS_SCALAR_HPP
#define MOMENTOPS_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace momentops {

// Exact backend. Field operations over Q, equality decidable.
using Rational = boost::multiprecision::mpq_rational;

template <typename T>
struct scalar_traits {
  static constexpr bool exact = false;
  static bool is_zero(const T& x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(const T& x) { return std::abs(x); }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double) { return x == 0; }
  static double magnitude(const Rational& x) {
    return std::abs(static_cast<double>(x));
  }
};

inline Rational rational_from_string(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Backend conversion for values carried exactly in input files.
template <typename T>
T scalar_from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>)
    return r;
  else
    return static_cast<T>(r);
}

// Pochhammer symbol (a)_m = a(a+1)...(a+m-1).
template <typename T>
T pochhammer(const T& a, int m) {
  T r(1);
  for (int i = 0; i < m; ++i) r *= a + T(i);
  return r;
}

template <typename T>
T factorial(int n) {
  T r(1);
  for (int i = 2; i <= n; ++i) r *= T(i);
  return r;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace momentops

#endif
