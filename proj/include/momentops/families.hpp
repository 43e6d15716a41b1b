#ifndef MOMENTOPS_FAMILIES_HPP
#define MOMENTOPS_FAMILIES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "momentops/moments.hpp"
#include "momentops/ops.hpp"
#include "momentops/polynomial.hpp"
#include "momentops/univariate.hpp"

namespace momentops {

struct InadmissibleParameters : std::runtime_error {
  explicit InadmissibleParameters(const std::string& w)
      : std::runtime_error("inadmissible parameters: " + w) {}
};

// ---------------------------------------------------------------------------
// Classical ball functional, weight (1 - |x|^2)^{mu-1/2}, normalized mu_0 = 1.
// ---------------------------------------------------------------------------

// <u_mu, x^nu>: zero for odd exponents; for nu = 2*beta,
//   prod_i (1/2)_{beta_i} / (mu + (d+1)/2)_{|beta|}.
template <typename T>
T ball_moment(const T& mu, const MultiIndex& nu) {
  int d = nu.dimension();
  T num(1);
  int total = 0;
  for (int i = 0; i < d; ++i) {
    if (nu[i] % 2 != 0) return T(0);
    int beta = nu[i] / 2;
    num *= pochhammer(T(1) / T(2), beta);
    total += beta;
  }
  return num / pochhammer(mu + T(d + 1) / T(2), total);
}

template <typename T>
MomentFunctional<T> ball_functional(int d, const T& mu) {
  return MomentFunctional<T>(
      d, [mu](const MultiIndex& nu) { return ball_moment(mu, nu); }, "ball",
      /*centrally_symmetric=*/true);
}

// [h_{j,n}(mu)]^2 for the orthonormal ball basis. Accumulated as a product
// of bounded ratios so the float backend stays finite at large degree.
template <typename T>
T disk_norm_sq(const T& mu, int n, int j, int d = 2) {
  T half = T(1) / T(2);
  T v = (T(n - j) + mu + T(d - 1) / T(2)) / (T(n) + mu + T(d - 1) / T(2));
  for (int i = 0; i < j; ++i) v *= (mu + half + T(i)) / T(i + 1);
  for (int i = 0; i < n - j; ++i)
    v *= (T(d) / T(2) + T(i)) / (mu + T(d + 1) / T(2) + T(i));
  return v;
}

// Entries (j, k) of the degree-n ball vector, in the order the vector is
// assembled: j descending, k descending (k = 1 is the cosine branch, k = 2
// the sine branch; sigma_0 = 1, sigma_m = 2 for m >= 1 when d = 2).
inline std::vector<std::pair<int, int>> disk_entries(int n) {
  std::vector<std::pair<int, int>> e;
  for (int j = n / 2; j >= 0; --j) {
    int m = n - 2 * j;
    for (int k = (m == 0 ? 1 : 2); k >= 1; --k) e.emplace_back(j, k);
  }
  return e;
}

// d = 2 orthonormal basis element as a genuine bivariate polynomial
//   P_{j,k}^n = h^{-1} P_j^{(mu-1/2, n-2j)}(2|x|^2 - 1) Y_k^{n-2j}(x)
// with Y = 1 (m = 0), sqrt(2) Re (x+iy)^m (k = 1), sqrt(2) Im (x+iy)^m (k = 2).
inline Polynomial<double> disk_basis_polynomial(double mu, int n, int j, int k) {
  if (j < 0 || 2 * j > n) throw std::invalid_argument("disk basis: bad j");
  int m = n - 2 * j;
  if (k < 1 || k > (m == 0 ? 1 : 2))
    throw std::invalid_argument("disk basis: bad k");

  auto jc = jacobi_coeffs<double>(j, mu - 0.5, static_cast<double>(m));
  // t = 2(x^2 + y^2) - 1
  Polynomial<double> t(2);
  t.add_term(MultiIndex({2, 0}), 2.0);
  t.add_term(MultiIndex({0, 2}), 2.0);
  t.add_term(MultiIndex({0, 0}), -1.0);
  Polynomial<double> radial = Polynomial<double>::constant(2, jc[j]);
  for (int s = j - 1; s >= 0; --s)
    radial = radial * t + Polynomial<double>::constant(2, jc[s]);

  // harmonic factor: Re/Im of (x+iy)^m
  Polynomial<double> harm(2);
  if (m == 0) {
    harm.add_term(MultiIndex({0, 0}), 1.0);
  } else {
    double norm = std::sqrt(2.0);
    for (int s = (k == 1 ? 0 : 1); s <= m; s += 2) {
      double sign = (s / 2) % 2 == 0 ? 1.0 : -1.0;
      harm.add_term(MultiIndex({m - s, s}),
                    norm * sign * static_cast<double>(binomial(m, s)));
    }
  }
  double h = std::sqrt(disk_norm_sq<double>(mu, n, j));
  return radial * harm * (1.0 / h);
}

inline double disk_basis_eval(double mu, int n, int j, int k, double x,
                              double y) {
  int m = n - 2 * j;
  double r2 = x * x + y * y;
  double radial = jacobi_eval(j, mu - 0.5, static_cast<double>(m), 2.0 * r2 - 1.0);
  double harm;
  if (m == 0) {
    harm = 1.0;
  } else {
    // Re/Im of (x+iy)^m by direct recurrence
    double re = 1.0, im = 0.0;
    for (int s = 0; s < m; ++s) {
      double nre = re * x - im * y;
      im = re * y + im * x;
      re = nre;
    }
    harm = std::sqrt(2.0) * (k == 1 ? re : im);
  }
  return radial * harm / std::sqrt(disk_norm_sq<double>(mu, n, j));
}

// Adjacent-family relation P_n^{(mu)} = F_n P_n^{(mu+1)} + N_n P_{n-2}^{(mu+1)}
// for the d = 2 explicit basis (F_n diagonal; N_n = -L^t L^t diag(b)).
struct AdjacentRelation {
  Matrix<double> F;
  Matrix<double> N;  // empty for n < 2
};

inline AdjacentRelation adjacent_relation(double mu, int n, int d = 2) {
  auto hn = [&](double m, int nn, int jj) {
    return std::sqrt(disk_norm_sq<double>(m, nn, jj, d));
  };
  double s = n + mu + (d - 1) / 2.0;
  auto entries = disk_entries(n);
  std::vector<double> fdiag;
  for (auto [j, k] : entries)
    fdiag.push_back(hn(mu + 1, n, j) / hn(mu, n, j) *
                    (n - j + mu + (d - 1) / 2.0) / s);
  AdjacentRelation rel;
  rel.F = Matrix<double>::diagonal(fdiag);
  if (n >= 2) {
    std::vector<double> bdiag;
    for (auto [jp, k] : disk_entries(n - 2)) {
      int j = jp + 1;
      bdiag.push_back(hn(mu + 1, n - 2, j - 1) / hn(mu, n, j) *
                      (n - j - 1 + d / 2.0) / s);
    }
    rel.N = shift_matrix<double>(n - 2, 1, d).transpose() *
            Matrix<double>::diagonal(bdiag);
    rel.N = shift_matrix<double>(n - 1, 1, d).transpose() * rel.N;
    rel.N = -rel.N;
  }
  return rel;
}

// ---------------------------------------------------------------------------
// Ball kernel closed forms at the origin and the origin-mass Uvarov family.
// ---------------------------------------------------------------------------

// (mu + (d+1)/2)_k / (mu + 1/2)_k with k = floor(n/2)
template <typename T>
T ball_kernel_ratio(const T& mu, int d, int n) {
  int k = n / 2;
  return pochhammer(mu + T(d + 1) / T(2), k) / pochhammer(mu + T(1) / T(2), k);
}

// K_n(u_mu; x, 0) = ratio * P_{floor(n/2)}^{(d/2, mu-1/2)}(1 - 2|x|^2).
// The Jacobi superscript d/2 is the one from the proof's final closed form;
// it is the variant that matches the direct kernel sums.
template <typename T>
T ball_kernel_origin(const T& mu, int d, int n, const T& r_sq) {
  auto c = jacobi_coeffs<T>(n / 2, T(d) / T(2), mu - T(1) / T(2));
  return ball_kernel_ratio(mu, d, n) * eval_poly(c, T(1) - T(2) * r_sq);
}

// K_n(u_mu; 0, 0) = ratio * binom(floor(n/2) + d/2, floor(n/2))
template <typename T>
T ball_kernel_at_origin(const T& mu, int d, int n) {
  int k = n / 2;
  return ball_kernel_ratio(mu, d, n) * pochhammer(T(d) / T(2) + T(1), k) /
         factorial<T>(k);
}

struct MassDegenerate : std::runtime_error {
  int degree;
  explicit MassDegenerate(int n)
      : std::runtime_error("1 + lambda K_{n-1}(0,0) = 0 at degree " +
                           std::to_string(n)),
        degree(n) {}
};

// a_n = lambda P^n_{n/2,1}(0) / (1 + lambda K_{n-1}(u; 0, 0)), n even
inline double ball_uvarov_a(double mu, int d, double lambda, int n) {
  if (n % 2 != 0) return 0.0;
  double p0 = jacobi_eval(n / 2, mu - 0.5, (d - 2) / 2.0, -1.0) /
              std::sqrt(disk_norm_sq<double>(mu, n, n / 2, d));
  double den = 1.0 + (n >= 1 ? lambda * ball_kernel_at_origin(mu, d, n - 1) : 0.0);
  if (den == 0.0) throw MassDegenerate(n);
  return lambda * p0 / den;
}

// Q^n_{j,k}: only the radial component of even degree changes
inline double ball_uvarov_q(double mu, int d, double lambda, int n, int j,
                            int k, double x, double y) {
  double p = disk_basis_eval(mu, n, j, k, x, y);
  if (n % 2 == 0 && j == n / 2 && k == 1) {
    double corr = n >= 1 ? ball_kernel_origin(mu, d, n - 1, x * x + y * y) : 0.0;
    return p - ball_uvarov_a(mu, d, lambda, n) * corr;
  }
  return p;
}

// b_n in the kernel relation (rank-one Jacobi correction)
inline double ball_uvarov_b(double mu, int d, double lambda, int n) {
  double k0 = ball_kernel_at_origin(mu, d, n);
  double den = 1.0 + lambda * k0;
  if (den == 0.0) throw MassDegenerate(n);
  double ratio = ball_kernel_ratio(mu, d, n);
  return lambda / den * ratio * ratio;
}

// K_n(u_mu; x, x) by the explicit-basis direct sum (d = 2); used by the
// asymptotic tables where the generic OPS build would be O(n^3).
inline double disk_kernel_diag(double mu, int n, double r_sq) {
  double t = 2.0 * r_sq - 1.0;
  double s = 0.0;
  for (int m = 0; m <= n; ++m)
    for (int j = 0; 2 * j <= m; ++j) {
      int mm = m - 2 * j;
      double p = jacobi_eval(j, mu - 0.5, static_cast<double>(mm), t);
      double term = p * p / disk_norm_sq<double>(mu, m, j);
      for (int e = 0; e < mm; ++e) term *= r_sq;
      s += (mm >= 1 ? 2.0 : 1.0) * term;
    }
  return s;
}

struct AsymptoticRow {
  int n;
  double value;
  double limit;
  double rel_err;
};

// K_n(v; 0, 0) = K_n(u; 0, 0) / (1 + lambda K_n(u; 0, 0)) -> 1/lambda
inline std::vector<AsymptoticRow> ball_mass_limit_table(
    double mu, int d, double lambda, const std::vector<int>& degrees) {
  std::vector<AsymptoticRow> rows;
  for (int n : degrees) {
    double k0 = ball_kernel_at_origin(mu, d, n);
    double v = k0 / (1.0 + lambda * k0);
    double lim = 1.0 / lambda;
    rows.push_back({n, v, lim, std::abs(v - lim) / std::abs(lim)});
  }
  return rows;
}

// K_n(v; x, x) / binom(n+d, d) -> Gamma-expression * (1 - |x|^2)^{-mu}
inline std::vector<AsymptoticRow> ball_interior_table(
    double mu, int d, double lambda, double r,
    const std::vector<int>& degrees) {
  if (d != 2)
    throw std::invalid_argument("ball_interior_table: explicit basis is d=2");
  double r_sq = r * r;
  double lim = 1.0 / std::sqrt(M_PI) * std::tgamma(mu + 0.5) *
               std::tgamma((d + 1) / 2.0) / std::tgamma(mu + (d + 1) / 2.0) *
               std::pow(1.0 - r_sq, -mu);
  std::vector<AsymptoticRow> rows;
  for (int n : degrees) {
    double ku = disk_kernel_diag(mu, n, r_sq);
    double pj = jacobi_eval(n / 2, d / 2.0, mu - 0.5, 1.0 - 2.0 * r_sq);
    double kv = ku - ball_uvarov_b(mu, d, lambda, n) * pj * pj;
    double ratio = kv / static_cast<double>(binomial(n + d, d));
    rows.push_back({n, ratio, lim, std::abs(ratio - lim) / std::abs(lim)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Bivariate Bessel-Laguerre family (Krall-Sheffer), quasi- but not
// positive-definite.
// ---------------------------------------------------------------------------

template <typename T>
void bl_check_params(const T& g, const T& gamma, int max_n) {
  if (g == T(0)) throw InadmissibleParameters("g = 0");
  if (!(g * gamma > T(-2))) throw InadmissibleParameters("g*gamma <= -2");
  for (int n = 1; n <= max_n; ++n) {
    if (g + T(n) == T(0)) throw InadmissibleParameters("g + n = 0");
    if (g * gamma + T(n) == T(0)) throw InadmissibleParameters("g*gamma + n = 0");
  }
}

// Exact Gamma(g*gamma) requires g*gamma to be a positive integer; the exact
// backend is restricted to that case (the float backend may use tgamma).
template <typename T>
T bl_gamma0(const T& g, const T& gamma) {
  if constexpr (scalar_traits<T>::exact) {
    T gg = g * gamma;
    if (gg <= T(0) || gg != T(static_cast<int>(static_cast<double>(gg))))
      throw InadmissibleParameters(
          "exact backend needs g*gamma a positive integer");
    return gamma_integer<T>(static_cast<int>(static_cast<double>(gg)));
  } else {
    return std::tgamma(static_cast<double>(g * gamma));
  }
}

// <u^{(g,gamma)}, x^h y^k> = mu^B_{h+k} * Gamma(g*gamma + k) / g^k,
// with mu^B_j the Bessel (g, -g) moments. Derived from the substitution
// y = x t / g that factors the basis into Bessel and Laguerre pieces.
template <typename T>
MomentFunctional<T> bessel_laguerre_functional(const T& g, const T& gamma,
                                               int max_degree = 16) {
  bl_check_params(g, gamma, max_degree);
  T gamma0 = bl_gamma0(g, gamma);
  return MomentFunctional<T>(
      2,
      [g, gamma, gamma0](const MultiIndex& nu) {
        int h = nu[0], k = nu[1];
        T lag = gamma0 * pochhammer(T(g * gamma), k);  // Gamma(g*gamma + k)
        T gk(1);
        for (int i = 0; i < k; ++i) gk *= g;
        return bessel_moment(h + k, g, T(-g)) * lag / gk;
      },
      "bessel_laguerre");
}

// P^{(g,gamma)}_{n,m}(x,y) = B_{n-m}^{(g+2m,-g)}(x) * x^m L_m^{(g gamma-1)}(g y / x),
// expanded as a genuine bivariate polynomial.
template <typename T>
Polynomial<T> bessel_laguerre_basis(const T& g, const T& gamma, int n, int m) {
  if (m < 0 || m > n) throw std::invalid_argument("bessel_laguerre_basis: m");
  bl_check_params(g, gamma, n);
  auto bc = bessel_coeffs<T>(n - m, T(g + T(2 * m)), T(-g));
  auto lc = laguerre_coeffs<T>(m, g * gamma - T(1));
  Polynomial<T> p(2);
  T gj(1);
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= n - m; ++i)
      p.add_term(MultiIndex({i + m - j, j}), bc[i] * lc[j] * gj);
    gj *= g;
  }
  return p;
}

// h^{(g,gamma)}_{n,m} = (g^{2m}/(g)_{2m}) h^{(g+2m,-g)}_{n-m} h^{(g gamma-1)}_m.
// The leading factor comes from the normalization h_0^{(a,b)} = -b used for
// the univariate Bessel constants: the functional x^{2m} b^{(g,-g)} has the
// moment ratios of b^{(g+2m,-g)} but total mass g^{2m+1}/(g)_{2m}, not g, so
// the shifted constants pick up exactly g^{2m}/(g)_{2m}. The m = 0 column is
// the plain product, which is all the kernel and mass-point formulas use.
template <typename T>
T bessel_laguerre_norm(const T& g, const T& gamma, int n, int m) {
  T shift(1);
  for (int i = 0; i < 2 * m; ++i) shift *= g;
  shift /= pochhammer(g, 2 * m);
  return shift * bessel_norm(n - m, T(g + T(2 * m)), T(-g)) *
         laguerre_norm(m, T(g * gamma - T(1)), bl_gamma0(g, gamma));
}

// lambda_n = 1 + lambda (-1)^n binom(g+n-1, n) / (g Gamma(g gamma))
template <typename T>
T bl_lambda_n(const T& g, const T& gamma, const T& lambda, int n) {
  T binom_gn = pochhammer(g, n) / factorial<T>(n);
  T sign = (n % 2 == 0) ? T(1) : T(-1);
  return T(1) + lambda * sign * binom_gn / (g * bl_gamma0(g, gamma));
}

// Ksf_n((0,0), (x,y)) = (1/(g Gamma(g gamma))) K_n(b^{(g,-g)}; 0, x),
// a polynomial in x only.
template <typename T>
Polynomial<T> bl_kernel_vector(const T& g, const T& gamma, int n) {
  // Only the m = 0 column survives at the origin, so the double sum collapses
  // to sum_m B_m(x) / (h_m^{(g,-g)} Gamma(g gamma)).
  Polynomial<T> p(2);
  for (int m = 0; m <= n; ++m) {
    auto bc = bessel_coeffs<T>(m, g, T(-g));
    T w = T(1) / (bessel_norm(m, g, T(-g)) * bl_gamma0(g, gamma));
    for (int i = 0; i <= m; ++i) p.add_term(MultiIndex({i, 0}), bc[i] * w);
  }
  return p;
}

// Q^{(g,gamma)}_{n,0} = P_{n,0} - (lambda / lambda_{n-1}) Ksf_{n-1}((0,0), .);
// Q_{n,m} = P_{n,m} unchanged for m > 0.
template <typename T>
Polynomial<T> bessel_laguerre_uvarov_q(const T& g, const T& gamma,
                                       const T& lambda, int n, int m) {
  if (m > 0) return bessel_laguerre_basis(g, gamma, n, m);
  for (int k = 0; k < n; ++k)
    if (bl_lambda_n(g, gamma, lambda, k) == T(0))
      throw NotQuasiDefinite(k, "lambda_k = 0");
  Polynomial<T> q = bessel_laguerre_basis(g, gamma, n, 0);
  if (n >= 1) {
    T f = lambda / bl_lambda_n(g, gamma, lambda, n - 1);
    q = q - bl_kernel_vector(g, gamma, n - 1) * f;
  }
  return q;
}

// Krall-Sheffer operator residual
//   x^2 w_xx + 2xy w_xy + (y^2 - y) w_yy + g(x-1) w_x + g(y - gamma) w_y
//   - n(n+g-1) w
template <typename T>
Polynomial<T> krall_sheffer_residual(const T& g, const T& gamma, int n,
                                     const Polynomial<T>& w) {
  auto mono = [](int i, int j, const T& c) {
    return Polynomial<T>::monomial(MultiIndex({i, j}), c);
  };
  Polynomial<T> wx = w.derivative(0), wy = w.derivative(1);
  Polynomial<T> r = mono(2, 0, T(1)) * wx.derivative(0) +
                    mono(1, 1, T(2)) * wx.derivative(1) +
                    (mono(0, 2, T(1)) - mono(0, 1, T(1))) * wy.derivative(1) +
                    (mono(1, 0, g) - mono(0, 0, g)) * wx +
                    (mono(0, 1, g) - mono(0, 0, g * gamma)) * wy -
                    w * (T(n) * (T(n) + g - T(1)));
  return r;
}

}  // namespace momentops

#endif
