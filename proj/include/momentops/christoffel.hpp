#ifndef MOMENTOPS_CHRISTOFFEL_HPP
#define MOMENTOPS_CHRISTOFFEL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "momentops/ops.hpp"

namespace momentops {

struct DegreeCollapse : std::runtime_error {
  DegreeCollapse() : std::runtime_error("N_2 = 0: multiplier is not of exact degree 2") {}
};

struct NoThreeTerm : std::runtime_error {
  int degree;
  int variable;
  NoThreeTerm(int n, int i)
      : std::runtime_error("no three-term relation at degree " +
                           std::to_string(n) + ", variable " +
                           std::to_string(i)),
        degree(n),
        variable(i) {}
};

struct InconsistentSymmetry : std::runtime_error {
  InconsistentSymmetry()
      : std::runtime_error(
            "moment and recurrence characterizations of central symmetry "
            "disagree") {}
};

// lambda(x) = a2 X_2 + a1 X_1 + a0, exact degree 2 (|a2| != 0).
// a2 follows enumerate(2, d): a_{11}, a_{12}, ..., a_{1d}, a_{22}, ...
template <typename T>
struct QuadraticMultiplier {
  int d = 0;
  std::vector<T> a2;  // length r_2^d
  std::vector<T> a1;  // length d
  T a0 = T(0);

  QuadraticMultiplier(int d_, std::vector<T> a2_, std::vector<T> a1_, T a0_)
      : d(d_), a2(std::move(a2_)), a1(std::move(a1_)), a0(std::move(a0_)) {
    if (static_cast<int>(a2.size()) != rank_size(2, d) ||
        static_cast<int>(a1.size()) != d)
      throw std::invalid_argument("QuadraticMultiplier: bad coefficient sizes");
    bool nz = false;
    for (const auto& c : a2) nz = nz || c != T(0);
    if (!nz)
      throw std::invalid_argument("QuadraticMultiplier: |a2| = 0, not degree 2");
  }

  Polynomial<T> to_polynomial() const {
    Polynomial<T> p = Polynomial<T>::constant(d, a0);
    auto deg1 = enumerate(1, d);
    for (std::size_t i = 0; i < deg1.size(); ++i) p.add_term(deg1[i], a1[i]);
    auto deg2 = enumerate(2, d);
    for (std::size_t i = 0; i < deg2.size(); ++i) p.add_term(deg2[i], a2[i]);
    return p;
  }

  // A_{h,1} = sum_i a1_i L_{h,i}
  Matrix<T> shift_aggregate_1(int h) const {
    Matrix<T> A(static_cast<int>(rank_size(h, d)),
                static_cast<int>(rank_size(h + 1, d)));
    for (int i = 1; i <= d; ++i)
      A = A + shift_matrix<T>(h, i, d) * a1[i - 1];
    return A;
  }

  // A_{h,2} = sum_{i<=j} a2_{ij} L_{h,j} L_{h+1,i}; full row rank.
  Matrix<T> shift_aggregate_2(int h) const {
    Matrix<T> A(static_cast<int>(rank_size(h, d)),
                static_cast<int>(rank_size(h + 2, d)));
    int pos = 0;
    for (int i = 1; i <= d; ++i)
      for (int j = i; j <= d; ++j) {
        A = A + shift_matrix<T>(h, j, d) * shift_matrix<T>(h + 1, i, d) *
                    a2[pos];
        ++pos;
      }
    return A;
  }
};

// mhat_{h,k} = a0 m_{h,k} + A_{h,1} m_{h+1,k} + A_{h,2} m_{h+2,k};
// equals moment_block(left_multiply(u, lambda), h, k).
template <typename T>
Matrix<T> modified_moment_block(const MomentFunctional<T>& u,
                                const QuadraticMultiplier<T>& lam, int h,
                                int k) {
  return moment_block(u, h, k) * lam.a0 +
         lam.shift_aggregate_1(h) * moment_block(u, h + 1, k) +
         lam.shift_aggregate_2(h) * moment_block(u, h + 2, k);
}

// P_n = Q_n + M_n Q_{n-1} + N_n Q_{n-2}; M[n] valid for n >= 1, N[n] for n >= 2.
template <typename T>
struct ConnectionCoeffs {
  std::vector<Matrix<T>> M;  // M[0] unused
  std::vector<Matrix<T>> N;  // N[0], N[1] unused

  const Matrix<T>& Mn(int n) const { return M.at(n); }
  const Matrix<T>& Nn(int n) const { return N.at(n); }
  int max_degree() const { return static_cast<int>(M.size()) - 1; }
};

// M_n = <v, P_n Q_{n-1}^t> Hhat_{n-1}^{-1}, N_n = <v, P_n Q_{n-2}^t> Hhat_{n-2}^{-1}
template <typename T>
ConnectionCoeffs<T> connection(const OPSystem<T>& u_ops,
                               const OPSystem<T>& v_ops, int max_degree) {
  const auto& v = v_ops.functional();
  ConnectionCoeffs<T> c;
  c.M.emplace_back(0, 0);
  c.N.emplace_back(0, 0);
  for (int n = 1; n <= max_degree; ++n) {
    c.M.push_back(OPSystem<T>::bilinear(v, u_ops.polynomial(n),
                                        v_ops.polynomial(n - 1)) *
                  v_ops.gram_inverse(n - 1));
    if (n == 1)
      c.N.emplace_back(0, 0);
    else
      c.N.push_back(OPSystem<T>::bilinear(v, u_ops.polynomial(n),
                                          v_ops.polynomial(n - 2)) *
                    v_ops.gram_inverse(n - 2));
  }
  return c;
}

// Candidate transported coefficients (4.5)-(4.6) plus verdicts for the
// consistency equations (4.7)-(4.8). M_{n} outside the stored range is
// treated as zero (N_n = 0 for n < 2).
template <typename T>
struct TransportResult {
  // indexed [n][i-1], n = 0..max_degree-1
  std::vector<std::vector<Matrix<T>>> Bhat;
  std::vector<std::vector<Matrix<T>>> Chat;
  struct Verdict {
    int degree;
    int variable;
    std::string equation;  // "4.7" or "4.8"
    double residual;       // max-abs of the residual matrix
    bool holds;
  };
  std::vector<Verdict> verdicts;

  bool all_hold() const {
    for (const auto& v : verdicts)
      if (!v.holds) return false;
    return true;
  }
};

template <typename T>
TransportResult<T> transport_three_term(const OPSystem<T>& u_ops,
                                        const ConnectionCoeffs<T>& conn,
                                        double tol = 0.0) {
  int d = u_ops.dimension();
  int top = conn.max_degree();  // need M_{n+1}: transports run to top-1
  TransportResult<T> out;

  auto Mat = [&](int n) -> Matrix<T> {
    if (n >= 1 && n <= conn.max_degree()) return conn.Mn(n);
    return Matrix<T>(static_cast<int>(rank_size(std::max(n, 0), d)),
                     n >= 1 ? static_cast<int>(rank_size(n - 1, d)) : 0);
  };
  auto NMat = [&](int n) -> Matrix<T> {
    if (n >= 2 && n <= conn.max_degree()) return conn.Nn(n);
    return Matrix<T>(static_cast<int>(rank_size(std::max(n, 0), d)),
                     n >= 2 ? static_cast<int>(rank_size(n - 2, d)) : 0);
  };

  std::vector<std::vector<Matrix<T>>> B(top), C(top);
  for (int n = 0; n < top; ++n) {
    B[n].reserve(d);
    C[n].reserve(d);
    for (int i = 1; i <= d; ++i) {
      auto [Bn, Cn] = u_ops.three_term(n, i);
      Matrix<T> Bhat = Bn + shift_matrix<T>(n, i, d) * Mat(n + 1);
      if (n >= 1) Bhat = Bhat - Mat(n) * shift_matrix<T>(n - 1, i, d);
      Matrix<T> Chat(static_cast<int>(rank_size(n, d)),
                     n >= 1 ? static_cast<int>(rank_size(n - 1, d)) : 0);
      if (n >= 1) {
        Chat = Cn + Bn * Mat(n) + shift_matrix<T>(n, i, d) * NMat(n + 1) -
               Mat(n) * B[n - 1][i - 1];
        if (n >= 2) Chat = Chat - NMat(n) * shift_matrix<T>(n - 2, i, d);
      }
      B[n].push_back(std::move(Bhat));
      C[n].push_back(std::move(Chat));
    }
  }

  // (4.7): M_n Chat_{n-1,i} + N_n Bhat_{n-2,i} = C_{n,i} M_{n-1} + B_{n,i} N_n
  // (4.8): C_{n,i} N_{n-1} = N_n Chat_{n-2,i}
  for (int n = 2; n < top; ++n)
    for (int i = 1; i <= d; ++i) {
      auto [Bn, Cn] = u_ops.three_term(n, i);
      Matrix<T> lhs = Mat(n) * C[n - 1][i - 1];
      if (n >= 2) lhs = lhs + NMat(n) * B[n - 2][i - 1];
      Matrix<T> rhs = Bn * NMat(n);
      if (n >= 2) rhs = rhs + Cn * Mat(n - 1);
      Matrix<T> r47 = lhs - rhs;
      out.verdicts.push_back(
          {n, i, "4.7", r47.max_abs(), r47.is_zero(tol)});
      if (n >= 3) {
        Matrix<T> r48 = Cn * NMat(n - 1) - NMat(n) * C[n - 2][i - 1];
        out.verdicts.push_back(
            {n, i, "4.8", r48.max_abs(), r48.is_zero(tol)});
      }
    }

  out.Bhat = std::move(B);
  out.Chat = std::move(C);
  return out;
}

// lambda(x) = scale * (N_2^t H_2^{-1} P_2 + M_1^t H_1^{-1} P_1 + H_0^{-1} P_0).
// With scale = Hhat_0 = <u, lambda> this inverts connection() exactly.
template <typename T>
QuadraticMultiplier<T> recover_multiplier(const OPSystem<T>& u_ops,
                                          const ConnectionCoeffs<T>& conn,
                                          const T& scale = T(1)) {
  int d = u_ops.dimension();
  if (conn.max_degree() < 2 || conn.Nn(2).is_zero()) throw DegreeCollapse();

  Polynomial<T> lam(d);
  auto accumulate = [&](const Matrix<T>& w, const VectorPolynomial<T>& p) {
    // w is 1 x r_n^d: lam += sum_r w_r * p.row(r)
    for (int r = 0; r < p.size(); ++r) lam += p.row(r) * w(0, r);
  };
  accumulate(conn.Nn(2).transpose() * u_ops.gram_inverse(2),
             u_ops.polynomial(2));
  accumulate(conn.Mn(1).transpose() * u_ops.gram_inverse(1),
             u_ops.polynomial(1));
  accumulate(u_ops.gram_inverse(0), u_ops.polynomial(0));

  std::vector<T> a2, a1;
  for (const auto& nu : enumerate(2, d)) a2.push_back(lam.coefficient(nu) * scale);
  for (const auto& nu : enumerate(1, d)) a1.push_back(lam.coefficient(nu) * scale);
  T a0 = lam.coefficient(MultiIndex(std::vector<int>(d, 0))) * scale;
  return QuadraticMultiplier<T>(d, std::move(a2), std::move(a1), std::move(a0));
}

template <typename T>
struct FromConnectionResult {
  std::vector<VectorPolynomial<T>> Q;
  QuadraticMultiplier<T> lambda;
  MomentFunctional<T> v;
  std::vector<Matrix<T>> Hhat;
};

// Theorem 4.3 constructive route: build Q_n = P_n - M_n Q_{n-1} - N_n Q_{n-2},
// check the three-term relation with the transported coefficients holds as a
// polynomial identity, recover lambda, and verify <v, Q_n Q_m^t> = delta Hhat_n
// with Hhat_n invertible. Throws NoThreeTerm / NotQuasiDefinite.
template <typename T>
FromConnectionResult<T> build_from_connection(const OPSystem<T>& u_ops,
                                              const ConnectionCoeffs<T>& conn,
                                              double tol = 0.0) {
  int d = u_ops.dimension();
  int top = conn.max_degree();
  if (top < 2 || conn.Nn(2).is_zero()) throw DegreeCollapse();

  std::vector<VectorPolynomial<T>> Q;
  for (int n = 0; n <= top; ++n) {
    VectorPolynomial<T> q = u_ops.polynomial(n);
    if (n >= 1)
      for (int k = 0; k < n; ++k)
        q.G[k] = q.G[k] - conn.Mn(n) * Q[n - 1].G[k];
    if (n >= 2)
      for (int k = 0; k <= n - 2; ++k)
        q.G[k] = q.G[k] - conn.Nn(n) * Q[n - 2].G[k];
    Q.push_back(std::move(q));
  }

  // Three-term residual x_i Q_n - L_{n,i} Q_{n+1} - Bhat Q_n - Chat Q_{n-1}
  TransportResult<T> tr = transport_three_term(u_ops, conn, tol);
  for (int n = 0; n + 1 <= top; ++n)
    for (int i = 1; i <= d; ++i) {
      VectorPolynomial<T> lhs = shift_multiply(Q[n], i);
      Matrix<T> L = shift_matrix<T>(n, i, d);
      for (int k = 0; k <= n + 1; ++k) {
        Matrix<T> r = lhs.G[k] - L * Q[n + 1].G[k];
        if (k <= n) r = r - tr.Bhat[n][i - 1] * Q[n].G[k];
        if (n >= 1 && k <= n - 1) r = r - tr.Chat[n][i - 1] * Q[n - 1].G[k];
        if (!r.is_zero(tol)) throw NoThreeTerm(n, i);
      }
    }
  for (const auto& v : tr.verdicts)
    if (!v.holds) throw NoThreeTerm(v.degree, v.variable);

  QuadraticMultiplier<T> lam = recover_multiplier(u_ops, conn);
  MomentFunctional<T> v = left_multiply(u_ops.functional(), lam.to_polynomial());

  std::vector<Matrix<T>> Hhat;
  for (int n = 0; n <= top; ++n) {
    for (int m = 0; m < n; ++m)
      if (!OPSystem<T>::bilinear(v, Q[n], Q[m]).is_zero(tol))
        throw NotQuasiDefinite(n, "constructed Q not orthogonal under lambda*u");
    Matrix<T> H = OPSystem<T>::bilinear(v, Q[n], Q[n]);
    if (scalar_traits<T>::is_zero(H.determinant(),
                                  tol * std::max(1.0, H.max_abs())))
      throw NotQuasiDefinite(n, "Hhat singular");
    Hhat.push_back(std::move(H));
  }
  return {std::move(Q), std::move(lam), std::move(v), std::move(Hhat)};
}

// Both characterizations of central symmetry: vanishing odd moments up to
// degree 2*N_deg+1 and B_{n,i} = 0 for n <= N_deg. They must agree.
template <typename T>
bool is_centrally_symmetric(OPSystem<T>& u_ops, int n_deg, double tol = 0.0) {
  int d = u_ops.dimension();
  bool moments_route = true;
  for (int n = 1; n <= 2 * n_deg + 1 && moments_route; n += 2)
    for (const auto& nu : enumerate(n, d))
      if (!scalar_traits<T>::is_zero(u_ops.functional().moment(nu), tol)) {
        moments_route = false;
        break;
      }
  bool recurrence_route = true;
  for (int n = 0; n <= n_deg && recurrence_route; ++n)
    for (int i = 1; i <= d; ++i)
      if (!u_ops.three_term(n, i).first.is_zero(tol)) {
        recurrence_route = false;
        break;
      }
  if (moments_route != recurrence_route) throw InconsistentSymmetry();
  return moments_route;
}

}  // namespace momentops

#endif
