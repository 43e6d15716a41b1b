#ifndef MOMENTOPS_OPS_HPP
#define MOMENTOPS_OPS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "momentops/moments.hpp"

namespace momentops {

struct NotQuasiDefinite : std::runtime_error {
  int degree;
  NotQuasiDefinite(int n, const std::string& what)
      : std::runtime_error(what + " at degree " + std::to_string(n)),
        degree(n) {}
};

struct SingularGram : std::runtime_error {
  int degree;
  explicit SingularGram(int n)
      : std::runtime_error("Gram matrix H_" + std::to_string(n) +
                           " is singular"),
        degree(n) {}
};

// P_n = sum_k G_{n,k} X_k, G[k] of size r_n^d x r_k^d. Monic: G[n] = I.
template <typename T>
struct VectorPolynomial {
  int d = 0;
  int n = 0;
  std::vector<Matrix<T>> G;  // G[0..n]

  static VectorPolynomial zero(int d, int n) {
    VectorPolynomial p;
    p.d = d;
    p.n = n;
    for (int k = 0; k <= n; ++k)
      p.G.emplace_back(static_cast<int>(rank_size(n, d)),
                       static_cast<int>(rank_size(k, d)));
    return p;
  }

  static VectorPolynomial monic_leading(int d, int n) {
    VectorPolynomial p = zero(d, n);
    p.G[n] = Matrix<T>::identity(static_cast<int>(rank_size(n, d)));
    return p;
  }

  // Row count; r_n^d for a standard degree-n vector polynomial.
  int size() const { return G.empty() ? 0 : G[0].rows(); }

  // X_k(x) as a column vector
  static Matrix<T> canonical_at(int k, int d, const std::vector<T>& x) {
    auto idx = enumerate(k, d);
    Matrix<T> v(static_cast<int>(idx.size()), 1);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      T t(1);
      for (int i = 0; i < d; ++i)
        for (int e = 0; e < idx[r][i]; ++e) t *= x[i];
      v(static_cast<int>(r), 0) = t;
    }
    return v;
  }

  // Column vector P_n(x)
  Matrix<T> evaluate(const std::vector<T>& x) const {
    Matrix<T> v(size(), 1);
    for (int k = 0; k <= n; ++k) v = v + G[k] * canonical_at(k, d, x);
    return v;
  }

  Polynomial<T> row(int r) const {
    Polynomial<T> p(d);
    for (int k = 0; k <= n; ++k) {
      auto idx = enumerate(k, d);
      for (std::size_t c = 0; c < idx.size(); ++c)
        p.add_term(idx[c], G[k](r, static_cast<int>(c)));
    }
    return p;
  }
};

// x_i P_n expressed against the canonical basis: degree-(k+1) block picks up
// G[k] L_{k,i}.
template <typename T>
VectorPolynomial<T> shift_multiply(const VectorPolynomial<T>& p, int i) {
  VectorPolynomial<T> q;
  q.d = p.d;
  q.n = p.n + 1;
  for (int k = 0; k <= p.n + 1; ++k)
    q.G.emplace_back(p.size(), static_cast<int>(rank_size(k, p.d)));
  for (int k = 0; k <= p.n; ++k)
    q.G[k + 1] = q.G[k + 1] + p.G[k] * shift_matrix<T>(k, i, p.d);
  return q;
}

// Monic OPS for a quasi-definite moment functional, built degree by degree.
// Degree n lower coefficients solve the block system against M_{n-1}.
template <typename T>
class OPSystem {
 public:
  OPSystem(MomentFunctional<T> u, int max_degree) : u_(std::move(u)) {
    extend(max_degree);
  }

  const MomentFunctional<T>& functional() const { return u_; }
  int dimension() const { return u_.dimension(); }
  int max_degree() const { return static_cast<int>(P_.size()) - 1; }

  const VectorPolynomial<T>& polynomial(int n) const { return P_.at(n); }
  const Matrix<T>& gram(int n) const { return H_.at(n); }
  const Matrix<T>& gram_inverse(int n) const { return Hinv_.at(n); }

  // <u, A B^t> for vector polynomials A, B (w.r.t. this system's functional)
  Matrix<T> bilinear(const VectorPolynomial<T>& a,
                     const VectorPolynomial<T>& b) const {
    return bilinear(u_, a, b);
  }

  static Matrix<T> bilinear(const MomentFunctional<T>& u,
                            const VectorPolynomial<T>& a,
                            const VectorPolynomial<T>& b) {
    Matrix<T> r(a.size(), b.size());
    for (int k = 0; k <= a.n; ++k)
      for (int l = 0; l <= b.n; ++l)
        r = r + a.G[k] * moment_block(u, k, l) * b.G[l].transpose();
    return r;
  }

  // B_{n,i} = <u, x_i P_n P_n^t> H_n^{-1};  C_{n,i} = H_n L_{n-1,i}^t H_{n-1}^{-1}
  std::pair<Matrix<T>, Matrix<T>> three_term(int n, int i) const {
    const auto& Pn = P_.at(n);
    Matrix<T> B = bilinear(shift_multiply(Pn, i), Pn) * Hinv_.at(n);
    Matrix<T> C =
        n == 0 ? Matrix<T>(Pn.size(), 0)
               : H_.at(n) * shift_matrix<T>(n - 1, i, dimension()).transpose() *
                     Hinv_.at(n - 1);
    return {std::move(B), std::move(C)};
  }

  // K_n(u; x, y) = sum_{m<=n} P_m(x)^t H_m^{-1} P_m(y)
  T kernel(int n, const std::vector<T>& x, const std::vector<T>& y) const {
    T s(0);
    for (int m = 0; m <= n; ++m) {
      Matrix<T> k =
          P_.at(m).evaluate(x).transpose() * Hinv_.at(m) * P_.at(m).evaluate(y);
      s += k(0, 0);
    }
    return s;
  }

  // K_n(u; xi, .) as a polynomial in the second argument
  Polynomial<T> kernel_polynomial(int n, const std::vector<T>& xi) const {
    Polynomial<T> p(dimension());
    for (int m = 0; m <= n; ++m) {
      Matrix<T> w = Hinv_.at(m) * P_.at(m).evaluate(xi);  // column r_m^d
      for (int r = 0; r < P_.at(m).size(); ++r)
        p += P_.at(m).row(r) * w(r, 0);
    }
    return p;
  }

  void extend(int max_degree) {
    int d = dimension();
    for (int n = max_degree_built() + 1; n <= max_degree; ++n) {
      VectorPolynomial<T> p = VectorPolynomial<T>::monic_leading(d, n);
      if (n > 0) {
        // M_{n-1} [G_{n,0}^t; ...; G_{n,n-1}^t] = -[m_{0,n}; ...; m_{n-1,n}]
        Matrix<T> M = moment_matrix(u_, n - 1);
        Matrix<T> rhs(M.rows(), p.size());
        int r0 = 0;
        for (int m = 0; m < n; ++m) {
          rhs.set_block(r0, 0, -moment_block(u_, m, n));
          r0 += static_cast<int>(rank_size(m, d));
        }
        Matrix<T> sol;
        try {
          sol = M.solve(rhs);
        } catch (const std::domain_error&) {
          throw SingularMomentMatrix(n - 1);
        }
        r0 = 0;
        for (int k = 0; k < n; ++k) {
          int rk = static_cast<int>(rank_size(k, d));
          p.G[k] = sol.block(r0, 0, rk, p.size()).transpose();
          r0 += rk;
        }
      }
      Matrix<T> H = bilinear(p, p);
      Matrix<T> Hinv;
      try {
        Hinv = H.inverse();
      } catch (const std::domain_error&) {
        throw SingularGram(n);
      }
      P_.push_back(std::move(p));
      H_.push_back(std::move(H));
      Hinv_.push_back(std::move(Hinv));
    }
  }

 private:
  int max_degree_built() const { return static_cast<int>(P_.size()) - 1; }

  MomentFunctional<T> u_;
  std::vector<VectorPolynomial<T>> P_;
  std::vector<Matrix<T>> H_;
  std::vector<Matrix<T>> Hinv_;
};

}  // namespace momentops

#endif
