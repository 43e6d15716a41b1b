#ifndef MOMENTOPS_UVAROV_HPP
#define MOMENTOPS_UVAROV_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "momentops/ops.hpp"

namespace momentops {

// Point masses lambda_i at distinct points xi_i, all lambda_i != 0.
template <typename T>
struct UvarovSpec {
  std::vector<std::vector<T>> points;
  std::vector<T> masses;

  UvarovSpec(std::vector<std::vector<T>> pts, std::vector<T> lam)
      : points(std::move(pts)), masses(std::move(lam)) {
    if (points.size() != masses.size() || points.empty())
      throw std::invalid_argument("UvarovSpec: length mismatch");
    for (const auto& m : masses)
      if (m == T(0)) throw std::invalid_argument("UvarovSpec: zero mass");
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (points[i] == points[j])
          throw std::invalid_argument("UvarovSpec: duplicate point");
  }

  int count() const { return static_cast<int>(points.size()); }
  Matrix<T> lambda_diag() const { return Matrix<T>::diagonal(masses); }
};

struct CertRecord {
  int degree;       // degree n, certificate on I_N + Lambda K_{n-1}
  double det_mag;   // |det|
  bool invertible;
};

// Per-degree data for v = u + sum lambda_i delta_{xi_i}: evaluation matrices
// Psf_n(xi), kernel matrices Kcal_n, connection output Q_n and Hhat_n.
// Kernel vectors Ksf_n(xi, .) are carried as per-degree coefficient stacks so
// identities can be checked on coefficients.
template <typename T>
class UvarovSystem {
 public:
  UvarovSystem(const OPSystem<T>& ops, UvarovSpec<T> spec, int max_degree)
      : ops_(ops), spec_(std::move(spec)) {
    int d = ops.dimension();
    int N = spec_.count();
    Matrix<T> Lam = spec_.lambda_diag();
    Matrix<T> Kcal(N, N);  // Kcal_{-1} = 0
    for (int n = 0; n <= max_degree; ++n) {
      // P_n evaluated at the mass points, one column per point
      Matrix<T> Pn(static_cast<int>(rank_size(n, d)), N);
      for (int i = 0; i < N; ++i)
        Pn.set_block(0, i, ops.polynomial(n).evaluate(spec_.points[i]));
      Pxi_.push_back(Pn);

      Matrix<T> A = Matrix<T>::identity(N) + Lam * Kcal;  // I + Lam Kcal_{n-1}
      T det = A.determinant();
      certs_.push_back({n, scalar_traits<T>::magnitude(det),
                        !scalar_traits<T>::is_zero(det, cert_tol(A))});
      Kprev_.push_back(Kcal);
      if (certs_.back().invertible) {
        Matrix<T> corr = Pn * A.inverse() * Lam;  // r_n^d x N

        // Q_n = P_n - corr * Ksf_{n-1}(xi, x), per canonical block
        VectorPolynomial<T> Q = ops.polynomial(n);
        for (int k = 0; k < n; ++k) Q.G[k] = Q.G[k] - corr * kstack_[k];
        Qn_.push_back(Q);

        // Hhat_n = H_n + corr * P_n^t(xi)   (3.9)
        Hhat_.push_back(ops.gram(n) + corr * Pn.transpose());
      } else {
        Qn_.push_back(VectorPolynomial<T>::zero(d, n));
        Hhat_.push_back(Matrix<T>(0, 0));
      }

      // extend kernel stacks and Kcal to level n
      Matrix<T> W = Pn.transpose() * ops.gram_inverse(n);  // N x r_n^d
      Kcal = Kcal + W * Pn;                                // (3.6) telescoping
      for (int k = 0; k <= n; ++k) {
        Matrix<T> add = W * ops.polynomial(n).G[k];  // N x r_k^d
        if (k == static_cast<int>(kstack_.size()))
          kstack_.push_back(add);
        else
          kstack_[k] = kstack_[k] + add;
      }
      Kcur_.push_back(Kcal);
    }
  }

  const UvarovSpec<T>& spec() const { return spec_; }
  const OPSystem<T>& base() const { return ops_; }
  const std::vector<CertRecord>& certificates() const { return certs_; }

  bool certified_through(int n) const {
    for (int k = 0; k <= n; ++k)
      if (!certs_.at(k).invertible) return false;
    return true;
  }

  // Connection output (3.8); throws if I + Lam Kcal_{n-1} was singular.
  const VectorPolynomial<T>& connect(int n) const {
    require(n);
    return Qn_.at(n);
  }

  // Hhat_n from (3.9)
  const Matrix<T>& modified_gram(int n) const {
    require(n);
    return Hhat_.at(n);
  }

  // Sherman-Morrison-Woodbury form (3.10); note Kcal_n, not Kcal_{n-1}.
  Matrix<T> modified_gram_inverse(int n) const {
    require(n);
    int N = spec_.count();
    Matrix<T> Lam = spec_.lambda_diag();
    Matrix<T> A = Matrix<T>::identity(N) + Lam * Kcur_.at(n);
    T det = A.determinant();
    if (scalar_traits<T>::is_zero(det, cert_tol(A)))
      throw NotQuasiDefinite(n, "I + Lambda Kcal_n singular");
    const Matrix<T>& Hinv = ops_.gram_inverse(n);
    return Hinv - Hinv * Pxi_.at(n) * A.inverse() * Lam *
                      Pxi_.at(n).transpose() * Hinv;
  }

  // K_n(v; x, y) via (3.11)
  T modified_kernel(int n, const std::vector<T>& x,
                    const std::vector<T>& y) const {
    require(n);
    int N = spec_.count();
    Matrix<T> Kx(N, 1), Ky(N, 1);
    for (int i = 0; i < N; ++i) {
      Kx(i, 0) = ops_.kernel(n, spec_.points[i], x);
      Ky(i, 0) = ops_.kernel(n, spec_.points[i], y);
    }
    Matrix<T> Lam = spec_.lambda_diag();
    Matrix<T> A = Matrix<T>::identity(N) + Lam * Kcur_.at(n);
    Matrix<T> corr = Kx.transpose() * A.inverse() * Lam * Ky;
    return ops_.kernel(n, x, y) - corr(0, 0);
  }

  // Kcal_n (N x N kernel matrix at the mass points)
  const Matrix<T>& kernel_matrix(int n) const { return Kcur_.at(n); }
  const Matrix<T>& eval_matrix(int n) const { return Pxi_.at(n); }
  // Coefficient stack of Ksf_{n}(xi, .): block k is N x r_k^d. The stacks are
  // cumulative; after construction they hold Ksf_{max_degree}.
  const Matrix<T>& kernel_stack_block(int k) const { return kstack_.at(k); }

 private:
  static double cert_tol(const Matrix<T>& A) {
    if constexpr (scalar_traits<T>::exact)
      return 0.0;
    else
      return 1e-12 * std::max(1.0, A.max_abs());
  }

  void require(int n) const {
    for (int k = 0; k <= n; ++k)
      if (!certs_.at(k).invertible)
        throw NotQuasiDefinite(k, "I + Lambda Kcal_{n-1} singular");
  }

  const OPSystem<T>& ops_;
  UvarovSpec<T> spec_;
  std::vector<Matrix<T>> Pxi_;
  std::vector<Matrix<T>> Kprev_;  // Kcal_{n-1} per degree n
  std::vector<Matrix<T>> Kcur_;   // Kcal_n per degree n
  std::vector<Matrix<T>> kstack_;
  std::vector<CertRecord> certs_;
  std::vector<VectorPolynomial<T>> Qn_;
  std::vector<Matrix<T>> Hhat_;
};

// The modified functional itself, for direct-route cross checks.
template <typename T>
MomentFunctional<T> uvarov_functional(const MomentFunctional<T>& u,
                                      const UvarovSpec<T>& spec) {
  return add_point_masses(u, spec.points, spec.masses);
}

}  // namespace momentops

#endif
