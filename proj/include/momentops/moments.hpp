#ifndef MOMENTOPS_MOMENTS_HPP
#define MOMENTOPS_MOMENTS_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "momentops/matrix.hpp"
#include "momentops/multiindex.hpp"
#include "momentops/polynomial.hpp"

namespace momentops {

struct SingularMomentMatrix : std::runtime_error {
  int degree;
  explicit SingularMomentMatrix(int k)
      : std::runtime_error("moment matrix M_" + std::to_string(k) +
                           " is singular"),
        degree(k) {}
};

// Moment source nu -> mu_nu with a concurrent-read cache. Values are
// immutable once computed; copies share the cache.
template <typename T>
class MomentFunctional {
 public:
  using Oracle = std::function<T(const MultiIndex&)>;

  MomentFunctional(int d, Oracle oracle, std::string label = "",
                   bool centrally_symmetric = false)
      : impl_(std::make_shared<Impl>(d, std::move(oracle), std::move(label),
                                     centrally_symmetric)) {}

  static MomentFunctional from_table(int d, std::map<MultiIndex, T> table,
                                     std::string label = "") {
    auto tbl = std::make_shared<std::map<MultiIndex, T>>(std::move(table));
    return MomentFunctional(
        d,
        [tbl](const MultiIndex& nu) {
          auto it = tbl->find(nu);
          if (it == tbl->end())
            throw std::out_of_range("moment table has no entry for index");
          return it->second;
        },
        std::move(label));
  }

  int dimension() const { return impl_->d; }
  const std::string& label() const { return impl_->label; }
  bool declared_centrally_symmetric() const { return impl_->symmetric; }

  T moment(const MultiIndex& nu) const {
    {
      std::lock_guard<std::mutex> g(impl_->mu);
      auto it = impl_->cache.find(nu);
      if (it != impl_->cache.end()) return it->second;
    }
    T v = impl_->oracle(nu);
    std::lock_guard<std::mutex> g(impl_->mu);
    return impl_->cache.emplace(nu, std::move(v)).first->second;
  }

  // <u, p> = sum a_nu mu_nu
  T apply(const Polynomial<T>& p) const {
    T s(0);
    for (const auto& [nu, c] : p.terms()) s += c * moment(nu);
    return s;
  }

 private:
  struct Impl {
    Impl(int d_, Oracle o, std::string l, bool s)
        : d(d_), oracle(std::move(o)), label(std::move(l)), symmetric(s) {}
    int d;
    Oracle oracle;
    std::string label;
    bool symmetric;
    mutable std::mutex mu;
    mutable std::map<MultiIndex, T> cache;
  };
  std::shared_ptr<Impl> impl_;
};

// m_{h,k} = <u, X_h X_k^t>, entry (r,c) = mu_{nu_r + nu_c}
template <typename T>
Matrix<T> moment_block(const MomentFunctional<T>& u, int h, int k) {
  int d = u.dimension();
  auto rows = enumerate(h, d);
  auto cols = enumerate(k, d);
  Matrix<T> m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(static_cast<int>(r), static_cast<int>(c)) =
          u.moment(rows[r].plus(cols[c]));
  return m;
}

// Block-symmetric M_n of dimension r^bold_n^d
template <typename T>
Matrix<T> moment_matrix(const MomentFunctional<T>& u, int n) {
  int d = u.dimension();
  int dim = static_cast<int>(cumulative_size(n, d));
  Matrix<T> M(dim, dim);
  int r0 = 0;
  for (int h = 0; h <= n; ++h) {
    int c0 = 0;
    for (int k = 0; k <= n; ++k) {
      M.set_block(r0, c0, moment_block(u, h, k));
      c0 += static_cast<int>(rank_size(k, d));
    }
    r0 += static_cast<int>(rank_size(h, d));
  }
  return M;
}

struct QuasiDefiniteVerdict {
  std::vector<bool> per_degree;
  std::vector<double> witness;  // |det| (exact) or smallest singular value
  bool all() const {
    for (bool b : per_degree)
      if (!b) return false;
    return true;
  }
  std::optional<int> first_failure() const {
    for (std::size_t k = 0; k < per_degree.size(); ++k)
      if (!per_degree[k]) return static_cast<int>(k);
    return std::nullopt;
  }
};

// Exact backend: det M_k != 0 per degree k <= n. Float backend: smallest
// singular value of M_k above tol * max entry.
template <typename T>
QuasiDefiniteVerdict is_quasi_definite(const MomentFunctional<T>& u, int n,
                                       double tol = 1e-10) {
  QuasiDefiniteVerdict v;
  for (int k = 0; k <= n; ++k) {
    Matrix<T> M = moment_matrix(u, k);
    if constexpr (scalar_traits<T>::exact) {
      T det = M.determinant();
      v.per_degree.push_back(det != T(0));
      v.witness.push_back(scalar_traits<T>::magnitude(det));
    } else {
      double sigma = smallest_singular_value(M);
      v.per_degree.push_back(sigma > tol * std::max(M.max_abs(), 1.0));
      v.witness.push_back(sigma);
    }
  }
  return v;
}

// q u, with <q u, p> = <u, q p>; moment(nu) = sum_kappa q_kappa mu_{nu+kappa}
template <typename T>
MomentFunctional<T> left_multiply(const MomentFunctional<T>& u,
                                  const Polynomial<T>& q) {
  return MomentFunctional<T>(
      u.dimension(),
      [u, q](const MultiIndex& nu) {
        T s(0);
        for (const auto& [kappa, c] : q.terms())
          s += c * u.moment(nu.plus(kappa));
        return s;
      },
      u.label().empty() ? "" : u.label() + "*lambda");
}

// v = u + sum_i lambda_i delta_{xi_i}
template <typename T>
MomentFunctional<T> add_point_masses(const MomentFunctional<T>& u,
                                     const std::vector<std::vector<T>>& points,
                                     const std::vector<T>& masses) {
  if (points.size() != masses.size())
    throw std::invalid_argument("add_point_masses: length mismatch");
  for (const auto& m : masses)
    if (m == T(0)) throw std::invalid_argument("add_point_masses: zero mass");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != u.dimension())
      throw std::invalid_argument("add_point_masses: bad point dimension");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("add_point_masses: duplicate point");
  }
  return MomentFunctional<T>(
      u.dimension(),
      [u, points, masses](const MultiIndex& nu) {
        T s = u.moment(nu);
        for (std::size_t i = 0; i < points.size(); ++i) {
          T t = masses[i];
          for (int j = 0; j < nu.dimension(); ++j)
            for (int k = 0; k < nu[j]; ++k) t *= points[i][j];
          s += t;
        }
        return s;
      },
      u.label().empty() ? "" : u.label() + "+masses");
}

}  // namespace momentops

#endif
