#ifndef MOMENTOPS_RANDOM_HPP
#define MOMENTOPS_RANDOM_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "momentops/christoffel.hpp"
#include "momentops/moments.hpp"
#include "momentops/uvarov.hpp"

namespace momentops {

// Seeded generators for rational test instances. A discrete measure with
// enough points in general position is quasi-definite with overwhelming
// probability; the callers below verify exactly and redraw on failure.

template <typename T>
T random_rational(std::mt19937_64& rng, int max_num = 9, int max_den = 9,
                  bool allow_negative = true) {
  std::uniform_int_distribution<int> num(allow_negative ? -max_num : 1,
                                         max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  int n = num(rng);
  if (!allow_negative && n == 0) n = 1;
  return T(n) / T(den(rng));
}

// Finite positive measure sum_i w_i delta_{p_i} as a moment functional.
template <typename T>
MomentFunctional<T> discrete_measure_functional(
    std::vector<std::vector<T>> points, std::vector<T> weights,
    std::string label = "discrete") {
  int d = static_cast<int>(points.at(0).size());
  auto pts = std::make_shared<std::vector<std::vector<T>>>(std::move(points));
  auto ws = std::make_shared<std::vector<T>>(std::move(weights));
  return MomentFunctional<T>(
      d,
      [pts, ws, d](const MultiIndex& nu) {
        T s(0);
        for (std::size_t i = 0; i < pts->size(); ++i) {
          T t = (*ws)[i];
          for (int v = 0; v < d; ++v)
            for (int e = 0; e < nu[v]; ++e) t *= (*pts)[i][v];
          s += t;
        }
        return s;
      },
      std::move(label));
}

// Random rational quasi-definite functional (verified exactly through
// max_degree; redraws until it passes).
template <typename T>
MomentFunctional<T> random_quasi_definite(std::mt19937_64& rng, int d,
                                          int max_degree, int n_points = 24) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::vector<T>> pts;
    std::vector<T> ws;
    for (int i = 0; i < n_points; ++i) {
      std::vector<T> p;
      for (int v = 0; v < d; ++v) p.push_back(random_rational<T>(rng));
      pts.push_back(std::move(p));
      ws.push_back(random_rational<T>(rng, 9, 9, false));
    }
    MomentFunctional<T> u =
        discrete_measure_functional<T>(std::move(pts), std::move(ws), "seeded");
    if (is_quasi_definite(u, max_degree).all()) return u;
  }
  throw std::runtime_error("random_quasi_definite: no instance after 64 draws");
}

// Distinct rational mass points with nonzero masses.
template <typename T>
UvarovSpec<T> random_uvarov_spec(std::mt19937_64& rng, int d, int count) {
  std::vector<std::vector<T>> pts;
  std::vector<T> masses;
  while (static_cast<int>(pts.size()) < count) {
    std::vector<T> p;
    for (int v = 0; v < d; ++v) p.push_back(random_rational<T>(rng));
    bool dup = false;
    for (const auto& q : pts) dup = dup || q == p;
    if (dup) continue;
    pts.push_back(std::move(p));
    T m = random_rational<T>(rng);
    masses.push_back(m == T(0) ? T(1) : m);
  }
  return UvarovSpec<T>(std::move(pts), std::move(masses));
}

// Random exact-degree-2 multiplier with <u, lambda> != 0 and lambda(x)u
// quasi-definite through max_degree; redraws until both hold.
template <typename T>
QuadraticMultiplier<T> random_christoffel_multiplier(std::mt19937_64& rng,
                                                     const MomentFunctional<T>& u,
                                                     int max_degree) {
  int d = u.dimension();
  for (int attempt = 0; attempt < 128; ++attempt) {
    std::vector<T> a2, a1;
    for (int i = 0; i < rank_size(2, d); ++i)
      a2.push_back(random_rational<T>(rng, 4, 4));
    bool nz = false;
    for (const auto& c : a2) nz = nz || c != T(0);
    if (!nz) continue;
    for (int i = 0; i < d; ++i) a1.push_back(random_rational<T>(rng, 4, 4));
    T a0 = random_rational<T>(rng, 4, 4);
    QuadraticMultiplier<T> lam(d, std::move(a2), std::move(a1), std::move(a0));
    if (u.apply(lam.to_polynomial()) == T(0)) continue;
    if (!is_quasi_definite(left_multiply(u, lam.to_polynomial()), max_degree)
             .all())
      continue;
    return lam;
  }
  throw std::runtime_error(
      "random_christoffel_multiplier: no instance after 128 draws");
}

}  // namespace momentops

#endif
