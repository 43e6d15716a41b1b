#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momentops/christoffel.hpp"
#include "momentops/families.hpp"
#include "momentops/random.hpp"
#include "support.hpp"

using namespace momentops;
using testsupport::Q;
using testsupport::mi;
using R = Rational;

namespace {
MomentFunctional<R> disk() { return ball_functional<R>(2, Q(1, 2)); }

// lambda = 1 - x^2 - y^2 on the disk: raises the weight exponent by 1
QuadraticMultiplier<R> disk_multiplier() {
  return QuadraticMultiplier<R>(2, {R(-1), R(0), R(-1)}, {R(0), R(0)}, R(1));
}

MomentFunctional<R> legendre_type() {
  return MomentFunctional<R>(1, [](const MultiIndex& nu) {
    int k = nu[0];
    return k % 2 == 0 ? R(1) / R(k + 1) : R(0);
  });
}
}  // namespace

TEST_CASE("multiplier validation and polynomial form") {
  CHECK_THROWS_AS(
      QuadraticMultiplier<R>(2, {R(0), R(0), R(0)}, {R(0), R(0)}, R(1)),
      std::invalid_argument);
  CHECK_THROWS_AS(QuadraticMultiplier<R>(2, {R(1)}, {R(0), R(0)}, R(0)),
                  std::invalid_argument);
  auto lam = QuadraticMultiplier<R>(2, {R(2), R(3), R(5)}, {R(7), R(11)}, R(13));
  auto p = lam.to_polynomial();
  CHECK(p.coefficient(mi({2, 0})) == R(2));
  CHECK(p.coefficient(mi({1, 1})) == R(3));
  CHECK(p.coefficient(mi({0, 2})) == R(5));
  CHECK(p.coefficient(mi({1, 0})) == R(7));
  CHECK(p.coefficient(mi({0, 1})) == R(11));
  CHECK(p.coefficient(mi({0, 0})) == R(13));
}

TEST_CASE("modified moment blocks match the left-multiplied functional") {
  auto u = disk();
  auto lam = disk_multiplier();
  auto v = left_multiply(u, lam.to_polynomial());
  CHECK(modified_moment_block(u, lam, 0, 0)(0, 0) == Q(1, 2));
  for (int h = 0; h <= 3; ++h)
    for (int k = 0; k <= 3; ++k)
      CHECK((modified_moment_block(u, lam, h, k) - moment_block(v, h, k))
                .is_zero(0.0));

  // and for a generic random multiplier
  std::mt19937_64 rng(31);
  auto ur = random_quasi_definite<R>(rng, 2, 4);
  auto lamr = random_christoffel_multiplier<R>(rng, ur, 2);
  auto vr = left_multiply(ur, lamr.to_polynomial());
  for (int h = 0; h <= 2; ++h)
    for (int k = 0; k <= 2; ++k)
      CHECK((modified_moment_block(ur, lamr, h, k) - moment_block(vr, h, k))
                .is_zero(0.0));
}

TEST_CASE("parity: odd aggregate blocks vanish on a symmetric functional") {
  auto u = disk();
  auto lam = disk_multiplier();
  // mhat_{0,1} = 0 because every contributing moment has odd total degree
  CHECK(modified_moment_block(u, lam, 0, 1).is_zero(0.0));
  CHECK(modified_moment_block(u, lam, 1, 2).is_zero(0.0));
}

TEST_CASE("connection formula P_n = Q_n + M_n Q_{n-1} + N_n Q_{n-2}") {
  std::mt19937_64 rng(32);
  auto u = random_quasi_definite<R>(rng, 2, 4);
  auto lam = random_christoffel_multiplier<R>(rng, u, 4);
  OPSystem<R> uops(u, 4);
  OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 4);
  auto conn = connection(uops, vops, 4);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n; ++k) {
      Matrix<R> r = uops.polynomial(n).G[k] - vops.polynomial(n).G[k];
      if (k <= n - 1) r = r - conn.Mn(n) * vops.polynomial(n - 1).G[k];
      if (n >= 2 && k <= n - 2) r = r - conn.Nn(n) * vops.polynomial(n - 2).G[k];
      CHECK(r.is_zero(0.0));
    }
}

TEST_CASE("N_2 closed form on the disk") {
  auto u = disk();
  auto lam = disk_multiplier();
  OPSystem<R> uops(u, 3);
  OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 3);
  auto conn = connection(uops, vops, 3);
  // N_2 = H_2 a_2^t Hhat_0^{-1}, a_2 = (-1, 0, -1)
  Matrix<R> a2t(3, 1);
  a2t(0, 0) = R(-1);
  a2t(1, 0) = R(0);
  a2t(2, 0) = R(-1);
  Matrix<R> expect = uops.gram(2) * a2t * (R(1) / vops.gram(0)(0, 0));
  CHECK((conn.Nn(2) - expect).is_zero(0.0));
}

TEST_CASE("identity (4.9): N_n Hhat_{n-2} = H_n A_{n-2,2}^t, full column rank") {
  std::mt19937_64 rng(33);
  auto u = random_quasi_definite<R>(rng, 2, 4);
  auto lam = random_christoffel_multiplier<R>(rng, u, 4);
  OPSystem<R> uops(u, 4);
  OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 4);
  auto conn = connection(uops, vops, 4);
  for (int n = 2; n <= 4; ++n) {
    Matrix<R> lhs = conn.Nn(n) * vops.gram(n - 2);
    Matrix<R> rhs = uops.gram(n) * lam.shift_aggregate_2(n - 2).transpose();
    CHECK((lhs - rhs).is_zero(0.0));
    CHECK(conn.Nn(n).rank() == static_cast<int>(rank_size(n - 2, 2)));
  }
}

TEST_CASE("transported coefficients equal the modified system's three-term") {
  std::mt19937_64 rng(34);
  auto u = random_quasi_definite<R>(rng, 2, 5);
  auto lam = random_christoffel_multiplier<R>(rng, u, 5);
  OPSystem<R> uops(u, 5);
  OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 5);
  auto conn = connection(uops, vops, 5);
  auto tr = transport_three_term(uops, conn);
  CHECK(tr.all_hold());
  for (int n = 0; n <= 3; ++n)
    for (int i = 1; i <= 2; ++i) {
      auto [B, C] = vops.three_term(n, i);
      CHECK((tr.Bhat[n][i - 1] - B).is_zero(0.0));
      if (n >= 1) CHECK((tr.Chat[n][i - 1] - C).is_zero(0.0));
    }
}

TEST_CASE("multiplier round-trip through the connection coefficients") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 3; ++trial) {
    auto u = random_quasi_definite<R>(rng, 2, 3);
    auto lam = random_christoffel_multiplier<R>(rng, u, 3);
    OPSystem<R> uops(u, 3);
    OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 3);
    auto conn = connection(uops, vops, 3);
    // the natural scale is Hhat_0 = <u, lambda>
    auto back = recover_multiplier(uops, conn, vops.gram(0)(0, 0));
    CHECK(back.a2 == lam.a2);
    CHECK(back.a1 == lam.a1);
    CHECK(back.a0 == lam.a0);
  }
}

TEST_CASE("constructive route rebuilds the modified system") {
  std::mt19937_64 rng(36);
  auto u = random_quasi_definite<R>(rng, 2, 4);
  auto lam = random_christoffel_multiplier<R>(rng, u, 4);
  OPSystem<R> uops(u, 4);
  auto vfun = left_multiply(u, lam.to_polynomial());
  OPSystem<R> vops(vfun, 4);
  auto conn = connection(uops, vops, 4);
  auto built = build_from_connection(uops, conn);
  R s = vops.gram(0)(0, 0);
  // lambda comes back up to the global scale <u, lambda>
  CHECK(built.lambda.a0 * s == lam.a0);
  for (int n = 0; n <= 4; ++n)
    CHECK(testsupport::coeff_equal(built.Q[n], vops.polynomial(n)));
  for (int n = 0; n <= 2; ++n)
    CHECK((built.Hhat[n] * s - vops.gram(n)).is_zero(0.0));
}

TEST_CASE("mutated connection data is rejected") {
  std::mt19937_64 rng(37);
  auto u = random_quasi_definite<R>(rng, 2, 4);
  auto lam = random_christoffel_multiplier<R>(rng, u, 4);
  OPSystem<R> uops(u, 4);
  OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 4);
  auto conn = connection(uops, vops, 4);
  conn.N[3](0, 0) += Q(1, 7);
  CHECK_THROWS_AS(build_from_connection(uops, conn), NoThreeTerm);
}

TEST_CASE("degree collapse: trivial connection has N_2 = 0") {
  std::mt19937_64 rng(38);
  auto u = random_quasi_definite<R>(rng, 2, 3);
  OPSystem<R> uops(u, 3);
  auto conn = connection(uops, uops, 3);  // v = u, all M, N vanish
  CHECK_THROWS_AS(recover_multiplier(uops, conn), DegreeCollapse);
  CHECK_THROWS_AS(build_from_connection(uops, conn), DegreeCollapse);
}

TEST_CASE("quasi-orthogonality: lambda Q_n spans only P_n, P_{n+1}, P_{n+2}") {
  std::mt19937_64 rng(39);
  auto u = random_quasi_definite<R>(rng, 2, 4);
  auto lam = random_christoffel_multiplier<R>(rng, u, 4);
  OPSystem<R> uops(u, 3);
  OPSystem<R> vops(left_multiply(u, lam.to_polynomial()), 4);
  Polynomial<R> lp = lam.to_polynomial();
  for (int n = 1; n <= 3; ++n) {
    // coefficient of lambda Q_n on P_k is <u, (lambda Q_n) P_k^t> H_k^{-1}
    const auto& Qn = vops.polynomial(n);
    for (int k = 0; k < n; ++k) {
      Matrix<R> coef(Qn.size(), static_cast<int>(rank_size(k, 2)));
      for (int r = 0; r < Qn.size(); ++r) {
        Polynomial<R> row = Qn.row(r) * lp;
        const auto& Pk = uops.polynomial(k);
        for (int c = 0; c < Pk.size(); ++c)
          coef(r, c) = u.apply(row * Pk.row(c));
      }
      CHECK((coef * uops.gram_inverse(k)).is_zero(0.0));
    }
  }
}

TEST_CASE("central symmetry: dual characterization and preservation") {
  OPSystem<R> dops(disk(), 4);
  CHECK(is_centrally_symmetric(dops, 3));

  // centrally symmetric multiplier (a1 = 0) keeps the modification symmetric
  auto lam = disk_multiplier();
  OPSystem<R> vops(left_multiply(disk(), lam.to_polynomial()), 4);
  CHECK(is_centrally_symmetric(vops, 3));

  // asymmetric multiplier breaks it, and both routes agree on that
  auto skew =
      QuadraticMultiplier<R>(2, {R(-1), R(0), R(-1)}, {Q(1, 4), R(0)}, R(1));
  OPSystem<R> wops(left_multiply(disk(), skew.to_polynomial()), 3);
  CHECK_FALSE(is_centrally_symmetric(wops, 2));

  std::mt19937_64 rng(40);
  auto u = random_quasi_definite<R>(rng, 2, 3);
  OPSystem<R> uops(u, 3);
  CHECK_FALSE(is_centrally_symmetric(uops, 2));
}

TEST_CASE("univariate case: lambda = t^2 against Legendre-type input") {
  auto u = legendre_type();
  auto lam = QuadraticMultiplier<R>(1, {R(1)}, {R(0)}, R(0));
  OPSystem<R> uops(u, 4);
  auto vfun = left_multiply(u, lam.to_polynomial());
  OPSystem<R> vops(vfun, 4);
  CHECK(vfun.moment(mi({0})) == Q(1, 3));
  auto conn = connection(uops, vops, 4);
  auto tr = transport_three_term(uops, conn);
  CHECK(tr.all_hold());
  auto back = recover_multiplier(uops, conn, vops.gram(0)(0, 0));
  CHECK(back.a2[0] == R(1));
  CHECK(back.a1[0] == R(0));
  CHECK(back.a0 == R(0));
}
