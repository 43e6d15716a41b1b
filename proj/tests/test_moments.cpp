#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "momentops/families.hpp"
#include "momentops/moments.hpp"
#include "momentops/random.hpp"
#include "support.hpp"

using namespace momentops;
using testsupport::Q;
using testsupport::mi;
using R = Rational;

namespace {
MomentFunctional<R> delta_functional() {
  return MomentFunctional<R>(2, [](const MultiIndex& nu) {
    return nu.degree() == 0 ? R(1) : R(0);
  });
}
MomentFunctional<R> disk() { return ball_functional<R>(2, Q(1, 2)); }
}  // namespace

TEST_CASE("moment_block basics") {
  CHECK(moment_block(delta_functional(), 0, 0)(0, 0) == R(1));

  auto m11 = moment_block(disk(), 1, 1);
  CHECK(m11(0, 0) == Q(1, 4));
  CHECK(m11(1, 1) == Q(1, 4));
  CHECK(m11(0, 1) == R(0));
  CHECK(m11(1, 0) == R(0));
}

TEST_CASE("moment_block symmetry m_{h,k} = m_{k,h}^t") {
  auto u = disk();
  for (int h = 0; h <= 5; ++h)
    for (int k = 0; k <= 5; ++k)
      CHECK((moment_block(u, h, k) - moment_block(u, k, h).transpose())
                .is_zero(0.0));
}

TEST_CASE("moment_matrix layout") {
  auto M = moment_matrix(delta_functional(), 1);
  REQUIRE(M.rows() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(M(i, j) == (i == 0 && j == 0 ? R(1) : R(0)));

  auto Md = moment_matrix(disk(), 1);
  CHECK(Md(0, 0) == R(1));
  CHECK(Md(1, 1) == Q(1, 4));
  CHECK(Md(2, 2) == Q(1, 4));

  CHECK(moment_matrix(disk(), 2).rows() == 6);
}

TEST_CASE("quasi-definiteness verdicts") {
  CHECK(is_quasi_definite(disk(), 4).all());

  auto zero0 = MomentFunctional<R>(2, [](const MultiIndex& nu) {
    return nu.degree() == 0 ? R(0) : R(1);
  });
  auto v = is_quasi_definite(zero0, 1);
  CHECK_FALSE(v.per_degree[0]);
  CHECK(v.first_failure() == 0);

  auto bl = bessel_laguerre_functional<R>(R(1), R(2));
  CHECK(is_quasi_definite(bl, 3).all());
}

TEST_CASE("apply") {
  auto u = disk();
  Polynomial<R> r2(2);
  r2.add_term(mi({2, 0}), R(1));
  r2.add_term(mi({0, 2}), R(1));
  CHECK(u.apply(r2) == Q(1, 2));
  CHECK(u.apply(Polynomial<R>::constant(2, R(1))) == R(1));
  CHECK(u.apply(Polynomial<R>::monomial(mi({1, 2}))) == R(0));
}

TEST_CASE("apply is linear on seeded random polynomials") {
  auto u = disk();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto p = testsupport::random_polynomial<R>(rng, 2, 4);
    auto q = testsupport::random_polynomial<R>(rng, 2, 4);
    R a = random_rational<R>(rng), b = random_rational<R>(rng);
    CHECK(u.apply(p * a + q * b) == a * u.apply(p) + b * u.apply(q));
  }
}

TEST_CASE("left_multiply") {
  auto u = disk();
  Polynomial<R> one = Polynomial<R>::constant(2, R(1));
  auto same = left_multiply(u, one);
  for (int n = 0; n <= 4; ++n)
    for (const auto& nu : enumerate(n, 2)) CHECK(same.moment(nu) == u.moment(nu));

  Polynomial<R> lam = one - Polynomial<R>::monomial(mi({2, 0})) -
                      Polynomial<R>::monomial(mi({0, 2}));
  CHECK(left_multiply(u, lam).moment(mi({0, 0})) == Q(1, 2));

  // q = x1 kills the even moments of a centrally symmetric functional
  auto ux = left_multiply(u, Polynomial<R>::monomial(mi({1, 0})));
  for (int n = 0; n <= 4; n += 2)
    for (const auto& nu : enumerate(n, 2)) CHECK(ux.moment(nu) == R(0));
}

TEST_CASE("left_multiply composes") {
  auto u = disk();
  std::mt19937_64 rng(12);
  auto p = testsupport::random_polynomial<R>(rng, 2, 2);
  auto q = testsupport::random_polynomial<R>(rng, 2, 2);
  auto two_step = left_multiply(left_multiply(u, p), q);
  auto one_step = left_multiply(u, p * q);
  for (int n = 0; n <= 6; ++n)
    for (const auto& nu : enumerate(n, 2))
      CHECK(two_step.moment(nu) == one_step.moment(nu));
}

TEST_CASE("add_point_masses") {
  auto u = disk();
  auto at_origin = add_point_masses(u, {{R(0), R(0)}}, {Q(1, 3)});
  CHECK(at_origin.moment(mi({0, 0})) == R(1) + Q(1, 3));
  for (int n = 1; n <= 4; ++n)
    for (const auto& nu : enumerate(n, 2))
      CHECK(at_origin.moment(nu) == u.moment(nu));

  auto shifted = add_point_masses(u, {{R(1), R(0)}}, {R(1)});
  CHECK(shifted.moment(mi({2, 0})) == Q(5, 4));

  // symmetric mass pair preserves odd-moment vanishing
  auto pair = add_point_masses(u, {{Q(1, 2), R(0)}, {Q(-1, 2), R(0)}},
                               {Q(1, 3), Q(1, 3)});
  for (int n = 1; n <= 5; n += 2)
    for (const auto& nu : enumerate(n, 2)) CHECK(pair.moment(nu) == R(0));

  CHECK_THROWS_AS(add_point_masses(u, {{R(0), R(0)}}, {R(0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      add_point_masses(u, {{R(0), R(0)}, {R(0), R(0)}}, {R(1), R(1)}),
      std::invalid_argument);
}

TEST_CASE("add_point_masses agrees with pointwise evaluation") {
  auto u = disk();
  std::vector<std::vector<R>> pts{{Q(1, 3), Q(-1, 2)}, {Q(2, 5), Q(1, 7)}};
  std::vector<R> ms{Q(1, 2), Q(-2, 3)};
  auto v = add_point_masses(u, pts, ms);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 8; ++t) {
    auto p = testsupport::random_polynomial<R>(rng, 2, 3);
    R expect = u.apply(p);
    for (std::size_t i = 0; i < pts.size(); ++i)
      expect += ms[i] * p.evaluate(pts[i]);
    CHECK(v.apply(p) == expect);
  }
}

TEST_CASE("moment cache is consistent") {
  int calls = 0;
  auto u = MomentFunctional<R>(2, [&calls](const MultiIndex& nu) {
    ++calls;
    return R(nu.degree() + 1);
  });
  auto nu = mi({2, 1});
  CHECK(u.moment(nu) == R(4));
  CHECK(u.moment(nu) == R(4));
  CHECK(calls == 1);
}
