#include <cmath>

#include "cavcal/calculus.hpp"
#include "doctest.h"

using namespace cavcal;

namespace {
const real kSteps[] = {1e-2, 1e-3, 1e-4};
}

TEST_CASE("singular value sum derivatives at lambda I") {
  const LoadParam load{1.3};
  RngStream rng(31, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const Mat3 u = random_matrix(rng, 1.0, false);
    const real scale = std::max<real>(
        {1, frobenius_norm_sq(u), load.lambda * load.lambda});
    const auto reports = verify_sv_sums(load, u, kSteps);
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) CHECK(r.abs_error <= 1e-5 * scale);
  }
  CHECK_THROWS_AS(verify_sv_sums(load, Mat3::zero(), kSteps),
                  DegenerateArgument);
}

TEST_CASE("symmetric and antisymmetric special cases") {
  const LoadParam load{1.0};
  RngStream rng(32, 0);
  const Mat3 sym = random_matrix(rng, 1.0, true);
  auto rs = verify_sv_sums(load, sym, kSteps);
  CHECK(std::abs(rs[1].analytic_value) <= 1e-14);  // lambda * s1'' = 0
  CHECK(rs[1].abs_error <= 1e-6);

  Mat3 anti = Mat3::zero();
  anti(0, 1) = 0.9;
  anti(1, 0) = -0.9;
  anti(1, 2) = -0.3;
  anti(2, 1) = 0.3;
  auto ra = verify_sv_sums(load, anti, kSteps);
  CHECK(std::abs(ra[0].analytic_value) <= 1e-14);  // tr U = 0
  CHECK(ra[0].abs_error <= 1e-7);
  CHECK(std::abs(ra[4].analytic_value) <= 1e-14);  // sum of squared D_U s_i
  CHECK(ra[4].abs_error <= 1e-6);
}

TEST_CASE("P expansion residual decays") {
  const LoadParam load{1.2};
  SUBCASE("U = identity is exact") {
    for (const auto& r : verify_P_expansion(load, Mat3::identity(), kSteps))
      CHECK(std::abs(r.fd_value) * r.step * r.step <= 1e-12);
  }
  SUBCASE("rank one direction is exact") {
    const Mat3 u = Mat3::outer({1, 0, 0}, {0, 1, 0});
    for (const auto& r : verify_P_expansion(load, u, kSteps))
      CHECK(std::abs(r.fd_value) * r.step * r.step <= 1e-12);
  }
  SUBCASE("random directions decay to the rounding floor") {
    RngStream rng(33, 0);
    for (int rep = 0; rep < 50; ++rep) {
      const Mat3 u = random_matrix(rng, 1.0, false);
      const auto reports = verify_P_expansion(load, u, kSteps);
      const real floor =
          1e-12 / (reports.back().step * reports.back().step);
      CHECK(std::abs(reports.back().fd_value) <=
            std::max(std::abs(reports.front().fd_value) / 2, floor));
    }
  }
}

TEST_CASE("shifted product identity") {
  CHECK(verify_greenalder(Mat3::scaled_identity(1.5), {1.5}).abs_error <=
        1e-12);
  const auto r = verify_greenalder(Mat3::diag(1, 2, 3), {1.0});
  CHECK(r.analytic_value == doctest::Approx(6.0));
  CHECK(r.fd_value == doctest::Approx(6.0));
  RngStream rng(34, 0);
  for (int i = 0; i < 10000; ++i) {
    const Mat3 a = random_matrix(rng, 5.0, false);
    const auto rep = verify_greenalder(a, {rng.uniform(0.5, 2.5)});
    CHECK(rep.abs_error <=
          1e-10 * std::max<real>(1, std::abs(rep.analytic_value)));
  }
}

TEST_CASE("rank one slice formula and convexity") {
  const LoadParam load{1.0};
  SUBCASE("a = e1, t = -2 lambda gives P = 0") {
    const real ts[] = {-2.0};
    const auto pts = rank_one_slice(load, {1, 0, 0}, ts);
    CHECK(pts[0].p_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pts[0].formula_value == doctest::Approx(0.0));
  }
  SUBCASE("a1 = 0 gives P = 0 along the slice") {
    const real ts[] = {-1.5, 0.3, 2.0};
    for (const auto& pt : rank_one_slice(load, {0, 1, 0}, ts)) {
      CHECK(std::abs(pt.p_value) <= 1e-12);
      CHECK(pt.formula_value == 0.0);
    }
  }
  SUBCASE("midpoint convexity on random slices") {
    RngStream rng(35, 0);
    for (int rep = 0; rep < 1000; ++rep) {
      const Vec3 a{rng.uniform(-2, 2), rng.uniform(-2, 2),
                   rng.uniform(-2, 2)};
      const real t0 = rng.uniform(-2, 2), t1 = rng.uniform(-2, 2);
      const real grid[] = {t0, (t0 + t1) / 2, t1};
      const auto pts = rank_one_slice(load, a, grid);
      CHECK(pts[1].p_value <=
            (pts[0].p_value + pts[2].p_value) / 2 + 1e-10);
      for (const auto& pt : pts)
        CHECK(pt.p_value == doctest::Approx(pt.formula_value).epsilon(1e-10));
    }
  }
}

TEST_CASE("polyconvexity counterexample") {
  for (real lam : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    const auto rep = polyconvexity_counterexample({lam});
    CHECK(rep.violated);
    CHECK(rep.p_value < rep.threshold);
  }
  const auto unit = polyconvexity_counterexample({1.0});
  CHECK(frobenius_norm(unit.matrix - Mat3::diag(3, 0, 0)) == 0.0);
  CHECK(unit.p_value == doctest::Approx(-3.0));
  CHECK(unit.threshold == doctest::Approx(-1.5));
  // the violation margin grows linearly with the load scale
  const auto big = polyconvexity_counterexample({4.0});
  CHECK(big.threshold - big.p_value >
        4 * (unit.threshold - unit.p_value));
}

TEST_CASE("null lagrangian quadrature") {
  const LoadParam load{1.5};
  SUBCASE("zero bump integrates to zero exactly") {
    const auto q = quadrature_integrals(load, 8, SineBumpField::zero());
    CHECK(q.integral_N == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(q.integral_P == doctest::Approx(q.integral_G).epsilon(1e-13));
  }
  SUBCASE("integral decays at second order for a generic field") {
    // stream (36,1) draws modes with mixed parity, so the midpoint error
    // is visible and shrinks by ~4 per grid doubling
    RngStream rng(36, 1);
    const SineBumpField psi = SineBumpField::random(rng);
    const auto q16 = quadrature_integrals(load, 16, psi);
    const auto q32 = quadrature_integrals(load, 32, psi);
    const auto q64 = quadrature_integrals(load, 64, psi);
    const real i16 = std::abs(q16.integral_N);
    const real i32 = std::abs(q32.integral_N);
    const real i64 = std::abs(q64.integral_N);
    CHECK(i16 > 1e-6);
    CHECK(i16 / i32 == doctest::Approx(4.0).epsilon(0.5));
    CHECK(i32 / i64 == doctest::Approx(4.0).epsilon(0.5));
    // P and G integrate to the same value up to the null part
    CHECK(q64.integral_P - q64.integral_G ==
          doctest::Approx(q64.integral_N).epsilon(1e-12));
  }
  SUBCASE("parity-aligned fields are integrated exactly") {
    // stream (36,0) happens to draw same-parity interacting modes; the
    // midpoint rule then integrates the null Lagrangian exactly
    RngStream rng(36, 0);
    const SineBumpField psi = SineBumpField::random(rng);
    for (int n : {8, 16, 32}) {
      const auto q = quadrature_integrals(load, n, psi);
      CHECK(std::abs(q.integral_N) <= 1e-13);
    }
  }
  SUBCASE("seeded interface") {
    RngStream rng(36, 0);
    CHECK_THROWS_AS(null_lagrangian_quadrature(load, 4, rng), ParamRange);
    RngStream r1(40, 2), r2(40, 2);
    CHECK(null_lagrangian_quadrature(load, 8, r1) ==
          null_lagrangian_quadrature(load, 8, r2));
  }
}
