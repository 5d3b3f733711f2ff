#include <cmath>

#include "cavcal/bounds.hpp"
#include "cavcal/matfun.hpp"
#include "cavcal/rng.hpp"
#include "doctest.h"

using namespace cavcal;

TEST_CASE("P on reference matrices") {
  CHECK(P(Mat3::scaled_identity(1.4), {1.4}) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(P(Mat3::diag(1, 2, 3), {1.0}) == doctest::Approx(5.0));
  // rank one: P = -lambda |A|
  const Mat3 r1 = Mat3::outer({2, 1, -2}, {0, 1, 0});  // |A| = 3
  CHECK(P(r1, {1.0}) == doctest::Approx(-3.0));
  CHECK(P(r1, {1.7}) == doctest::Approx(-1.7 * 3.0));
}

TEST_CASE("N on reference matrices") {
  CHECK(N(Mat3::scaled_identity(2.0), {2.0}) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(N(Mat3::diag(1, 2, 3), {1.0}) == doctest::Approx(5.0));
  CHECK(N(Mat3::diag(-1, 1, 1), {1.0}) == doctest::Approx(-2.0));
}

TEST_CASE("G values and structure") {
  CHECK(G(Mat3::scaled_identity(1.2), {1.2}) ==
        doctest::Approx(0.0).epsilon(1e-13));
  for (real lam : {0.5, 1.0, 2.0, 3.0})
    CHECK(G(Mat3::diag(-1, 1, 1), {lam}) == doctest::Approx(4 - 2 * lam));

  RngStream rng(21, 0);
  for (int i = 0; i < 10000; ++i) {
    const real lam = rng.uniform(0.25, 3.0);
    const Mat3 d = Mat3::diag(rng.uniform(0, 5), rng.uniform(0, 5),
                              rng.uniform(0, 5));
    CHECK(std::abs(G(d, {lam})) <= 1e-11 * std::max<real>(1, lam * lam));
  }
}

TEST_CASE("G minus") {
  CHECK(G_minus(Mat3::diag(-1, 1, 1), {1.0}) == doctest::Approx(0.0));
  CHECK(G_minus(Mat3::diag(-1, 1, 1), {3.0}) == doctest::Approx(2.0));
  CHECK(G_minus(Mat3::scaled_identity(1.0), {1.0}) ==
        doctest::Approx(0.0).epsilon(1e-13));
  // G_minus = (|G| - G)/2
  RngStream rng(22, 0);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 a = random_matrix(rng, 4.0, false);
    const real g = G(a, {1.5});
    CHECK(G_minus(a, {1.5}) ==
          doctest::Approx((std::abs(g) - g) / 2).epsilon(1e-12));
  }
}

TEST_CASE("m_l values and degenerate argument") {
  const Mat3 a = Mat3::diag(-1, 1, 1);
  CHECK(m_l(a, {1.0}, 2, Variant::abs) == doctest::Approx(0.5));
  CHECK(m_l(a, {1.0}, 3, Variant::abs) == doctest::Approx(0.25));
  CHECK_THROWS_AS(m_l(Mat3::scaled_identity(1.5), {1.5}, 2, Variant::abs),
                  DegenerateArgument);
  CHECK_THROWS_AS(m_l(a, {1.0}, 4, Variant::abs), ParamRange);
}

TEST_CASE("rational profile") {
  const RationalProfile p = rational_profile(Mat3::diag(-1, 1, 1));
  CHECK(p.a1 == doctest::Approx(4.0));
  CHECK(p.a2 == doctest::Approx(-2.0));
  CHECK(p.b1 == doctest::Approx(3.0));
  CHECK(p.b2 == doctest::Approx(-2.0));
  CHECK(p.b3 == 3.0);

  const RationalProfile q = rational_profile(Mat3::diag(0.3, 1.1, 2.7));
  CHECK(std::abs(q.a1) <= 1e-12);
  CHECK(std::abs(q.a2) <= 1e-12);

  RngStream rng(23, 0);
  for (int i = 0; i < 10000; ++i) {
    const Mat3 a = random_matrix(rng, 5.0, i % 2 == 0);
    const RationalProfile pr = rational_profile(a);
    for (real lam : {1.0, 1.5, 2.0}) {
      for (int l : {2, 3}) {
        const real direct = m_l(a, {lam}, l, Variant::abs);
        CHECK(eval_profile(pr, {lam}, l, Variant::abs) ==
              doctest::Approx(direct).epsilon(1e-10));
      }
      const real g = G(a, {lam});
      CHECK(std::abs(pr.a1 + pr.a2 * lam - g) <=
            1e-10 * std::max<real>(1, std::abs(g)));
    }
  }
}

TEST_CASE("eval profile closed forms") {
  const RationalProfile p{4, -2, 3, -2, 3};
  CHECK(eval_profile(p, {1.0}, 2, Variant::abs) == doctest::Approx(0.5));
  CHECK(eval_profile(p, {2.0}, 2, Variant::abs) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(eval_profile(p, {3.0}, 2, Variant::neg) ==
        doctest::Approx(1.0 / 12.0));
  // denominator vanishes exactly at the profile of lambda*I
  const RationalProfile degen = rational_profile(Mat3::identity());
  CHECK_THROWS_AS(eval_profile(degen, {1.0}, 2, Variant::abs),
                  DegenerateArgument);
}

TEST_CASE("K on the unit sphere") {
  const real root2 = std::sqrt(2.0);
  CHECK(K_hat(Mat3::diag(-0.5, -0.5, 1.0 / root2)) ==
        doctest::Approx(root2).epsilon(1e-13));
  CHECK(K_hat(Mat3::identity()) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(K_hat(Mat3::outer({3, 0, 4}, {1, 1, 0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(K_hat(Mat3::zero()), DegenerateArgument);
  // scale invariance
  RngStream rng(24, 0);
  for (int i = 0; i < 100; ++i) {
    const Mat3 a = random_matrix(rng, 2.0, false);
    CHECK(K_hat(a) == doctest::Approx(K_hat(a * 7.5)).epsilon(1e-11));
  }
}

TEST_CASE("alpha beta gamma") {
  const auto zero = alpha_beta_gamma(Mat3::scaled_identity(1.5), {1.5});
  for (real v : zero) CHECK(std::abs(v) <= 1e-13);

  const auto abc = alpha_beta_gamma(Mat3::diag(1, 2, 3), {1.0});
  CHECK(abc[0] == doctest::Approx(5.0));
  CHECK(abc[1] == doctest::Approx(1.0));
  CHECK(abc[2] == doctest::Approx(-1.0));

  RngStream rng(25, 0);
  for (int i = 0; i < 10000; ++i) {
    const Mat3 a = random_matrix(rng, 5.0, false);
    const real lam = rng.uniform(0.5, 2.5);
    const auto v = alpha_beta_gamma(a, {lam});
    CHECK(v[0] >= v[1] - 1e-12);
    CHECK(v[1] >= v[2] - 1e-12);
    CHECK(v[0] + v[1] + v[2] ==
          doctest::Approx(P(a, {lam})).epsilon(1e-10));
  }
}

TEST_CASE("g of rotation") {
  const std::array<real, 3> abc{5, 1, -1};
  CHECK(g_of_rotation(Mat3::identity(), abc) == doctest::Approx(0.0));
  CHECK(g_of_rotation(Mat3::diag(-1, -1, 1), abc) ==
        doctest::Approx(2 * abc[0] + 2 * abc[1]));
  CHECK_THROWS_AS(g_of_rotation(Mat3::diag(1, 1, 2), abc), NotARotation);
  CHECK_THROWS_AS(g_of_rotation(Mat3::diag(1, 1, -1), abc), NotARotation);
}

TEST_CASE("H values") {
  CHECK(H(Mat3::scaled_identity(1.1), {1.1}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(H(Mat3::diag(2, 3, 4), {1.0}) == doctest::Approx(6.0));
  CHECK(H(Mat3::diag(-1, 1, 1), {1.0}) == doctest::Approx(2.0));
}

TEST_CASE("F1 and F2") {
  const MaterialParams mat{2.5, 1.0, 0.0};
  const real lam = 1.2;
  CHECK(F1({lam, lam, lam}, {lam}, mat) == doctest::Approx(0.0));
  CHECK(F1({lam + 1, lam + 1, lam + 1}, {lam}, mat) ==
        doctest::Approx(0.5 * std::pow(3.0, 2.5 / 2)));
  CHECK(F2(Mat3::scaled_identity(lam), {lam}, mat) ==
        doctest::Approx(0.0).epsilon(1e-13));

  const Mat3 a = Mat3::diag(0.4, 1.9, 2.2);
  const real dist = frobenius_norm(sub_scaled_identity(a, lam));
  CHECK(F2(a, {lam}, mat) ==
        doctest::Approx(0.5 * std::pow(dist, 2.5)).epsilon(1e-12));
}

TEST_CASE("F1 nonnegative on the positive octant under the first bound") {
  const real q = 2.5;
  const real kappa = kappa_min(q);
  const real lam = 1.5;
  // largest admissible h' at this lambda, with a safety factor
  const real est1 = (kappa / 2) * std::pow(q - 2, (2 - q) / 2) *
                    std::pow(q, q / 2);
  const MaterialParams mat{q, kappa, 0.9 * est1 / std::pow(lam, 3 - q)};
  RngStream rng(26, 0);
  for (int i = 0; i < 100000; ++i) {
    Vec3 sigma{rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)};
    if (i % 3 == 0)
      for (auto& s : sigma) s = lam + (s - 2) * 0.01;  // near the well
    if (sigma[0] < 0 || sigma[1] < 0 || sigma[2] < 0) continue;
    CHECK(F1(sigma, {lam}, mat) >= -1e-12);
  }
}

TEST_CASE("F2 nonnegative under the shell bound") {
  const real q = 2.5;
  const real kappa = kappa_min(q);
  const real lam = 1.5;
  const real nu1 = 0.45012;
  const real shell_bound = (kappa / 2) * std::pow(std::sqrt(2.0), q - 3) *
                           std::pow(nu1, 2 - q);
  const MaterialParams mat{q, kappa,
                           0.9 * shell_bound / (lam * std::pow(lam, 3 - q))};
  RngStream rng(27, 0);
  for (int i = 0; i < 100000; ++i) {
    Mat3 a = random_matrix(rng, 5.0, i % 2 == 0);
    if (i % 3 == 0) {
      a = Mat3::scaled_identity(lam) + (a - Mat3::scaled_identity(lam)) *
                                           (0.05 / frobenius_norm(a));
    }
    CHECK(F2(a, {lam}, mat) >= -1e-12);
  }
}

TEST_CASE("stored energy") {
  const MaterialParams mat{2.5, 1.0, 0.0};
  CHECK(stored_energy(Mat3::identity(), mat) ==
        doctest::Approx(std::pow(3.0, 1.25) + 2.0));
  CHECK(stored_energy(Mat3::diag(1, 1, 0), mat) == kInfiniteEnergy);
  CHECK(stored_energy(Mat3::diag(1, 1, -2), mat) == kInfiniteEnergy);
  const real lam = 1.4;
  CHECK(stored_energy(Mat3::scaled_identity(lam), mat) ==
        doctest::Approx(std::pow(3.0, 1.25) * std::pow(lam, 2.5) +
                        std::pow(lam, 3) + std::pow(lam, -3)));
  CHECK(default_h_prime_at(lam) ==
        doctest::Approx(1 - std::pow(lam, -6.0)));
  // custom h
  CHECK(stored_energy(Mat3::identity(), mat, [](real t) {
          return t <= 0 ? kInfiniteEnergy : t * t;
        }) == doctest::Approx(std::pow(3.0, 1.25) + 1.0));
}

TEST_CASE("material params validation") {
  const MaterialParams ok_min{2.5, kappa_min(2.5), 0.1};
  const MaterialParams ok_max{2.5, kappa_max(2.5), 0.0};
  const MaterialParams bad_q_low{2.0, 1.0, 0.0};
  const MaterialParams bad_q_high{3.0, 0.3, 0.0};
  const MaterialParams bad_kappa{2.5, 1.0, 0.0};
  const MaterialParams bad_hprime{2.5, kappa_min(2.5), -0.1};
  CHECK_NOTHROW(ok_min.validate());
  CHECK_NOTHROW(ok_max.validate());
  CHECK_THROWS_AS(bad_q_low.validate(), ParamRange);
  CHECK_THROWS_AS(bad_q_high.validate(), ParamRange);
  CHECK_THROWS_AS(bad_kappa.validate(), ParamRange);
  CHECK_THROWS_AS(bad_hprime.validate(), ParamRange);
}

TEST_CASE("G is third order flat at lambda I") {
  RngStream rng(28, 0);
  const real lam = 1.3;
  real worst_small = 0, worst_large = 0;
  for (int i = 0; i < 100; ++i) {
    Mat3 u = random_matrix(rng, 1.0, false);
    u *= real(1) / frobenius_norm(u);
    for (real h : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const real ratio =
          std::abs(G(Mat3::scaled_identity(lam) + h * u, {lam})) / (h * h * h);
      if (h == 1e-1)
        worst_large = std::max(worst_large, ratio);
      else if (h == 1e-4)
        worst_small = std::max(worst_small, ratio);
    }
  }
  CHECK(worst_small <= 2 * worst_large + 1e-6);
}
