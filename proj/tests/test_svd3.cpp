#include <cmath>

#include "cavcal/matfun.hpp"
#include "cavcal/rng.hpp"
#include "cavcal/svd3.hpp"
#include "doctest.h"

using namespace cavcal;

namespace {

void check_factorization(const Mat3& a, real tol_scale = 1.0) {
  const Svd3 d = svd3(a);
  CHECK(d.sigma[0] >= 0);
  CHECK(d.sigma[0] <= d.sigma[1]);
  CHECK(d.sigma[1] <= d.sigma[2]);
  const real scale = std::max<real>(1, frobenius_norm(a));
  const Mat3 recon = d.u_factor *
                     Mat3::diag(d.sigma[0], d.sigma[1], d.sigma[2]) *
                     d.v_factor.transposed();
  CHECK(frobenius_norm(recon - a) <= 1e-12 * scale * tol_scale);
  CHECK(frobenius_norm(d.u_factor.transposed() * d.u_factor -
                       Mat3::identity()) <= 1e-12 * tol_scale);
  CHECK(frobenius_norm(d.v_factor.transposed() * d.v_factor -
                       Mat3::identity()) <= 1e-12 * tol_scale);
  // squares of sigma are the eigenvalues of A^T A
  const Mat3 s = a.transposed() * a;
  const Mat3 vtsv = d.v_factor.transposed() * s * d.v_factor;
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(vtsv(i, i) - d.sigma[i] * d.sigma[i]) <=
          1e-11 * std::max<real>(1, scale * scale));
}

}  // namespace

TEST_CASE("svd of reference matrices") {
  SUBCASE("scaled identity") {
    const Svd3 d = svd3(Mat3::scaled_identity(1.7));
    for (int i = 0; i < 3; ++i) CHECK(d.sigma[i] == doctest::Approx(1.7));
  }
  SUBCASE("rank one") {
    const Vec3 a{1, -2, 2};  // |a| = 3
    const Vec3 n{0, 0.6, 0.8};
    const Svd3 d = svd3(Mat3::outer(a, n));
    CHECK(d.sigma[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.sigma[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.sigma[2] == doctest::Approx(3.0));
    check_factorization(Mat3::outer(a, n));
  }
  SUBCASE("the K maximizer") {
    const Svd3 d = svd3(Mat3::diag(-0.5, -0.5, 1.0 / std::sqrt(2.0)));
    CHECK(d.sigma[0] == doctest::Approx(0.5));
    CHECK(d.sigma[1] == doctest::Approx(0.5));
    CHECK(d.sigma[2] == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("zero matrix") { check_factorization(Mat3::zero()); }
}

TEST_CASE("svd properties over random and near-degenerate matrices") {
  RngStream rng(11, 0);
  for (int i = 0; i < 10000; ++i) {
    Mat3 a = random_matrix(rng, 5.0, false);
    switch (i % 5) {
      case 1: {  // two nearly equal singular values
        const Svd3 d = svd3(a);
        a = d.u_factor *
            Mat3::diag(d.sigma[1] + 1e-10, d.sigma[1], d.sigma[2]) *
            d.v_factor.transposed();
        break;
      }
      case 2:  // rank deficient
        a = Mat3::outer({rng.uniform(-2, 2), rng.uniform(-2, 2), 1},
                        {rng.uniform(-2, 2), 1, rng.uniform(-2, 2)});
        break;
      case 3:  // all three coincide
        a = random_rotation(rng) * rng.uniform(0.1, 3.0);
        break;
      default:
        break;
    }
    check_factorization(a);
    // sign *. product of singular values reproduces det A
    const Svd3 d = svd3(a);
    const real sign = determinant(d.u_factor) * determinant(d.v_factor);
    CHECK(std::abs(sign * d.sigma[0] * d.sigma[1] * d.sigma[2] -
                   determinant(a)) <=
          1e-10 * std::max<real>(1, std::pow(frobenius_norm(a), 3)));
  }
}

TEST_CASE("singular value vector is 1-Lipschitz against lambda I") {
  RngStream rng(12, 0);
  for (int i = 0; i < 10000; ++i) {
    const Mat3 a = random_matrix(rng, 5.0, false);
    const real lam = rng.uniform(0.5, 2.5);
    const Vec3 s = singular_values(a);
    const real dist_sv = std::sqrt((s[0] - lam) * (s[0] - lam) +
                                   (s[1] - lam) * (s[1] - lam) +
                                   (s[2] - lam) * (s[2] - lam));
    CHECK(dist_sv <=
          frobenius_norm(sub_scaled_identity(a, lam)) + 1e-12);
  }
}

TEST_CASE("alignment rotation") {
  SUBCASE("scaled identity maps to the identity rotation") {
    const Mat3 r = alignment_rotation(Mat3::scaled_identity(1.3));
    CHECK(frobenius_norm(r - Mat3::identity()) <= 1e-12);
  }
  SUBCASE("positive diagonal maps to the identity rotation") {
    const Mat3 r = alignment_rotation(Mat3::diag(0.7, 2.1, 3.4));
    CHECK(frobenius_norm(r - Mat3::identity()) <= 1e-12);
  }
  SUBCASE("nonpositive determinant is rejected") {
    CHECK_THROWS_AS(alignment_rotation(Mat3::diag(-1, 1, 1)),
                    NonpositiveDeterminant);
    CHECK_THROWS_AS(alignment_rotation(Mat3::outer({1, 0, 0}, {1, 0, 0})),
                    NonpositiveDeterminant);
  }
  SUBCASE("reproduces G through the aligned trace form") {
    RngStream rng(13, 0);
    int done = 0;
    while (done < 500) {
      const Mat3 a = random_matrix(rng, 3.0, false);
      if (determinant(a) <= 0) continue;
      ++done;
      const real lam = rng.uniform(0.8, 2.2);
      const Mat3 r = alignment_rotation(a);
      CHECK(frobenius_norm(r.transposed() * r - Mat3::identity()) <= 1e-12);
      CHECK(determinant(r) == doctest::Approx(1.0).epsilon(1e-12));
      const auto abc = alpha_beta_gamma(a, {lam});
      const real via_rotation = g_of_rotation(r, abc);
      const real direct = G(a, {lam});
      CHECK(std::abs(via_rotation - direct) <=
            1e-10 * std::max<real>(1, std::abs(direct)));
    }
  }
}
