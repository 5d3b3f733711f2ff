#pragma once

#include <array>
#include <functional>

#include "cavcal/mat3.hpp"
#include "cavcal/svd3.hpp"

namespace cavcal {

/// Boundary stretch of the affine map x -> lambda x.
struct LoadParam {
  real lambda;
};

/// Growth exponent q in (2,3), the convexity constant kappa of the |A|^q
/// split, and the volumetric derivative h'(lambda^3).
struct MaterialParams {
  real q;
  real kappa;
  real hprime;

  /// Throws ParamRange unless q in (2,3), kappa within
  /// [2^(2-q), q 2^(1-q)] and hprime >= 0.
  void validate() const;
};

real kappa_min(real q);
real kappa_max(real q);

/// P(A) = sum_{i<j} s_i s_j - lambda sum_i s_i over the singular values of A.
real P(const Mat3& a, LoadParam load);

/// The calibrating null Lagrangian N(A) = tr cof A - lambda tr A.
real N(const Mat3& a, LoadParam load);

/// G = P - N; vanishes to third order at lambda*I and identically on
/// diagonal matrices with nonnegative entries.
real G(const Mat3& a, LoadParam load);

/// Negative part G^-(A) = max(-G(A), 0).
real G_minus(const Mat3& a, LoadParam load);

/// m_l(A, lambda) = |G(A)| / |A - lambda I|^l (or G^- for Variant::neg),
/// l in {2,3}. Throws DegenerateArgument at A = lambda*I.
real m_l(const Mat3& a, LoadParam load, int l, Variant variant);

/// Coefficients making m_l a closed form in lambda:
/// G(A,lambda) = a1 + a2*lambda and |A-lambda I|^2 = b1 + b2*lambda + b3*lambda^2.
struct RationalProfile {
  real a1, a2, b1, b2, b3;
};

RationalProfile rational_profile(const Mat3& a);

real eval_profile(const RationalProfile& p, LoadParam load, int l,
                  Variant variant);

/// K on the unit sphere: sum_{i<j} s_i s_j - tr cof, evaluated at A/|A|.
/// Its maximum over unit matrices is sqrt(2).
real K_hat(const Mat3& a);

/// alpha = s2 s3 - lambda s1, beta = s1 s3 - lambda s2,
/// gamma = s1 s2 - lambda s3 (singular values ascending); always
/// alpha >= beta >= gamma and alpha + beta + gamma = P(A).
std::array<real, 3> alpha_beta_gamma(const Mat3& a, LoadParam load);

/// g(R) = (1-R11) alpha + (1-R22) beta + (1-R33) gamma for R in SO(3).
real g_of_rotation(const Mat3& r, const std::array<real, 3>& abc);

/// H(A) = (s1-lambda)(s2-lambda)(s3-lambda) + lambda G(A).
real H(const Mat3& a, LoadParam load);

/// F1(S) = (kappa/2)|S - (lambda,lambda,lambda)|^q + h' prod_i (s_i - lambda)
/// on singular-value triples.
real F1(const Vec3& sigma, LoadParam load, const MaterialParams& mat);

/// F2(A) = (kappa/2)|A - lambda I|^q + lambda h' G(A).
real F2(const Mat3& a, LoadParam load, const MaterialParams& mat);

using ScalarFunction = std::function<real(real)>;

/// Default volumetric energy h(t) = t + 1/t for t > 0, +infinity otherwise;
/// convex, C^1, blows up at 0+ and has h'(lambda^3) = 1 - lambda^-6.
real default_h(real t);
real default_h_prime_at(real lambda);

/// W(A) = |A|^q + h(det A); the infinite-energy sentinel is returned when
/// det A <= 0 and propagates through comparisons (never converted to NaN).
real stored_energy(const Mat3& a, const MaterialParams& mat,
                   const ScalarFunction& h = default_h);

}  // namespace cavcal
