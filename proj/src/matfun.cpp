#include "cavcal/matfun.hpp"

#include <cmath>

namespace cavcal {

real kappa_min(real q) { return std::pow(real(2), real(2) - q); }
real kappa_max(real q) { return q * std::pow(real(2), real(1) - q); }

void MaterialParams::validate() const {
  if (!(q > 2 && q < 3)) throw ParamRange("q must lie in (2,3)");
  if (!(kappa >= kappa_min(q) && kappa <= kappa_max(q)))
    throw ParamRange("kappa outside [2^(2-q), q 2^(1-q)]");
  if (!(hprime >= 0)) throw ParamRange("hprime must be >= 0");
}

real P(const Mat3& a, LoadParam load) {
  const Vec3 s = singular_values(a);
  return s[0] * s[1] + s[0] * s[2] + s[1] * s[2] -
         load.lambda * (s[0] + s[1] + s[2]);
}

real N(const Mat3& a, LoadParam load) {
  return trace_cofactor(a) - load.lambda * trace(a);
}

real G(const Mat3& a, LoadParam load) { return P(a, load) - N(a, load); }

real G_minus(const Mat3& a, LoadParam load) {
  return std::max(-G(a, load), real(0));
}

static real apply_variant(real g, Variant v) {
  return v == Variant::abs ? std::abs(g) : std::max(-g, real(0));
}

real m_l(const Mat3& a, LoadParam load, int l, Variant variant) {
  if (l != 2 && l != 3) throw ParamRange("m_l: l must be 2 or 3");
  const Mat3 d = sub_scaled_identity(a, load.lambda);
  const real c2 = frobenius_norm_sq(d);
  const real c = std::sqrt(c2);
  if (c < real(1e-14) * std::max<real>(1, load.lambda))
    throw DegenerateArgument("m_l undefined at A = lambda I");
  const real g = apply_variant(G(a, load), variant);
  return l == 2 ? g / c2 : g / (c2 * c);
}

RationalProfile rational_profile(const Mat3& a) {
  const Vec3 s = singular_values(a);
  const real tr = trace(a);
  RationalProfile p;
  p.a1 = s[0] * s[1] + s[0] * s[2] + s[1] * s[2] - trace_cofactor(a);
  p.a2 = tr - (s[0] + s[1] + s[2]);
  p.b1 = frobenius_norm_sq(a);
  p.b2 = real(-2) * tr;
  p.b3 = 3;
  return p;
}

real eval_profile(const RationalProfile& p, LoadParam load, int l,
                  Variant variant) {
  if (l != 2 && l != 3) throw ParamRange("eval_profile: l must be 2 or 3");
  const real lam = load.lambda;
  const real den = p.b1 + p.b2 * lam + p.b3 * lam * lam;
  if (!(den > 0)) throw DegenerateArgument("eval_profile: zero denominator");
  const real num = apply_variant(p.a1 + p.a2 * lam, variant);
  return l == 2 ? num / den : num / (den * std::sqrt(den));
}

real K_hat(const Mat3& a) {
  const real na = frobenius_norm(a);
  if (na <= 0) throw DegenerateArgument("K undefined at A = 0");
  const Mat3 ah = a * (real(1) / na);
  const Vec3 s = singular_values(ah);
  return s[0] * s[1] + s[0] * s[2] + s[1] * s[2] - trace_cofactor(ah);
}

std::array<real, 3> alpha_beta_gamma(const Mat3& a, LoadParam load) {
  const Vec3 s = singular_values(a);
  const real lam = load.lambda;
  return {s[1] * s[2] - lam * s[0], s[0] * s[2] - lam * s[1],
          s[0] * s[1] - lam * s[2]};
}

real g_of_rotation(const Mat3& r, const std::array<real, 3>& abc) {
  const Mat3 rtr = r.transposed() * r;
  const real ortho_err = frobenius_norm(rtr - Mat3::identity());
  if (ortho_err > real(1e-9) || std::abs(determinant(r) - real(1)) > real(1e-9))
    throw NotARotation("g(R): R is not in SO(3)");
  return (1 - r(0, 0)) * abc[0] + (1 - r(1, 1)) * abc[1] +
         (1 - r(2, 2)) * abc[2];
}

real H(const Mat3& a, LoadParam load) {
  const Vec3 s = singular_values(a);
  const real lam = load.lambda;
  const real hats = (s[0] - lam) * (s[1] - lam) * (s[2] - lam);
  return hats + lam * G(a, load);
}

real F1(const Vec3& sigma, LoadParam load, const MaterialParams& mat) {
  const real lam = load.lambda;
  const real d0 = sigma[0] - lam, d1 = sigma[1] - lam, d2 = sigma[2] - lam;
  const real dist = std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
  return (mat.kappa / 2) * std::pow(dist, mat.q) + mat.hprime * d0 * d1 * d2;
}

real F2(const Mat3& a, LoadParam load, const MaterialParams& mat) {
  const real dist = frobenius_norm(sub_scaled_identity(a, load.lambda));
  return (mat.kappa / 2) * std::pow(dist, mat.q) +
         load.lambda * mat.hprime * G(a, load);
}

real default_h(real t) {
  if (t <= 0) return kInfiniteEnergy;
  return t + 1 / t;
}

real default_h_prime_at(real lambda) {
  const real t = lambda * lambda * lambda;
  return 1 - 1 / (t * t);
}

real stored_energy(const Mat3& a, const MaterialParams& mat,
                   const ScalarFunction& h) {
  const real det = determinant(a);
  const real hv = h(det);
  if (hv == kInfiniteEnergy) return kInfiniteEnergy;
  return std::pow(frobenius_norm(a), mat.q) + hv;
}

}  // namespace cavcal
