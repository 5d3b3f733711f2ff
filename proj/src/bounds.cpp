#include "cavcal/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "cavcal/svd3.hpp"

namespace cavcal {

real FitResult::eval(real lambda) const {
  if (model == FitModel::inverse) return coefficients[0] / lambda;
  return coefficients[0] + coefficients[1] * lambda;
}

FitResult fit_inverse(std::span<const std::pair<real, real>> grid) {
  if (grid.size() < 2) throw EmptyGrid("fit_inverse: need at least 2 points");
  real num = 0, den = 0;
  for (const auto& [lam, v] : grid) {
    if (!(lam > 0)) throw ParamRange("fit_inverse: lambda must be > 0");
    num += v / lam;
    den += 1 / (lam * lam);
  }
  FitResult r;
  r.model = FitModel::inverse;
  r.coefficients = {num / den};
  r.grid.assign(grid.begin(), grid.end());
  for (const auto& [lam, v] : grid)
    r.max_abs_deviation = std::max(r.max_abs_deviation,
                                   std::abs(r.coefficients[0] / lam - v));
  return r;
}

FitResult fit_affine(std::span<const std::pair<real, real>> grid) {
  if (grid.size() < 2) throw EmptyGrid("fit_affine: need at least 2 points");
  real sx = 0, sy = 0, sxx = 0, sxy = 0;
  const real n = real(grid.size());
  for (const auto& [lam, v] : grid) {
    sx += lam;
    sy += v;
    sxx += lam * lam;
    sxy += lam * v;
  }
  const real det = n * sxx - sx * sx;
  if (std::abs(det) <= real(1e-14) * std::max<real>(1, n * sxx))
    throw DegenerateGrid("fit_affine: all lambda equal");
  FitResult r;
  r.model = FitModel::affine;
  const real nu3 = (n * sxy - sx * sy) / det;
  const real nu2 = (sy - nu3 * sx) / n;
  r.coefficients = {nu2, nu3};
  r.grid.assign(grid.begin(), grid.end());
  for (const auto& [lam, v] : grid)
    r.max_abs_deviation =
        std::max(r.max_abs_deviation, std::abs(nu2 + nu3 * lam - v));
  return r;
}

MHandle conjecture_M2() {
  return [](real) { return std::sqrt(real(2)); };
}

MHandle conjecture_M3(real nu1, real lambda) {
  return [nu1, lambda](real) { return nu1 / lambda; };
}

XiProfile xi_profile(real c0, real q, const MHandle& m2, const MHandle& m3) {
  if (!(c0 > 0)) throw ParamRange("xi_profile: c0 must be > 0");
  XiProfile x;
  x.f1 = std::pow(c0, q - 2) / m2(c0);
  x.f2 = std::pow(c0, q - 3) / m3(c0);
  x.xi = std::max(x.f1, x.f2);
  return x;
}

real fixed_point_cstar(const MHandle& m2, const MHandle& m3) {
  auto f = [&](real c) { return m2(c) / m3(c) - c; };
  real lo = real(1e-6);
  real flo = f(lo);
  if (flo < 0) throw NoBracket("fixed_point: p(c) < c at the lower end");
  real hi = 1;
  real fhi = f(hi);
  while (fhi > 0) {
    hi *= 2;
    if (hi > real(1e6)) throw NoBracket("fixed_point: no sign change up to 1e6");
    fhi = f(hi);
  }
  for (int it = 0; it < 200; ++it) {
    const real mid = (lo + hi) / 2;
    const real fm = f(mid);
    if (std::abs(fm) <= real(1e-10) || (hi - lo) <= real(1e-15) * hi)
      return mid;
    if (fm > 0)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

BoundReport lambda_bound_with(real q, real kappa, LoadParam load,
                              const MHandle& m2, const MHandle& m3) {
  if (!(q > 2 && q < 3)) throw ParamRange("lambda_bound: q must be in (2,3)");
  BoundReport rep;
  rep.q = q;
  rep.kappa = kappa;
  rep.lambda = load.lambda;
  rep.c_star = fixed_point_cstar(m2, m3);
  rep.term_est1 =
      (kappa / 2) * std::pow(q - 2, (2 - q) / 2) * std::pow(q, q / 2);
  // exponent convention: q-3 on M2 and 2-q on M3 throughout
  rep.term_cstar = (kappa / 2) * std::pow(load.lambda, 2 - q) *
                   std::pow(m2(rep.c_star), q - 3) *
                   std::pow(m3(rep.c_star), 2 - q);
  rep.rhs = std::min(rep.term_est1, rep.term_cstar);
  rep.satisfied_for_hprime = rep.rhs;
  return rep;
}

BoundReport lambda_bound(real q, real kappa, LoadParam load, real nu1) {
  return lambda_bound_with(q, kappa, load, conjecture_M2(),
                           conjecture_M3(nu1, load.lambda));
}

ZyComparison zy_compare(real q, real nu) {
  if (!(q >= 2 && q <= 3)) throw ParamRange("zy_compare: q must be in [2,3]");
  ZyComparison c;
  c.z = std::pow(std::sqrt(real(2)), q - 3) * std::pow(nu, 2 - q);
  if (q == 2)
    c.y = 2;  // limit from the right
  else if (q == 3)
    c.y = 3 * std::sqrt(real(3));
  else
    c.y = std::pow(q - 2, (2 - q) / 2) * std::pow(q, q / 2);
  c.z_less = c.z < c.y;
  return c;
}

GBoundReport g_bound_check(const std::array<real, 3>& abc, long long samples,
                           RngStream& rng) {
  const real scale = std::max<real>(
      1, std::abs(abc[0]) + std::abs(abc[1]) + std::abs(abc[2]));
  if (abc[0] < abc[1] - real(1e-12) * scale ||
      abc[1] < abc[2] - real(1e-12) * scale)
    throw OrderViolation("g_bound_check: needs alpha >= beta >= gamma");

  GBoundReport rep;
  rep.bound = std::min(2 * (abc[1] + abc[2]), real(0));
  rep.empirical_min = kInfiniteEnergy;
  const Mat3 candidates[4] = {Mat3::identity(), Mat3::diag(1, -1, -1),
                              Mat3::diag(-1, 1, -1), Mat3::diag(-1, -1, 1)};
  for (const Mat3& r : candidates)
    rep.empirical_min =
        std::min(rep.empirical_min, g_of_rotation(r, abc));
  for (long long i = 0; i < samples; ++i) {
    const Mat3 r = random_rotation(rng);
    const real g = (1 - r(0, 0)) * abc[0] + (1 - r(1, 1)) * abc[1] +
                   (1 - r(2, 2)) * abc[2];
    rep.empirical_min = std::min(rep.empirical_min, g);
  }
  rep.ok = rep.empirical_min >= rep.bound - real(1e-12) * scale;
  return rep;
}

bool mintrace_check(RngStream& rng, long long samples) {
  const Mat3 signs[4] = {Mat3::identity(), Mat3::diag(1, -1, -1),
                         Mat3::diag(-1, 1, -1), Mat3::diag(-1, -1, 1)};
  for (long long i = 0; i < samples; ++i) {
    const Mat3 q = random_rotation(rng);
    const Mat3 d = signs[rng.next_u64() % 4];
    const Mat3 r = q.transposed() * d * q;
    const real tr = trace(r);
    if (tr < -1 - real(1e-9) || tr > 3 + real(1e-9)) return false;
    const real sym_err = frobenius_norm(r - r.transposed());
    if (sym_err > real(1e-9)) return false;
  }
  return true;
}

BartokReport bartok_check(const Mat3& a, LoadParam load) {
  if (determinant(a) <= 0)
    throw NonpositiveDeterminant("bartok_check: det A must be > 0");
  const Vec3 s = singular_values(a);
  const real lam = load.lambda;
  BartokReport rep;
  rep.h_value = H(a, load);
  rep.branch_small_s1 = s[0] <= lam;
  rep.bound = rep.branch_small_s1
                  ? (s[0] - lam) * (s[1] + lam) * (s[2] + lam)
                  : (s[0] - lam) * (s[1] - lam) * (s[2] - lam);
  const real scale = std::max<real>(1, (s[2] + lam) * (s[2] + lam) * (s[2] + lam));
  rep.ok = rep.h_value >= rep.bound - real(1e-10) * scale;
  return rep;
}

CornishelmReport cornishelm_report(
    std::span<const std::pair<real, Mat3>> samples, LoadParam load,
    const MaterialParams& mat) {
  const real lam = load.lambda;
  CornishelmReport rep{0, 0};
  for (const auto& [weight, a] : samples) {
    if (weight < 0) throw NegativeWeight("cornishelm: weights must be >= 0");
    const Vec3 s = singular_values(a);
    if (s[0] >= lam) {
      const real hats = (s[0] - lam) * (s[1] - lam) * (s[2] - lam);
      const real dist = frobenius_norm(sub_scaled_identity(a, lam));
      rep.lhs += weight * (mat.hprime * hats +
                           mat.kappa * std::pow(dist, mat.q));
    }
    if (s[0] <= lam)
      rep.rhs += weight * mat.hprime * (lam - s[0]) * (lam + s[1]) *
                 (lam + s[2]);
  }
  return rep;
}

}  // namespace cavcal
