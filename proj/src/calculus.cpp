#include "cavcal/calculus.hpp"

#include <cmath>

namespace cavcal {

namespace {

constexpr real kPi = real(3.14159265358979323846);

Vec3 sv_at(LoadParam load, const Mat3& u, real h) {
  return singular_values(Mat3::scaled_identity(load.lambda) + h * u);
}

real sum1(const Vec3& s) { return s[0] + s[1] + s[2]; }
real sum2(const Vec3& s) { return s[0] * s[1] + s[0] * s[2] + s[1] * s[2]; }
real sumsq(const Vec3& s) { return s[0] * s[0] + s[1] * s[1] + s[2] * s[2]; }

FdReport best_of(const std::string& name, real analytic,
                 std::span<const real> steps,
                 const std::function<real(real)>& fd) {
  FdReport best{name, analytic, 0, 0, kInfiniteEnergy};
  for (real h : steps) {
    const real v = fd(h);
    const real err = std::abs(v - analytic);
    if (err < best.abs_error) {
      best.fd_value = v;
      best.step = h;
      best.abs_error = err;
    }
  }
  return best;
}

}  // namespace

std::vector<FdReport> verify_sv_sums(LoadParam load, const Mat3& u,
                                     std::span<const real> steps) {
  if (frobenius_norm(u) == 0)
    throw DegenerateArgument("verify_sv_sums: U = 0");
  const real tr_u = trace(u);
  const real u2 = frobenius_norm_sq(u);
  real tr_usq = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tr_usq += u(i, j) * u(j, i);

  const real lam = load.lambda;
  const real s1_0 = 3 * lam;
  const real s2_0 = 3 * lam * lam;
  const real sq_0 = 3 * lam * lam;

  auto d1 = [&](const std::function<real(real)>& f, real f0, real h) {
    (void)f0;
    return (f(h) - f(-h)) / (2 * h);
  };
  auto d2 = [&](const std::function<real(real)>& f, real f0, real h) {
    return (f(h) - 2 * f0 + f(-h)) / (h * h);
  };

  std::function<real(real)> f1 = [&](real h) { return sum1(sv_at(load, u, h)); };
  std::function<real(real)> f2 = [&](real h) { return sum2(sv_at(load, u, h)); };
  std::function<real(real)> fq = [&](real h) { return sumsq(sv_at(load, u, h)); };

  const real d2l = (u2 - tr_usq) / 2;                     // lambda * s1''
  const real pair_second =                                // s2''/2
      (tr_u * tr_u) / 2 - u2 / 4 - tr_usq / 4 + d2l;
  const real sumsq_first = (u2 + tr_usq) / 2;             // sum (D_U s_i)^2

  std::vector<FdReport> out;
  out.push_back(best_of("sv_sum_first_derivative", tr_u, steps,
                        [&](real h) { return d1(f1, s1_0, h); }));
  out.push_back(best_of("sv_sum_second_derivative", d2l, steps,
                        [&](real h) { return lam * d2(f1, s1_0, h); }));
  out.push_back(best_of("sv_square_sum_second_derivative", u2, steps,
                        [&](real h) { return d2(fq, sq_0, h) / 2; }));
  out.push_back(best_of("sv_pair_sum_second_derivative", pair_second, steps,
                        [&](real h) { return d2(f2, s2_0, h) / 2; }));
  // sum (D_U s_i)^2 = (sum s_i^2)''/2 - lambda * s1''
  out.push_back(best_of("sv_first_derivative_square_sum", sumsq_first, steps,
                        [&](real h) {
                          return d2(fq, sq_0, h) / 2 - lam * d2(f1, s1_0, h);
                        }));
  return out;
}

std::vector<FdReport> verify_P_expansion(LoadParam load, const Mat3& u,
                                         std::span<const real> steps) {
  const real tr_u = trace(u);
  const real trcof_u = trace_cofactor(u);
  const real lam = load.lambda;
  std::vector<FdReport> out;
  for (real h : steps) {
    const Mat3 a = Mat3::scaled_identity(lam) + h * u;
    const real residual =
        P(a, load) - lam * h * tr_u - h * h * trcof_u;
    const real ratio = residual / (h * h);
    out.push_back({"P_expansion_residual_over_h2", 0, ratio, h,
                   std::abs(ratio)});
  }
  return out;
}

FdReport verify_greenalder(const Mat3& a, LoadParam load) {
  const Vec3 s = singular_values(a);
  const real lam = load.lambda;
  const real lhs = s[0] * s[1] * s[2];
  const real rhs = (s[0] - lam) * (s[1] - lam) * (s[2] - lam) +
                   lam * sum2(s) - lam * lam * sum1(s) + lam * lam * lam;
  return {"product_identity", lhs, rhs, 0, std::abs(lhs - rhs)};
}

std::vector<SlicePoint> rank_one_slice(LoadParam load, const Vec3& a,
                                       std::span<const real> t_grid) {
  const Vec3 e1{1, 0, 0};
  const real lam = load.lambda;
  std::vector<SlicePoint> out;
  out.reserve(t_grid.size());
  for (real t : t_grid) {
    const Mat3 m = Mat3::scaled_identity(lam) + Mat3::outer({t * a[0], t * a[1], t * a[2]}, e1);
    const real formula = lam * (std::abs(lam + t * a[0]) - lam);
    out.push_back({t, P(m, load), formula});
  }
  return out;
}

CounterexampleReport polyconvexity_counterexample(LoadParam load) {
  const real lam = load.lambda;
  if (!(lam > 0)) throw ParamRange("counterexample: lambda must be > 0");
  // P(t e1(x)e1) = -lambda t. Strict violation of the support inequality
  // needs t > 3 lambda / 2 as well as t > 3 lambda^2 / 2; 3 max(lam^2, lam)
  // covers both and keeps diag(3,0,0) at lambda = 1.
  const real t = 3 * std::max(lam * lam, lam);
  CounterexampleReport rep;
  rep.matrix = Mat3::diag(t, 0, 0);
  rep.p_value = P(rep.matrix, load);
  rep.threshold = (trace_cofactor(rep.matrix) - 3 * lam * lam) / 2;
  rep.violated = rep.p_value < rep.threshold;
  return rep;
}

SineBumpField SineBumpField::random(RngStream& rng, int modes_per_component) {
  SineBumpField f;
  for (int j = 0; j < 3; ++j) {
    for (int m = 0; m < modes_per_component; ++m) {
      Mode mode;
      mode.coeff = rng.uniform(real(-0.3), real(0.3));
      for (int i = 0; i < 3; ++i)
        mode.k[i] = 1 + int(rng.next_u64() % 3);
      f.comp_[j].push_back(mode);
    }
  }
  return f;
}

SineBumpField SineBumpField::zero() { return SineBumpField{}; }

bool SineBumpField::empty() const {
  return comp_[0].empty() && comp_[1].empty() && comp_[2].empty();
}

Vec3 SineBumpField::eval(const Vec3& x) const {
  Vec3 out{0, 0, 0};
  for (int j = 0; j < 3; ++j)
    for (const Mode& m : comp_[j])
      out[j] += m.coeff * std::sin(kPi * m.k[0] * x[0]) *
                std::sin(kPi * m.k[1] * x[1]) * std::sin(kPi * m.k[2] * x[2]);
  return out;
}

Mat3 SineBumpField::gradient(const Vec3& x) const {
  Mat3 g = Mat3::zero();
  for (int j = 0; j < 3; ++j) {
    for (const Mode& m : comp_[j]) {
      const real s0 = std::sin(kPi * m.k[0] * x[0]);
      const real s1 = std::sin(kPi * m.k[1] * x[1]);
      const real s2 = std::sin(kPi * m.k[2] * x[2]);
      const real c0 = std::cos(kPi * m.k[0] * x[0]);
      const real c1 = std::cos(kPi * m.k[1] * x[1]);
      const real c2 = std::cos(kPi * m.k[2] * x[2]);
      g(j, 0) += m.coeff * kPi * m.k[0] * c0 * s1 * s2;
      g(j, 1) += m.coeff * kPi * m.k[1] * s0 * c1 * s2;
      g(j, 2) += m.coeff * kPi * m.k[2] * s0 * s1 * c2;
    }
  }
  return g;
}

QuadratureReport quadrature_integrals(LoadParam load, int n,
                                      const SineBumpField& psi) {
  if (n < 1) throw ParamRange("quadrature: n must be >= 1");
  const real w = real(1) / (real(n) * real(n) * real(n));
  const Mat3 affine = Mat3::scaled_identity(load.lambda);
  real sum_n = 0, sum_p = 0, sum_g = 0;
  for (int i = 0; i < n; ++i) {
    const real xi = (i + real(0.5)) / n;
    for (int j = 0; j < n; ++j) {
      const real xj = (j + real(0.5)) / n;
      for (int k = 0; k < n; ++k) {
        const real xk = (k + real(0.5)) / n;
        const Mat3 grad = psi.empty()
                              ? affine
                              : affine + psi.gradient({xi, xj, xk});
        const real pv = P(grad, load);
        const real nv = N(grad, load);
        sum_p += pv;
        sum_n += nv;
        sum_g += pv - nv;
      }
    }
  }
  return {sum_n * w, sum_p * w, sum_g * w, n};
}

real null_lagrangian_quadrature(LoadParam load, int n, RngStream& rng) {
  if (n < 8) throw ParamRange("quadrature: n must be >= 8");
  const SineBumpField psi = SineBumpField::random(rng);
  return quadrature_integrals(load, n, psi).integral_N;
}

}  // namespace cavcal
