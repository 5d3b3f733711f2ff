#include "cavcal/verify.hpp"

#include <cmath>
#include <ostream>

#include "cavcal/bounds.hpp"
#include "cavcal/calculus.hpp"
#include "cavcal/io.hpp"
#include "cavcal/matfun.hpp"
#include "cavcal/rng.hpp"
#include "cavcal/svd3.hpp"

namespace cavcal {

namespace {

struct Suite {
  const VerifyOptions& opt;
  std::vector<CheckLine> lines;

  bool wanted(const std::string& name) const {
    return opt.filter.empty() || name.find(opt.filter) != std::string::npos;
  }

  void add(const std::string& name, real analytic, real observed, real tol) {
    if (!wanted(name)) return;
    const real err = std::abs(observed - analytic);
    lines.push_back({name, analytic, observed, err, err <= tol});
  }

  void add_flag(const std::string& name, bool ok, real observed = 0) {
    if (!wanted(name)) return;
    lines.push_back({name, 0, observed, ok ? real(0) : real(1), ok});
  }

  // G with the injected fault; the hook makes the negative control of the
  // suite observable from the CLI
  real g_val(const Mat3& a, LoadParam load) const {
    return G(a, load) + opt.g_bias;
  }
};

void check_sv_derivatives(Suite& s) {
  const real steps[] = {1e-2, 1e-3, 1e-4};
  RngStream rng(s.opt.seed, 101);
  const LoadParam load{1.3};
  real worst[5] = {0, 0, 0, 0, 0};
  for (int rep = 0; rep < s.opt.fd_samples; ++rep) {
    const Mat3 u = random_matrix(rng, 1.0, false);
    const real scale =
        std::max<real>({1, frobenius_norm_sq(u), load.lambda * load.lambda});
    auto reports = verify_sv_sums(load, u, steps);
    for (size_t i = 0; i < reports.size(); ++i)
      worst[i] = std::max(worst[i], reports[i].abs_error / scale);
  }
  const char* names[5] = {
      "sv_deriv.sum_first", "sv_deriv.sum_second", "sv_deriv.square_sum_second",
      "sv_deriv.pair_sum_second", "sv_deriv.first_deriv_square_sum"};
  for (int i = 0; i < 5; ++i) s.add(names[i], 0, worst[i], 1e-5);

  // symmetric U: the second-derivative sum vanishes
  Mat3 sym = random_matrix(rng, 1.0, true);
  auto rep_sym = verify_sv_sums(load, sym, steps);
  s.add("sv_deriv.symmetric_second_zero", 0,
        std::abs(rep_sym[1].analytic_value) + rep_sym[1].abs_error, 1e-5);
  // antisymmetric U: first derivative and its square sum vanish
  Mat3 anti;
  anti(0, 1) = 0.7;
  anti(1, 0) = -0.7;
  anti(0, 2) = -0.4;
  anti(2, 0) = 0.4;
  anti(1, 2) = 0.2;
  anti(2, 1) = -0.2;
  auto rep_anti = verify_sv_sums(load, anti, steps);
  s.add("sv_deriv.antisymmetric_first_zero", 0,
        std::abs(rep_anti[0].analytic_value) + rep_anti[0].abs_error, 1e-5);
  s.add("sv_deriv.antisymmetric_square_sum_zero", 0,
        std::abs(rep_anti[4].analytic_value) + rep_anti[4].abs_error, 1e-5);
}

void check_P_expansion(Suite& s) {
  const real steps[] = {1e-1, 1e-2, 1e-3};
  const LoadParam load{1.2};
  RngStream rng(s.opt.seed, 102);
  // directions where the expansion is exact: the residual stays at rounding
  const Mat3 exact_cases[2] = {Mat3::identity(),
                               Mat3::outer({1, 0, 0}, {0, 1, 0})};
  const char* exact_names[2] = {"P_expansion.identity",
                                "P_expansion.rank_one"};
  for (int i = 0; i < 2; ++i) {
    real worst = 0;
    for (const auto& r : verify_P_expansion(load, exact_cases[i], steps))
      worst = std::max(worst, std::abs(r.fd_value) * r.step * r.step);
    s.add(exact_names[i], 0, worst, 1e-12);
  }
  // generic directions: residual/h^2 decays down to the rounding floor
  auto reps = verify_P_expansion(load, random_matrix(rng, 1.0, false), steps);
  const real first = std::abs(reps.front().fd_value);
  const real last = std::abs(reps.back().fd_value);
  const real floor = real(1e-12) / (reps.back().step * reps.back().step);
  s.add_flag("P_expansion.random", last <= std::max(first / 2, floor), last);
}

void check_tangency(Suite& s) {
  RngStream rng(s.opt.seed, 103);
  const LoadParam load{1.4};
  const real hs[] = {1e-1, 1e-2, 1e-3, 1e-4};
  real ratio_large = 0, ratio_small = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Mat3 u = random_matrix(rng, 1.0, false);
    u *= real(1) / frobenius_norm(u);
    for (real h : hs) {
      const Mat3 a = Mat3::scaled_identity(load.lambda) + h * u;
      const real ratio = std::abs(s.g_val(a, load)) / (h * h * h);
      if (h == hs[0]) ratio_large = std::max(ratio_large, ratio);
      if (h == hs[3]) ratio_small = std::max(ratio_small, ratio);
    }
  }
  // third-order flatness: the ratio must not grow as h -> 0
  s.add_flag("tangency.third_order",
             ratio_small <= 2 * ratio_large + real(1e-6), ratio_small);
}

void check_G_structure(Suite& s) {
  RngStream rng(s.opt.seed, 104);
  real worst_diag = 0, worst_profile = 0, worst_green = 0;
  for (int i = 0; i < s.opt.identity_samples; ++i) {
    const real lam = rng.uniform(0.5, 2.5);
    const LoadParam load{lam};
    // nonnegative diagonal: G vanishes
    const Mat3 d = Mat3::diag(rng.uniform(0, 4), rng.uniform(0, 4),
                              rng.uniform(0, 4));
    worst_diag = std::max(worst_diag, std::abs(s.g_val(d, load)));
    // profile reproduces G and m_l
    const Mat3 a = random_matrix(rng, 5.0, i % 2 == 0);
    const RationalProfile p = rational_profile(a);
    const real direct = s.g_val(a, load);
    worst_profile =
        std::max(worst_profile, std::abs(p.a1 + p.a2 * lam - direct) /
                                    std::max<real>(1, std::abs(direct)));
    // product identity of the shifted singular values
    const FdReport green = verify_greenalder(a, load);
    worst_green = std::max(
        worst_green, green.abs_error / std::max<real>(1, std::abs(green.analytic_value)));
  }
  s.add("G.diagonal_zero", 0, worst_diag, 1e-10);
  s.add("G.profile_match", 0, worst_profile, 1e-10);
  s.add("identity.shifted_product", 0, worst_green, 1e-10);
}

void check_khat(Suite& s) {
  RngStream rng(s.opt.seed, 105);
  const real root2 = std::sqrt(real(2));
  real worst = -kInfiniteEnergy;
  for (long long i = 0; i < s.opt.khat_samples; ++i) {
    const Mat3 a = random_matrix(rng, 1.0, i % 2 == 0);
    if (frobenius_norm(a) < real(1e-8)) continue;
    worst = std::max(worst, K_hat(a));
  }
  s.add_flag("khat.bounded_by_sqrt2", worst <= root2 + real(1e-9), worst);
  const Mat3 a0 = Mat3::diag(-0.5, -0.5, real(1) / root2);
  s.add("khat.maximizer_value", root2, K_hat(a0), 1e-12);
}

void check_rank_one(Suite& s) {
  RngStream rng(s.opt.seed, 106);
  const LoadParam load{1.1};
  real worst = 0;
  const real ts[] = {-2.2, -0.7, 0.3, 1.9};
  for (int rep = 0; rep < 200; ++rep) {
    const Vec3 a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    for (const auto& pt : rank_one_slice(load, a, ts))
      worst = std::max(worst, std::abs(pt.p_value - pt.formula_value));
  }
  s.add("rank_one.slice_formula", 0, worst, 1e-10);

  // midpoint convexity along the slice
  real worst_conv = -kInfiniteEnergy;
  for (int rep = 0; rep < 1000; ++rep) {
    const Vec3 a{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const real t0 = rng.uniform(-2, 2), t1 = rng.uniform(-2, 2);
    const real grid[] = {t0, (t0 + t1) / 2, t1};
    auto pts = rank_one_slice(load, a, grid);
    worst_conv = std::max(
        worst_conv, pts[1].p_value - (pts[0].p_value + pts[2].p_value) / 2);
  }
  s.add_flag("rank_one.midpoint_convexity", worst_conv <= real(1e-10),
             worst_conv);

  bool all_violated = true;
  for (real lam : {0.5, 1.0, 1.5, 2.0, 4.0})
    all_violated = all_violated && polyconvexity_counterexample({lam}).violated;
  s.add_flag("polyconvexity.counterexample", all_violated);
}

void check_quadrature(Suite& s) {
  RngStream rng(s.opt.seed, 107);
  const LoadParam load{1.5};
  const SineBumpField psi = SineBumpField::random(rng);
  const auto q16 = quadrature_integrals(load, 16, psi);
  const auto q32 = quadrature_integrals(load, 32, psi);
  const auto q64 = quadrature_integrals(load, 64, psi);
  const real i16 = std::abs(q16.integral_N + s.opt.g_bias);
  const real i32 = std::abs(q32.integral_N + s.opt.g_bias);
  const real i64 = std::abs(q64.integral_N + s.opt.g_bias);
  // Fields whose mode parities interact are integrated with an O(n^-2)
  // error; the others are integrated exactly by the midpoint rule. Both
  // count as the integral vanishing at second order.
  const bool second_order = i32 <= std::max(i16 / real(2.5), real(1e-13)) &&
                            i64 <= std::max(i32 / real(2.5), real(1e-13));
  const bool exact = i16 <= real(1e-13) && i32 <= real(1e-13) &&
                     i64 <= real(1e-13);
  s.add_flag("null_lagrangian.decay", second_order || exact, i64);
  s.add("null_lagrangian.P_equals_G_integral", q64.integral_P,
        q64.integral_G + q64.integral_N, 1e-14);
}

void check_rotation_bounds(Suite& s) {
  RngStream rng(s.opt.seed, 108);
  bool all_ok = true;
  real worst_slack = kInfiniteEnergy;
  for (long long i = 0; i < s.opt.gbound_triples; ++i) {
    const Mat3 a = random_matrix(rng, 3.0, false);
    const auto abc = alpha_beta_gamma(a, LoadParam{rng.uniform(0.5, 2.5)});
    const auto rep = g_bound_check(abc, s.opt.gbound_rotations, rng);
    all_ok = all_ok && rep.ok;
    worst_slack = std::min(worst_slack, rep.empirical_min - rep.bound);
  }
  s.add_flag("rotation.g_lower_bound", all_ok, worst_slack);
  s.add_flag("rotation.symmetric_trace_range",
             mintrace_check(rng, s.opt.mintrace_samples));

  bool bartok_ok = true;
  long long tried = 0;
  for (long long i = 0; tried < s.opt.bartok_samples; ++i) {
    const Mat3 a = random_matrix(rng, 3.0, false);
    if (determinant(a) <= 0) continue;
    ++tried;
    const real lams[] = {1.0, 1.5, 2.0};
    for (real lam : lams) bartok_ok = bartok_ok && bartok_check(a, {lam}).ok;
  }
  s.add_flag("H.branch_lower_bound", bartok_ok);
}

void check_svd_properties(Suite& s) {
  RngStream rng(s.opt.seed, 109);
  real worst_recon = 0, worst_ortho = 0, worst_lip = -kInfiniteEnergy;
  for (int i = 0; i < s.opt.identity_samples; ++i) {
    Mat3 a = random_matrix(rng, 5.0, false);
    if (i % 10 == 0) {
      // force a near-degenerate pair
      const Svd3 d = svd3(a);
      Mat3 sig = Mat3::diag(d.sigma[1] + real(1e-11), d.sigma[1], d.sigma[0]);
      a = d.u_factor * sig * d.v_factor.transposed();
    }
    const Svd3 d = svd3(a);
    const Mat3 recon = d.u_factor *
                       Mat3::diag(d.sigma[0], d.sigma[1], d.sigma[2]) *
                       d.v_factor.transposed();
    const real scale = std::max<real>(1, frobenius_norm(a));
    worst_recon = std::max(worst_recon, frobenius_norm(recon - a) / scale);
    worst_ortho = std::max(
        worst_ortho,
        frobenius_norm(d.u_factor.transposed() * d.u_factor - Mat3::identity()));
    worst_ortho = std::max(
        worst_ortho,
        frobenius_norm(d.v_factor.transposed() * d.v_factor - Mat3::identity()));
    // |A - lambda I| >= |Lambda(A) - Lambda_0|
    const real lam = rng.uniform(0.5, 2.5);
    const Vec3 sv = singular_values(a);
    const real dl = std::sqrt((sv[0] - lam) * (sv[0] - lam) +
                              (sv[1] - lam) * (sv[1] - lam) +
                              (sv[2] - lam) * (sv[2] - lam));
    const real da = frobenius_norm(sub_scaled_identity(a, lam));
    worst_lip = std::max(worst_lip, dl - da);
  }
  s.add("svd.reconstruction", 0, worst_recon, 1e-12);
  s.add("svd.orthogonality", 0, worst_ortho, 1e-12);
  s.add_flag("svd.value_lipschitz", worst_lip <= real(1e-12), worst_lip);

  real worst_cof = 0;
  for (int i = 0; i < s.opt.identity_samples; ++i) {
    const Mat3 a = random_matrix(rng, 5.0, false);
    const real direct = trace(cofactor(a));
    worst_cof = std::max(worst_cof, std::abs(direct - trace_cofactor(a)) /
                                        std::max<real>(1, std::abs(direct)));
  }
  s.add("minors.trace_cofactor_identity", 0, worst_cof, 1e-13);
}

void check_zy(Suite& s) {
  bool all_less = true;
  for (int i = 0; i <= 100; ++i) {
    const real q = 2 + real(i) / 100;
    all_less = all_less && zy_compare(q, 0.4501).z_less;
  }
  s.add_flag("zy.dominated_at_nu1", all_less);
  const auto rev = zy_compare(3.0, 0.1923);
  s.add_flag("zy.reversal_at_nu1_minus", !rev.z_less, rev.z - rev.y);
}

}  // namespace

std::vector<CheckLine> run_verify_suite(const VerifyOptions& opt) {
  Suite s{opt, {}};
  check_sv_derivatives(s);
  check_P_expansion(s);
  check_tangency(s);
  check_G_structure(s);
  check_khat(s);
  check_rank_one(s);
  check_quadrature(s);
  check_rotation_bounds(s);
  check_svd_properties(s);
  check_zy(s);
  return std::move(s.lines);
}

void print_check_lines(const std::vector<CheckLine>& lines, std::ostream& os) {
  for (const auto& l : lines) {
    os << l.name << " analytic=" << format_real(l.analytic)
       << " observed=" << format_real(l.observed)
       << " error=" << format_real(l.error) << (l.pass ? " PASS" : " FAIL")
       << "\n";
  }
}

}  // namespace cavcal
