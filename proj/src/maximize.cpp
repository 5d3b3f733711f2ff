#include "cavcal/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cavcal/parallel.hpp"
#include "cavcal/rng.hpp"
#include "cavcal/svd3.hpp"

namespace cavcal {

namespace {

// Value of m_l that tolerates the A = lambda*I point and overflow-scale
// arguments inside line searches.
real m_value_safe(const Mat3& a, LoadParam load, int l, Variant variant) {
  if (!is_finite(a)) return -kInfiniteEnergy;
  const Mat3 d = sub_scaled_identity(a, load.lambda);
  const real c2 = frobenius_norm_sq(d);
  if (c2 > real(1e200)) return -kInfiniteEnergy;
  const real c = std::sqrt(c2);
  if (c < real(1e-14) * std::max<real>(1, load.lambda)) return -kInfiniteEnergy;
  const real g = G(a, load);
  const real num = variant == Variant::abs ? std::abs(g) : std::max(-g, real(0));
  return l == 2 ? num / c2 : num / (c2 * c);
}

Mat3 grad_m_fd(const Mat3& a, LoadParam load, int l, Variant variant) {
  const real h = real(1e-6) * std::max<real>(1, frobenius_norm(a));
  Mat3 g;
  for (int i = 0; i < 9; ++i) {
    Mat3 p = a, m = a;
    p.e[i] += h;
    m.e[i] -= h;
    g.e[i] = (m_value_safe(p, load, l, variant) -
              m_value_safe(m, load, l, variant)) /
             (2 * h);
  }
  return g;
}

struct LineResult {
  real step = 0;
  real value = 0;
  bool improved = false;
};

// Maximize value(A + s*dir) over s > 0: bracket by doubling from a
// scale-aware trial step, then golden-section to relative width 1e-10.
LineResult line_max(const Mat3& a, const Mat3& dir, real f0, LoadParam load,
                    int l, Variant variant) {
  auto phi = [&](real s) { return m_value_safe(a + s * dir, load, l, variant); };

  const real c = frobenius_norm(sub_scaled_identity(a, load.lambda));
  const real s_cap = real(1e13);
  real s1 = std::max<real>(1, c / 4);
  real f1 = phi(s1);

  if (!(f1 > f0)) {
    // shrink until the near field improves
    while (s1 > real(1e-12) * std::max<real>(1, c)) {
      s1 /= 2;
      f1 = phi(s1);
      if (f1 > f0) break;
    }
    if (!(f1 > f0)) return {};
  }

  // expand: lo < mid < hi with f(mid) the running best
  real lo = 0;
  real mid = s1, fmid = f1;
  real hi = 2 * s1, fhi = phi(hi);
  while (fhi > fmid) {
    lo = mid;
    mid = hi;
    fmid = fhi;
    if (hi >= s_cap) return {hi, fhi, true};  // boundary max at the cap
    hi = std::min(2 * hi, s_cap);
    fhi = phi(hi);
  }

  // golden section keeping the interior maximum
  const real inv_phi = real(0.6180339887498949);
  real x1 = hi - inv_phi * (hi - lo);
  real x2 = lo + inv_phi * (hi - lo);
  real fx1 = phi(x1), fx2 = phi(x2);
  while (hi - lo > real(1e-10) * std::max(hi, real(1e-16))) {
    if (fx1 >= fx2) {
      hi = x2;
      x2 = x1;
      fx2 = fx1;
      x1 = hi - inv_phi * (hi - lo);
      fx1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      fx1 = fx2;
      x2 = lo + inv_phi * (hi - lo);
      fx2 = phi(x2);
    }
  }
  real best_s = fx1 >= fx2 ? x1 : x2;
  real best_f = std::max(fx1, fx2);
  if (fmid > best_f) {
    best_s = mid;
    best_f = fmid;
  }
  if (!(best_f > f0)) return {};
  return {best_s, best_f, true};
}

}  // namespace

Mat3 grad_m(const Mat3& a, LoadParam load, int l, Variant variant) {
  if (l != 2 && l != 3) throw ParamRange("grad_m: l must be 2 or 3");
  const Mat3 d = sub_scaled_identity(a, load.lambda);
  const real c2 = frobenius_norm_sq(d);
  const real c = std::sqrt(c2);
  const real lam = load.lambda;
  if (c < real(1e-14) * std::max<real>(1, lam))
    throw DegenerateArgument("grad_m undefined at A = lambda I");

  const Svd3 svd = svd3(a);
  const Vec3& s = svd.sigma;
  const real gap = std::min(s[1] - s[0], s[2] - s[1]);
  const real g = P(a, load) - N(a, load);

  if (gap < real(1e-6) * std::max<real>(1, s[2]) || std::abs(g) < real(1e-10))
    return grad_m_fd(a, load, l, variant);

  if (variant == Variant::neg && g > 0) return Mat3::zero();  // locally zero

  // grad P = sum_i (sum_{j != i} s_j - lambda) u_i v_i^T
  const real total = s[0] + s[1] + s[2];
  Mat3 grad_p = Mat3::zero();
  for (int i = 0; i < 3; ++i) {
    const real w = (total - s[i]) - lam;
    const Vec3 ui = svd.u_factor.col(i);
    const Vec3 vi = svd.v_factor.col(i);
    grad_p += w * Mat3::outer(ui, vi);
  }
  // grad N = (tr A) I - A^T - lambda I
  const Mat3 grad_n =
      sub_scaled_identity(Mat3::scaled_identity(trace(a)) - a.transposed(), lam);
  const Mat3 grad_g = grad_p - grad_n;

  const real sign = (variant == Variant::abs && g >= 0) ? real(1) : real(-1);
  const real cl = l == 2 ? c2 : c2 * c;
  const real num = sign * g;
  return (sign / cl) * grad_g - (real(l) * num / (cl * c2)) * d;
}

AscentResult cg_ascend(const Mat3& start, LoadParam load, int l,
                       Variant variant, real epsilon, int max_iter) {
  if (!(epsilon > 0)) throw ParamRange("cg_ascend: epsilon must be > 0");
  AscentResult res;
  res.maximizer = start;
  res.value = m_l(start, load, l, variant);

  Mat3 a = start;
  real m = res.value;
  Mat3 g = grad_m(a, load, l, variant);
  Mat3 d = g;

  for (int iter = 1; iter <= max_iter; ++iter) {
    res.iterations = iter;
    real dn = frobenius_norm(d);
    if (dn == 0 || dot(d, g) <= 0) {
      d = g;
      dn = frobenius_norm(d);
      if (dn == 0) return res;  // stationary start, nothing to ascend
    }
    LineResult ls = line_max(a, (real(1) / dn) * d, m, load, l, variant);
    if (!ls.improved && !(d == g)) {
      d = g;
      dn = frobenius_norm(d);
      if (dn > 0) ls = line_max(a, (real(1) / dn) * d, m, load, l, variant);
    }
    if (!ls.improved) {
      // a zero-change step: the stop rule fires with m(i+1) = m(i), except
      // on the very first search, which is the no-ascent contract
      res.converged = iter > 1;
      return res;
    }

    const Mat3 a_next = a + (ls.step / dn) * d;
    const real m_next = ls.value;
    res.maximizer = a_next;
    res.value = m_next;

    if (std::abs(m_next - m) <=
        (epsilon / 2) * (std::abs(m_next) + std::abs(m))) {
      res.converged = true;
      return res;
    }

    const Mat3 g_next = grad_m(a_next, load, l, variant);
    const real gg = dot(g, g);
    real beta = gg > 0 ? dot(g_next, g_next - g) / gg : real(0);
    beta = std::max<real>(beta, 0);
    if (iter % 9 == 0) beta = 0;  // periodic restart over the 9-dim space
    d = g_next + beta * d;
    g = g_next;
    a = a_next;
    m = m_next;
  }
  return res;
}

SupEstimate estimate_M(LoadParam load, int l, Variant variant,
                       const EstimateOptions& opt) {
  if (opt.restarts < 2) throw ParamRange("estimate_M: restarts must be >= 2");
  if (!(opt.alpha > 0)) throw ParamRange("estimate_M: alpha must be > 0");

  std::vector<AscentResult> results(opt.restarts);
  parallel_for_index(opt.restarts, opt.workers, [&](long long i) {
    RngStream rng(opt.seed, std::uint64_t(i));
    const bool symmetric = (i % 2 == 0);
    Mat3 start = random_matrix(rng, opt.alpha, symmetric);
    AscentResult r;
    try {
      r = cg_ascend(start, load, l, variant, opt.epsilon, opt.max_iter);
    } catch (const DegenerateArgument&) {
      r.maximizer = start;  // start at the excluded point; keep value 0
    }
    r.start_was_symmetric = symmetric;
    results[size_t(i)] = r;
  });

  std::vector<int> order(results.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (results[i].value != results[j].value)
      return results[i].value > results[j].value;
    return i < j;
  });

  SupEstimate est;
  est.lambda = load.lambda;
  est.l = l;
  est.variant = variant;
  const int k = std::min<int>(opt.top_k, int(order.size()));
  est.top_k.reserve(k);
  for (int i = 0; i < k; ++i) est.top_k.push_back(results[order[i]]);
  est.value = est.top_k.empty() ? 0 : est.top_k.front().value;

  real lo = kInfiniteEnergy, hi = -kInfiniteEnergy;
  for (const auto& r : est.top_k) {
    const real c =
        frobenius_norm(sub_scaled_identity(r.maximizer, load.lambda));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  est.c1_spread = {lo, hi};
  return est;
}

std::pair<real, std::pair<real, real>> estimate_c1(LoadParam load,
                                                   Variant variant,
                                                   const EstimateOptions& opt) {
  const SupEstimate est = estimate_M(load, 3, variant, opt);
  const real c1 = frobenius_norm(
      sub_scaled_identity(est.top_k.front().maximizer, load.lambda));
  return {c1, est.c1_spread};
}

}  // namespace cavcal
