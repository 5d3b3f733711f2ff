#include "cavcal/gridsup.hpp"

#include <algorithm>
#include <cmath>

#include "cavcal/parallel.hpp"
#include "cavcal/rng.hpp"

namespace cavcal {

std::vector<real> uniform_grid(real lambda_minus, real lambda_plus,
                               int n_points) {
  if (!(lambda_minus > 0)) throw ParamRange("grid: lambda_minus must be > 0");
  if (lambda_plus < lambda_minus)
    throw ParamRange("grid: lambda_plus must be >= lambda_minus");
  if (n_points < 0) throw ParamRange("grid: n_points must be >= 0");
  if (n_points == 0) return {lambda_minus};
  std::vector<real> grid(n_points + 1);
  const real step = (lambda_plus - lambda_minus) / n_points;
  for (int j = 0; j <= n_points; ++j) grid[j] = lambda_minus + j * step;
  return grid;
}

namespace {

inline real profile_value(const RationalProfile& p, real lam, int l,
                          Variant variant) {
  const real num_raw = p.a1 + p.a2 * lam;
  const real num = variant == Variant::abs ? std::abs(num_raw)
                                           : std::max(-num_raw, real(0));
  const real den = p.b1 + p.b2 * lam + p.b3 * lam * lam;
  if (!(den > 0)) return 0;  // only A = lambda I, which is excluded anyway
  return l == 2 ? num / den : num / (den * std::sqrt(den));
}

}  // namespace

SupremumTable supremum_over_profiles(std::span<const RationalProfile> profiles,
                                     std::vector<real> lambda_grid, int l,
                                     Variant variant) {
  if (l != 2 && l != 3) throw ParamRange("supremum: l must be 2 or 3");
  SupremumTable t;
  t.lambda_grid = std::move(lambda_grid);
  t.l = l;
  t.variant = variant;
  t.sample_count = (long long)profiles.size();
  t.values.assign(t.lambda_grid.size(), 0);
  for (size_t j = 0; j < t.lambda_grid.size(); ++j) {
    const real lam = t.lambda_grid[j];
    real best = 0;
    for (const RationalProfile& p : profiles)
      best = std::max(best, profile_value(p, lam, l, variant));
    t.values[j] = best;
  }
  return t;
}

SupremumTable algorithm_b(int l, Variant variant, const GridSupOptions& opt) {
  if (l != 2 && l != 3) throw ParamRange("algorithm_b: l must be 2 or 3");
  if (opt.n_samples < 1) throw ParamRange("algorithm_b: n_samples must be >= 1");
  if (!(opt.alpha > 0)) throw ParamRange("algorithm_b: alpha must be > 0");

  SupremumTable t;
  t.lambda_grid = uniform_grid(opt.lambda_minus, opt.lambda_plus, opt.n_points);
  t.l = l;
  t.variant = variant;
  t.sample_count = opt.n_samples;

  const int n_grid = int(t.lambda_grid.size());
  const int workers = resolve_workers(opt.workers);
  const long long chunk = 65536;
  const long long n_chunks = (opt.n_samples + chunk - 1) / chunk;

  // per-worker partial maxima over statically assigned chunks; the merge is
  // an elementwise max, so the table is identical for any worker count
  std::vector<std::vector<real>> partial(workers,
                                         std::vector<real>(n_grid, 0));
  parallel_for_index(workers, workers, [&](long long w) {
    std::vector<real>& mine = partial[size_t(w)];
    std::vector<RationalProfile> cache;
    for (long long ci = w; ci < n_chunks; ci += workers) {
      const long long lo = ci * chunk;
      const long long hi = std::min(lo + chunk, opt.n_samples);
      cache.clear();
      cache.reserve(size_t(hi - lo));
      for (long long i = lo; i < hi; ++i) {
        RngStream rng(opt.seed, std::uint64_t(i));
        const bool symmetric =
            opt.shape == SampleShape::symmetric ||
            (opt.shape == SampleShape::half_symmetric && i % 2 == 0);
        cache.push_back(
            rational_profile(random_matrix(rng, opt.alpha, symmetric)));
      }
      for (int j = 0; j < n_grid; ++j) {
        const real lam = t.lambda_grid[j];
        real best = mine[j];
        for (const RationalProfile& p : cache)
          best = std::max(best, profile_value(p, lam, l, variant));
        mine[j] = best;
      }
    }
  });

  t.values.assign(n_grid, 0);
  for (const auto& part : partial)
    for (int j = 0; j < n_grid; ++j) t.values[j] = std::max(t.values[j], part[j]);
  return t;
}

CrossCheckReport cross_check(const SupremumTable& table_b,
                             std::span<const SupEstimate> alg_a, real tol) {
  if (table_b.lambda_grid.size() != alg_a.size())
    throw GridMismatch("cross_check: grid sizes differ");
  CrossCheckReport rep;
  rep.tol = tol;
  rep.lambda = table_b.lambda_grid;
  rep.diff.resize(alg_a.size());
  for (size_t j = 0; j < alg_a.size(); ++j) {
    if (std::abs(alg_a[j].lambda - table_b.lambda_grid[j]) > real(1e-12))
      throw GridMismatch("cross_check: lambda grids differ");
    rep.diff[j] = std::abs(table_b.values[j] - alg_a[j].value);
    rep.max_abs_diff = std::max(rep.max_abs_diff, rep.diff[j]);
  }
  rep.pass = rep.max_abs_diff <= tol;
  return rep;
}

}  // namespace cavcal
