#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cavcal/maximize.hpp"
#include "cavcal/matfun.hpp"

namespace cavcal {

/// Pointwise supremum of the cached rational profiles over a lambda grid;
/// a discrete approximation to M_l(lambda, infinity) that is nondecreasing
/// in the sample count for nested sample sets.
struct SupremumTable {
  std::vector<real> lambda_grid;
  std::vector<real> values;
  int l = 3;
  Variant variant = Variant::abs;
  long long sample_count = 0;
};

enum class SampleShape { symmetric, half_symmetric, full };

struct GridSupOptions {
  real lambda_minus = 1.0;
  real lambda_plus = 2.0;
  int n_points = 100;          // grid has n_points + 1 entries
  long long n_samples = 1000000;
  real alpha = 5.0;
  std::uint64_t seed = 1;
  SampleShape shape = SampleShape::symmetric;
  int workers = 0;
};

std::vector<real> uniform_grid(real lambda_minus, real lambda_plus,
                               int n_points);

/// Core of Algorithm B on an explicit profile set.
SupremumTable supremum_over_profiles(std::span<const RationalProfile> profiles,
                                     std::vector<real> lambda_grid, int l,
                                     Variant variant);

/// Monte Carlo Algorithm B: sample, cache profiles, take grid suprema.
/// Sample i is a pure function of (seed, i); per-worker partial maxima are
/// merged with max, so any worker count gives identical tables.
SupremumTable algorithm_b(int l, Variant variant, const GridSupOptions& opt);

struct CrossCheckReport {
  std::vector<real> lambda;
  std::vector<real> diff;  // |F_j - algorithm A value|
  real max_abs_diff = 0;
  real tol = 0.01;
  bool pass = false;
};

/// Per-lambda agreement between an Algorithm B table and Algorithm A
/// estimates on the same grid.
CrossCheckReport cross_check(const SupremumTable& table_b,
                             std::span<const SupEstimate> alg_a,
                             real tol = 0.01);

}  // namespace cavcal
