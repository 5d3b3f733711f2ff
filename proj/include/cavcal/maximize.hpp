#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cavcal/matfun.hpp"

namespace cavcal {

struct AscentResult {
  Mat3 maximizer;
  real value = 0;
  int iterations = 0;
  bool converged = false;
  bool start_was_symmetric = false;
};

struct SupEstimate {
  real lambda = 0;
  int l = 3;
  Variant variant = Variant::abs;
  real value = 0;
  std::vector<AscentResult> top_k;          // best 15, value descending
  std::pair<real, real> c1_spread{0, 0};    // min/max |A* - lambda I| in top_k
};

struct EstimateOptions {
  int restarts = 5000;
  real alpha = 5.0;
  std::uint64_t seed = 1;
  real epsilon = 1e-9;   // relative stop tolerance of the ascent
  int max_iter = 10000;
  int top_k = 15;
  int workers = 0;       // 0 = hardware concurrency
};

/// Gradient of m_l at A. Analytic through the singular value frame
/// (d s_i / dA = u_i v_i^T); central finite differences when the singular
/// values nearly coincide or G is at its kink.
Mat3 grad_m(const Mat3& a, LoadParam load, int l, Variant variant);

/// Polak-Ribiere conjugate gradient ascent on m_l with a golden-section
/// line maximization per step. Stops when successive values agree to
/// epsilon in the symmetric relative sense. A start whose first line
/// search cannot improve is returned unchanged with converged = false.
AscentResult cg_ascend(const Mat3& start, LoadParam load, int l,
                       Variant variant, real epsilon = 1e-9,
                       int max_iter = 10000);

/// Random-restart supremum estimate of M_l(lambda): `restarts` seeded
/// ascents (alternating symmetric starts), deterministic top-k merge.
SupEstimate estimate_M(LoadParam load, int l, Variant variant,
                       const EstimateOptions& opt);

/// c1(lambda) = |A*_3 - lambda I| for the best maximizer of m_3, plus the
/// min/max spread over the top 15.
std::pair<real, std::pair<real, real>> estimate_c1(LoadParam load,
                                                   Variant variant,
                                                   const EstimateOptions& opt);

}  // namespace cavcal
