#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cavcal/matfun.hpp"
#include "cavcal/rng.hpp"

namespace cavcal {

enum class FitModel { inverse, affine };

struct FitResult {
  FitModel model;
  std::vector<real> coefficients;  // inverse: {nu}; affine: {nu2, nu3}
  real max_abs_deviation = 0;
  std::vector<std::pair<real, real>> grid;

  real eval(real lambda) const;
};

/// Least squares for v = nu / lambda; closed form
/// nu = sum(v_i/lambda_i) / sum(1/lambda_i^2).
FitResult fit_inverse(std::span<const std::pair<real, real>> grid);

/// Ordinary least squares for v = nu2 + nu3 * lambda.
FitResult fit_affine(std::span<const std::pair<real, real>> grid);

/// M_2, M_3 as functions of the shell radius c0 (lambda fixed by the caller).
using MHandle = std::function<real(real)>;

/// Conjecture-constant handles: M2 = sqrt(2), M3 = nu1 / lambda for every c0
/// (the saturated regime; the fixed point lies there for lambda >= 1).
MHandle conjecture_M2();
MHandle conjecture_M3(real nu1, real lambda);

struct XiProfile {
  real f1;  // c0^(q-2) / M2(c0)
  real f2;  // c0^(q-3) / M3(c0)
  real xi;  // max(f1, f2)
};

XiProfile xi_profile(real c0, real q, const MHandle& m2, const MHandle& m3);

/// Unique fixed point of c -> M2(c)/M3(c), by bisection over an expanding
/// bracket in [1e-6, 1e6]. Throws NoBracket if no sign change is found.
real fixed_point_cstar(const MHandle& m2, const MHandle& m3);

/// The two competing terms of the load bound and the resulting threshold on
/// lambda^(3-q) h'(lambda^3).
struct BoundReport {
  real q = 0;
  real kappa = 0;
  real lambda = 0;
  real c_star = 0;
  real term_est1 = 0;   // (kappa/2)(q-2)^((2-q)/2) q^(q/2)
  real term_cstar = 0;  // (kappa/2) lambda^(2-q) M2^(q-3) M3^(2-q) at c*
  real rhs = 0;         // min of the two
  real satisfied_for_hprime = 0;  // threshold on lambda^(3-q) h'(lambda^3)
};

BoundReport lambda_bound_with(real q, real kappa, LoadParam load,
                              const MHandle& m2, const MHandle& m3);

/// Conjecture-handle version; under them the c* term reduces to
/// (kappa/2) sqrt(2)^(q-3) nu1^(2-q), independent of lambda.
BoundReport lambda_bound(real q, real kappa, LoadParam load, real nu1);

struct ZyComparison {
  real z;  // sqrt(2)^(q-3) nu^(2-q)
  real y;  // (q-2)^((2-q)/2) q^(q/2); closed forms at q = 2 and q = 3
  bool z_less;
};

ZyComparison zy_compare(real q, real nu);

struct GBoundReport {
  real empirical_min;
  real bound;  // min(2(beta+gamma), 0)
  bool ok;
};

/// Samples Haar rotations plus the four diagonal sign candidates and checks
/// g(R) >= min(2(beta+gamma), 0). Requires alpha >= beta >= gamma.
GBoundReport g_bound_check(const std::array<real, 3>& abc, long long samples,
                           RngStream& rng);

/// Symmetric rotations (conjugated diagonal sign matrices) all have trace
/// in [-1, 3].
bool mintrace_check(RngStream& rng, long long samples);

struct BartokReport {
  real h_value;
  real bound;
  bool branch_small_s1;  // true when s1 <= lambda
  bool ok;
};

/// H(A) against its branch lower bound; det A > 0 required.
BartokReport bartok_check(const Mat3& a, LoadParam load);

struct CornishelmReport {
  real lhs;  // sum over samples with s1 >= lambda
  real rhs;  // sum over samples with s1 <= lambda
};

/// Discrete quadrature form of the necessary condition for I(u) <= I(u_l):
/// weighted integrands split by the smallest singular value.
CornishelmReport cornishelm_report(
    std::span<const std::pair<real, Mat3>> samples, LoadParam load,
    const MaterialParams& mat);

}  // namespace cavcal
