#pragma once

#include <span>
#include <string>
#include <vector>

#include "cavcal/matfun.hpp"
#include "cavcal/rng.hpp"

namespace cavcal {

struct FdReport {
  std::string quantity_name;
  real analytic_value;
  real fd_value;
  real step;
  real abs_error;
};

/// Derivatives of the smooth symmetric singular-value sums at lambda*I:
/// s1' = tr U, lambda*s1'' = (|U|^2 - tr U^2)/2, (sum s_i^2)''/2 = |U|^2,
/// s2''/2 and the first-derivative square sum (|U|^2 + tr U^2)/2. Each
/// identity is verified by central differences over the step sweep; the
/// best step is reported.
std::vector<FdReport> verify_sv_sums(LoadParam load, const Mat3& u,
                                     std::span<const real> steps);

/// Residual of P(lambda I + hU) = lambda h tr U + h^2 tr cof U + o(h^2):
/// one report per step carrying residual/h^2, which must decay with h.
std::vector<FdReport> verify_P_expansion(LoadParam load, const Mat3& u,
                                         std::span<const real> steps);

/// s1 s2 s3 = (s1-l)(s2-l)(s3-l) + l*sum_{i<j} s_i s_j - l^2 sum_i s_i + l^3.
FdReport verify_greenalder(const Mat3& a, LoadParam load);

struct SlicePoint {
  real t;
  real p_value;
  real formula_value;  // lambda * (|lambda + t a1| - lambda)
};

/// P along the rank-one line lambda I + t a(x)e1^T against the closed form.
std::vector<SlicePoint> rank_one_slice(LoadParam load, const Vec3& a,
                                       std::span<const real> t_grid);

struct CounterexampleReport {
  Mat3 matrix;
  real p_value;
  real threshold;  // (tr cof A - 3 lambda^2)/2
  bool violated;   // p_value < threshold, strictly
};

/// A rank-one matrix t*e1(x)e1^T violating the polyconvexity support
/// inequality P(A) >= (tr cof A - 3 lambda^2)/2 at lambda*I.
CounterexampleReport polyconvexity_counterexample(LoadParam load);

/// Random finite combination of sine-bump products vanishing on the
/// boundary of the unit cube; gradients are analytic.
class SineBumpField {
 public:
  static SineBumpField random(RngStream& rng, int modes_per_component = 2);

  Vec3 eval(const Vec3& x) const;
  Mat3 gradient(const Vec3& x) const;  // entry (j,i) = d psi_j / d x_i
  bool empty() const;
  static SineBumpField zero();

 private:
  struct Mode {
    real coeff;
    int k[3];
  };
  std::array<std::vector<Mode>, 3> comp_;
};

struct QuadratureReport {
  real integral_N;
  real integral_P;
  real integral_G;
  int grid_n;
};

/// Midpoint quadrature of N, P, G at the gradient of u = lambda x + psi
/// on an n^3 grid of the unit cube.
QuadratureReport quadrature_integrals(LoadParam load, int n,
                                      const SineBumpField& psi);

/// Integral of the null Lagrangian for a random psi; converges to 0 at
/// O(n^-2).
real null_lagrangian_quadrature(LoadParam load, int n, RngStream& rng);

}  // namespace cavcal
