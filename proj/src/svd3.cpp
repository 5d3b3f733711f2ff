#include "cavcal/svd3.hpp"

#include <algorithm>
#include <cmath>

namespace cavcal {

namespace {

// One cyclic Jacobi sweep pair (p,q) on the symmetric matrix s, optionally
// accumulating the rotation into v (columns are eigenvectors).
inline void jacobi_rotate(Mat3& s, Mat3* v, int p, int q) {
  const real apq = s(p, q);
  if (apq == real(0)) return;
  const real theta = (s(q, q) - s(p, p)) / (real(2) * apq);
  const real t = (theta >= 0 ? real(1) : real(-1)) /
                 (std::abs(theta) + std::sqrt(theta * theta + real(1)));
  const real c = real(1) / std::sqrt(t * t + real(1));
  const real sn = t * c;
  const real tau = sn / (real(1) + c);

  const real app = s(p, p), aqq = s(q, q);
  s(p, p) = app - t * apq;
  s(q, q) = aqq + t * apq;
  s(p, q) = s(q, p) = real(0);
  for (int r = 0; r < 3; ++r) {
    if (r != p && r != q) {
      const real arp = s(r, p), arq = s(r, q);
      s(r, p) = s(p, r) = arp - sn * (arq + tau * arp);
      s(r, q) = s(q, r) = arq + sn * (arp - tau * arq);
    }
    if (v) {
      const real vrp = (*v)(r, p), vrq = (*v)(r, q);
      (*v)(r, p) = vrp - sn * (vrq + tau * vrp);
      (*v)(r, q) = vrq + sn * (vrp - tau * vrq);
    }
  }
}

inline real off_diag_sq(const Mat3& s) {
  return s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
}

inline real diag_sq(const Mat3& s) {
  return s(0, 0) * s(0, 0) + s(1, 1) * s(1, 1) + s(2, 2) * s(2, 2);
}

// Diagonalize S (symmetric psd) in place; eigenvectors in v if non-null.
void jacobi_eigen(Mat3& s, Mat3* v) {
  if (v) *v = Mat3::identity();
  for (int sweep = 0; sweep < 30; ++sweep) {
    if (off_diag_sq(s) <= real(1e-60) * std::max(diag_sq(s), real(1e-300)))
      break;
    jacobi_rotate(s, v, 0, 1);
    jacobi_rotate(s, v, 0, 2);
    jacobi_rotate(s, v, 1, 2);
  }
}

inline Mat3 gram(const Mat3& a) {
  Mat3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      real acc = 0;
      for (int k = 0; k < 3; ++k) acc += a(k, i) * a(k, j);
      s(i, j) = s(j, i) = acc;
    }
  return s;
}

// A fresh unit vector orthogonal to the already accepted columns of u
// (those with index in `have`).
Vec3 complete_column(const Mat3& u, const bool have[3]) {
  Vec3 acc[2];
  int n = 0;
  for (int c = 0; c < 3 && n < 2; ++c)
    if (have[c]) acc[n++] = u.col(c);
  if (n == 2) {
    Vec3 w = cross(acc[0], acc[1]);
    real nw = norm(w);
    return {w[0] / nw, w[1] / nw, w[2] / nw};
  }
  // 0 or 1 accepted columns: start from the least aligned basis vector
  int best = 0;
  real best_align = real(2);
  for (int k = 0; k < 3; ++k) {
    Vec3 ek{0, 0, 0};
    ek[k] = 1;
    real align = 0;
    for (int i = 0; i < n; ++i) align = std::max(align, std::abs(dot(ek, acc[i])));
    if (align < best_align) {
      best_align = align;
      best = k;
    }
  }
  Vec3 w{0, 0, 0};
  w[best] = 1;
  for (int i = 0; i < n; ++i) {
    real d = dot(w, acc[i]);
    for (int k = 0; k < 3; ++k) w[k] -= d * acc[i][k];
  }
  real nw = norm(w);
  return {w[0] / nw, w[1] / nw, w[2] / nw};
}

}  // namespace

Vec3 singular_values(const Mat3& a) {
  if (!is_finite(a)) throw DegenerateArgument("matrix has non-finite entries");
  Mat3 s = gram(a);
  jacobi_eigen(s, nullptr);
  Vec3 sig{std::sqrt(std::max<real>(s(0, 0), 0)),
           std::sqrt(std::max<real>(s(1, 1), 0)),
           std::sqrt(std::max<real>(s(2, 2), 0))};
  std::sort(sig.begin(), sig.end());
  return sig;
}

Svd3 svd3(const Mat3& a) {
  if (!is_finite(a)) throw DegenerateArgument("matrix has non-finite entries");
  Mat3 s = gram(a);
  Mat3 v;
  jacobi_eigen(s, &v);

  // sigma_i = |A v_i| is exact for the reconstruction A = sum_i w_i v_i^T
  // and stays accurate for tiny singular values.
  Vec3 w[3];
  Vec3 sig;
  for (int i = 0; i < 3; ++i) {
    w[i] = a * v.col(i);
    sig[i] = norm(w[i]);
  }

  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int i, int j) { return sig[i] < sig[j]; });

  Svd3 out;
  Mat3 vs;
  Vec3 ws[3];
  for (int k = 0; k < 3; ++k) {
    out.sigma[k] = sig[order[k]];
    vs.set_col(k, v.col(order[k]));
    ws[k] = w[order[k]];
  }
  out.v_factor = vs;

  // Left factor, largest singular value first; Gram-Schmidt against the
  // accepted columns, orthonormal completion below the rank threshold.
  const real rank_tol = real(1e-12) * out.sigma[2];
  bool have[3] = {false, false, false};
  Mat3 u = Mat3::zero();
  for (int k = 2; k >= 0; --k) {
    if (out.sigma[k] > rank_tol) {
      Vec3 c = ws[k];
      for (int j = 0; j < 3; ++j) {
        if (!have[j]) continue;
        real d = dot(c, u.col(j));
        Vec3 uj = u.col(j);
        for (int i = 0; i < 3; ++i) c[i] -= d * uj[i];
      }
      real nc = norm(c);
      if (nc > rank_tol) {
        u.set_col(k, {c[0] / nc, c[1] / nc, c[2] / nc});
        have[k] = true;
        continue;
      }
    }
    u.set_col(k, complete_column(u, have));
    have[k] = true;
  }
  out.u_factor = u;
  return out;
}

Mat3 alignment_rotation(const Mat3& a) {
  if (determinant(a) <= 0)
    throw NonpositiveDeterminant("alignment rotation requires det A > 0");
  Svd3 d = svd3(a);
  return d.v_factor.transposed() * d.u_factor;
}

}  // namespace cavcal
