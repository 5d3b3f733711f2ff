#pragma once

#include <array>
#include <cmath>

#include "cavcal/types.hpp"

namespace cavcal {

using Vec3 = std::array<real, 3>;

inline real dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline real norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

/// Dense real 3x3 matrix, row-major.
struct Mat3 {
  std::array<real, 9> e{};

  real& operator()(int r, int c) { return e[3 * r + c]; }
  real operator()(int r, int c) const { return e[3 * r + c]; }

  static Mat3 zero() { return Mat3{}; }
  static Mat3 identity() { return Mat3{{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Mat3 diag(real a, real b, real c) {
    return Mat3{{a, 0, 0, 0, b, 0, 0, 0, c}};
  }
  static Mat3 scaled_identity(real s) { return diag(s, s, s); }
  static Mat3 outer(const Vec3& a, const Vec3& n) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = a[i] * n[j];
    return m;
  }

  Mat3 transposed() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  Vec3 row(int r) const { return {e[3 * r], e[3 * r + 1], e[3 * r + 2]}; }
  Vec3 col(int c) const { return {e[c], e[3 + c], e[6 + c]}; }
  void set_col(int c, const Vec3& v) {
    e[c] = v[0];
    e[3 + c] = v[1];
    e[6 + c] = v[2];
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) e[i] += o.e[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) e[i] -= o.e[i];
    return *this;
  }
  Mat3& operator*=(real s) {
    for (int i = 0; i < 9; ++i) e[i] *= s;
    return *this;
  }

  friend Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend Mat3 operator*(Mat3 a, real s) { return a *= s; }
  friend Mat3 operator*(real s, Mat3 a) { return a *= s; }
  friend Mat3 operator-(const Mat3& a) { return a * real(-1); }
  friend bool operator==(const Mat3& a, const Mat3& b) { return a.e == b.e; }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return c;
  }

  friend Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
            a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
  }
};

inline bool is_finite(const Mat3& a) {
  for (real x : a.e)
    if (!std::isfinite(x)) return false;
  return true;
}

inline real trace(const Mat3& a) { return a.e[0] + a.e[4] + a.e[8]; }

/// Frobenius inner product A . B = tr(A^T B).
inline real dot(const Mat3& a, const Mat3& b) {
  real s = 0;
  for (int i = 0; i < 9; ++i) s += a.e[i] * b.e[i];
  return s;
}

inline real frobenius_norm_sq(const Mat3& a) { return dot(a, a); }

real frobenius_norm(const Mat3& a);

Mat3 cofactor(const Mat3& a);
real determinant(const Mat3& a);

/// The list of first-order invariants used everywhere: tr A, cof A, det A.
struct Minors {
  real trace;
  Mat3 cofactor;
  real determinant;
};

Minors minors(const Mat3& a);

inline real trace_cofactor(const Mat3& a) {
  // tr cof A = ((tr A)^2 - tr(A^2)) / 2, cheaper than forming cof A
  real t = trace(a);
  real t2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t2 += a(i, j) * a(j, i);
  return real(0.5) * (t * t - t2);
}

inline Mat3 sub_scaled_identity(const Mat3& a, real s) {
  Mat3 r = a;
  r.e[0] -= s;
  r.e[4] -= s;
  r.e[8] -= s;
  return r;
}

}  // namespace cavcal
