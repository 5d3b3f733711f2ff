#include "cavcal/rng.hpp"

namespace cavcal {

Mat3 random_matrix(RngStream& rng, real alpha, bool symmetric) {
  if (!(alpha > 0)) throw ParamRange("random_matrix: alpha must be > 0");
  Mat3 a;
  if (symmetric) {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = rng.uniform(-alpha, alpha);
  } else {
    for (int i = 0; i < 9; ++i) a.e[i] = rng.uniform(-alpha, alpha);
  }
  return a;
}

Mat3 random_rotation(RngStream& rng) {
  real w, x, y, z, n2;
  do {
    w = rng.gaussian();
    x = rng.gaussian();
    y = rng.gaussian();
    z = rng.gaussian();
    n2 = w * w + x * x + y * y + z * z;
  } while (n2 < real(1e-12));
  const real s = real(1) / std::sqrt(n2);
  w *= s;
  x *= s;
  y *= s;
  z *= s;
  Mat3 r;
  r(0, 0) = 1 - 2 * (y * y + z * z);
  r(0, 1) = 2 * (x * y - w * z);
  r(0, 2) = 2 * (x * z + w * y);
  r(1, 0) = 2 * (x * y + w * z);
  r(1, 1) = 1 - 2 * (x * x + z * z);
  r(1, 2) = 2 * (y * z - w * x);
  r(2, 0) = 2 * (x * z - w * y);
  r(2, 1) = 2 * (y * z + w * x);
  r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

}  // namespace cavcal
