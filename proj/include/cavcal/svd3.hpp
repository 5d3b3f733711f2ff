#pragma once

#include "cavcal/mat3.hpp"

namespace cavcal {

/// Singular value decomposition A = u_factor * diag(sigma) * v_factor^T with
/// 0 <= sigma[0] <= sigma[1] <= sigma[2] and orthogonal factors.
struct Svd3 {
  Vec3 sigma;
  Mat3 u_factor;
  Mat3 v_factor;
};

/// Full decomposition. Eigendecomposition of A^T A by cyclic Jacobi; the
/// left factor is recovered column-wise with Gram-Schmidt repair at
/// (near-)zero singular values, so degenerate inputs are safe.
Svd3 svd3(const Mat3& a);

/// Singular values only (ascending). Skips factor recovery; this is the hot
/// path for the scalar matrix functions.
Vec3 singular_values(const Mat3& a);

/// The rotation R = v_factor^T * u_factor aligning the minors of A with its
/// singular value frame, defined for det A > 0. With D = diag(sigma),
/// tr(R (cof D - lambda D)) equals tr cof A - lambda tr A.
Mat3 alignment_rotation(const Mat3& a);

}  // namespace cavcal
