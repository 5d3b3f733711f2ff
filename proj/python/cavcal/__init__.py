"""Matrix functions and calibration estimates for critical cavitation loads.

The heavy lifting lives in the compiled extension ``cavcal._core``; this
package re-exports its public surface.
"""

from ._core import (
    G,
    G_minus,
    H,
    K_hat,
    N,
    P,
    algorithm_b,
    alignment_rotation,
    alpha_beta_gamma,
    estimate_M,
    eval_profile,
    fit_affine,
    fit_inverse,
    fixed_point_cstar,
    frobenius_norm,
    kappa_max,
    kappa_min,
    lambda_bound,
    m_l,
    minors,
    random_matrix,
    random_rotation,
    rational_profile,
    run_verify,
    singular_values,
    stored_energy,
    svd3,
    zy_compare,
)

__all__ = [
    "G",
    "G_minus",
    "H",
    "K_hat",
    "N",
    "P",
    "algorithm_b",
    "alignment_rotation",
    "alpha_beta_gamma",
    "estimate_M",
    "eval_profile",
    "fit_affine",
    "fit_inverse",
    "fixed_point_cstar",
    "frobenius_norm",
    "kappa_max",
    "kappa_min",
    "lambda_bound",
    "m_l",
    "minors",
    "random_matrix",
    "random_rotation",
    "rational_profile",
    "run_verify",
    "singular_values",
    "stored_energy",
    "svd3",
    "zy_compare",
]
