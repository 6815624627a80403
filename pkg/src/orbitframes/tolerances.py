"""Single source of numerical thresholds used across the package.

Every rank decision and residual check in the library goes through the
constants below, so that the covariance and sampling layers never disagree
about what counts as singular.

==========================  =========  ==========================================
name                        value      guards
==========================  =========  ==========================================
EPS                         ~2.2e-16   double precision machine epsilon
REP_IDENTITY_TOL            1e-12      entrywise ``|U(e) - I|``
REP_PRODUCT_TOL             1e-10      ``||U(g)U(h) - U(gh)||_F`` per unit of dim
REP_UNITARY_TOL             1e-10      ``||U(g)*U(g) - I||_F`` per unit of dim
STATIONARITY_TOL            1e-9       pairwise inner-product shift equalities
HERMITIAN_INPUT_TOL         1e-10      Hermitian-ness of operator inputs
HERMITIAN_STRICT_TOL        1e-12      Hermitian-ness of validated Hamiltonians
COMMUTATOR_TOL              1e-10      ``max_g ||[U(g), H]||_F`` per unit of dim
SEED_EQUATION_TOL           1e-8       caller-provided inverse seeds
LEFT_INVERSE_TOL            1e-9       ``||M R - I||_F`` for left inverses
INTERPOLATION_TOL           1e-8       Kronecker pattern of basis-case samples
RECONSTRUCTION_RTOL         1e-9       reconstruction residual per unit of ||x||
DUAL_FRAME_TOL              1e-9       dual-frame resynthesis residual
DYNAMICS_RTOL               1e-8       evolved-state residual per unit of ||x||
CONVOLUTION_MATCH_TOL       1e-10      sample vs periodic-convolution agreement
SHIFTING_RTOL               1e-10      translate/synthesize commutation residual
CROSS_COVARIANCE_TOL        1e-12      conjugate-symmetry of cross covariances
ILL_CONDITIONED_FACTOR      10         margin above the rank cutoff
==========================  =========  ==========================================

Rank cutoffs follow the standard convention ``max(m, n) * EPS * sigma_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

EPS = float(np.finfo(np.float64).eps)

REP_IDENTITY_TOL = 1e-12
REP_PRODUCT_TOL = 1e-10
REP_UNITARY_TOL = 1e-10
STATIONARITY_TOL = 1e-9
HERMITIAN_INPUT_TOL = 1e-10
HERMITIAN_STRICT_TOL = 1e-12
COMMUTATOR_TOL = 1e-10
SEED_EQUATION_TOL = 1e-8
LEFT_INVERSE_TOL = 1e-9
INTERPOLATION_TOL = 1e-8
RECONSTRUCTION_RTOL = 1e-9
DUAL_FRAME_TOL = 1e-9
DYNAMICS_RTOL = 1e-8
CONVOLUTION_MATCH_TOL = 1e-10
SHIFTING_RTOL = 1e-10
CROSS_COVARIANCE_TOL = 1e-12
ILL_CONDITIONED_FACTOR = 10.0


@dataclass(frozen=True)
class Tolerances:
    """Runtime-overridable subset of the table, consumed by verification runs."""

    reconstruction_rtol: float = RECONSTRUCTION_RTOL
    left_inverse_tol: float = LEFT_INVERSE_TOL
    interpolation_tol: float = INTERPOLATION_TOL
    dual_frame_tol: float = DUAL_FRAME_TOL
    dynamics_rtol: float = DYNAMICS_RTOL
    stationarity_tol: float = STATIONARITY_TOL
    shifting_rtol: float = SHIFTING_RTOL
    cross_covariance_tol: float = CROSS_COVARIANCE_TOL
    convolution_match_tol: float = CONVOLUTION_MATCH_TOL

    @classmethod
    def from_dict(cls, overrides: dict | None) -> "Tolerances":
        if not overrides:
            return cls()
        known = {f.name for f in fields(cls)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown tolerance overrides: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in overrides.items()})
