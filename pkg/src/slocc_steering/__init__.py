"""SLOCC canonical forms and quantum steering ellipsoids of two-qubit states."""
from .errors import *  # noqa: F401,F403
from .linalg import (
    METRIC,
    PAULI,
    Spinor,
    eig_real4,
    is_lorentz,
    lorentz_to_sl2c,
    minkowski_norm,
    sl2c,
    sl2c_to_lorentz,
)
from .twoqubit import (
    CanonicalDecomposition,
    ConcurrenceResult,
    Ellipsoid,
    Kind,
    Party,
    canonicalize,
    classify_canonical,
    concurrence,
    lambda_from_rho,
    obesity_concurrence_report,
    omega_from_lambda,
    rho_from_lambda,
    slocc_apply,
    steered_point,
    steering_ellipsoid,
    volume_relation_check,
)
from .symmetric3 import (
    SloccClass,
    SymmetricThreeQubitState,
    closed_form_concurrence,
    closed_form_lambda32,
    closed_form_lambda33,
    explicit_lorentz_33,
    majorana_roots,
    majorana_state,
    monogamy_check,
    psi_32,
    psi_33,
    reduced_two_qubit,
)

__version__ = "0.1.0"
