"""
Pure permutation-symmetric three-qubit states.

States are 8-component amplitude vectors in the computational basis
|q_A q_B q_C>, index 4 q_A + 2 q_B + q_C. A symmetric state is the
symmetrised product of three Majorana spinors; the number of distinct
spinors sets the SLOCC family (D31 separable, D32 W-like, D33 GHZ-like).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from math import comb

import numpy as np

from .errors import (
    ClassMismatchError,
    DegenerateStateError,
    DomainError,
    SeparableStateError,
    SymmetryViolationError,
)
from .linalg import Spinor
from .twoqubit import Party, lambda_from_rho, steering_ellipsoid

# spinors closer than this (in |<si|sj>|) count as identical
IDENTICAL_OVERLAP = 1 - 1e-10

UNIT_BALL_VOLUME = 4 * np.pi / 3


class SloccClass(str, Enum):
    D31 = "D31"
    D32 = "D32"
    D33 = "D33"


@dataclass
class SymmetricThreeQubitState:
    amplitudes: np.ndarray
    spinors: list
    slocc_class: SloccClass
    norm_factor: float
    params: dict = field(default_factory=dict)
    margin: float = np.inf  # distance of the closest spinor pair from the threshold


# ---------------------------------------------------------------------------
# basis helpers


def _kron3(a, b, c):
    return np.kron(np.kron(a, b), c)


def _permute(psi, perm):
    return np.transpose(np.reshape(psi, (2, 2, 2)), perm).reshape(8)


def is_symmetric(psi, tol=1e-10) -> bool:
    psi = np.asarray(psi)
    return all(np.abs(_permute(psi, p) - psi).max() <= tol for p in permutations(range(3)))


def dicke(k) -> np.ndarray:
    """Normalised symmetric state with k excitations."""
    v = np.zeros(8, dtype=np.complex128)
    for i in range(8):
        if bin(i).count("1") == k:
            v[i] = 1
    return v / np.linalg.norm(v)


W = dicke(1)
WBAR = dicke(2)
GHZ = (dicke(0) + dicke(3)) / np.sqrt(2)


def fidelity(a, b) -> float:
    """|<a|b>|^2 for normalised vectors; insensitive to global phase."""
    return float(abs(np.vdot(a, b)) ** 2)


# ---------------------------------------------------------------------------
# Majorana representation


def _count_distinct(spinors):
    """Number of distinct spinors and the margin of the closest pair."""
    groups = []
    margin = np.inf
    for s in spinors:
        for g in groups:
            if abs(np.vdot(g, s.vector)) >= IDENTICAL_OVERLAP:
                break
        else:
            groups.append(s.vector)
    for a, b in combinations(spinors, 2):
        margin = min(margin, abs((1 - abs(np.vdot(a.vector, b.vector))) - (1 - IDENTICAL_OVERLAP)))
    return len(groups), margin


def _classify(spinors):
    n, margin = _count_distinct(spinors)
    return SloccClass(f"D3{n}"), margin


def majorana_state(spinors) -> SymmetricThreeQubitState:
    """Normalised symmetrisation of three spinors."""
    spinors = [s if isinstance(s, Spinor) else Spinor.from_vector(s) for s in spinors]
    if len(spinors) != 3:
        raise ValueError("need exactly three spinors")
    vecs = [s.vector for s in spinors]
    psi = sum(_kron3(*(vecs[i] for i in p)) for p in permutations(range(3)))
    n = np.linalg.norm(psi)
    # qubit symmetrisation never cancels completely
    assert n > 1e-12, "symmetrised vector vanished"
    cls, margin = _classify(spinors)
    return SymmetricThreeQubitState(psi / n, spinors, cls, float(1 / n), margin=margin)


def majorana_roots(psi) -> list:
    """
    Three spinors whose symmetrisation reproduces psi up to a global phase.

    Roots of sum_k (-1)^k sqrt(C(3,k)) d_k z^(3-k), with d_k the Dicke
    amplitudes; each root z gives the spinor (1, z), roots at infinity give |1>.
    """
    if isinstance(psi, SymmetricThreeQubitState):
        psi = psi.amplitudes
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (8,):
        raise ValueError("expected an 8-component amplitude vector")
    psi = psi / np.linalg.norm(psi)
    if not is_symmetric(psi):
        raise SymmetryViolationError("state is not permutation symmetric")
    d = np.array([np.vdot(dicke(k), psi) for k in range(4)])
    coeffs = np.array([(-1) ** k * np.sqrt(comb(3, k)) * d[k] for k in range(4)])
    coeffs[np.abs(coeffs) < 1e-14] = 0
    lead = int(np.argmax(coeffs != 0))
    roots = np.roots(coeffs[lead:]) if lead < 3 else np.array([])
    spinors = [Spinor.from_vector([1, z]) for z in roots]
    spinors += [Spinor(0.0, np.pi)] * lead
    return spinors


def _from_amplitudes(psi, norm_factor, params, expect=None):
    psi = np.asarray(psi, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi)
    spinors = majorana_roots(psi)
    cls, margin = _classify(spinors)
    if expect is not None and cls is not expect:
        raise ClassMismatchError(f"parameters give class {cls.value}, expected {expect.value}")
    return SymmetricThreeQubitState(psi, spinors, cls, norm_factor, params, margin)


def from_amplitudes(psi) -> SymmetricThreeQubitState:
    """Wrap a symmetric amplitude vector, computing spinors and class."""
    psi = np.asarray(psi, dtype=np.complex128)
    return _from_amplitudes(psi, 1.0, {})


# ---------------------------------------------------------------------------
# the two entangled families


def _check_beta(beta):
    if not (0 < beta <= np.pi):
        raise DomainError(f"beta = {beta} outside (0, pi]")


def psi_32(beta) -> SymmetricThreeQubitState:
    """(sqrt(3) cos(b/2)|000> + sin(b/2)|W>) / sqrt(2 + cos b); spinors |0>,|0>,|b>."""
    _check_beta(beta)
    nf = 1 / np.sqrt(2 + np.cos(beta))
    psi = nf * (np.sqrt(3) * np.cos(beta / 2) * dicke(0) + np.sin(beta / 2) * W)
    return _from_amplitudes(psi, nf, {"beta": beta}, SloccClass.D32)


def psi_33(y, alpha, beta) -> SymmetricThreeQubitState:
    """N (|0>^3 + y e^{i alpha} |b>^3) with |b> = cos(b/2)|0> + sin(b/2)|1>."""
    _check_beta(beta)
    if not (0 < y <= 1):
        raise DomainError(f"y = {y} outside (0, 1]")
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    z = y * np.exp(1j * alpha)
    psi = (
        (1 + z * c**3) * dicke(0)
        + z * s**3 * dicke(3)
        + np.sqrt(3) * z * c * s * (c * W + s * WBAR)
    )
    nf = 1 / np.sqrt(1 + y * y + 2 * y * np.cos(alpha) * c**3)
    return _from_amplitudes(nf * psi, nf, {"y": y, "alpha": alpha, "beta": beta}, SloccClass.D33)


def preset(name) -> SymmetricThreeQubitState:
    """Named states 'w', 'wbar', 'ghz', tagged with equivalent family parameters.

    W and its bit-flip are local-unitarily equivalent to psi_32(pi); GHZ is
    psi_33(1, 0, pi).
    """
    table = {
        "w": (W, {"beta": np.pi}),
        "wbar": (WBAR, {"beta": np.pi}),
        "ghz": (GHZ, {"y": 1.0, "alpha": 0.0, "beta": np.pi}),
    }
    if name not in table:
        raise ValueError(f"unknown preset {name!r}")
    psi, params = table[name]
    return _from_amplitudes(psi, 1.0, {"preset": name, **params})


# ---------------------------------------------------------------------------
# reduced states


def partial_trace(psi, keep) -> np.ndarray:
    """Reduced density matrix of the qubits in ``keep`` (ordered as given)."""
    psi = np.asarray(psi, dtype=np.complex128).reshape(2, 2, 2)
    drop = [q for q in range(3) if q not in keep]
    t = np.transpose(psi, list(keep) + drop).reshape(2 ** len(keep), -1)
    return t @ t.conj().T


def reduced_two_qubit(state) -> np.ndarray:
    """Two-qubit state left after tracing out one qubit; all three choices agree."""
    psi = state.amplitudes if isinstance(state, SymmetricThreeQubitState) else state
    rhos = [partial_trace(psi, keep) for keep in ((1, 2), (0, 2), (0, 1))]
    for r in rhos[1:]:
        if np.abs(r - rhos[0]).max() > 1e-8:
            raise SymmetryViolationError("reduced states of different pairs disagree")
    rho = rhos[0]
    return 0.5 * (rho + rho.conj().T)


# ---------------------------------------------------------------------------
# closed forms


@dataclass
class ClosedFormCoefficients32:
    a32: float
    b32: float
    u: float


@dataclass
class ClosedFormCoefficients33:
    amp_a: float
    amp_b: complex
    amp_c: complex
    amp_d: float
    amp_e: float
    amp_f: float
    script_a: float
    script_b: float
    lambda0: float
    lambda1: float


def coefficients_32(beta) -> ClosedFormCoefficients32:
    c = np.cos(beta)
    a = (1 - c) / (6 * (2 + c))
    return ClosedFormCoefficients32(a, np.sin(beta) / (2 * (2 + c)), ((1 - c) / (3 * (2 + c))) ** 2)


def script_a(y, alpha, beta):
    return 1 / (1 + y * y + 2 * y * np.cos(alpha) * np.cos(beta / 2) ** 3)


def script_b(y, alpha, beta):
    return y**2 * (1 - np.cos(beta)) ** 2 * script_a(y, alpha, beta) ** 2 / 2


def coefficients_33(y, alpha, beta) -> ClosedFormCoefficients33:
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    sa = script_a(y, alpha, beta)
    sb = script_b(y, alpha, beta)
    ph = np.exp(-1j * alpha) + y * c
    a = sa * (1 + y * y * c**4 + 2 * y * np.cos(alpha) * c**3)
    d = sa * y * y * s * s * c * c
    return ClosedFormCoefficients33(
        amp_a=a,
        amp_b=sa * y * c * c * s * ph,
        amp_c=sa * y * s * s * c * ph,
        amp_d=d,
        amp_e=sa * y * y * s**3 * c,
        amp_f=1 - a - 2 * d,
        script_a=sa,
        script_b=sb,
        lambda0=2 * sb,
        lambda1=sb * (1 + np.cos(beta)),
    )


def closed_form_rho32(beta) -> np.ndarray:
    k = coefficients_32(beta)
    a, b = k.a32, k.b32
    return np.array(
        [[1 - 2 * a, b, b, 0], [b, a, a, 0], [b, a, a, 0], [0, 0, 0, 0]], dtype=np.complex128
    )


def closed_form_rho33(y, alpha, beta) -> np.ndarray:
    k = coefficients_33(y, alpha, beta)
    a, b, c, d, e, f = k.amp_a, k.amp_b, k.amp_c, k.amp_d, k.amp_e, k.amp_f
    return np.array(
        [
            [a, b, b, c],
            [np.conj(b), d, d, e],
            [np.conj(b), d, d, e],
            [np.conj(c), np.conj(e), np.conj(e), f],
        ],
        dtype=np.complex128,
    )


def closed_form_lambda32(beta) -> np.ndarray:
    c, s = np.cos(beta), np.sin(beta)
    p = s / (2 + c)
    q = (1 - c) / (3 * (2 + c))
    r3 = (5 + 4 * c) / (3 * (2 + c))
    t33 = (4 + 5 * c) / (3 * (2 + c))
    return np.array([[1, p, 0, r3], [p, q, 0, p], [0, 0, q, 0], [r3, p, 0, t33]])


def closed_form_lambda33(y, alpha, beta) -> np.ndarray:
    sa = script_a(y, alpha, beta)
    cb, sb = np.cos(beta), np.sin(beta)
    ch, sh = np.cos(beta / 2), np.sin(beta / 2)
    ca, sna = np.cos(alpha), np.sin(alpha)
    l01 = sa * y * sb * (y + ca * ch)
    l02 = sa * y * sna * sb * ch
    l03 = sa * (1 + 2 * y * ca * ch**3 + y * y * cb)
    l11 = sa * y * sb * sh * (ca + 2 * y * ch)
    l12 = sa * y * sna * sb * sh
    l13 = sa * y * sb * (ca * ch + y * cb)
    l22 = -sa * y * ca * sb * sh
    # the printed entry lacks the factor y; numerics confirm it is needed
    l23 = sa * y * sna * sb * ch
    l33 = sa / 2 * (2 + y * y + 4 * y * ca * ch**3 + y * y * np.cos(2 * beta))
    return np.array(
        [
            [1, l01, l02, l03],
            [l01, l11, l12, l13],
            [l02, l12, l22, l23],
            [l03, l13, l23, l33],
        ]
    )


def closed_form_omega32(beta) -> np.ndarray:
    u = coefficients_32(beta).u
    return u * np.array([[2, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])


def closed_form_omega33(y, alpha, beta) -> np.ndarray:
    c, s = np.cos(beta), np.sin(beta)
    m = np.array(
        [
            [3 + c, s, 0, 1 + c],
            [s, -(1 + c), 0, s],
            [0, 0, -(1 + c), 0],
            [1 + c, s, 0, -(1 - c)],
        ]
    )
    return script_b(y, alpha, beta) * m


CANONICAL_LAMBDA32 = np.array(
    [[1, 0, 0, 0], [0, 1 / np.sqrt(2), 0, 0], [0, 0, -1 / np.sqrt(2), 0], [0.5, 0, 0, 0.5]]
)


def canonical_lambda33(beta) -> np.ndarray:
    c = np.cos(beta / 2)
    return np.diag([1.0, c, -c, 1.0])


def printed_lorentz_33(beta) -> np.ndarray:
    """Literature form of the explicit D33 matrix, kept for reference; not Lorentz in general."""
    c, s = np.cos(beta), np.sin(beta)
    return np.array(
        [
            [(3 + c) / (2 * s), (1 + c) / s, 0, (1 + c) / (2 * s)],
            [-1, -1, 0, -1],
            [0, 0, -1, 0],
            [-(1 + 3 * c) / (2 * s), -(1 + c) / s, 0, (1 - c) / s],
        ]
    )


def explicit_lorentz_33(beta) -> np.ndarray:
    """
    Proper orthochronous L with L Omega33 L^T = 2B diag(1, -cos^2(b/2), -cos^2(b/2), -1).

    Rows are G-orthonormal eigenvectors of G Omega33: two spanning the
    eigenvalue-2B plane (timelike first) and two for B(1 + cos b).
    """
    if not (0 < beta < np.pi):
        raise DegenerateStateError(
            f"beta = {beta}: the explicit matrix needs 0 < beta < pi; use the GHZ branch at pi"
        )
    c, s = np.cos(beta), np.sin(beta)
    k = np.sqrt(2 * (1 - c))
    t = np.array([2, -s, 0, -(1 + c)]) / k
    z = np.array([0, -s, 0, 1 - c]) / k
    m1 = np.array([s, -(1 - c), 0, -s]) / (1 - c)
    lor = np.array([t, m1, [0, 0, 1.0, 0], z])
    if np.linalg.det(lor) < 0:
        lor[2] *= -1
    return lor


# ---------------------------------------------------------------------------
# monogamy and concurrence


@dataclass
class MonogamyReport:
    v_ab: float
    v_cb: float
    lhs: float
    bound: float
    saturated: bool

    @property
    def normalized(self) -> float:
        """sqrt(3 V / pi) for identical reduced states, i.e. lhs / bound."""
        return self.lhs / self.bound


def monogamy_check(state: SymmetricThreeQubitState) -> MonogamyReport:
    """sqrt(V_A|B) + sqrt(V_C|B) against sqrt(4 pi / 3), Bob measuring."""
    if state.slocc_class is SloccClass.D31:
        raise SeparableStateError("product state: steering ellipsoids are points")
    psi = state.amplitudes
    # Alice (0) and Charlie (2) each paired with Bob (1); Bob is the second factor
    v_ab = steering_ellipsoid(lambda_from_rho(_pair(psi, 0, 1)), Party.ALICE_GIVEN_BOB).volume
    v_cb = steering_ellipsoid(lambda_from_rho(_pair(psi, 2, 1)), Party.ALICE_GIVEN_BOB).volume
    lhs = np.sqrt(v_ab) + np.sqrt(v_cb)
    bound = np.sqrt(UNIT_BALL_VOLUME)
    return MonogamyReport(v_ab, v_cb, float(lhs), float(bound), bool(abs(lhs - bound) <= 1e-9))


def _pair(psi, i, j):
    rho = partial_trace(psi, (i, j))
    return 0.5 * (rho + rho.conj().T)


def monogamy_closed_form(beta) -> float:
    """sqrt(3 V / pi) for the D33 family: 2 cos(b/2) / (1 + cos^2(b/2))."""
    c = np.cos(beta / 2)
    return 2 * c / (1 + c * c)


def closed_form_concurrence(state: SymmetricThreeQubitState) -> float:
    """Pairwise concurrence from the family parameters (0 for D31)."""
    if state.slocc_class is SloccClass.D31:
        return 0.0
    p = state.params
    b = p["beta"]
    if "y" not in p:
        return (1 - np.cos(b)) / (3 * (2 + np.cos(b)))
    y, a = p["y"], p["alpha"]
    return y * np.sin(b) * np.sin(b / 2) * script_a(y, a, b)


def closed_form_obesity(state: SymmetricThreeQubitState) -> float:
    p = state.params
    b = p["beta"]
    if "y" not in p:
        return (1 - np.cos(b)) / (3 * (2 + np.cos(b)))
    y, a = p["y"], p["alpha"]
    return y * (1 - np.cos(b)) * np.sqrt(np.cos(b / 2)) * script_a(y, a, b)
