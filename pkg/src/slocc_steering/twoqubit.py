"""
Two-qubit states in the Pauli (Hilbert-Schmidt) picture.

Conventions
-----------
Lam[mu, nu] = Tr[rho (s_mu x s_nu)], rows belong to Alice (first qubit) and
columns to Bob. Alice's Bloch vector is r = Lam[1:, 0], Bob's is
s = Lam[0, 1:] and T = Lam[1:, 1:]. A local filter A x B acts as
Lam -> L(A) Lam L(B)^T / (...)_00.

The steering ellipsoid "AliceGivenBob" is the set of Alice states reachable
when Bob measures; it is conditioned on Bob's Bloch vector s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations

import numpy as np

from .errors import (
    DegenerateStateError,
    FilterAnnihilatesState,
    NotADensityMatrix,
    NumericalFailure,
    PureConditioningError,
    SteeringSingularError,
    UnphysicalLambdaError,
    UnphysicalStateError,
)
from .linalg import (
    METRIC,
    PAULI,
    eig_clusters,
    g_complement,
    g_orthonormal_basis,
    lorentz_to_sl2c,
    reorthogonalize_lorentz,
    random_sl2c,
)

G = METRIC
SIGMA_YY = np.kron(PAULI[2], PAULI[2])
# sigma_mu x sigma_nu, shape (4, 4, 4, 4)
PAULI2 = np.einsum("aij,bkl->abikjl", PAULI, PAULI).reshape(4, 4, 4, 4)

# Werner-state volume bound for separable states
V_SEPARABLE_MAX = 4 * np.pi / 81


class Kind(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    DEGENERATE = "Degenerate"


class Party(str, Enum):
    ALICE_GIVEN_BOB = "AliceGivenBob"
    BOB_GIVEN_ALICE = "BobGivenAlice"


# ---------------------------------------------------------------------------
# states and correlation matrices


def check_state(rho, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-10) -> np.ndarray:
    """Validate a 4x4 density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise NotADensityMatrix(f"expected a 4x4 matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NotADensityMatrix("non-finite entries")
    if np.abs(rho - rho.conj().T).max() > herm_tol:
        raise NotADensityMatrix("matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > trace_tol:
        raise NotADensityMatrix(f"trace is {np.trace(rho).real:.3e}, not 1")
    if np.linalg.eigvalsh(rho).min() < -psd_tol:
        raise NotADensityMatrix("matrix has a negative eigenvalue")
    return rho


def lambda_from_rho(rho) -> np.ndarray:
    """Lam[mu, nu] = Tr[rho (s_mu x s_nu)]."""
    rho = check_state(rho)
    lam = np.einsum("abij,ji->ab", PAULI2, rho)
    if np.abs(lam.imag).max() > 1e-9:
        raise NotADensityMatrix("correlation matrix has an imaginary part")
    lam = lam.real.copy()
    lam[0, 0] = 1.0
    return lam


def rho_from_lambda(lam) -> np.ndarray:
    """rho = 1/4 sum Lam[mu, nu] s_mu x s_nu."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4, 4):
        raise UnphysicalLambdaError(f"expected a 4x4 matrix, got {lam.shape}")
    if abs(lam[0, 0] - 1) > 1e-12:
        raise UnphysicalLambdaError("Lam_00 must equal 1")
    rho = 0.25 * np.einsum("ab,abij->ij", lam, PAULI2)
    rho = 0.5 * (rho + rho.conj().T)
    if np.linalg.eigvalsh(rho).min() < -1e-9:
        raise UnphysicalLambdaError("correlation matrix maps to a non-positive operator")
    return rho


def bloch_vectors(lam):
    """(r, s, T): Alice's and Bob's Bloch vectors and the correlation block."""
    lam = np.asarray(lam, dtype=float)
    return lam[1:, 0].copy(), lam[0, 1:].copy(), lam[1:, 1:].copy()


def omega_from_lambda(lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    om = lam @ G @ lam.T
    return 0.5 * (om + om.T)


def slocc_apply(rho, a, b) -> np.ndarray:
    """(A x B) rho (A x B)^dag, renormalised to unit trace."""
    rho = np.asarray(rho, dtype=np.complex128)
    ab = np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))
    out = ab @ rho @ ab.conj().T
    tr = np.trace(out).real
    if tr <= 1e-12:
        raise FilterAnnihilatesState(f"filtered trace {tr:.3e} vanishes")
    out = out / tr
    return 0.5 * (out + out.conj().T)


def transform_lambda(lam, la, lb) -> np.ndarray:
    """L_A Lam L_B^T normalised so that entry (0, 0) is 1."""
    out = np.asarray(la) @ np.asarray(lam) @ np.asarray(lb).T
    return out / out[0, 0]


# ---------------------------------------------------------------------------
# canonical forms


@dataclass
class CanonicalDecomposition:
    kind: Kind
    eigenvalues: np.ndarray
    top_vector: np.ndarray
    lorentz_a: np.ndarray
    lorentz_b: np.ndarray
    canonical_lambda: np.ndarray
    phi0: float | None = None
    a0: float | None = None
    a1: float | None = None
    det_sign: int = 1
    residual: float = 0.0

    def sl2c_pair(self):
        """SL(2,C) filters (A, B) whose Lorentz images are (L_A, L_B)."""
        return lorentz_to_sl2c(self.lorentz_a), lorentz_to_sl2c(self.lorentz_b)


@dataclass
class _Analysis:
    kind: Kind
    clusters: list
    lam0: float
    x: np.ndarray
    jordan: bool


def _clusters(omega):
    m = G @ np.asarray(omega, dtype=float)
    # rounding Omega by ~eps splits a Jordan block by ~sqrt(eps * lam0)
    lam_max = np.abs(np.linalg.eigvals(m)).max()
    return eig_clusters(m, atol=2e-6 * np.sqrt(lam_max))


def gomega_spectrum(omega) -> np.ndarray:
    """Eigenvalues of G*Omega, descending, with near-degenerate groups averaged."""
    out = []
    for c in _clusters(omega):
        out.extend([c.value.real] * c.multiplicity)
    return np.array(out)


def _analyse(omega) -> _Analysis:
    omega = np.asarray(omega, dtype=float)
    scale = max(np.abs(omega).max(), 1e-300)
    clusters = _clusters(omega)
    lam0 = clusters[0].value.real
    if lam0 <= 1e-12 * max(scale, 1.0):
        return _Analysis(Kind.DEGENERATE, clusters, 0.0, np.array([1.0, 0, 0, 0]), False)
    if any(abs(c.value.imag) > 1e-8 * lam0 for c in clusters):
        raise NumericalFailure("G*Omega has complex eigenvalues")
    if clusters[-1].value.real < -1e-9 * max(1.0, lam0):
        raise UnphysicalStateError("G*Omega has a negative eigenvalue")

    top = clusters[0]
    h = top.vectors.T @ G @ top.vectors
    hw, hv = np.linalg.eigh(h)
    tau = 1e-8
    if top.defective or abs(hw).min() <= tau:
        # radical of the eigenspace: the null eigenvector X of a Jordan block
        x = top.vectors @ hv[:, np.argmin(abs(hw))]
        x = x / np.linalg.norm(x)
        if x[0] < 0:
            x = -x
        return _Analysis(Kind.TYPE_II, clusters, lam0, x, True)
    if hw.max() <= tau:
        raise UnphysicalStateError("top eigenvector of G*Omega is spacelike")
    x = top.vectors @ hv[:, np.argmax(hw)]
    x = x / np.linalg.norm(x)
    if x[0] < 0:
        x = -x
    mults = [c.multiplicity for c in clusters]
    if mults == [2, 2]:
        # the top eigenspace is a timelike 2-plane and so contains null
        # directions; zero transverse eigenvalue is the GHZ-like segment
        if clusters[1].value.real <= 1e-9 * lam0:
            return _Analysis(Kind.DEGENERATE, clusters, lam0, x, False)
        return _Analysis(Kind.TYPE_II, clusters, lam0, x, False)
    return _Analysis(Kind.TYPE_I, clusters, lam0, x, False)


def classify_canonical(omega) -> Kind:
    """TypeI, TypeII or Degenerate from the spectrum of G*Omega."""
    return _analyse(omega).kind


def _spectrum(clusters, lam0):
    vals = []
    for c in clusters:
        vals.extend([max(c.value.real, 0.0)] * c.multiplicity)
    vals = np.array(vals)
    vals[vals < 1e-13 * lam0] = 0.0
    return vals


def _frame_diagonal(clusters):
    """G-orthonormal eigenvectors as columns, timelike first, then by eigenvalue."""
    cols, vals = [], []
    for c in clusters:
        basis, signs = g_orthonormal_basis(c.vectors)
        for k in range(basis.shape[1]):
            cols.append((signs[k] < 0, -c.value.real, basis[:, k]))
    cols.sort(key=lambda t: (t[0], t[1]))
    if cols[0][0]:
        raise UnphysicalStateError("no timelike eigenvector of G*Omega")
    return np.column_stack([t[2] for t in cols])


def _frame_two_planes(clusters):
    """Frame for the {2,2} pattern: timelike of E0, E1 basis, spacelike of E0."""
    b0, s0 = g_orthonormal_basis(clusters[0].vectors)
    b1, _ = g_orthonormal_basis(clusters[1].vectors)
    return np.column_stack([b0[:, 0], b1[:, 0], b1[:, 1], b0[:, 1]])


def _frame_jordan(omega, an: _Analysis):
    """Light-cone frame for a Jordan block; gives phi0 = 2 lam0."""
    x = an.x
    top = an.clusters[0]
    # transverse space: rest of the top eigenspace plus the other eigenvectors
    rest = top.vectors - np.outer(x, x @ top.vectors)
    u, sv, _ = np.linalg.svd(rest, full_matrices=False)
    trans = [u[:, sv > 1e-8]]
    trans += [c.vectors for c in an.clusters[1:]]
    trans = np.column_stack(trans)
    if trans.shape[1] != 2:
        raise NumericalFailure(f"transverse space has dimension {trans.shape[1]}, expected 2")
    tb, ts = g_orthonormal_basis(trans)
    if np.any(ts > 0):
        raise UnphysicalStateError("transverse eigenspace is not spacelike")
    plane, ps = g_orthonormal_basis(g_complement(tb))
    et, es = plane[:, 0], plane[:, 1]
    # the two null directions of the plane are et +/- es; pick the one not along X
    cand = [et + es, et - es]
    npl = cand[int(np.argmin([abs(np.dot(x, v)) / np.linalg.norm(v) for v in cand]))]
    npl = npl * 2.0 / (npl @ G @ x)
    q = npl @ omega @ npl
    if q <= 0:
        raise NumericalFailure("light-cone normalisation failed (q <= 0)")
    c = np.sqrt(q / (4 * an.lam0))
    t = 0.5 * (npl / c + c * x)
    z = 0.5 * (npl / c - c * x)
    return np.column_stack([t, tb[:, 0], tb[:, 1], z])


def _solve_lb(lam1, target, k):
    """Lorentz L_B with lam1 L_B^T = k * target (rows solved one by one)."""
    p = np.full((4, 4), np.nan)
    p[0] = lam1[0] / k
    for j in (1, 2):
        if abs(target[j, j]) > 1e-8:
            p[j] = lam1[j] / (k * target[j, j])
    if abs(target[3, 3]) > 1e-8:
        p[3] = (lam1[3] / k - target[3, 0] * p[0]) / target[3, 3]
    missing = [j for j in range(4) if np.isnan(p[j, 0])]
    if missing:
        have = [j for j in range(4) if j not in missing]
        comp = g_complement(p[have].T)
        basis, signs = g_orthonormal_basis(comp)
        for n, j in enumerate(missing):
            p[j] = basis[:, n]
        if np.linalg.det(p) < 0:
            p[missing[-1]] *= -1
    p = reorthogonalize_lorentz(p)
    return G @ p @ G


def canonicalize(lam) -> CanonicalDecomposition:
    """Lorentz canonical form of a correlation matrix together with L_A, L_B."""
    lam = np.asarray(lam, dtype=float)
    omega = omega_from_lambda(lam)
    an = _analyse(omega)
    vals = _spectrum(an.clusters, an.lam0)
    det = np.linalg.det(lam)
    det_sign = -1 if det < 0 else 1

    if an.kind is Kind.DEGENERATE and an.lam0 == 0.0:
        raise DegenerateStateError("Omega vanishes; no Lorentz canonical form")

    phi0 = a0 = a1 = None
    if an.kind is Kind.TYPE_I:
        frame = _frame_diagonal(an.clusters)
        d = np.sqrt(vals / an.lam0)
        d[3] *= det_sign
        target = np.diag(d)
        k = np.sqrt(an.lam0)
    else:
        if an.jordan:
            frame = _frame_jordan(omega, an)
            phi0 = 2 * an.lam0
            lam1 = vals[1] if an.clusters[0].multiplicity == 4 else float(np.mean(vals[2:]))
        else:
            frame = _frame_two_planes(an.clusters)
            phi0 = an.lam0
            lam1 = vals[2]
        a0 = an.lam0 / phi0
        a1 = float(np.sqrt(lam1 / phi0))
        target = np.array(
            [
                [1, 0, 0, 0],
                [0, a1, 0, 0],
                [0, 0, det_sign * a1, 0],
                [1 - a0, 0, 0, a0],
            ],
            dtype=float,
        )
        k = np.sqrt(phi0)

    if np.linalg.det(frame) < 0:
        frame[:, 2] *= -1
    la = reorthogonalize_lorentz(frame.T)
    lb = _solve_lb(la @ lam, target, k)
    recon = transform_lambda(lam, la, lb)
    residual = float(np.abs(recon - target).max())
    if residual > 1e-6:
        raise NumericalFailure(f"canonical reconstruction residual {residual:.3e}", residual=residual)
    return CanonicalDecomposition(
        kind=an.kind,
        eigenvalues=vals,
        top_vector=an.x,
        lorentz_a=la,
        lorentz_b=lb,
        canonical_lambda=target,
        phi0=phi0,
        a0=a0,
        a1=a1,
        det_sign=det_sign,
        residual=residual,
    )


# ---------------------------------------------------------------------------
# steering geometry


def _orient(lam, party):
    r, s, t = bloch_vectors(lam)
    if Party(party) is Party.ALICE_GIVEN_BOB:
        return r, t, s
    return s, t.T, r


def steered_point(lam, e, party=Party.ALICE_GIVEN_BOB):
    """
    Bloch vector of the steered qubit after the partner obtains outcome e.

    Returns (p, prob) with p = (a + M e) / (1 + b.e), prob = (1 + b.e) / 2,
    where (a, M, b) = (r, T, s) for AliceGivenBob and (s, T^T, r) otherwise.
    """
    e = np.asarray(e, dtype=float)
    if abs(np.linalg.norm(e) - 1) > 1e-12:
        raise ValueError("measurement direction must be a unit vector")
    a, m, b = _orient(lam, party)
    den = 1 + b @ e
    if den <= 1e-12:
        raise SteeringSingularError("measurement outcome has zero probability")
    return (a + m @ e) / den, den / 2


@dataclass
class Ellipsoid:
    center: np.ndarray
    semiaxes: np.ndarray
    axes: np.ndarray  # columns
    volume: float
    obesity: float
    matrix: np.ndarray = field(repr=False, default=None)

    @property
    def rank(self) -> int:
        return int(np.sum(self.semiaxes > 1e-9))

    @property
    def degenerate(self) -> bool:
        return self.rank < 3

    def contains_surface(self, n=200, tol=1e-8) -> bool:
        """True if sampled surface points lie in the closed unit ball."""
        pts = self.surface_points(n)
        return bool(np.all(np.linalg.norm(pts, axis=1) <= 1 + tol))

    def surface_points(self, n=200):
        k = np.arange(n)
        z = 1 - 2 * k / max(n - 1, 1)
        rad = np.sqrt(np.clip(1 - z * z, 0, None))
        ph = np.pi * (3 - np.sqrt(5)) * k
        u = np.column_stack([rad * np.cos(ph), rad * np.sin(ph), z])
        return self.center + (u * self.semiaxes) @ self.axes.T


def _align_to_coordinates(w, v):
    # order eigenpairs so that axis i is the one closest to coordinate axis i
    best = max(permutations(range(3)), key=lambda p: sum(abs(v[i, p[i]]) for i in range(3)))
    idx = list(best)
    v = v[:, idx]
    w = w[idx]
    for i in range(3):
        if v[i, i] < 0:
            v[:, i] *= -1
    if np.linalg.det(v) < 0:
        v[:, 2] *= -1
    return w, v


def steering_ellipsoid(lam, party=Party.ALICE_GIVEN_BOB) -> Ellipsoid:
    """Ellipsoid of steered Bloch vectors; volume and obesity from det(Lam)."""
    lam = np.asarray(lam, dtype=float)
    a, m, b = _orient(lam, party)
    bb = b @ b
    if bb >= 1 - 1e-12:
        raise PureConditioningError("conditioning qubit is pure; steering degenerates")
    gam = 1 - bb
    center = (a - m @ b) / gam
    k = m - np.outer(a, b)
    q = k @ (np.eye(3) + np.outer(b, b) / gam) @ k.T / gam
    q = 0.5 * (q + q.T)
    w, v = np.linalg.eigh(q)
    w, v = _align_to_coordinates(np.clip(w, 0, None), v)
    det = abs(np.linalg.det(lam))
    return Ellipsoid(
        center=center,
        semiaxes=np.sqrt(w),
        axes=v,
        volume=4 * np.pi / 3 * det / gam**2,
        obesity=det**0.25,
        matrix=q,
    )


def volume_relation_check(lam):
    """(V_A|B / (1 - r^2)^2, V_B|A / (1 - s^2)^2); the two agree for any state."""
    r, s, _ = bloch_vectors(lam)
    vab = steering_ellipsoid(lam, Party.ALICE_GIVEN_BOB).volume
    vba = steering_ellipsoid(lam, Party.BOB_GIVEN_ALICE).volume
    return vab / (1 - r @ r) ** 2, vba / (1 - s @ s) ** 2


# ---------------------------------------------------------------------------
# concurrence and obesity


@dataclass
class ConcurrenceResult:
    value: float
    mu: np.ndarray


def concurrence(rho) -> ConcurrenceResult:
    """Wootters concurrence.

    With rho = W W^dag, the singular values of W^T (s_y x s_y) W are the square
    roots of the eigenvalues of rho (s_y x s_y) rho* (s_y x s_y).
    """
    rho = check_state(rho)
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0, None)
    half = v * np.sqrt(w)
    mu = np.linalg.svd(half.T @ SIGMA_YY @ half, compute_uv=False)
    mu = np.sort(mu)[::-1]
    c = max(0.0, mu[0] - mu[1] - mu[2] - mu[3])
    return ConcurrenceResult(min(float(c), 1.0), mu)


@dataclass
class ObesityReport:
    obesity: float
    concurrence: float
    ratio: float | None  # None when the concurrence vanishes
    bound_satisfied: bool


def obesity_concurrence_report(rho) -> ObesityReport:
    rho = check_state(rho)
    ob = abs(np.linalg.det(lambda_from_rho(rho))) ** 0.25
    c = concurrence(rho).value
    ratio = ob / c if c > 1e-12 else None
    return ObesityReport(ob, c, ratio, bool(c <= ob + 1e-10))


# ---------------------------------------------------------------------------
# random states


def random_density_matrix(rng, rank=4) -> np.ndarray:
    """Ginibre-distributed two-qubit state of the given rank."""
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def _random_qubit(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def random_separable(rng, terms=4) -> np.ndarray:
    """Random convex mixture of product pure states."""
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((4, 4), dtype=np.complex128)
    for p in weights:
        psi = np.kron(_random_qubit(rng), _random_qubit(rng))
        rho += p * np.outer(psi, psi.conj())
    return 0.5 * (rho + rho.conj().T)


def random_slocc(rng, scale=0.5):
    return random_sl2c(rng, scale), random_sl2c(rng, scale)


def werner_state(p) -> np.ndarray:
    """p |psi-><psi-| + (1 - p) I/4."""
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return p * np.outer(psi, psi) + (1 - p) * np.eye(4) / 4


def bell_state() -> np.ndarray:
    """|Phi+><Phi+|."""
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(psi, psi).astype(np.complex128)
