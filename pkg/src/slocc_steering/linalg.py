"""
Fixed-size matrix utilities: Pauli basis, Minkowski metric, a small real
eigensolver with degeneracy handling, and the SL(2,C) -> SO(3,1) map.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidOperatorError, NumericalFailure

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# relative spread below which eigenvalues count as one cluster; a defective
# block splits by ~sqrt(machine eps), so 1e-8 is too tight
CLUSTER_RTOL = 1e-6


@dataclass(frozen=True)
class Spinor:
    """Qubit state cos(beta/2)|0> + exp(i alpha) sin(beta/2)|1>."""

    alpha: float
    beta: float

    @property
    def vector(self) -> np.ndarray:
        return np.array(
            [np.cos(self.beta / 2), np.exp(1j * self.alpha) * np.sin(self.beta / 2)]
        )

    @property
    def bloch(self) -> np.ndarray:
        return np.array(
            [
                np.sin(self.beta) * np.cos(self.alpha),
                np.sin(self.beta) * np.sin(self.alpha),
                np.cos(self.beta),
            ]
        )

    @classmethod
    def from_vector(cls, v) -> "Spinor":
        v = np.asarray(v, dtype=np.complex128)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("zero vector has no spinor")
        a, b = v / n
        beta = 2 * np.arctan2(abs(b), abs(a))
        if abs(b) < 1e-15 or abs(a) < 1e-15:
            # poles: the relative phase is meaningless
            alpha = 0.0
        else:
            alpha = float(np.angle(b) - np.angle(a))
        return cls(alpha=float(np.mod(alpha, 2 * np.pi)), beta=float(beta))

    def overlap(self, other: "Spinor") -> float:
        return float(abs(np.vdot(self.vector, other.vector)))


def sl2c(a) -> np.ndarray:
    """Rescale an invertible 2x2 matrix to unit determinant."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (2, 2):
        raise InvalidOperatorError(f"expected a 2x2 matrix, got {a.shape}")
    d = np.linalg.det(a)
    if abs(d) < 1e-14 * max(1.0, np.abs(a).max() ** 2):
        raise InvalidOperatorError("singular filter cannot be normalised into SL(2,C)")
    return a / np.sqrt(d)


def sl2c_to_lorentz(a) -> np.ndarray:
    """
    Proper orthochronous Lorentz matrix L_{mu nu} = Tr[s_mu a s_nu a^dag] / 2.

    Raises InvalidOperatorError if ``a`` is not unimodular to 1e-12.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (2, 2) or abs(np.linalg.det(a) - 1) > 1e-12:
        raise InvalidOperatorError("operator must be a 2x2 matrix with det = 1; use sl2c()")
    conj = np.einsum("ij,njk,lk->nil", a, PAULI, a.conj())
    lor = 0.5 * np.einsum("mij,nji->mn", PAULI, conj)
    return lor.real.copy()


def lorentz_to_sl2c(lor) -> np.ndarray:
    """One of the two SL(2,C) preimages (+/- a) of a Lorentz matrix."""
    lor = np.asarray(lor, dtype=float)
    # S_nu = a s_nu a^dag, then sum_nu S_nu C s_nu = 2 Tr(a^dag C) a
    s = np.einsum("mn,mij->nij", lor, PAULI)
    best = None
    for c in PAULI:
        cand = np.einsum("nij,jk,nkl->il", s, c, PAULI)
        if best is None or np.abs(cand).max() > np.abs(best).max():
            best = cand
    return sl2c(best)


def minkowski_dot(x, y) -> float:
    return float(np.asarray(x, dtype=float) @ METRIC @ np.asarray(y, dtype=float))


def minkowski_norm(x) -> float:
    """x^T G x = x0^2 - x1^2 - x2^2 - x3^2."""
    return minkowski_dot(x, x)


def is_lorentz(lor, atol: float = 1e-10) -> bool:
    lor = np.asarray(lor, dtype=float)
    if lor.shape != (4, 4) or not np.all(np.isfinite(lor)):
        return False
    return bool(
        np.abs(lor.T @ METRIC @ lor - METRIC).max() <= atol
        and lor[0, 0] > 0
        and np.linalg.det(lor) > 0
    )


@dataclass
class EigenCluster:
    """Eigenvalues merged by proximity plus a basis of their eigenspace.

    ``multiplicity`` is algebraic; ``vectors`` has one column per independent
    eigenvector, so ``vectors.shape[1] < multiplicity`` flags a defective block.
    """

    value: complex
    multiplicity: int
    vectors: np.ndarray
    spread: float

    @property
    def defective(self) -> bool:
        return self.vectors.shape[1] < self.multiplicity


def eig_clusters(m, rtol: float = CLUSTER_RTOL, atol: float = 0.0) -> list[EigenCluster]:
    """Eigen-decompose a real 4x4 matrix, grouping (near-)degenerate eigenvalues.

    Clusters are ordered by descending real part. Each cluster value is the
    mean of its members, which is accurate to machine precision even when the
    individual members are split by a Jordan block. Eigenvalues closer than
    max(rtol * max|lambda|, atol) are merged.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    norm = np.linalg.norm(m, 2)
    vals = np.linalg.eigvals(m)
    if norm == 0:
        return [EigenCluster(0.0, 4, np.eye(4), 0.0)]
    vals = vals[np.argsort(-vals.real, kind="stable")]
    tol = max(rtol * max(np.abs(vals).max(), 1e-3 * norm), atol)

    groups = [[vals[0]]]
    for v in vals[1:]:
        if abs(v - groups[-1][-1]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])

    clusters = []
    for g in groups:
        value = complex(np.mean(g))
        spread = float(max(abs(v - value) for v in g))
        if abs(value.imag) <= tol:
            value = complex(value.real, 0.0)
            shifted = m - value.real * np.eye(4)
        else:
            shifted = m - value * np.eye(4)
        _, sv, vh = np.linalg.svd(shifted)
        null_tol = max(10 * tol, 1e-5 * norm)
        k = int(np.sum(sv <= null_tol))
        k = min(max(k, 1), len(g))
        basis = vh[-k:].conj().T
        if value.imag == 0:
            basis = basis.real
        clusters.append(EigenCluster(value, len(g), basis, spread))
    return clusters


def eig_real4(m) -> list[tuple[complex, np.ndarray]]:
    """Eigenpairs of a real 4x4 matrix.

    Degenerate eigenvalues come back as one pair per vector of an orthonormal
    eigenspace basis; a defective block yields fewer pairs than its algebraic
    multiplicity. Raises NumericalFailure if a residual exceeds
    1e-9 * ||m|| (plus the cluster spread for merged eigenvalues).
    """
    m = np.asarray(m, dtype=float)
    norm = np.linalg.norm(m, 2)
    pairs = []
    for c in eig_clusters(m):
        for v in c.vectors.T:
            res = np.linalg.norm(m @ v - c.value * v)
            if res > 1e-9 * norm + 2 * c.spread:
                raise NumericalFailure(f"eigenpair residual {res:.3e} too large", residual=res)
            pairs.append((c.value, v))
    return pairs


def spectrum(m) -> np.ndarray:
    """All four eigenvalues (with multiplicity), descending, cluster-averaged."""
    out = []
    for c in eig_clusters(m):
        out.extend([c.value] * c.multiplicity)
    out = np.array(out)
    if np.all(out.imag == 0):
        out = out.real
    return out


def g_orthonormal_basis(vectors, tol: float = 1e-9):
    """Basis of span(vectors) orthonormal in the Minkowski metric.

    Returns ``(basis, signs)`` with the basis vectors as columns, timelike
    (sign +1) first, then spacelike (sign -1); timelike vectors point to the
    future. Raises ValueError when the metric restricted to the span is
    degenerate (the span contains a null direction orthogonal to itself).
    """
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim == 1:
        vectors = vectors[:, None]
    q, sv, _ = np.linalg.svd(vectors, full_matrices=False)
    q = q[:, sv > 1e-12 * max(sv.max(), 1e-300)]
    h = q.T @ METRIC @ q
    w, u = np.linalg.eigh(h)
    order = np.argsort(-w)
    w, u = w[order], u[:, order]
    if np.any(np.abs(w) < tol):
        raise ValueError("metric is degenerate on this subspace")
    basis = (q @ u) / np.sqrt(np.abs(w))
    for k in range(basis.shape[1]):
        if w[k] > 0 and basis[0, k] < 0:
            basis[:, k] *= -1
    return basis, np.sign(w)


def g_complement(vectors) -> np.ndarray:
    """Basis (columns) of the Minkowski-orthogonal complement of span(vectors)."""
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim == 1:
        vectors = vectors[:, None]
    a = vectors.T @ METRIC
    _, sv, vh = np.linalg.svd(a)
    rank = int(np.sum(sv > 1e-10 * max(sv.max(), 1e-300)))
    return vh[rank:].T


def reorthogonalize_lorentz(lor) -> np.ndarray:
    """Gram-Schmidt the rows of a near-Lorentz matrix in the Minkowski product."""
    lor = np.asarray(lor, dtype=float)
    rows = []
    for k in range(4):
        v = lor[k].copy()
        for j, u in enumerate(rows):
            v = v - (v @ METRIC @ u) * METRIC[j, j] * u
        n = v @ METRIC @ v
        if (k == 0 and n <= 0) or (k > 0 and n >= 0):
            raise NumericalFailure("matrix too far from the Lorentz group to repair", residual=n)
        rows.append(v / np.sqrt(abs(n)))
    return np.array(rows)


def random_sl2c(rng, scale: float = 1.0) -> np.ndarray:
    """Random SL(2,C) element: complex Gaussian matrix of the given spread, normalised."""
    a = np.eye(2) + scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return sl2c(a)
