"""
Brute-force check of steering geometry: sweep projective measurements on the
conditioning qubit, collect the steered Bloch vectors and fit a quadric to
them. Nothing here touches the canonical-form code.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import subspace_angles
from scipy.spatial.transform import Rotation

from .errors import MixedDegeneracyError
from .twoqubit import Ellipsoid, Party, steered_point

# relative point-cloud spread below which a direction is considered flat
FLAT_RTOL = 1e-7


@dataclass
class SteeringSample:
    directions: np.ndarray  # (n, 3)
    points: np.ndarray  # (n, 3)
    probabilities: np.ndarray  # (n,)


@dataclass
class FittedEllipsoid:
    center: np.ndarray
    semiaxes: np.ndarray  # descending
    axes: np.ndarray  # columns matching semiaxes
    rms_residual: float
    degenerate: bool = False
    rank: int = 3

    @property
    def volume(self) -> float:
        return float(4 * np.pi / 3 * np.prod(self.semiaxes))


def fibonacci_sphere(n) -> np.ndarray:
    """n quasi-uniform unit vectors; the first and last are the poles."""
    k = np.arange(n)
    z = 1 - 2 * k / (n - 1)
    rad = np.sqrt(np.clip(1 - z * z, 0, None))
    phi = np.pi * (3 - np.sqrt(5)) * k
    e = np.column_stack([rad * np.cos(phi), rad * np.sin(phi), z])
    return e / np.linalg.norm(e, axis=1)[:, None]


def sweep(lam, n=500, seed=None, party=Party.ALICE_GIVEN_BOB) -> SteeringSample:
    """Steered points for n measurement directions.

    Without a seed the Fibonacci lattice is used as is; a seed applies a
    random rotation to it (jitter mode), reproducibly.
    """
    if n < 12:
        raise ValueError("need at least 12 directions")
    dirs = fibonacci_sphere(n)
    if seed is not None:
        rot = Rotation.random(random_state=np.random.default_rng(seed))
        dirs = rot.apply(dirs)
        dirs = dirs / np.linalg.norm(dirs, axis=1)[:, None]
    pts, probs = [], []
    for e in dirs:
        p, pr = steered_point(lam, e, party)
        pts.append(p)
        probs.append(pr)
    return SteeringSample(dirs, np.array(pts), np.array(probs))


def _sorted_frame(semi, axes):
    order = np.argsort(-semi, kind="stable")
    return semi[order], axes[:, order]


def _conic_fit_2d(uv):
    """Algebraic ellipse fit in a plane: returns (center, semiaxes, axes)."""
    x, y = uv[:, 0], uv[:, 1]
    d = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    _, _, vh = np.linalg.svd(d, full_matrices=False)
    a, b, c, dd, e, f = vh[-1]
    m = np.array([[a, b / 2], [b / 2, c]])
    ctr = np.linalg.solve(m, -0.5 * np.array([dd, e]))
    k = ctr @ m @ ctr - f
    w, v = np.linalg.eigh(m / k)
    return ctr, 1 / np.sqrt(np.clip(w, 1e-300, None)), v


def fit_ellipsoid(sample) -> FittedEllipsoid:
    """
    Least-squares algebraic quadric fit.

    Point clouds spanning fewer than three dimensions are fitted as a point,
    segment or planar ellipse and flagged as degenerate; the flat directions
    get zero semiaxes.
    """
    pts = sample.points if isinstance(sample, SteeringSample) else np.asarray(sample, float)
    if len(pts) < 12:
        raise ValueError("need at least 12 points")
    mean = pts.mean(axis=0)
    _, sv, vh = np.linalg.svd(pts - mean, full_matrices=False)
    scale = max(sv[0], 1e-300)
    rank = int(np.sum(sv > FLAT_RTOL * scale)) if sv[0] > 1e-12 else 0

    if rank == 0:
        return FittedEllipsoid(mean, np.zeros(3), np.eye(3), 0.0, True, 0)
    if rank == 1:
        t = (pts - mean) @ vh[0]
        lo, hi = t.min(), t.max()
        center = mean + 0.5 * (lo + hi) * vh[0]
        semi = np.array([0.5 * (hi - lo), 0, 0])
        axes = vh.T.copy()
        off = (pts - center) - np.outer((pts - center) @ vh[0], vh[0])
        res = float(np.sqrt(np.mean(np.sum(off**2, axis=1))))
        return FittedEllipsoid(center, semi, axes, res, True, 1)
    if rank == 2:
        uv = (pts - mean) @ vh[:2].T
        c2, s2, v2 = _conic_fit_2d(uv)
        center = mean + vh[:2].T @ c2
        axes2 = vh[:2].T @ v2
        semi, axes = _sorted_frame(np.append(s2, 0.0), np.column_stack([axes2, vh[2]]))
        q = ((uv - c2) @ v2) / s2
        res = float(np.sqrt(np.mean((np.linalg.norm(q, axis=1) - 1) ** 2)) * s2.mean())
        return FittedEllipsoid(center, semi, axes, res, True, 2)

    # full quadric x^T A x + b.x + c = 0 through the SVD null vector; work in
    # centred, scaled coordinates for conditioning
    x = (pts - mean) / scale * np.sqrt(len(pts))
    cols = [x[:, 0] ** 2, x[:, 1] ** 2, x[:, 2] ** 2,
            2 * x[:, 0] * x[:, 1], 2 * x[:, 0] * x[:, 2], 2 * x[:, 1] * x[:, 2],
            x[:, 0], x[:, 1], x[:, 2], np.ones(len(x))]
    _, _, qh = np.linalg.svd(np.column_stack(cols), full_matrices=False)
    a11, a22, a33, a12, a13, a23, b1, b2, b3, c = qh[-1]
    amat = np.array([[a11, a12, a13], [a12, a22, a23], [a13, a23, a33]])
    ctr = np.linalg.solve(amat, -0.5 * np.array([b1, b2, b3]))
    k = ctr @ amat @ ctr - c
    w, v = np.linalg.eigh(amat / k)
    if np.any(w <= 0):
        raise ValueError("fitted quadric is not an ellipsoid")
    semi = 1 / np.sqrt(w)
    back = scale / np.sqrt(len(pts))
    center = mean + ctr * back
    semi = semi * back
    semi, axes = _sorted_frame(semi, v)
    q = ((pts - center) @ axes) / semi
    res = float(np.sqrt(np.mean((np.linalg.norm(q, axis=1) - 1) ** 2)) * semi.mean())
    return FittedEllipsoid(center, semi, axes, res, False, 3)


def _axis_groups(semi, tol):
    groups, cur = [], [0]
    for i in range(1, len(semi)):
        if abs(semi[i] - semi[cur[-1]]) <= tol:
            cur.append(i)
        else:
            groups.append(cur)
            cur = [i]
    groups.append(cur)
    return groups


def compare(analytic: Ellipsoid, fitted: FittedEllipsoid, tol=1e-5):
    """(center distance, max sorted-semiaxis difference, frame angle in radians).

    The frame angle is the largest principal angle between matching
    eigenspaces, so axes of equal length may rotate freely among themselves.
    """
    if analytic.degenerate != fitted.degenerate:
        raise MixedDegeneracyError("only one of the ellipsoids is degenerate")
    sa, aa = _sorted_frame(np.asarray(analytic.semiaxes, float), np.asarray(analytic.axes, float))
    sf, af = fitted.semiaxes, fitted.axes
    center_err = float(np.linalg.norm(analytic.center - fitted.center))
    semi_err = float(np.abs(sa - sf).max())
    frame_err = 0.0
    for g in _axis_groups(sa, tol):
        if len(g) == 3:
            continue
        ang = subspace_angles(aa[:, g], af[:, g])
        frame_err = max(frame_err, float(np.max(ang)))
    return center_err, semi_err, frame_err
