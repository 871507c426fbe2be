"""
Command-line front end.

    slocc-steering classify --family d32 --beta 1.5708
    slocc-steering classify --preset ghz --format json
    slocc-steering mesh --family d33 --beta pi/2 --canonical --out e.obj
    slocc-steering monogamy-scan --family d33 --y 1,0.5 --beta-steps 24

Exit codes: 0 success, 2 bad input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from .errors import (
    DegenerateStateError,
    NumericalFailure,
    PureConditioningError,
    SteeringError,
)
from .symmetric3 import (
    SloccClass,
    majorana_state,
    monogamy_check,
    preset,
    psi_32,
    psi_33,
    reduced_two_qubit,
)
from .linalg import Spinor
from .twoqubit import (
    Party,
    bloch_vectors,
    canonicalize,
    check_state,
    concurrence,
    gomega_spectrum,
    lambda_from_rho,
    omega_from_lambda,
    rho_from_lambda,
    steering_ellipsoid,
)

EXIT_INPUT = 2
EXIT_NUMERIC = 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing


_ANGLE = re.compile(
    r"^\s*([-+])?\s*((?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(\*?\s*pi)?\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$"
)


def angle(text) -> float:
    """Angle in radians: a number, or an expression such as pi/2 or 3*pi/4."""
    t = str(text).strip().lower()
    if any(u in t for u in ("deg", "°")) or t.endswith("d"):
        raise argparse.ArgumentTypeError(f"{text!r}: angles are radians only")
    m = _ANGLE.match(t)
    if not m or not (m.group(2) or m.group(3)):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    val = float(m.group(2)) if m.group(2) else 1.0
    if m.group(3):
        val *= math.pi
    if m.group(4):
        val /= float(m.group(4))
    return -val if m.group(1) == "-" else val


def angle_list(text):
    return [angle(t) for t in str(text).split(",") if t.strip()]


def float_list(text):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def load_rho(path) -> np.ndarray:
    """4x4 complex matrix from JSON: 16 [re, im] pairs row-major, or 4 rows of 4 pairs."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    arr = np.asarray(data, dtype=float)
    if arr.shape == (16, 2):
        arr = arr.reshape(4, 4, 2)
    if arr.shape != (4, 4, 2):
        raise InputError(f"{path}: expected 16 [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _state_args(p):
    g = p.add_argument_group("state")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=["d31", "d32", "d33"])
    src.add_argument("--preset", choices=["w", "wbar", "ghz"])
    src.add_argument("--rho-file", metavar="PATH")
    g.add_argument("--beta", type=angle, help="radians, e.g. 1.5708 or pi/2")
    g.add_argument("--y", type=float, default=1.0)
    g.add_argument("--alpha", type=angle, default=0.0)
    g.add_argument("--party", choices=[p.value for p in Party], default=Party.ALICE_GIVEN_BOB.value)


def build_state(args):
    """(echo, three-qubit state or None, two-qubit rho)."""
    if args.rho_file:
        rho = load_rho(args.rho_file)
        rho = check_state(rho, herm_tol=1e-9, trace_tol=1e-9, psd_tol=1e-9)
        return {"rho_file": args.rho_file}, None, 0.5 * (rho + rho.conj().T)
    if args.preset:
        st = preset(args.preset)
        return {"preset": args.preset}, st, reduced_two_qubit(st)
    if args.beta is None:
        raise InputError("--family needs --beta")
    echo = {"family": args.family, "beta": args.beta}
    if args.family == "d31":
        s = Spinor(args.alpha, args.beta)
        st = majorana_state([s, s, s])
        echo["alpha"] = args.alpha
    elif args.family == "d32":
        st = psi_32(args.beta)
    else:
        st = psi_33(args.y, args.alpha, args.beta)
        echo.update(y=args.y, alpha=args.alpha)
    return echo, st, reduced_two_qubit(st)


# ---------------------------------------------------------------------------
# report


def _num(x):
    x = float(x)
    if x == 0:
        return 0.0
    return float(f"{x:.15g}")


def clean(obj):
    """Round every float to 15 significant digits for stable output."""
    if isinstance(obj, dict):
        return {k: clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def _point_ellipsoid(lam, party):
    # a pure conditioning qubit means a product state: the steered set is one point
    r, s, _ = bloch_vectors(lam)
    c = r if Party(party) is Party.ALICE_GIVEN_BOB else s
    return {
        "center": c,
        "semiaxes": [0.0, 0.0, 0.0],
        "axes": np.eye(3),
        "volume": 0.0,
        "obesity": abs(np.linalg.det(lam)) ** 0.25,
        "degenerate": True,
    }


def make_report(echo, st, rho, party=Party.ALICE_GIVEN_BOB.value) -> dict:
    lam = lambda_from_rho(rho)
    rep = {"input": dict(echo, party=party)}
    rep["slocc_class"] = st.slocc_class.value if st is not None else None
    try:
        dec = canonicalize(lam)
        rep["canonical_type"] = dec.kind.value
        rep["eigenvalues"] = dec.eigenvalues
        rep["canonical_lambda"] = dec.canonical_lambda
    except DegenerateStateError:
        rep["canonical_type"] = "Degenerate"
        rep["eigenvalues"] = np.clip(gomega_spectrum(omega_from_lambda(lam)), 0, None)
        rep["canonical_lambda"] = None
    try:
        e = steering_ellipsoid(lam, party)
        rep["ellipsoid"] = {
            "center": e.center,
            "semiaxes": e.semiaxes,
            "axes": e.axes.T,
            "volume": e.volume,
            "obesity": e.obesity,
            "degenerate": e.degenerate,
        }
    except PureConditioningError:
        rep["ellipsoid"] = _point_ellipsoid(lam, party)
    rep["concurrence"] = concurrence(rho).value
    if st is not None and st.slocc_class is not SloccClass.D31:
        m = monogamy_check(st)
        rep["monogamy"] = {"lhs": m.lhs, "bound": m.bound, "saturated": m.saturated}
    else:
        rep["monogamy"] = None
    return clean(rep)


def _fmt(x):
    if x is None:
        return "n/a"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.15g}"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def format_text(rep) -> str:
    out = []
    echo = ", ".join(f"{k}={_fmt(v)}" for k, v in rep["input"].items())
    out.append(f"input:            {echo}")
    out.append(f"slocc class:      {_fmt(rep['slocc_class'])}")
    out.append(f"canonical type:   {rep['canonical_type']}")
    out.append(f"G.Omega spectrum: {_fmt(rep['eigenvalues'])}")
    if rep["canonical_lambda"] is None:
        out.append("canonical Lambda: n/a (Omega vanishes)")
    else:
        out.append("canonical Lambda:")
        for row in rep["canonical_lambda"]:
            out.append("  " + "  ".join(f"{v:>22.15g}" for v in row))
    e = rep["ellipsoid"]
    out.append("steering ellipsoid:")
    out.append(f"  center:   {_fmt(e['center'])}")
    out.append(f"  semiaxes: {_fmt(e['semiaxes'])}")
    out.append(f"  volume:   {_fmt(e['volume'])}")
    out.append(f"  obesity:  {_fmt(e['obesity'])}")
    out.append(f"concurrence:      {_fmt(rep['concurrence'])}")
    m = rep["monogamy"]
    if m is None:
        out.append("monogamy:         n/a")
    else:
        out.append(
            f"monogamy:         lhs={_fmt(m['lhs'])} bound={_fmt(m['bound'])} "
            f"saturated={_fmt(m['saturated'])}"
        )
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# mesh export


def ellipsoid_mesh(center, semiaxes, axes, n):
    """UV-sphere triangulation: n latitude bands, 2n longitudes; poles shared."""
    verts = [center + axes @ (semiaxes * [0, 0, 1])]
    for i in range(1, n):
        th = math.pi * i / n
        for j in range(2 * n):
            ph = math.pi * j / n
            u = np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
            verts.append(center + axes @ (semiaxes * u))
    verts.append(center + axes @ (semiaxes * [0, 0, -1]))
    m = 2 * n
    faces = []

    def ring(i, j):
        return 2 + (i - 1) * m + (j % m)

    for j in range(m):
        faces.append((1, ring(1, j + 1), ring(1, j)))
    for i in range(1, n - 1):
        for j in range(m):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            faces.append((a, b, d))
            faces.append((a, d, c))
    last = len(verts)
    for j in range(m):
        faces.append((ring(n - 1, j), ring(n - 1, j + 1), last))
    return np.array(verts), faces


def bloch_wireframe(n):
    """Latitude and longitude circles of the unit sphere as polylines."""
    lines = []
    k = 4 * n
    t = np.linspace(0, 2 * math.pi, k, endpoint=False)
    for i in range(1, n):
        th = math.pi * i / n
        lines.append(np.column_stack([math.sin(th) * np.cos(t), math.sin(th) * np.sin(t),
                                      np.full(k, math.cos(th))]))
    for j in range(n):
        ph = math.pi * j / n
        lines.append(np.column_stack([np.sin(t) * math.cos(ph), np.sin(t) * math.sin(ph), np.cos(t)]))
    return lines


def write_obj(rep, n) -> str:
    e = rep["ellipsoid"]
    center = np.array(e["center"])
    semi = np.array(e["semiaxes"])
    axes = np.array(e["axes"]).T
    rank = int(np.sum(semi > 1e-9))
    buf = io.StringIO()
    w = buf.write
    w("# steering ellipsoid mesh\n")
    w(f"# center {' '.join(f'{v:.15g}' for v in center)}\n")
    w(f"# semiaxes {' '.join(f'{v:.15g}' for v in semi)}\n")
    w(f"# volume {e['volume']:.15g}\n")
    w(f"# degenerate {'true' if rank < 3 else 'false'}\n")
    if rank < 3:
        w(f"# degenerate rank {rank}: emitted as a polyline\n")
    w("o ellipsoid\n")
    nv = 0
    if rank == 3:
        verts, faces = ellipsoid_mesh(center, semi, axes, n)
        for v in verts:
            w(f"v {v[0]:.15g} {v[1]:.15g} {v[2]:.15g}\n")
        for f in faces:
            w(f"f {f[0]} {f[1]} {f[2]}\n")
        nv = len(verts)
    elif rank == 0:
        w(f"v {center[0]:.15g} {center[1]:.15g} {center[2]:.15g}\n")
        w("p 1\n")
        nv = 1
    else:
        if rank == 1:
            k = int(np.argmax(semi))
            pts = [center - semi[k] * axes[:, k], center + semi[k] * axes[:, k]]
            closed = False
        else:
            t = np.linspace(0, 2 * math.pi, 4 * n, endpoint=False)
            idx = np.argsort(-semi)[:2]
            pts = [center + semi[idx[0]] * math.cos(a) * axes[:, idx[0]]
                   + semi[idx[1]] * math.sin(a) * axes[:, idx[1]] for a in t]
            closed = True
        for v in pts:
            w(f"v {v[0]:.15g} {v[1]:.15g} {v[2]:.15g}\n")
        ids = list(range(1, len(pts) + 1)) + ([1] if closed else [])
        w("l " + " ".join(map(str, ids)) + "\n")
        nv = len(pts)
    w("o bloch_sphere\n")
    for line in bloch_wireframe(max(n // 2, 3)):
        for v in line:
            w(f"v {v[0]:.15g} {v[1]:.15g} {v[2]:.15g}\n")
        ids = list(range(nv + 1, nv + len(line) + 1)) + [nv + 1]
        w("l " + " ".join(map(str, ids)) + "\n")
        nv += len(line)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# monogamy scan


def monogamy_rows(family, betas, ys, alphas):
    rows = []
    if family == "d32":
        for b in betas:
            m = monogamy_check(psi_32(b))
            rows.append(("", "", b, m.normalized, m.saturated))
        return rows
    for y in ys:
        for a in alphas:
            for b in betas:
                m = monogamy_check(psi_33(y, a, b))
                rows.append((y, a, b, m.normalized, m.saturated))
    return rows


def write_csv(rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["y", "alpha", "beta", "sqrt_3v_over_pi", "saturated"])
    for r in rows:
        wr.writerow([v if isinstance(v, str) else ("true" if v is True else "false" if v is False
                     else f"{v:.15g}") for v in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# entry point


def build_parser():
    p = argparse.ArgumentParser(prog="slocc-steering", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", help="canonical form, steering ellipsoid and monogamy report")
    _state_args(c)
    c.add_argument("--format", choices=["text", "json"], default="text")

    m = sub.add_parser("mesh", help="OBJ mesh of the steering ellipsoid and the Bloch sphere")
    _state_args(m)
    m.add_argument("--n", type=int, default=24, help="subdivisions (>= 3)")
    m.add_argument("--out", help="output path (default: stdout)")
    m.add_argument("--canonical", action="store_true",
                   help="mesh the ellipsoid of the SLOCC canonical form instead")

    s = sub.add_parser("monogamy-scan", help="CSV of sqrt(3V/pi) over a parameter grid")
    s.add_argument("--family", choices=["d32", "d33"], default="d33")
    s.add_argument("--beta", type=angle_list, help="comma-separated angles (radians)")
    s.add_argument("--beta-steps", type=int, default=12, help="grid k*pi/N, k = 1..N")
    s.add_argument("--y", type=float_list, default=[1.0])
    s.add_argument("--alpha", type=angle_list, default=[0.0])
    s.add_argument("--out", help="output path (default: stdout)")
    return p


def _emit(text, path):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(args):
    if args.cmd == "monogamy-scan":
        if args.beta_steps < 1:
            raise InputError("--beta-steps must be positive")
        betas = args.beta or [k * math.pi / args.beta_steps for k in range(1, args.beta_steps + 1)]
        _emit(write_csv(monogamy_rows(args.family, betas, args.y, args.alpha)), args.out)
        return
    echo, st, rho = build_state(args)
    rep = make_report(echo, st, rho, args.party)
    if args.cmd == "classify":
        if args.format == "json":
            sys.stdout.write(json.dumps(rep, indent=2) + "\n")
        else:
            sys.stdout.write(format_text(rep))
    else:
        if args.n < 3:
            raise InputError("--n must be at least 3")
        if args.canonical and rep["canonical_lambda"] is not None:
            lam_c = np.array(rep["canonical_lambda"])
            rep = make_report(echo, st, rho_from_lambda(lam_c), args.party)
        _emit(write_obj(rep, args.n), args.out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run(args)
    except NumericalFailure as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, SteeringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
