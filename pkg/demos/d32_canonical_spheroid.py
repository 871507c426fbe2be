#!/usr/bin/env python3
"""
W-class states collapse onto a single canonical spheroid.

Every reduced pair of psi_32(beta) is SLOCC equivalent to the same two-qubit
state, whose steering ellipsoid is centred at (0, 0, 1/2) with semiaxes
(1/sqrt2, 1/sqrt2, 1/2). We check this for a handful of beta values and then
apply the synthesised local filters directly to the density matrix.
"""
import numpy as np

from slocc_steering import (
    canonicalize,
    lambda_from_rho,
    psi_32,
    reduced_two_qubit,
    rho_from_lambda,
    slocc_apply,
    steering_ellipsoid,
)

np.set_printoptions(precision=6, suppress=True)

for beta in np.linspace(0.2, np.pi, 5):
    rho = reduced_two_qubit(psi_32(beta))
    lam = lambda_from_rho(rho)
    dec = canonicalize(lam)
    raw = steering_ellipsoid(lam)
    can = steering_ellipsoid(dec.canonical_lambda)
    print(f"beta = {beta:.4f}  kind {dec.kind.value}  residual {dec.residual:.1e}")
    print(f"  raw ellipsoid:       center {raw.center}  semiaxes {raw.semiaxes}")
    print(f"  canonical ellipsoid: center {can.center}  semiaxes {can.semiaxes}")
    print(f"  volume {can.volume:.12f}  (pi/3 = {np.pi / 3:.12f})")

# the Lorentz pair lifts to SL(2,C) filters acting on rho itself
rho = reduced_two_qubit(psi_32(1.0))
dec = canonicalize(lambda_from_rho(rho))
a, b = dec.sl2c_pair()
filtered = slocc_apply(rho, a, b)
print("\nfilter A =\n", a)
print("filter B =\n", b)
print("max |(A x B) rho (A x B)^dag / Tr - rho_canonical| =",
      np.abs(filtered - rho_from_lambda(dec.canonical_lambda)).max())
