#!/usr/bin/env python3
"""
Brute-force check of the analytic steering ellipsoid.

Bob measures along 500 Fibonacci directions; Alice's steered Bloch vectors
are collected and a quadric is fitted to them. The fitted centre, semiaxes
and volume are compared with the closed-form ellipsoid for a few random
states, both steering orientations.
"""
import numpy as np

from slocc_steering import Party, lambda_from_rho, steering_ellipsoid
from slocc_steering.oracle import compare, fit_ellipsoid, sweep
from slocc_steering.twoqubit import random_density_matrix

rng = np.random.default_rng(11)
for k in range(4):
    lam = lambda_from_rho(random_density_matrix(rng, rank=1 + k))
    for party in Party:
        e = steering_ellipsoid(lam, party)
        f = fit_ellipsoid(sweep(lam, 500, party=party))
        ce, se, fe = compare(e, f)
        print(f"rank {1 + k}  {party.value:<14} V = {e.volume:.6f}  fit V = {f.volume:.6f}  "
              f"center err {ce:.1e}  semiaxes err {se:.1e}  frame err {fe:.1e}  rms {f.rms_residual:.1e}")
