#!/usr/bin/env python3
"""
GHZ-class states: prolate spheroids and the volume monogamy curve.

For psi_33(y, alpha, beta) the canonical correlation matrix is
diag(1, cos(b/2), -cos(b/2), 1): a prolate spheroid touching both poles whose
waist depends on beta only. The monogamy sum sqrt(V_A|B) + sqrt(V_C|B),
normalised by sqrt(4 pi / 3), follows 2c / (1 + c^2) with c = cos(beta/2),
whatever y and alpha are. At beta = pi (GHZ) the spheroid degenerates to the
segment joining the poles.
"""
import numpy as np

from slocc_steering import canonicalize, lambda_from_rho, monogamy_check, psi_33, reduced_two_qubit
from slocc_steering.symmetric3 import preset
from slocc_steering.twoqubit import steering_ellipsoid

np.set_printoptions(precision=6, suppress=True)

print(" beta     canonical diag                        sqrt(3V/pi) per (y, alpha)          closed form")
for beta in np.linspace(np.pi / 8, np.pi, 8):
    dec = canonicalize(lambda_from_rho(reduced_two_qubit(psi_33(0.6, 1.0, beta))))
    vals = [monogamy_check(psi_33(y, a, beta)).normalized for y in (0.3, 1.0) for a in (0.0, 2.0)]
    c = np.cos(beta / 2)
    print(f" {beta:.4f}  {np.diag(dec.canonical_lambda)}  "
          f"{' '.join(f'{v:.8f}' for v in vals)}  {2 * c / (1 + c * c):.8f}")

ghz = reduced_two_qubit(preset("ghz"))
e = steering_ellipsoid(lambda_from_rho(ghz))
dec = canonicalize(lambda_from_rho(ghz))
print("\nGHZ: kind", dec.kind.value, " canonical diag", np.diag(dec.canonical_lambda))
print("     steering set: segment with semiaxes", e.semiaxes, "volume", e.volume)
