"""
Secrecy functions and where they peak
======================================

For unimodular lattices the secrecy function is symmetric under y -> 1/y and
peaks at y = 1.  D4 has volume 2 and its curve peaks near y = 1/sqrt(2).
"""

import numpy as np

from secrecygain import catalog, extremal_theta, secrecy_curve, secrecy_gain

spacer = "-" * 60

# a few samples of the E8 curve
curve = secrecy_curve(extremal_theta(8), -6, 6, 7)
print("t [dB]    Xi_E8")
for t, xi in curve:
    print(f"{t:6.1f}  {xi:.6f}")
print("symmetric:", np.allclose(curve[:, 1], curve[::-1, 1]))
print(spacer)

# numeric maximization for lattices given by Gram matrices
for name in ("Zn:4", "D4", "E8", "Leech"):
    r = secrecy_gain(catalog(name))
    note = "; ".join(r.warnings)
    print(f"{name:6s} gain = {r.gain:.6f} at {r.y_star_db:+.4f} dB  {note}")
