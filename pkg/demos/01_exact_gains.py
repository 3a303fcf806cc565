"""
Exact secrecy gains of extremal lattices
=========================================

Theta series of even unimodular lattices are polynomials in E4 and Delta.
At y = 1 the Jacobi thetas satisfy theta_2 = theta_4 and
theta_3 = 2^(1/4) theta_4, so the secrecy function there is a rational number.
"""

from secrecygain import convert_basis, exact_gain_at_one, extremal_theta, theta_poly_qexp
from secrecygain.modform import EXTREMAL_DIMS

spacer = "-" * 60

# the Leech lattice theta series, in both bases
p = extremal_theta(24)
print("Leech:", p)
print("   in theta basis:", convert_basis(p, "ABC"))
print("   first coefficients:", theta_poly_qexp(p, 9).integer_coeffs())
print(spacer)

# exact gains at y = 1
for n in EXTREMAL_DIMS:
    g = exact_gain_at_one(extremal_theta(n))
    print(f"n = {n:2d}   gain = {str(g):>20s}  ~ {float(g):.6f}")
