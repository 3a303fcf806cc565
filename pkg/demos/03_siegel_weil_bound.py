"""
How good can the best lattice be?
==================================

The Siegel-Weil formula averages theta series over all even unimodular
lattices of a dimension to E_{n/2}.  The best lattice is at least as good as
the average, which gives a lower bound that grows like (1/2) 1.086^n.
"""

from secrecygain import asymptotic_bound, exact_gain_at_one, extremal_theta, siegel_weil_bound
from secrecygain.modform import EXTREMAL_DIMS

print("  n   Siegel-Weil   asymptotic   extremal")
for n in range(8, 97, 8):
    ext = f"{float(exact_gain_at_one(extremal_theta(n))):10.4f}" if n in EXTREMAL_DIMS else ""
    print(f"{n:3d}  {siegel_weil_bound(n):11.4f}  {asymptotic_bound(n):11.4f}  {ext}")
