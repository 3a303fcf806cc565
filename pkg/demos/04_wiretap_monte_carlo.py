"""
Eve's chance of guessing the coset
===================================

Coset coding with Z / 4Z: the message picks one of 4 cosets, Eve sees the
codeword through Gaussian noise.  We compare a Monte Carlo estimate of her
correct-decision probability with the theta-series approximation.
"""

import dataclasses
import os
import warnings

from secrecygain import WiretapConfig, eve_correct_prob_formula, monte_carlo_eve

here = os.path.dirname(os.path.abspath(__file__))
cfg = WiretapConfig.load(os.path.join(here, "z_4z.json"))
print("index", cfg.index, " R_s =", cfg.R_s)

# the approximation is only meant for moderate noise; above 1 it is flagged
for sigma in (0.05, 0.3, 0.8, 2.0, 50.0):
    c = dataclasses.replace(cfg, sigma_e=sigma)
    mc = monte_carlo_eve(c, 200_000, seed=1)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f = eve_correct_prob_formula(c)
    flag = "  (outside regime)" if caught else ""
    print(f"sigma_e = {sigma:5.2f}   p_hat = {mc.p_hat:.4f} +- {mc.ci95:.4f}   formula = {f:.4g}{flag}")

# small noise: Eve always decodes; large noise: she guesses 1 of 4
