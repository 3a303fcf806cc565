"""Secrecy function, secrecy gain and the Siegel-Weil lower bound."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import UsageError
from .lattice import (
    Lattice,
    dual,
    dual_theta_via_jacobi,
    modular_theta,
    predicates,
    theta_numeric_lattice,
    volume,
)
from .modform import ThetaPoly, eisenstein_eval, exact_gain_at_one, theta_poly_numeric
from .qseries import theta_numeric

# theta_3(e^{-pi}) in closed form
THETA3_AT_ONE = math.pi**0.25 / math.gamma(0.75)

INV_PHI = (math.sqrt(5) - 1) / 2


def db(y):
    return 10 * math.log10(y)


def from_db(t):
    return 10 ** (t / 10)


@dataclass
class SecrecyResult:
    gain: float
    y_star: float
    y_star_db: float
    method: str
    symmetry_residual: float
    gain_exact: Fraction = None
    volume_normalized: bool = False
    reliable: bool = True
    warnings: list = field(default_factory=list)


def _dim(source):
    return source.dim


def theta_value(source, y, tol=1e-13):
    """Theta of ``source`` at y (lattice taken at its own scale).

    Even unimodular lattices are identified with their modular-form
    polynomial, which is exact and cheap at every y.  Otherwise arguments
    below the self-dual point go through Jacobi's formula on the dual
    lattice, where direct enumeration would need far too many vectors.
    """
    if y <= 0:
        raise UsageError("y must be positive")
    if isinstance(source, ThetaPoly):
        return theta_poly_numeric(source, y, min(tol, 1e-15))
    if not isinstance(source, Lattice):
        raise UsageError(f"unsupported theta source {type(source).__name__}")
    p = predicates(source)
    if p["even"] and p["unimodular"] and source.dim % 8 == 0:
        return theta_poly_numeric(modular_theta(source), y, min(tol, 1e-15))
    if y * _reference_scale(source) >= 1:
        return theta_numeric_lattice(source, y, tol)
    return dual_theta_via_jacobi(dual(source), y, tol)


def _reference_scale(source):
    # norms of Z^n rescaled to the volume of the source
    if isinstance(source, Lattice):
        return volume(source) ** (2 / source.dim)
    return 1.0


def secrecy_function(source, y, tol=1e-13):
    """Xi(y): theta series of Z^n scaled to the volume of ``source``, over that of ``source``.

    For unit volume this is theta_3(e^{-pi y})^n / Theta(y).  For volume V it
    equals the unit-volume secrecy function at y * V^{2/n}, so the gain is
    unchanged and the optimum moves to V^{-2/n} times the unit-volume one.
    """
    n = _dim(source)
    num = theta_numeric(3, math.exp(-math.pi * y * _reference_scale(source)), 1e-16) ** n
    return num / theta_value(source, y, tol)


def _golden_max(f, a, b, tol):
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def secrecy_gain(source, mode="numeric", t_range_db=(-10.0, 10.0), tol=1e-6, grid=101):
    """Secrecy gain sup_y Xi(y).

    ``mode="exact_unimodular"`` evaluates Xi(1) exactly, which is the gain if
    the maximum of a unimodular secrecy function sits at y = 1 (conjectured,
    not proven).  ``mode="numeric"`` maximizes over t = 10 log10(y) in
    ``t_range_db``: a coarse grid scan picks the bracket, golden-section search
    refines it to ``tol`` in t.
    """
    if mode == "exact_unimodular":
        if not isinstance(source, ThetaPoly):
            raise UsageError("exact mode needs an even unimodular theta polynomial")
        g = exact_gain_at_one(source)
        return SecrecyResult(
            gain=float(g),
            y_star=1.0,
            y_star_db=0.0,
            method="exact_at_one",
            symmetry_residual=0.0,
            gain_exact=g,
            warnings=["assumes the maximum of a unimodular secrecy function is at y = 1"],
        )
    if mode != "numeric":
        raise UsageError(f"unknown mode {mode!r}")

    t_lo, t_hi = map(float, t_range_db)
    if not t_lo < t_hi:
        raise UsageError("empty search range")

    def f(t):
        return secrecy_function(source, from_db(t))

    ts = np.linspace(t_lo, t_hi, grid)
    vals = np.array([f(t) for t in ts])
    top = vals.max()
    ties = np.flatnonzero(vals >= top - 1e-12 * abs(top))
    i = int(ties[len(ties) // 2])
    warnings = []
    flat = vals.max() - vals.min() <= 1e-12 * abs(top)
    if flat:
        t_star = float(ts[i])
        warnings.append("secrecy function is flat over the search range")
    else:
        a = ts[max(i - 1, 0)]
        b = ts[min(i + 1, grid - 1)]
        t_star = _golden_max(f, a, b, tol)
    reliable = True
    if not flat and (i == 0 or i == grid - 1):
        reliable = False
        warnings.append("maximum on the search-range boundary; the supremum may lie outside")
    t_star = float(t_star)
    y_star = from_db(t_star)
    gain = float(f(t_star))
    sym = abs(gain - secrecy_function(source, 1 / y_star))
    normalized = isinstance(source, Lattice) and abs(volume(source) - 1) > 1e-12
    return SecrecyResult(
        gain=gain,
        y_star=y_star,
        y_star_db=t_star,
        method="numeric_search",
        symmetry_residual=sym,
        volume_normalized=normalized,
        reliable=reliable,
        warnings=warnings,
    )


def siegel_weil_bound(n, tol=1e-15):
    """Lower bound theta_3(e^{-pi})^n / E_{n/2}(e^{-2pi}) on the best gain in dimension n."""
    if n <= 0 or n % 8:
        raise UsageError("n must be a positive multiple of 8")
    q = math.exp(-math.pi)
    return theta_numeric(3, q, 1e-16) ** n / eisenstein_eval(n // 2, q * q, tol)


def asymptotic_bound(n):
    """(1/2) (pi^{1/4} / Gamma(3/4))^n, the large-n form of the Siegel-Weil bound."""
    if n < 0:
        raise UsageError("n must be nonnegative")
    return 0.5 * THETA3_AT_ONE**n


def secrecy_curve(source, t_min_db, t_max_db, steps):
    """Samples (t_db, Xi) on an even grid; returns an array of shape (steps, 2)."""
    if not t_min_db < t_max_db:
        raise UsageError("t_min_db must be below t_max_db")
    if steps < 2:
        raise UsageError("need at least two steps")
    ts = np.linspace(t_min_db, t_max_db, int(steps))
    return np.column_stack([ts, [secrecy_function(source, from_db(t)) for t in ts]])
