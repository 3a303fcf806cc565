"""Eisenstein series, the discriminant and theta series of extremal lattices.

Two polynomial bases are used for the theta series of even unimodular
lattices:

* ``"E4D"``: polynomials in E4 and Delta (modular nome ``qt = q**2``);
* ``"ABC"``: polynomials in a = theta_2**8, b = theta_3**8, c = theta_4**8
  (lattice nome ``q``), related by E4 = (a+b+c)/2 and Delta = abc/256.
"""

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConversionError, UsageError
from .qseries import QSeries, nome_square, theta_expansion, theta_numeric

_bern = [Fraction(1)]
_bern_lock = threading.Lock()
BERNOULLI_PREFILL = 128


def bernoulli(k):
    """Exact Bernoulli number B_k (convention B_1 = -1/2)."""
    if k < 0 or int(k) != k:
        raise UsageError("k must be a nonnegative integer")
    k = int(k)
    if k >= len(_bern):
        with _bern_lock:
            top = max(k, BERNOULLI_PREFILL)
            while len(_bern) <= top:
                m = len(_bern)
                s = sum(math.comb(m + 1, j) * _bern[j] for j in range(m))
                _bern.append(-s / (m + 1))
    return _bern[k]


def _check_weight(k):
    if int(k) != k or k < 4 or k % 2:
        raise UsageError(f"Eisenstein weight must be an even integer >= 4, got {k!r}")


def eisenstein_coefficient(k):
    """The factor -2k/B_k multiplying the Lambert series of E_k."""
    _check_weight(k)
    return Fraction(-2 * k) / bernoulli(k)


def eisenstein_eval(k, qt, tol=1e-15):
    """E_k(qt) for real 0 <= qt < 1 by summing the Lambert series to a certified tail."""
    coef = eisenstein_coefficient(k)
    if not 0 <= qt < 1:
        raise UsageError("qt must lie in [0, 1)")
    if qt == 0:
        return 1.0
    lq = math.log(qt)
    lcoef = math.log(abs(coef))
    sign = 1.0 if coef > 0 else -1.0

    def log_term(m):
        return (k - 1) * math.log(m) + m * lq - math.log1p(-qt**m)

    terms = []
    m = 1
    while True:
        terms.append(math.exp(lcoef + log_term(m)))
        ratio = ((m + 1) / m) ** (k - 1) * qt
        if ratio < 1:
            tail = math.exp(lcoef + log_term(m + 1)) / (1 - ratio)
            if tail < tol * 1e-2:
                break
        m += 1
    return 1.0 + sign * math.fsum(terms)


def _divisor_power_sums(power, top):
    sig = [0] * top
    for d in range(1, top):
        dp = d**power
        for m in range(d, top, d):
            sig[m] += dp
    return sig


def eisenstein_qexp(k, order=64):
    """Exact expansion 1 + (-2k/B_k) sum sigma_{k-1}(m) qt^m below ``order`` (nome qt)."""
    coef = eisenstein_coefficient(k)
    order = int(order)
    if order < 1:
        raise UsageError("order must be positive")
    sig = _divisor_power_sums(k - 1, order)
    coeffs = {0: 1}
    for m in range(1, order):
        coeffs[m] = coef * sig[m]
    # sigma_{k-1}(m) <= zeta(k-1) m^(k-1) < 2 (1+m)^(k-1)
    growth = (max(1.0, 2 * float(abs(coef))), k - 1)
    return QSeries(coeffs, order, growth)


def delta_qexp(order=64):
    """Exact expansion of Delta = (E4^3 - E6^2)/1728 in the nome qt."""
    if order < 2:
        raise UsageError("order must be at least 2")
    e4 = eisenstein_qexp(4, order)
    e6 = eisenstein_qexp(6, order)
    return (e4**3 - e6**2) / 1728


def delta_eval(qt, tol=1e-15):
    """Numeric Delta(qt) via the product qt * prod (1 - qt^m)^24.

    The product form equals (E4^3 - E6^2)/1728 but does not cancel
    catastrophically when qt approaches 1.
    """
    if not 0 <= qt < 1:
        raise UsageError("qt must lie in [0, 1)")
    if qt == 0:
        return 0.0
    logs = [math.log(qt)]
    m = 1
    while True:
        t = qt**m
        logs.append(24 * math.log1p(-t))
        m += 1
        if 24 * qt**m / (1 - qt) < tol * 1e-2:
            break
    return math.exp(math.fsum(logs))


def _poly_mul(p, r):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_pow(p, k, nvars):
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


@dataclass(frozen=True)
class ThetaPoly:
    """Polynomial expression for a theta series in the E4D or ABC basis."""

    basis: str
    terms: dict = field(compare=True)
    dim: int
    name: str = ""

    def __post_init__(self):
        if self.basis not in ("E4D", "ABC"):
            raise UsageError(f"unknown basis {self.basis!r}")
        if self.dim % 8:
            raise UsageError("theta polynomials describe dimensions divisible by 8")
        terms = {tuple(e): Fraction(c) for e, c in self.terms.items() if c}
        object.__setattr__(self, "terms", terms)
        for e in terms:
            if self.basis == "E4D":
                if len(e) != 2 or 4 * e[0] + 12 * e[1] != self.weight:
                    raise UsageError(f"monomial E4^{e[0]} Delta^{e[1]} has wrong weight for n={self.dim}")
            elif len(e) != 3 or sum(e) != self.dim // 8:
                raise UsageError(f"monomial {e} has wrong degree for n={self.dim}")

    @property
    def weight(self):
        return self.dim // 2

    def __str__(self):
        names = ("E4", "D") if self.basis == "E4D" else ("a", "b", "c")
        out = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(names, e) if k)
            out.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(out) or "0"


# theta series of extremal even unimodular lattices, as polynomials in E4 and Delta
_EXTREMAL = {
    8: ("E8", {(1, 0): 1}),
    24: ("Leech", {(3, 0): 1, (0, 1): -720}),
    32: ("BW32", {(4, 0): 1, (1, 1): -960}),
    48: ("P48", {(6, 0): 1, (3, 1): -1440, (0, 2): 125280}),
    72: ("L72", {(9, 0): 1, (6, 1): -2160, (3, 2): 965520, (0, 3): -27302400}),
    80: ("L80", {(10, 0): 1, (7, 1): -2400, (4, 2): 1360800, (1, 3): -103488000}),
}
EXTREMAL_DIMS = tuple(_EXTREMAL)


def extremal_theta(n):
    if n not in _EXTREMAL:
        raise UsageError(f"no extremal theta series for n={n!r}; supported: {EXTREMAL_DIMS}")
    name, terms = _EXTREMAL[n]
    return ThetaPoly("E4D", terms, n, name)


_E4_ABC = {(1, 0, 0): Fraction(1, 2), (0, 1, 0): Fraction(1, 2), (0, 0, 1): Fraction(1, 2)}
_DELTA_ABC = {(1, 1, 1): Fraction(1, 256)}


def convert_basis(p, target):
    if target == p.basis:
        return p
    if target == "ABC":
        out = {}
        for (i, j), c in p.terms.items():
            mono = _poly_mul(_poly_pow(_E4_ABC, i, 3), _poly_pow(_DELTA_ABC, j, 3))
            for e, v in mono.items():
                out[e] = out.get(e, 0) + c * v
        return ThetaPoly("ABC", out, p.dim, p.name)
    if target == "E4D":
        return ThetaPoly("E4D", _abc_to_e4d(p.terms), p.dim, p.name)
    raise UsageError(f"unknown basis {target!r}")


def _abc_to_e4d(terms):
    # symmetric reduction: lex-leading a^i b^j c^k must be e1^(i-j) e2^(j-k) e3^k with no e2
    rest = dict(terms)
    e1 = {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    e3 = {(1, 1, 1): 1}
    out = {}
    while rest:
        lead = max(rest)
        i, j, k = lead
        if not i >= j >= k:
            raise ConversionError("polynomial is not symmetric in theta_2^8, theta_3^8, theta_4^8")
        if j != k:
            raise ConversionError("polynomial involves ab+bc+ca and has no E4/Delta form")
        c = rest[lead]
        sub = _poly_mul(_poly_pow(e1, i - j, 3), _poly_pow(e3, k, 3))
        for e, v in sub.items():
            nv = rest.get(e, 0) - c * v
            if nv:
                rest[e] = nv
            else:
                rest.pop(e, None)
        # e1 = 2 E4, e3 = 256 Delta
        key = (i - j, k)
        out[key] = out.get(key, 0) + c * 2 ** (i - j) * 256**k
    return out


# At q = e^{-pi}: theta_2 = theta_4 and theta_3 = 2^{1/4} theta_4, so after
# dividing through by theta_4^8 the generators become (a, b, c) = (1, 4, 1).
LEMNISCATIC_POINT = (1, 4, 1)


def exact_gain_at_one(p):
    """Secrecy function at y = 1 as an exact rational: theta_3^n / Theta at q = e^{-pi}."""
    if p.dim % 8:
        raise UsageError("exact evaluation at y = 1 needs dimension divisible by 8")
    abc = convert_basis(p, "ABC")
    a, b, c = LEMNISCATIC_POINT
    value = sum(coef * a**i * b**j * c**k for (i, j, k), coef in abc.terms.items())
    return Fraction(b ** (p.dim // 8)) / value


def theta_poly_qexp(p, order):
    """q-expansion in the lattice nome (exponent = squared norm) below ``order``."""
    order = Fraction(order)
    if p.basis == "E4D":
        top = math.ceil(order / 2)
        e4 = eisenstein_qexp(4, top)
        d = delta_qexp(max(top, 2))
        s = QSeries.constant(0, top)
        for (i, j), c in p.terms.items():
            s = s + (e4**i * d**j) * c
        return nome_square(s).truncate(order)
    gens = [theta_expansion(w, order) ** 8 for w in (2, 3, 4)]
    s = QSeries.constant(0, order)
    for (i, j, k), c in p.terms.items():
        s = s + gens[0] ** i * gens[1] ** j * gens[2] ** k * c
    return s


def theta_poly_numeric(p, y, tol=1e-15):
    """Theta(y) = sum over the lattice of e^{-pi y |x|^2}, evaluated from the polynomial."""
    if y <= 0:
        raise UsageError("y must be positive")
    if p.basis == "E4D":
        qt = math.exp(-2 * math.pi * y)
        e4 = eisenstein_eval(4, qt, tol)
        d = delta_eval(qt, tol)
        vals = [float(c) * e4**i * d**j for (i, j), c in p.terms.items()]
    else:
        q = math.exp(-math.pi * y)
        a, b, c = (theta_numeric(w, q, tol) ** 8 for w in (2, 3, 4))
        vals = [float(co) * a**i * b**j * c**k for (i, j, k), co in p.terms.items()]
    return math.fsum(vals)
