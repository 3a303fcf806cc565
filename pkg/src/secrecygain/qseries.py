"""Truncated q-series with exact rational coefficients.

Exponents live on the quarter-integer grid so that the half-integer squares
appearing in theta_2 are stored exactly.  Internally a series is a sparse dict
keyed by ``4 * exponent``.
"""

import math
from fractions import Fraction

from .errors import PrecisionError, UsageError

DEFAULT_ORDER = 200
DEFAULT_TAIL_TOL = 1e-14


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _limit(trunc):
    # number of grid points strictly below trunc
    return math.ceil(4 * trunc)


class QSeries:
    """Formal series sum c_e q^e, exact for every exponent e < trunc_order.

    ``growth = (C, p)`` certifies |c_e| <= C * (1 + e)**p for all e (stored or
    not); it is what lets :func:`eval_series` bound the discarded tail.
    """

    __slots__ = ("_terms", "trunc_order", "growth")

    def __init__(self, coeffs, trunc_order, growth=None):
        trunc_order = Fraction(trunc_order)
        if trunc_order <= 0:
            raise UsageError("trunc_order must be positive")
        terms = {}
        for e, c in coeffs.items():
            e = Fraction(e)
            if (4 * e).denominator != 1:
                raise UsageError(f"exponent {e} is not on the quarter-integer grid")
            if e < 0:
                raise UsageError("negative exponents are not supported")
            if e < trunc_order and c:
                terms[int(4 * e)] = _norm(Fraction(c))
        self._terms = terms
        self.trunc_order = trunc_order
        self.growth = growth

    @classmethod
    def _raw(cls, terms, trunc_order, growth):
        s = cls.__new__(cls)
        s._terms = terms
        s.trunc_order = trunc_order
        s.growth = growth
        return s

    @classmethod
    def constant(cls, c, trunc_order=DEFAULT_ORDER):
        c = _norm(Fraction(c))
        return cls._raw({0: c} if c else {}, Fraction(trunc_order), (abs(c), 0))

    @property
    def coeffs(self):
        return {Fraction(i, 4): c for i, c in sorted(self._terms.items())}

    def coeff(self, e):
        e = Fraction(e)
        if e >= self.trunc_order:
            raise UsageError(f"exponent {e} is beyond trunc_order {self.trunc_order}")
        if (4 * e).denominator != 1:
            return 0
        return self._terms.get(int(4 * e), 0)

    def integer_coeffs(self):
        """Coefficients at integer exponents 0..trunc-1 as a list."""
        top = math.ceil(self.trunc_order)
        return [self.coeff(m) for m in range(top)]

    def truncate(self, order):
        order = min(Fraction(order), self.trunc_order)
        lim = _limit(order)
        return QSeries._raw({i: c for i, c in self._terms.items() if i < lim}, order, self.growth)

    def __repr__(self):
        parts = []
        for e, c in self.coeffs.items():
            parts.append(f"{c}" if e == 0 else f"{c}*q^{e}")
        body = " + ".join(parts) if parts else "0"
        return f"QSeries({body} + O(q^{self.trunc_order}))"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._terms == other._terms and self.trunc_order == other.trunc_order

    def __hash__(self):
        return hash((frozenset(self._terms.items()), self.trunc_order))

    def __neg__(self):
        return QSeries._raw({i: -c for i, c in self._terms.items()}, self.trunc_order, self.growth)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.trunc_order)
        trunc = min(self.trunc_order, other.trunc_order)
        lim = _limit(trunc)
        terms = {i: c for i, c in self._terms.items() if i < lim}
        for i, c in other._terms.items():
            if i < lim:
                v = _norm(terms.get(i, 0) + c)
                if v:
                    terms[i] = v
                else:
                    terms.pop(i, None)
        return QSeries._raw(terms, trunc, _growth_add(self.growth, other.growth))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            k = _norm(Fraction(other))
            if not k:
                return QSeries._raw({}, self.trunc_order, (0, 0))
            g = None if self.growth is None else (abs(k) * self.growth[0], self.growth[1])
            return QSeries._raw({i: _norm(k * c) for i, c in self._terms.items()}, self.trunc_order, g)
        trunc = min(self.trunc_order, other.trunc_order)
        lim = _limit(trunc)
        out = {}
        b_items = sorted(other._terms.items())
        for i, a in self._terms.items():
            if i >= lim:
                continue
            for j, b in b_items:
                k = i + j
                if k >= lim:
                    break
                out[k] = out.get(k, 0) + a * b
        terms = {k: _norm(v) for k, v in out.items() if v}
        return QSeries._raw(terms, trunc, _growth_mul(self.growth, other.growth))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __pow__(self, k):
        return series_pow(self, k)


def _growth_add(g1, g2):
    if g1 is None or g2 is None:
        return None
    return (g1[0] + g2[0], max(g1[1], g2[1]))


def _growth_mul(g1, g2):
    if g1 is None or g2 is None:
        return None
    # at most 4e+1 <= 4(1+e) pairs of grid exponents sum to e
    return (4 * g1[0] * g2[0], g1[1] + g2[1] + 1)


def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown op {op!r}; expected add, sub or mul")


def series_pow(a, k):
    if k < 0 or int(k) != k:
        raise UsageError("exponent must be a nonnegative integer")
    result = QSeries.constant(1, a.trunc_order)
    base = a
    k = int(k)
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def nome_square(s):
    """Rewrite a series in the modular nome qt = q**2 as a series in q."""
    terms = {2 * i: c for i, c in s._terms.items()}
    return QSeries._raw(terms, 2 * s.trunc_order, s.growth)


def theta_expansion(which, order=DEFAULT_ORDER):
    """q-expansion of the Jacobi theta function theta_which, truncated below ``order``."""
    order = Fraction(order)
    if order <= 0:
        raise UsageError("order must be positive")
    lim = _limit(order)
    terms = {}
    if which in (3, 4):
        terms[0] = 1
        n = 1
        while 4 * n * n < lim:
            terms[4 * n * n] = 2 if which == 3 or n % 2 == 0 else -2
            n += 1
    elif which == 2:
        n = 0
        while (2 * n + 1) ** 2 < lim:
            terms[(2 * n + 1) ** 2] = 2
            n += 1
    else:
        raise UsageError(f"theta index must be 2, 3 or 4, got {which!r}")
    return QSeries._raw(terms, order, (2, 0))


def eval_series(s, q, tail_tol=DEFAULT_TAIL_TOL):
    """Evaluate ``s`` at real 0 < q < 1 with a certified bound on the dropped tail."""
    if not 0 < q < 1:
        raise UsageError("q must lie in (0, 1)")
    if s.growth is None:
        raise PrecisionError("series carries no coefficient growth bound; tail cannot be certified")
    C, p = s.growth
    j0 = _limit(s.trunc_order)
    lq = math.log(q)
    ratio = ((1 + (j0 + 1) / 4) / (1 + j0 / 4)) ** p * q ** 0.25
    if ratio < 1:
        log_first = math.log(C) + p * math.log1p(j0 / 4) + lq * j0 / 4 if C else -math.inf
        tail = math.exp(log_first) / (1 - ratio) if log_first > -700 else 0.0
    else:
        tail = math.inf
    if not tail < tail_tol:
        raise PrecisionError(
            f"tail bound {tail:.3g} exceeds {tail_tol:.3g} at trunc_order {s.trunc_order}; "
            "regenerate the series with a larger order"
        )
    return math.fsum(float(c) * q ** (i / 4) for i, c in s._terms.items())


def theta_numeric(which, q, tol=1e-15):
    """Direct summation of theta_which(q) for real 0 < q < 1."""
    if which not in (2, 3, 4):
        raise UsageError(f"theta index must be 2, 3 or 4, got {which!r}")
    if not 0 < q < 1:
        raise UsageError("q must lie in (0, 1)")
    lq = math.log(q)
    terms = [] if which == 2 else [1.0]
    n = 0 if which == 2 else 1
    while True:
        e = (n + 0.5) ** 2 if which == 2 else n * n
        t = 2.0 * math.exp(lq * e)
        # remaining terms shrink at least geometrically with ratio q**(2n+1)
        if t / (1 - q ** (2 * n + 1)) < tol * 1e-3:
            break
        terms.append(-t if which == 4 and n % 2 else t)
        n += 1
    return math.fsum(terms)
