"""Small exact linear-algebra helpers over ``fractions.Fraction``."""

import math
from fractions import Fraction


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # floats only enter through user input; keep the decimal they printed as
        return Fraction(repr(x))
    return Fraction(x)


def as_matrix(rows):
    return tuple(tuple(as_fraction(v) for v in row) for row in rows)


def normalize(x):
    """Return an int when ``x`` is integral, otherwise the Fraction."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def det(m):
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [list(row) for row in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def inverse(m):
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def transpose(a):
    return tuple(tuple(col) for col in zip(*a))


def common_denominator(m):
    return math.lcm(*(v.denominator for row in m for v in row))


def is_positive_definite(m):
    """All pivots of elimination without pivoting are positive (Sylvester)."""
    a = [list(row) for row in m]
    n = len(a)
    for c in range(n):
        piv = a[c][c]
        if piv <= 0:
            return False
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return True
