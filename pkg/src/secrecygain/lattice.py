"""Lattices given by exact Gram matrices.

Theta coefficients come from a breadth-first Fincke-Pohst enumeration that is
vectorized with numpy.  Pruning uses a floating Cholesky factor with a padded
radius; every surviving vector is then re-checked against the exact Gram
matrix, so counts are exact.
"""

import functools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaincc, gammaln

from . import _exact
from ._leech import LEECH_GRAM
from .errors import BudgetError, PrecisionError, UsageError
from .modform import ThetaPoly, delta_qexp, eisenstein_qexp
from .qseries import QSeries, theta_expansion, theta_numeric

DEFAULT_BUDGET = 50_000_000
_CHUNK = 1_000_000
_PAD = 1e-6


@dataclass(frozen=True)
class Lattice:
    """An n-dimensional lattice.

    ``gram`` is exact (Fractions).  ``basis`` is an optional exact generator
    matrix (rows are basis vectors) needed only when lattices must be embedded
    in a common space, e.g. to check nesting.  ``closed_form_theta`` maps
    exponent triples (i, j, k) of theta_2^i theta_3^j theta_4^k to rational
    coefficients.
    """

    name: str
    gram: tuple
    basis: tuple = None
    closed_form_theta: tuple = None

    def __post_init__(self):
        gram = _exact.as_matrix(self.gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise UsageError("Gram matrix must be square and non-empty")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise UsageError("Gram matrix must be symmetric")
        if not _exact.is_positive_definite(gram):
            raise UsageError(f"Gram matrix of {self.name!r} is not positive definite")
        object.__setattr__(self, "gram", gram)
        if self.basis is not None:
            basis = _exact.as_matrix(self.basis)
            if len(basis) != n or _exact.matmul(basis, _exact.transpose(basis)) != gram:
                raise UsageError("basis does not reproduce the Gram matrix")
            object.__setattr__(self, "basis", basis)
        if self.closed_form_theta is not None:
            cf = self.closed_form_theta
            if isinstance(cf, dict):
                cf = tuple(sorted(cf.items()))
            object.__setattr__(self, "closed_form_theta", tuple((tuple(e), Fraction(c)) for e, c in cf))

    @property
    def dim(self):
        return len(self.gram)

    def __repr__(self):
        return f"Lattice({self.name!r}, dim={self.dim})"


@functools.lru_cache(maxsize=256)
def _gram_det(gram):
    return _exact.det(gram)


def det(L):
    return _gram_det(L.gram)


def volume(L):
    """Fundamental volume sqrt(det Gram)."""
    return math.sqrt(det(L))


def predicates(L):
    integral = all(v.denominator == 1 for row in L.gram for v in row)
    even = integral and all(L.gram[i][i] % 2 == 0 for i in range(L.dim))
    unimodular = integral and det(L) == 1
    return {"integral": integral, "even": even, "unimodular": unimodular}


def dual(L):
    basis = None
    if L.basis is not None:
        basis = _exact.transpose(_exact.inverse(L.basis))
    return Lattice(L.name + "*", _exact.inverse(L.gram), basis)


def scaled(L, alpha):
    """The lattice alpha * L for rational alpha > 0."""
    alpha = _exact.as_fraction(alpha)
    if alpha <= 0:
        raise UsageError("scale factor must be positive")
    gram = tuple(tuple(alpha * alpha * v for v in row) for row in L.gram)
    basis = None if L.basis is None else tuple(tuple(alpha * v for v in row) for row in L.basis)
    return Lattice(f"{alpha}*{L.name}", gram, basis)


def sublattice(L, m, name=None):
    """The sublattice spanned by the rows of integer matrix ``m`` in L's basis."""
    m = _exact.as_matrix(m)
    if any(v.denominator != 1 for row in m for v in row):
        raise UsageError("sublattice matrix must be integral")
    if _exact.det(m) == 0:
        raise UsageError("sublattice matrix must be nonsingular")
    gram = _exact.matmul(_exact.matmul(m, L.gram), _exact.transpose(m))
    basis = None if L.basis is None else _exact.matmul(m, L.basis)
    return Lattice(name or f"sub({L.name})", gram, basis)


@dataclass(frozen=True)
class ThetaCoeffs:
    """Exact counts of lattice vectors per squared norm, complete for norms <= max_norm."""

    entries: dict
    max_norm: Fraction

    def count(self, norm):
        norm = Fraction(norm)
        if norm > self.max_norm:
            raise UsageError(f"norm {norm} is beyond the enumerated bound {self.max_norm}")
        return self.entries.get(norm, 0)

    def restrict(self, max_norm):
        max_norm = Fraction(max_norm)
        return ThetaCoeffs({k: v for k, v in self.entries.items() if k <= max_norm}, max_norm)

    def evaluate(self, y):
        return math.fsum(c * math.exp(-math.pi * y * float(N)) for N, c in self.entries.items())


def _integer_gram(L):
    D = _exact.common_denominator(L.gram)
    return D, [[int(v * D) for v in row] for row in L.gram]


def _lll_gram(gi, delta=0.99):
    """LLL on an integer Gram matrix.

    Returns ``(G, U)`` with U unimodular and G = U gi U^T, both exact Python
    ints; only the Gram-Schmidt data is floating point.
    """
    n = len(gi)
    G = [list(row) for row in gi]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def gso():
        mu = [[0.0] * n for _ in range(n)]
        B = [0.0] * n
        for i in range(n):
            for j in range(i):
                mu[i][j] = (G[i][j] - sum(mu[j][m] * mu[i][m] * B[m] for m in range(j))) / B[j]
            B[i] = G[i][i] - sum(mu[i][m] ** 2 * B[m] for m in range(i))
        return mu, B

    def sub(k, j, r):
        # b_k -= r b_j
        gkk = G[k][k] - 2 * r * G[k][j] + r * r * G[j][j]
        for m in range(n):
            G[k][m] -= r * G[j][m]
            G[m][k] = G[k][m]
            U[k][m] -= r * U[j][m]
        G[k][k] = gkk

    mu, B = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            r = round(mu[k][j])
            if r:
                sub(k, j, r)
                for m in range(j):
                    mu[k][m] -= r * mu[j][m]
                mu[k][j] -= r
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            mu, B = gso()
            k = max(k - 1, 1)
    return G, U


def short_vectors(L, max_norm, budget=DEFAULT_BUDGET):
    """All coordinate vectors x with x^T G x <= max_norm.

    Returns ``(X, N, D)``: integer coordinates (one row per vector), exact norm
    numerators and their common denominator, so that norm = N / D.
    """
    max_norm = _exact.as_fraction(max_norm)
    if max_norm < 0:
        raise UsageError("max_norm must be nonnegative")
    n = L.dim
    D, gi0 = _integer_gram(L)
    # enumerate in a reduced basis, then map coordinates back
    gi, U = _lll_gram(gi0)
    gf = np.array([[v / D for v in row] for row in gi], dtype=float)
    R = np.linalg.cholesky(gf).T
    diag = np.diag(R)
    d = diag**2
    mu = R / diag[:, None]
    bound = float(max_norm) * (1 + _PAD) + _PAD

    nodes = 0
    done = []
    stack = [(np.zeros((1, n), dtype=np.int64), np.zeros(1), n - 1)]
    while stack:
        X, part, i = stack.pop()
        if i < 0:
            done.append(X)
            continue
        c = -(X[:, i + 1 :] @ mu[i, i + 1 :])
        rad = np.sqrt(np.maximum(bound - part, 0.0) / d[i])
        lo = np.ceil(c - rad).astype(np.int64)
        hi = np.floor(c + rad).astype(np.int64)
        cnt = np.maximum(hi - lo + 1, 0)
        tot = int(cnt.sum())
        if tot > _CHUNK and len(X) > 1:
            h = len(X) // 2
            stack.append((X[h:], part[h:], i))
            stack.append((X[:h], part[:h], i))
            continue
        nodes += tot
        if nodes > budget:
            raise BudgetError(
                f"enumeration of {L.name!r} to norm {max_norm} exceeds the budget of {budget} nodes"
            )
        if tot == 0:
            continue
        idx = np.repeat(np.arange(len(X)), cnt)
        off = np.arange(tot) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        xi = lo[idx] + off
        X = X[idx]
        X[:, i] = xi
        part = part[idx] + d[i] * (xi - c[idx]) ** 2
        stack.append((X, part, i - 1))

    X = np.vstack(done) if done else np.zeros((0, n), dtype=np.int64)
    big = max(abs(v) for row in gi for v in row)
    xmax = int(np.abs(X).max()) if X.size else 0
    if xmax * xmax * big * n * n < 2**62:
        N = ((X @ np.array(gi, dtype=np.int64)) * X).sum(axis=1)
    else:
        Xo = X.astype(object)
        N = ((Xo @ np.array(gi, dtype=object)) * Xo).sum(axis=1)
    keep = N <= math.floor(max_norm * D)
    X, N = X[keep], N[keep]
    if U != [[int(i == j) for j in range(n)] for i in range(n)]:
        Uo = np.array(U, dtype=object)
        X = (X.astype(object) @ Uo).astype(np.int64)
    return X, N, D


def theta_by_enumeration(L, max_norm, budget=DEFAULT_BUDGET):
    max_norm = _exact.as_fraction(max_norm)
    _, N, D = short_vectors(L, max_norm, budget)
    vals, counts = np.unique(N, return_counts=True)
    entries = {Fraction(int(v), D): int(c) for v, c in zip(vals, counts)}
    return ThetaCoeffs(entries, max_norm)


_counts_cache = {}


def _cached_counts(L, max_norm, budget):
    hit = _counts_cache.get(L.gram)
    if hit is not None and hit.max_norm >= max_norm:
        return hit.restrict(max_norm)
    tc = theta_by_enumeration(L, max_norm, budget)
    _counts_cache[L.gram] = tc
    return tc


def min_norm(L, budget=DEFAULT_BUDGET):
    top = min(L.gram[i][i] for i in range(L.dim))
    tc = _cached_counts(L, top, budget)
    return min(k for k in tc.entries if k > 0)


_modular_cache = {}


def modular_theta(L, budget=DEFAULT_BUDGET):
    """Theta series of an even unimodular lattice as a polynomial in E4 and Delta.

    The weight n/2 forms have basis E4^{n/8 - 3j} Delta^j, j <= n // 24, and
    E4^a Delta^j = q~^j + ..., so the counts at norms 0, 2, ..., 2 (n // 24)
    fix the coefficients by forward substitution.  Exact.
    """
    hit = _modular_cache.get(L.gram)
    if hit is not None:
        return hit
    p = predicates(L)
    n = L.dim
    if not (p["even"] and p["unimodular"]) or n % 8:
        raise UsageError(f"{L.name!r} is not even unimodular")
    top = n // 24
    tc = _cached_counts(L, 2 * top, budget)
    e4 = eisenstein_qexp(4, top + 1)
    d = delta_qexp(max(top + 1, 2))
    terms, acc = {}, QSeries.constant(0, top + 1)
    for j in range(top + 1):
        c = Fraction(tc.count(2 * j)) - acc.coeff(j)
        if c:
            key = (n // 8 - 3 * j, j)
            terms[key] = c
            acc = acc + (e4 ** key[0] * d**j).truncate(top + 1) * c
    poly = ThetaPoly("E4D", terms, n, L.name)
    _modular_cache[L.gram] = poly
    return poly


def _tail_bound(n, mu, y, R):
    """Upper bound on sum_{|x|^2 > R} exp(-pi y |x|^2).

    Packing bound: #{|x|^2 <= t} <= ((sqrt(t) + rho) / rho)^n with rho the
    packing radius; integrate by parts against exp(-pi y t).
    """
    rho = math.sqrt(mu) / 2
    a = math.pi * y
    logs = []
    for j in range(n + 1):
        s = j / 2 + 1
        Q = gammaincc(s, a * R)
        if Q <= 0:
            continue
        logs.append(
            math.log(math.comb(n, j)) - j * math.log(rho) + gammaln(s) - s * math.log(a) + math.log(Q)
        )
    if not logs:
        return 0.0
    m = max(logs)
    return a * math.exp(m) * math.fsum(math.exp(v - m) for v in logs)


def theta_numeric_lattice(L, y, tol=1e-13, budget=DEFAULT_BUDGET):
    """Theta_L(y) = sum exp(-pi y |x|^2) with a certified tail below ``tol``."""
    if y <= 0:
        raise UsageError("y must be positive")
    n = L.dim
    mu = float(min_norm(L, budget))
    R = mu
    while _tail_bound(n, mu, y, R) >= tol:
        R *= 1.1
        if R > 1e6 * mu:
            raise PrecisionError(f"cannot certify the theta tail of {L.name!r} at y={y}")
    R = Fraction(R).limit_denominator(1000) + Fraction(1, 1000)
    try:
        tc = _cached_counts(L, R, budget)
    except BudgetError as exc:
        raise PrecisionError(f"theta tail of {L.name!r} at y={y} needs norms up to {float(R):.3g}: {exc}") from exc
    return tc.evaluate(y)


def dual_theta_via_jacobi(L, y, tol=1e-13, budget=DEFAULT_BUDGET):
    """Theta of the dual lattice: Vol(L) y^{-n/2} Theta_L(1/y)."""
    if y <= 0:
        raise UsageError("y must be positive")
    return volume(L) * y ** (-L.dim / 2) * theta_numeric_lattice(L, 1 / y, tol, budget)


def closed_form_qexp(L, order):
    if L.closed_form_theta is None:
        raise UsageError(f"{L.name!r} has no closed-form theta series")
    th = [theta_expansion(w, order) for w in (2, 3, 4)]
    s = QSeries.constant(0, order)
    for (i, j, k), c in L.closed_form_theta:
        s = s + th[0] ** i * th[1] ** j * th[2] ** k * c
    return s


def closed_form_numeric(L, y, tol=1e-15):
    if L.closed_form_theta is None:
        raise UsageError(f"{L.name!r} has no closed-form theta series")
    q = math.exp(-math.pi * y)
    t = [theta_numeric(w, q, tol) for w in (2, 3, 4)]
    return math.fsum(float(c) * t[0] ** i * t[1] ** j * t[2] ** k for (i, j, k), c in L.closed_form_theta)


def closed_form_str(L):
    if L.closed_form_theta is None:
        return None
    parts = []
    for e, c in L.closed_form_theta:
        mono = "*".join(f"th{w}^{k}" for w, k in zip((2, 3, 4), e) if k)
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


# -- catalog -----------------------------------------------------------------


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _gram_of(basis):
    basis = _exact.as_matrix(basis)
    return _exact.matmul(basis, _exact.transpose(basis))


def cubic(n):
    return Lattice(f"Z{n}", _identity(n), _identity(n), {(0, n, 0): 1})


def checkerboard(n):
    if n == 1:
        rows = [[2]]
    elif n >= 2:
        # e1 + e2, then e_{k+1} - e_k
        rows = [[0] * n for _ in range(n)]
        rows[0][0] = rows[0][1] = 1
        for k in range(1, n):
            rows[k][k - 1], rows[k][k] = -1, 1
    else:
        raise UsageError("dimension must be positive")
    half = Fraction(1, 2)
    return Lattice(f"D{n}", _gram_of(rows), rows, {(0, n, 0): half, (0, 0, n): half})


def gosset():
    h = Fraction(1, 2)
    rows = [[2, 0, 0, 0, 0, 0, 0, 0]]
    for k in range(6):
        r = [0] * 8
        r[k], r[k + 1] = -1, 1
        rows.append(r)
    rows.append([h] * 8)
    return Lattice("E8", _gram_of(rows), rows, {(8, 0, 0): h, (0, 8, 0): h, (0, 0, 8): h})


def leech():
    return Lattice("Leech", LEECH_GRAM)


CATALOG_NAMES = ("Zn(n)", "Dn(n)", "D4", "E8", "Leech")


def catalog(name):
    """Look up a named lattice; parametrized families accept ``Zn(4)`` or ``Zn:4``."""
    key = name.strip()
    m = re.fullmatch(r"(Zn|Dn)\s*[(:]\s*(\d+)\s*\)?", key)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise UsageError("dimension must be positive")
        return cubic(n) if m.group(1) == "Zn" else checkerboard(n)
    if key == "D4":
        return checkerboard(4)
    if key == "E8":
        return gosset()
    if key in ("Leech", "Lambda24"):
        return leech()
    raise UsageError(f"unknown lattice {name!r}; catalog: {', '.join(CATALOG_NAMES)}")


# -- JSON --------------------------------------------------------------------


def lattice_from_json(doc):
    """Build a lattice from ``{name, dim, gram: [[rational strings]], basis?}``.

    ``{"catalog": "Zn:1", "scale": "4"}`` is accepted as a shorthand.
    """
    if isinstance(doc, str):
        return catalog(doc)
    if "catalog" in doc:
        L = catalog(doc["catalog"])
        if "scale" in doc:
            L = scaled(L, doc["scale"])
        if "name" in doc:
            L = Lattice(doc["name"], L.gram, L.basis, L.closed_form_theta)
        return L
    try:
        gram = doc["gram"]
    except KeyError:
        raise UsageError("lattice document needs a 'gram' field") from None
    L = Lattice(doc.get("name", "custom"), gram, doc.get("basis"))
    if "dim" in doc and int(doc["dim"]) != L.dim:
        raise UsageError(f"dim {doc['dim']} does not match the {L.dim}x{L.dim} Gram matrix")
    return L


def lattice_to_json(L):
    doc = {"name": L.name, "dim": L.dim, "gram": [[str(v) for v in row] for row in L.gram]}
    if L.basis is not None:
        doc["basis"] = [[str(v) for v in row] for row in L.basis]
    return doc


def load_lattice(path):
    with open(path) as fh:
        return lattice_from_json(json.load(fh))
