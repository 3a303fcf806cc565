"""Gaussian wiretap channel: rate/SNR algebra, Eve's correct-decision
probability and a Monte Carlo coset-decoding simulator."""

import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _exact
from .errors import ConfigError, UsageError
from .lattice import Lattice, lattice_from_json, short_vectors, sublattice, volume
from .secrecy import theta_value

MC_CHUNK = 100_000
MAX_SIM_DIM = 8


class RegimeWarning(UserWarning):
    """The correct-decision approximation left its validity regime."""


def y_norm(sigma_e):
    return 1 / (2 * math.pi * sigma_e**2)


def required_sigma_for_y1():
    """Eve noise std for which a unit-volume coarse lattice operates at y = 1."""
    return (2 * math.pi) ** -0.5


def operating_point_y(R, R_s, gamma_e):
    """y = 2^{-(R - R_s)} gamma_e / (2 pi)."""
    if gamma_e <= 0:
        raise UsageError("gamma_e must be positive")
    return 2.0 ** (-(R - R_s)) * gamma_e / (2 * math.pi)


def secrecy_rate_unimodular(R, gamma_e):
    """Secrecy rate that puts a unimodular coarse lattice at y = 1.

    Solving y = 1 in :func:`operating_point_y` gives R_s = R - log2(gamma_e / (2 pi)),
    the inverse of gamma_e = pi 2^{R - R_s + 1}.  Out-of-range rates (negative,
    or above R) are returned as computed, with a RegimeWarning.
    """
    if gamma_e <= 0:
        raise UsageError("gamma_e must be positive")
    R_s = R - math.log2(gamma_e / (2 * math.pi))
    if R_s < 0:
        warnings.warn(f"negative secrecy rate {R_s:.4g}", RegimeWarning, stacklevel=2)
    elif R_s > R:
        warnings.warn(f"secrecy rate {R_s:.4g} exceeds the total rate {R:.4g}", RegimeWarning, stacklevel=2)
    return R_s


def gamma_for_unit_operating_point(R, R_s):
    """Inverse of :func:`secrecy_rate_unimodular`: gamma_e = pi 2^{R - R_s + 1}."""
    return math.pi * 2.0 ** (R - R_s + 1)


def coarse_volume(R_s, vol_b, n):
    return 2.0 ** (n * R_s / 2) * vol_b


def signal_energy(R, vol_b, n):
    """Energy per channel use, 2^R Vol(V(Lambda_b))^{2/n}."""
    return 2.0**R * vol_b ** (2 / n)


def operating_point_from_system(R, R_s, vol_b, n, sigma_e):
    """y = y_norm Vol(V(Lambda_e))^{2/n}, with the coarse volume fixed by R_s."""
    return y_norm(sigma_e) * coarse_volume(R_s, vol_b, n) ** (2 / n)


def index_matrix(lattice_b, lattice_e):
    """Integer M with basis_e = M basis_b, or ConfigError if the lattices are not nested."""
    if lattice_b.basis is None or lattice_e.basis is None:
        raise ConfigError("nesting check needs explicit bases for both lattices")
    m = _exact.matmul(lattice_e.basis, _exact.inverse(lattice_b.basis))
    if any(v.denominator != 1 for row in m for v in row):
        raise ConfigError(f"{lattice_e.name} is not a sublattice of {lattice_b.name}")
    return tuple(tuple(int(v) for v in row) for row in m)


@dataclass
class WiretapConfig:
    n: int
    sigma_b: float
    sigma_e: float
    R: float = None
    R_s: float = None
    vol_b: float = None
    lattice_e: Lattice = None
    lattice_b: Lattice = None

    def __post_init__(self):
        if not 0 < self.sigma_b < self.sigma_e:
            raise ConfigError(
                "need 0 < sigma_b < sigma_e: a positive secrecy capacity requires Eve's noise to exceed Bob's"
            )
        for lat in (self.lattice_e, self.lattice_b):
            if lat is not None and lat.dim != self.n:
                raise ConfigError(f"{lat.name} has dimension {lat.dim}, expected {self.n}")
        if self.lattice_b is not None:
            vb = volume(self.lattice_b)
            if self.vol_b is not None and not math.isclose(self.vol_b, vb, rel_tol=1e-9):
                raise ConfigError(f"vol_b={self.vol_b} disagrees with Vol(lattice_b)={vb}")
            self.vol_b = vb
        self.index = None
        if self.lattice_b is not None and self.lattice_e is not None:
            m = index_matrix(self.lattice_b, self.lattice_e)
            self.index = abs(int(_exact.det(_exact.as_matrix(m))))
        if self.lattice_e is not None and self.vol_b is not None:
            ratio = volume(self.lattice_e) / self.vol_b
            if self.R_s is None:
                self.R_s = 2 * math.log2(ratio) / self.n
            elif not math.isclose(coarse_volume(self.R_s, self.vol_b, self.n), volume(self.lattice_e), rel_tol=1e-9):
                raise ConfigError("Vol(lattice_e) != 2^(n R_s / 2) Vol(lattice_b)")
        if self.R_s is not None and self.R is not None and not 0 <= self.R_s <= self.R:
            raise ConfigError("need 0 <= R_s <= R")

    @classmethod
    def from_json(cls, doc):
        doc = dict(doc)
        lb = doc.pop("lattice_b", None)
        le = doc.pop("lattice_e", None)
        lattice_b = None if lb is None else lattice_from_json(lb)
        if isinstance(le, dict) and "sublattice" in le:
            if lattice_b is None:
                raise ConfigError("'sublattice' shorthand needs lattice_b")
            lattice_e = sublattice(lattice_b, le["sublattice"], le.get("name"))
        else:
            lattice_e = None if le is None else lattice_from_json(le)
        unknown = set(doc) - {"n", "sigma_b", "sigma_e", "R", "R_s", "vol_b"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(lattice_e=lattice_e, lattice_b=lattice_b, **doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def eve_correct_prob_formula(cfg):
    """(1 / (sqrt(2 pi) sigma_e))^n Vol(V(Lambda_b)) Theta_{Lambda_e}(1 / (2 pi sigma_e^2)).

    An approximation for moderate-to-high secrecy rates; outside that regime it
    can exceed 1.  The raw value is returned and a RegimeWarning is issued.
    """
    if cfg.lattice_e is None or cfg.vol_b is None:
        raise ConfigError("formula needs lattice_e and vol_b")
    pre = (1 / (math.sqrt(2 * math.pi) * cfg.sigma_e)) ** cfg.n
    value = pre * cfg.vol_b * theta_value(cfg.lattice_e, y_norm(cfg.sigma_e))
    if value > 1:
        warnings.warn(f"formula value {value:.4g} exceeds 1", RegimeWarning, stacklevel=2)
    return value


@dataclass
class MonteCarloResult:
    p_hat: float
    ci95: float
    trials: int
    successes: int


class _CosetDecoder:
    """Exact nearest-point decoding in Lambda_b plus coset membership for Lambda_b / Lambda_e."""

    def __init__(self, lattice_b, m):
        self.B = np.array([[float(v) for v in row] for row in lattice_b.basis])
        self.Binv = np.linalg.inv(self.B)
        G = self.B @ self.B.T
        self.U = np.linalg.cholesky(G).T
        self.d = np.diag(self.U) ** 2
        self.mu = self.U / np.diag(self.U)[:, None]
        mq = _exact.as_matrix(m)
        adj = _exact.inverse(mq)
        det = _exact.det(mq)
        self.adj = np.array([[int(v * det) for v in row] for row in adj], dtype=np.int64)
        self.det = abs(int(det))
        self.M = np.array(m, dtype=np.int64)
        # nearest-plane error e obeys |e|^2 <= sum(d)/4, and the closest point
        # differs from the nearest-plane point by v with |v| <= 2|e|
        radius = Fraction(float(self.d.sum())).limit_denominator(10**6) + Fraction(1, 10**6)
        S, _, _ = short_vectors(lattice_b, radius)
        self.S = S
        self.SB = S.astype(float) @ self.B
        self.Snorm = (self.SB**2).sum(axis=1)

    def nearest_plane(self, r):
        u = r @ self.Binv
        n = u.shape[1]
        z = np.zeros_like(u, dtype=np.int64)
        for i in range(n - 1, -1, -1):
            c = u[:, i] + (u[:, i + 1 :] - z[:, i + 1 :]) @ self.mu[i, i + 1 :]
            z[:, i] = np.rint(c).astype(np.int64)
        return z

    def decode(self, r):
        z = self.nearest_plane(r)
        e = r - z.astype(float) @ self.B
        out = np.empty_like(z)
        step = max(1, 4_000_000 // max(len(self.S), 1))
        for s in range(0, len(r), step):
            es = e[s : s + step]
            dist = self.Snorm[None, :] - 2 * es @ self.SB.T
            out[s : s + step] = z[s : s + step] + self.S[np.argmin(dist, axis=1)]
        return out

    def same_coset(self, z1, z2):
        return np.all(((z1 - z2) @ self.adj) % self.det == 0, axis=1)


def _mc_chunk(dec, sigma, trials, seed_seq, box):
    rng = np.random.default_rng(seed_seq)
    n = dec.B.shape[0]
    coset = rng.integers(0, dec.det, size=(trials, n))
    w = rng.integers(-box, box + 1, size=(trials, n))
    z_t = coset + w @ dec.M
    x = z_t.astype(float) @ dec.B
    r = x + sigma * rng.standard_normal((trials, n))
    z_hat = dec.decode(r)
    return int(dec.same_coset(z_hat, z_t).sum())


def monte_carlo_eve(cfg, trials, seed, box=3, workers=1):
    """Estimate Eve's probability of decoding the right coset.

    Each trial picks a uniform coset of Lambda_b / Lambda_e and a random point
    of Lambda_e in a box of ``box`` coarse cells per side, adds N(0, sigma_e^2)
    noise per real dimension, decodes to the nearest point of Lambda_b and
    compares cosets.  Chunks of trials draw from independent substreams of
    ``seed``, so the estimate does not depend on ``workers``.
    """
    if trials < 100:
        raise UsageError("need at least 100 trials")
    if cfg.lattice_b is None or cfg.lattice_e is None:
        raise ConfigError("simulation needs lattice_b and lattice_e")
    if cfg.n > MAX_SIM_DIM:
        raise UsageError(f"simulation supports n <= {MAX_SIM_DIM}")
    m = index_matrix(cfg.lattice_b, cfg.lattice_e)
    dec = _CosetDecoder(cfg.lattice_b, m)
    sizes = [MC_CHUNK] * (trials // MC_CHUNK)
    if trials % MC_CHUNK:
        sizes.append(trials % MC_CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, seeds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            hits = list(ex.map(lambda j: _mc_chunk(dec, cfg.sigma_e, j[0], j[1], box), jobs))
    else:
        hits = [_mc_chunk(dec, cfg.sigma_e, k, s, box) for k, s in jobs]
    succ = sum(hits)
    p = succ / trials
    return MonteCarloResult(p, 1.96 * math.sqrt(p * (1 - p) / trials), trials, succ)
