import json
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import norm

from secrecygain import lattice as L
from secrecygain import wiretap as W
from secrecygain.errors import ConfigError, UsageError


def z4z(sigma_e, sigma_b=0.01):
    return W.WiretapConfig.from_json(
        {"n": 1, "sigma_b": sigma_b, "sigma_e": sigma_e, "lattice_b": "Zn:1", "lattice_e": {"sublattice": [[4]]}}
    )


def z_mod_4_oracle(sigma):
    # Eve decodes Z and is right when the rounding error is a multiple of 4
    return math.fsum(norm.cdf((4 * k + 0.5) / sigma) - norm.cdf((4 * k - 0.5) / sigma) for k in range(-200, 201))


def test_operating_point_examples():
    assert W.operating_point_y(3, 2, 4 * math.pi) == pytest.approx(1.0)
    assert W.operating_point_y(0, 0, 2 * math.pi) == pytest.approx(1.0)
    with pytest.raises(UsageError):
        W.operating_point_y(1, 0, 0)


def test_rate_examples():
    assert W.secrecy_rate_unimodular(3, 4 * math.pi) == pytest.approx(2.0, abs=1e-12)
    assert W.gamma_for_unit_operating_point(3, 2) == pytest.approx(4 * math.pi)
    with pytest.warns(W.RegimeWarning, match="negative"):
        assert W.secrecy_rate_unimodular(1, 1e6) < 0
    with pytest.warns(W.RegimeWarning, match="exceeds"):
        assert W.secrecy_rate_unimodular(1, 1e-3) > 1


@settings(max_examples=200, deadline=None)
@given(R=st.floats(0.0, 12.0), g_db=st.floats(-20.0, 40.0))
def test_round_trip_property(R, g_db):
    g = 10 ** (g_db / 10)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", W.RegimeWarning)
        rs = W.secrecy_rate_unimodular(R, g)
    assert abs(W.operating_point_y(R, rs, g) - 1) < 1e-12
    assert W.gamma_for_unit_operating_point(R, rs) == pytest.approx(g, rel=1e-12)


def test_required_sigma():
    assert W.y_norm(W.required_sigma_for_y1()) == pytest.approx(1.0)


@settings(max_examples=100, deadline=None)
@given(R=st.floats(0.5, 8), frac=st.floats(0, 1), n=st.sampled_from([1, 4, 8, 24]), s_e=st.floats(0.05, 3))
def test_system_and_normalized_operating_points_agree(R, frac, n, s_e):
    # a unimodular Lambda_b with Eve's SNR gamma = E_s / sigma_e^2
    rs = frac * R
    gamma = W.signal_energy(R, 1.0, n) / s_e**2
    assert W.operating_point_from_system(R, rs, 1.0, n, s_e) == pytest.approx(W.operating_point_y(R, rs, gamma), rel=1e-12)


def test_signal_energy_scaling():
    assert W.signal_energy(2, 16, 4) == pytest.approx(4 * 4)
    assert W.coarse_volume(2, 3, 2) == pytest.approx(12)


@pytest.mark.parametrize(
    "base, m",
    [
        ("Zn:1", [[4]]),
        ("Zn:2", [[2, 0], [0, 2]]),
        ("D4", [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]),
        ("E8", [[2 if i == j else 0 for j in range(8)] for i in range(8)]),
        ("Zn:3", [[1, 1, 0], [0, 2, 1], [0, 0, 3]]),
    ],
)
def test_volume_relation_exact(base, m):
    lb = L.catalog(base)
    le = L.sublattice(lb, m)
    cfg = W.WiretapConfig(lb.dim, 0.1, 1.0, lattice_b=lb, lattice_e=le)
    index = abs(round(float(np.linalg.det(np.array(m, dtype=float)))))
    assert cfg.index == index
    # Vol_e^2 = 2^{n R_s} Vol_b^2 with 2^{n R_s} = index^2, exactly
    assert L.det(le) == index**2 * L.det(lb)
    assert 2 ** (lb.dim * cfg.R_s) == pytest.approx(index**2, rel=1e-12)
    assert W.coarse_volume(cfg.R_s, cfg.vol_b, cfg.n) == pytest.approx(L.volume(le), rel=1e-12)


def test_index_matrix_detects_non_nesting():
    with pytest.raises(ConfigError):
        W.index_matrix(L.cubic(2), L.scaled(L.cubic(2), Fraction(1, 2)))
    assert W.index_matrix(L.cubic(1), L.sublattice(L.cubic(1), [[3]])) == ((3,),)


def test_config_validation():
    with pytest.raises(ConfigError, match="sigma_e"):
        W.WiretapConfig(1, 1.0, 0.5)
    with pytest.raises(ConfigError):
        W.WiretapConfig(2, 0.1, 1.0, lattice_b=L.cubic(1))
    with pytest.raises(ConfigError):
        W.WiretapConfig(1, 0.1, 1.0, R=1.0, R_s=2.0)
    with pytest.raises(ConfigError):
        W.WiretapConfig.from_json({"n": 1, "sigma_b": 0.1, "sigma_e": 1, "bogus": 3})
    with pytest.raises(ConfigError):
        W.WiretapConfig.from_json({"n": 1, "sigma_b": 0.1, "sigma_e": 1, "lattice_e": {"sublattice": [[2]]}})
    with pytest.raises(ConfigError):
        W.WiretapConfig(1, 0.1, 1.0, R_s=1.0, lattice_b=L.cubic(1), lattice_e=L.sublattice(L.cubic(1), [[4]]))


def test_config_load(tmp_path):
    doc = {"n": 1, "sigma_b": 0.1, "sigma_e": 0.8, "lattice_b": "Zn:1", "lattice_e": {"sublattice": [[4]]}, "R": 5}
    p = tmp_path / "c.json"
    p.write_text(json.dumps(doc))
    cfg = W.WiretapConfig.load(str(p))
    assert cfg.index == 4 and cfg.R_s == pytest.approx(4.0) and cfg.vol_b == 1.0


def test_formula_value_and_warning():
    cfg = z4z(0.8)
    direct = 1 / (math.sqrt(2 * math.pi) * 0.8) * math.fsum(
        math.exp(-16 * k * k / (2 * 0.64)) for k in range(-50, 51)
    )
    assert W.eve_correct_prob_formula(cfg) == pytest.approx(direct, rel=1e-12)
    with pytest.warns(W.RegimeWarning):
        W.eve_correct_prob_formula(z4z(0.05))


def test_monte_carlo_against_exact_probability():
    for s in (0.3, 0.8, 2.0):
        mc = W.monte_carlo_eve(z4z(s), 200_000, seed=11)
        assert abs(mc.p_hat - z_mod_4_oracle(s)) <= 3 * mc.ci95 + 1e-12


def test_monte_carlo_d4_against_coset_oracle():
    # for D4 / 2D4 compare against an estimate with brute-force nearest-point search
    lb = L.checkerboard(4)
    cfg = W.WiretapConfig(4, 0.1, 0.6, lattice_b=lb, lattice_e=L.sublattice(lb, [[2 if i == j else 0 for j in range(4)] for i in range(4)]))
    mc = W.monte_carlo_eve(cfg, 20_000, seed=3)
    rng = np.random.default_rng(99)
    pts = np.array([v for v in np.ndindex(*(9,) * 4)]) - 4
    pts = pts[pts.sum(axis=1) % 2 == 0]
    centre = pts[np.abs(pts).max(axis=1) <= 1]
    trials = 4000
    x = centre[rng.integers(0, len(centre), trials)]
    r = x + 0.6 * rng.standard_normal((trials, 4))
    nearest = pts[np.argmin(((r[:, None, :] - pts[None]) ** 2).sum(axis=2), axis=1)]
    # 2D4 membership in Z^4 coordinates: all entries even with coordinate sum divisible by 4
    diff = nearest - x
    ok = np.all(diff % 2 == 0, axis=1) & (diff.sum(axis=1) % 4 == 0)
    p_ref = ok.mean()
    se = math.sqrt(p_ref * (1 - p_ref) / trials)
    assert abs(mc.p_hat - p_ref) < 3 * (se + mc.ci95 / 1.96)


def test_monte_carlo_is_deterministic():
    cfg = z4z(0.8)
    a = W.monte_carlo_eve(cfg, 250_000, seed=5)
    b = W.monte_carlo_eve(cfg, 250_000, seed=5, workers=3)
    c = W.monte_carlo_eve(cfg, 250_000, seed=6)
    assert a == b
    assert a.successes != c.successes


def test_monte_carlo_box_invariance():
    cfg = z4z(0.8)
    a = W.monte_carlo_eve(cfg, 200_000, seed=1, box=0)
    b = W.monte_carlo_eve(cfg, 200_000, seed=2, box=10)
    assert abs(a.p_hat - b.p_hat) < 3 * math.hypot(a.ci95, b.ci95)


def test_monte_carlo_guards():
    with pytest.raises(UsageError):
        W.monte_carlo_eve(z4z(0.8), 10, seed=1)
    big = L.scaled(L.cubic(9), 1)
    cfg = W.WiretapConfig(9, 0.1, 1.0, lattice_b=big, lattice_e=L.sublattice(big, [[2 if i == j else 0 for j in range(9)] for i in range(9)]))
    with pytest.raises(UsageError):
        W.monte_carlo_eve(cfg, 1000, seed=1)
    with pytest.raises(ConfigError):
        W.monte_carlo_eve(W.WiretapConfig(1, 0.1, 1.0), 1000, seed=1)
