"""Poisson math: PMF, CDF table, sampling, moments, residue distribution."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

import jitterrng as jr
from jitterrng.poisson import PoissonSpec

from conftest import SEED_A, chi2_against, chi2_critical

# independent high-precision oracles (50-digit arithmetic, frozen)
PMF_7_7 = 0.14900277967433788522
RESIDUE_7_4_K0 = 0.25034394281694305261
EXACT_MAXDEV_7_4 = 3.43942816943053e-4
EXACT_MAXDEV_662_4 = 6.2969866660569e-4


def test_pmf_at_zero_is_exp_neg_mu():
    for mu in (0.1, 1.0, 7.0, 100.0, 700.0):
        assert jr.pmf(mu, 0) == pytest.approx(np.exp(-mu), rel=1e-12)


def test_pmf_frozen_oracle():
    assert jr.pmf(7, 7) == pytest.approx(PMF_7_7, rel=1e-13)


def test_pmf_sums_to_one():
    n = np.arange(int(100 + 12 * 10 + 50) + 1)
    assert jr.pmf(100.0, n).sum() == pytest.approx(1.0, abs=1e-12)


def test_pmf_matches_library_implementation():
    # cross-implementation oracle over a wide grid
    for mu in (0.5, 7.0, 100.0, 5000.0):
        n = np.arange(0, int(mu + 10 * np.sqrt(mu) + 20), max(1, int(mu // 50)))
        ours = jr.pmf(mu, n)
        ref = stats.poisson.pmf(n, mu)
        assert np.allclose(ours, ref, rtol=1e-10, atol=1e-300)


def test_pmf_no_overflow_large_n():
    assert jr.pmf(7.0, 10**6) == 0.0  # underflows cleanly, never overflows


def test_pmf_rejects_bad_args():
    with pytest.raises(ValueError):
        jr.pmf(0.0, 1)
    with pytest.raises(ValueError):
        jr.pmf(-3.0, 1)
    with pytest.raises(ValueError):
        jr.pmf(7.0, -1)
    with pytest.raises(ValueError):
        jr.pmf(jr.MAX_MU * 10, 1)


@pytest.mark.parametrize("mu", [1e-9, 0.5, 7.0, 100.0, 22950.0])
def test_cdf_table_invariants(mu):
    spec = PoissonSpec(mu)
    t = spec.cdf_table
    assert t[-1] > 1.0 - 1e-12
    assert np.all(np.diff(t) >= 0.0)  # non-decreasing (float64 resolution)
    assert t[0] == pytest.approx(np.exp(-mu) if mu < 700 else jr.pmf(mu, 0), rel=1e-12)
    assert np.all(t <= 1.0)


def test_cdf_left_edge_returns_zero():
    # smallest n with CDF(n) > u at u = 0 is 0
    spec = PoissonSpec(7.0)
    assert int(np.searchsorted(spec.cdf_table, 0.0, side="right")) == 0


def test_sample_mean_mu7(gen_a):
    spec = PoissonSpec(7.0)
    xs = jr.sample_many(spec, gen_a, 10**6)
    assert abs(xs.mean() - 7.0) <= 0.01


def test_sample_variance_mu100(gen_a):
    spec = PoissonSpec(100.0)
    xs = jr.sample_many(spec, gen_a, 10**6)
    assert abs(xs.var(ddof=1) - 100.0) <= 0.5


def test_sample_single_draws_match_bulk(gen_a, gen_b):
    a = jr.seed(SEED_A)
    spec = PoissonSpec(7.0)
    singles = [jr.sample(spec, a) for _ in range(500)]
    bulk = jr.sample_many(spec, jr.seed(SEED_A), 500)
    assert singles == bulk.tolist()


@pytest.mark.parametrize("mu", [7.0, 100.0])
def test_sampling_consistency_chi_square(mu):
    # bins 0..mu+6*sqrt(mu), probability-weighted expectations, tail pooled
    g = jr.seed(SEED_A + bytes([int(mu) & 0xFF]))
    spec = PoissonSpec(mu)
    n = 10**6
    xs = jr.sample_many(spec, g, n)
    edge = int(mu + 6 * np.sqrt(mu))
    counts = np.bincount(xs, minlength=edge + 1)
    obs = np.append(counts[:edge].astype(np.float64), counts[edge:].sum())
    probs = jr.pmf(mu, np.arange(edge))
    probs = np.append(probs, 1.0 - probs.sum())
    keep = probs * n >= 5  # pool bins with tiny expectations
    obs_k, exp_k = obs[keep], probs[keep] * n
    if (~keep).any():
        obs_k = np.append(obs_k, obs[~keep].sum())
        exp_k = np.append(exp_k, probs[~keep].sum() * n)
    stat = chi2_against(obs_k, exp_k)
    assert stat < chi2_critical(len(obs_k) - 1)


def test_mean_variance_identity(gen_a):
    spec = PoissonSpec(31.0)
    xs = jr.sample_many(spec, gen_a, 10**6)
    se = np.sqrt(2 * 31.0**2 / 10**6 + 31.0 / 10**6)  # var of (var - mean) approx
    assert abs(xs.var(ddof=1) - xs.mean()) < 3 * (se + np.sqrt(31.0 / 10**6))


def test_theoretical_moments_reference_rows():
    assert np.allclose(jr.theoretical_moments(7.0), (7, 7, 0.378, 0.143), atol=5e-4)
    assert np.allclose(jr.theoretical_moments(100.0), (100, 100, 0.100, 0.010), atol=5e-4)
    assert jr.theoretical_moments(1.0) == (1.0, 1.0, 1.0, 1.0)


def test_residue_distribution_frozen_oracles():
    r = jr.exact_residue_distribution(7.0, 4)
    assert r[0] == pytest.approx(RESIDUE_7_4_K0, abs=1e-13)
    assert np.abs(r - 0.25).max() == pytest.approx(EXACT_MAXDEV_7_4, abs=1e-13)
    r2 = jr.exact_residue_distribution(6.62, 4)
    assert np.abs(r2 - 0.25).max() == pytest.approx(EXACT_MAXDEV_662_4, abs=1e-12)


def test_residue_distribution_tiny_mu_concentrates_at_zero():
    r = jr.exact_residue_distribution(1e-9, 2)
    assert r[0] == pytest.approx(1.0, abs=1e-8)


def test_residue_deviation_within_bound_examples():
    assert np.abs(jr.exact_residue_distribution(7.0, 4) - 0.25).max() <= 6.84e-4
    # the 1e-3 figure at mu=6.62 is the analytic bound; the exact series sits below it
    assert (np.abs(jr.exact_residue_distribution(6.62, 4) - 0.25).max()
            <= jr.deviation_bound(6.62, 4) <= 1.001e-3)


@given(mu=st.floats(0.05, 2000.0), M=st.integers(2, 256))
@settings(max_examples=40)
def test_residue_distribution_sums_to_one(mu, M):
    r = jr.exact_residue_distribution(mu, M)
    assert abs(r.sum() - 1.0) <= 1e-12
    assert np.all(r >= 0)


def _residue_fourier(mu: float, M: int) -> np.ndarray:
    # independent route: discrete characteristic-function expansion
    j = np.arange(M)
    theta = 2.0 * np.pi * j / M
    amp = np.exp(mu * (np.cos(theta) - 1.0))
    phase = mu * np.sin(theta)
    k = np.arange(M)[:, None]
    return (amp * np.cos(phase - theta * k)).sum(axis=1) / M


@pytest.mark.parametrize("mu,M", [(0.3, 2), (2.0, 3), (7.0, 4), (11.5, 7),
                                  (100.0, 16), (350.0, 64), (1000.0, 256)])
def test_residue_distribution_cross_route(mu, M):
    series = jr.exact_residue_distribution(mu, M)
    fourier = _residue_fourier(mu, M)
    assert np.abs(series - fourier).max() < 1e-10


def test_residue_rejects_bad_modulus():
    with pytest.raises(ValueError):
        jr.exact_residue_distribution(7.0, 1)
    with pytest.raises(ValueError):
        jr.exact_residue_distribution(0.0, 4)


def test_spec_rejects_out_of_range_mu():
    with pytest.raises(ValueError):
        PoissonSpec(0.0)
    with pytest.raises(ValueError):
        PoissonSpec(2e5)
