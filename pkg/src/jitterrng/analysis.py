"""Statistical validation: byte-stream entropy/uniformity metrics and sample moments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# chi-square critical value, 255 degrees of freedom, alpha = 0.001
CHI2_CRITICAL_255 = 325.8
CHI2_MIN_BYTES = 5 * 256  # expected count >= 5 per bin


def byte_histogram(data) -> np.ndarray:
    buf = np.frombuffer(bytes(data), dtype=np.uint8)
    return np.bincount(buf, minlength=256)


def _hist_probs(data) -> tuple[np.ndarray, int]:
    hist = byte_histogram(data)
    n = int(hist.sum())
    if n == 0:
        raise ValueError("empty input")
    return hist / n, n


def shannon_entropy(data) -> float:
    """-sum p log2 p over the 256-bin empirical byte histogram."""
    p, _ = _hist_probs(data)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0  # avoid -0.0


def min_entropy(data) -> float:
    """-log2 of the most probable byte value."""
    p, _ = _hist_probs(data)
    return float(-np.log2(p.max())) + 0.0  # avoid -0.0


def chi_square_uniform(data) -> tuple[float, bool]:
    """(statistic vs the uniform byte law, pass at alpha=0.001)."""
    hist = byte_histogram(data)
    n = int(hist.sum())
    if n < CHI2_MIN_BYTES:
        raise ValueError(
            f"chi-square needs >= {CHI2_MIN_BYTES} bytes for expected counts >= 5, got {n}")
    expected = n / 256.0
    stat = float(((hist - expected) ** 2 / expected).sum())
    return stat, stat < CHI2_CRITICAL_255


@dataclass(frozen=True)
class StreamReport:
    sample_count: int
    shannon_bits_per_byte: float
    min_entropy_bits_per_byte: float
    chi_square: float | None  # None when too few bytes for valid expected counts
    pass_alpha_001: bool | None
    byte_histogram: np.ndarray = field(repr=False)

    def __post_init__(self):
        # the <= chain holds exactly in math; leave room for float round-off
        # (the two entropies coincide on an exactly flat histogram)
        if not (0.0 <= self.min_entropy_bits_per_byte
                <= self.shannon_bits_per_byte + 1e-9 <= 8.0 + 2e-9):
            raise AssertionError("entropy ordering violated")
        if int(self.byte_histogram.sum()) != self.sample_count:
            raise AssertionError("histogram does not cover the sample")


def analyze_bytes(data) -> StreamReport:
    """Full uniformity report; entropy-only when the stream is too short for chi-square."""
    hist = byte_histogram(data)
    n = int(hist.sum())
    if n == 0:
        raise ValueError("empty input")
    p = hist / n
    nz = p[p > 0]
    shannon = float(-(nz * np.log2(nz)).sum()) + 0.0
    minent = float(-np.log2(p.max())) + 0.0
    if n >= CHI2_MIN_BYTES:
        expected = n / 256.0
        chi2 = float(((hist - expected) ** 2 / expected).sum())
        ok = chi2 < CHI2_CRITICAL_255
    else:
        chi2, ok = None, None
    return StreamReport(
        sample_count=n,
        shannon_bits_per_byte=shannon,
        min_entropy_bits_per_byte=minent,
        chi_square=chi2,
        pass_alpha_001=ok,
        byte_histogram=hist,
    )


@dataclass(frozen=True)
class MomentReport:
    mean: float
    variance: float
    skewness: float  # NaN for constant input
    excess_kurtosis: float  # NaN for constant input
    sample_count: int

    @property
    def higher_moments_defined(self) -> bool:
        return not (math.isnan(self.skewness) or math.isnan(self.excess_kurtosis))


def moments(values) -> MomentReport:
    """First four sample moments.

    Variance uses the unbiased n-1 divisor; skewness m3/m2^(3/2) and excess
    kurtosis m4/m2^2 - 3 use population central moments (differences are
    O(1/n)). A constant sequence reports NaN for the shape moments.
    """
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    if n < 4:
        raise ValueError(f"moments need >= 4 values, got {n}")
    mean = float(x.mean())
    d = x - mean
    m2 = float((d * d).mean())
    var = float(d.dot(d) / (n - 1))
    if m2 == 0.0:
        skew = kurt = math.nan
    else:
        m3 = float((d ** 3).mean())
        m4 = float((d ** 4).mean())
        skew = m3 / m2 ** 1.5
        kurt = m4 / (m2 * m2) - 3.0
    return MomentReport(mean=mean, variance=var, skewness=skew,
                        excess_kurtosis=kurt, sample_count=n)


def moments_of_pmf(support, probs) -> tuple[float, float, float, float]:
    """(mean, variance, skewness, excess kurtosis) of an exact discrete law.

    Probability weighting instead of sampling: a deterministic cross-check
    tying the moment formulas to a known PMF.
    """
    x = np.asarray(support, dtype=np.float64)
    p = np.asarray(probs, dtype=np.float64)
    if x.shape != p.shape:
        raise ValueError("support and probabilities must align")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("probabilities must sum to 1")
    mean = float((x * p).sum())
    d = x - mean
    m2 = float((d * d * p).sum())
    if m2 == 0.0:
        return mean, 0.0, math.nan, math.nan
    m3 = float((d ** 3 * p).sum())
    m4 = float((d ** 4 * p).sum())
    return mean, m2, m3 / m2 ** 1.5, m4 / (m2 * m2) - 3.0
