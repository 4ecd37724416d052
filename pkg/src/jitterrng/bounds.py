"""Analytic certification of the modular projection.

Closed forms only:
  deviation bound     max_k |P(N mod M = k) - 1/M| <= ((M-1)/M) exp(-2 mu sin^2(pi/M))
  minimum mu          mu*(eps) = ln((M-1)/(M eps)) / (2 sin^2(pi/M))
  min-entropy bound   H_min >= log2(M) - log2(1 + (M-1) exp(-2 mu sin^2(pi/M)))
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# moduli whose residue width divides a byte exactly
_BYTE_ALIGNED = {2: 8, 4: 4, 16: 2, 256: 1}


def _check_args(mu: float, M: int) -> tuple[float, int]:
    mu = float(mu)
    if not math.isfinite(mu) or mu <= 0.0:
        raise ValueError(f"mu must be a positive finite real, got {mu}")
    M = int(M)
    if M < 2:
        raise ValueError(f"modulus must be >= 2, got {M}")
    return mu, M


def deviation_bound(mu: float, M: int) -> float:
    """Upper bound on the worst-case residue deviation from 1/M."""
    mu, M = _check_args(mu, M)
    return ((M - 1) / M) * math.exp(-2.0 * mu * math.sin(math.pi / M) ** 2)


def invert_bound(epsilon: float, M: int) -> float:
    """Smallest mu whose deviation bound is <= epsilon."""
    M = int(M)
    if M < 2:
        raise ValueError(f"modulus must be >= 2, got {M}")
    epsilon = float(epsilon)
    limit = (M - 1) / M
    if not (0.0 < epsilon <= limit):
        raise ValueError(
            f"epsilon must lie in (0, {limit}] for M={M}, got {epsilon}")
    return math.log((M - 1) / (M * epsilon)) / (2.0 * math.sin(math.pi / M) ** 2)


def min_entropy_bound(mu: float, M: int) -> float:
    """Lower bound on per-sample min-entropy of the residue, in bits."""
    mu, M = _check_args(mu, M)
    tail = (M - 1) * math.exp(-2.0 * mu * math.sin(math.pi / M) ** 2)
    return math.log2(M) - math.log1p(tail) / math.log(2.0)


@dataclass(frozen=True)
class BoundReport:
    mu: float
    modulus: int
    deviation_bound: float
    min_entropy_per_sample: float
    samples_per_byte: int | None  # None when residue width does not divide 8
    min_entropy_per_byte: float | None
    shannon_limit_per_byte: float = 8.0


def per_byte_report(mu: float, M: int) -> BoundReport:
    """Bound report scaled to bytes when M packs evenly into them.

    Per-byte min-entropy is samples_per_byte x the per-sample bound
    (independent samples). For moduli that do not tile a byte (8, 32, 64,
    128, or non-powers of two) only per-sample figures are reported.
    """
    mu, M = _check_args(mu, M)
    dev = deviation_bound(mu, M)
    per_sample = min_entropy_bound(mu, M)
    spb = _BYTE_ALIGNED.get(M)
    per_byte = spb * per_sample if spb is not None else None
    return BoundReport(
        mu=mu,
        modulus=M,
        deviation_bound=dev,
        min_entropy_per_sample=per_sample,
        samples_per_byte=spb,
        min_entropy_per_byte=per_byte,
    )
