"""Monotonic-clock granularity probing and tick recommendation."""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce


@dataclass(frozen=True)
class CalibrationResult:
    trials: int
    min_positive_delta_ns: int
    recommended_tick_ns: int
    zero_delta_fraction: float
    common_deltas: tuple[tuple[int, int], ...] = field(default=())  # (delta_ns, count)


def calibrate(trials: int = 200_000, clock=time.perf_counter_ns) -> CalibrationResult:
    """Probe successive clock reads and recommend a tick size.

    The recommendation is the GCD of the observed positive deltas: on a clock
    quantized to q nanoseconds every delta is a multiple of q, so the GCD
    recovers q; on a continuous clock it collapses to 1.
    """
    if trials < 2:
        raise ValueError("trials must be >= 2")
    reads = [clock() for _ in range(trials + 1)]
    deltas = [b - a for a, b in zip(reads, reads[1:])]
    positive = [d for d in deltas if d > 0]
    zero_fraction = 1.0 - len(positive) / len(deltas)
    if not positive:
        return CalibrationResult(trials, 0, 1, zero_fraction)
    g = 0
    for d in positive:
        g = math.gcd(g, d)
        if g == 1:
            break
    top = Counter(positive).most_common(8)
    return CalibrationResult(
        trials=trials,
        min_positive_delta_ns=min(positive),
        recommended_tick_ns=max(int(g), 1),
        zero_delta_fraction=zero_fraction,
        common_deltas=tuple(top),
    )
