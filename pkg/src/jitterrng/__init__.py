"""Timing-jitter random byte generator.

A recursive permutation engine draws Poisson-distributed counts, times each
burst of small Fisher-Yates shuffles on the monotonic clock, and feeds the
elapsed ticks back into the deterministic generator state. Counts (or the
elapsed ticks themselves) reduced modulo M pack into byte streams whose
distance from uniform is analytically bounded and statistically validated.
"""

__version__ = "0.1.0"

from .analysis import (CHI2_CRITICAL_255, MomentReport, StreamReport,
                       analyze_bytes, byte_histogram, chi_square_uniform,
                       min_entropy, moments, moments_of_pmf, shannon_entropy)
from .bounds import (BoundReport, deviation_bound, invert_bound,
                     min_entropy_bound, per_byte_report)
from .detprng import (DEFAULT_ADVANCE_CAP, MIN_SEED_BYTES, GeneratorState, seed)
from .poisson import (MAX_MU, PoissonSpec, exact_residue_distribution, pmf,
                      sample, sample_many, theoretical_moments)
from .projection import PACKABLE_MODULI, pack_bytes, project, unpack_bytes
from .rpss import (REAL_CLOCK, SCRIPTED, TICK_ENV_VAR, RpssConfig,
                   RpssCycleRecord, RpssDiagnostics, RpssEngine,
                   default_tick_ns, derive_obfuscation_seed, generate_counts,
                   generate_elapsed, run_cycle)
from .timing import CalibrationResult, calibrate

__all__ = [
    "__version__",
    "CHI2_CRITICAL_255", "MomentReport", "StreamReport", "analyze_bytes",
    "byte_histogram", "chi_square_uniform", "min_entropy", "moments",
    "moments_of_pmf", "shannon_entropy",
    "BoundReport", "deviation_bound", "invert_bound", "min_entropy_bound",
    "per_byte_report",
    "DEFAULT_ADVANCE_CAP", "MIN_SEED_BYTES", "GeneratorState", "seed",
    "MAX_MU", "PoissonSpec", "exact_residue_distribution", "pmf", "sample",
    "sample_many", "theoretical_moments",
    "PACKABLE_MODULI", "pack_bytes", "project", "unpack_bytes",
    "REAL_CLOCK", "SCRIPTED", "TICK_ENV_VAR", "RpssConfig", "RpssCycleRecord",
    "RpssDiagnostics", "RpssEngine", "default_tick_ns",
    "derive_obfuscation_seed", "generate_counts", "generate_elapsed",
    "run_cycle",
    "CalibrationResult", "calibrate",
]
