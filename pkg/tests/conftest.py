import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=50,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SEED_A = bytes.fromhex("8f4e1c7a2b9d03655d41e8c09a72f3b61b5c88d2e6a90f4733c1a5be97d20e84")
SEED_B = bytes.fromhex("02993f6c81d4ab5e7e60124fcd8b39a6a7f85c30b912d6e44421098dfce57b13")


@pytest.fixture
def gen_a():
    from jitterrng import seed
    return seed(SEED_A)


@pytest.fixture
def gen_b():
    from jitterrng import seed
    return seed(SEED_B)


@pytest.fixture(scope="session")
def warm_engine():
    """Compile the engine kernels once so timed tests measure steady state."""
    import jitterrng as jr
    cfg = jr.RpssConfig(mu=5.0, security_discard=2)
    eng = jr.RpssEngine(cfg, SEED_A)
    eng.generate_counts(16)
    cfg_s = jr.RpssConfig(mu=5.0, security_discard=2, jitter_source=jr.SCRIPTED,
                          script=(3, 5))
    jr.RpssEngine(cfg_s, SEED_A).generate_counts(16)
    return True


def chi2_critical(dof: int, alpha: float = 0.001) -> float:
    from scipy import stats
    return float(stats.chi2.isf(alpha, dof))


def chi2_against(counts: np.ndarray, expected: np.ndarray) -> float:
    counts = np.asarray(counts, dtype=np.float64)
    return float(((counts - expected) ** 2 / expected).sum())
