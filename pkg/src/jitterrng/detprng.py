"""Seedable 256-bit-state generator with 64-bit output and step-exact advance().

The generator is the entropy container of the engine: every elapsed-tick
measurement is fed back as advance(n_t), so reproducibility is defined in
terms of (seed, call schedule) and nothing else.
"""

from __future__ import annotations

import hashlib

import numpy as np

from . import _kernels as _k

MIN_SEED_BYTES = 16
DEFAULT_ADVANCE_CAP = 1 << 24

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix_stream(acc: int) -> tuple[int, int]:
    """One splitmix-style step: returns (new accumulator, output word)."""
    acc = (acc + _GOLDEN) & _MASK64
    return acc, int(_k.mix64(np.uint64(acc)))


class GeneratorState:
    """Deterministic generator state plus a 64-bit counter of next() calls."""

    __slots__ = ("_s", "_seed_material")

    def __init__(self, state: np.ndarray, seed_material: bytes):
        self._s = state
        self._seed_material = bytes(seed_material)

    @property
    def call_count(self) -> int:
        return int(self._s[4])

    @property
    def state_words(self) -> tuple[int, int, int, int]:
        """Current 256-bit state as four words (for bitwise comparisons)."""
        return tuple(int(w) for w in self._s[:4])

    def seed_fingerprint(self) -> str:
        """SHA-256 of the seed material; safe to log, unlike the seed itself."""
        return hashlib.sha256(self._seed_material).hexdigest()

    def clone(self) -> "GeneratorState":
        return GeneratorState(self._s.copy(), self._seed_material)

    def next(self) -> int:
        return int(_k.gen_next(self._s))

    def next_double(self) -> float:
        return float(_k.gen_next_double(self._s))

    def next_int(self, bound: int) -> int:
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        if bound > _MASK64:
            raise ValueError("bound exceeds 64-bit range")
        return int(_k.gen_next_int(self._s, np.uint64(bound)))

    def advance(self, k: int, cap: int = DEFAULT_ADVANCE_CAP) -> None:
        if k < 0:
            raise ValueError(f"advance step count must be >= 0, got {k}")
        if cap < 1:
            raise ValueError(f"advance cap must be >= 1, got {cap}")
        _k.gen_advance(self._s, np.uint64(k), np.uint64(cap))

    def words(self, count: int) -> np.ndarray:
        """count raw 64-bit outputs as an array (bulk path for analysis)."""
        out = np.empty(count, dtype=np.uint64)
        _k.fill_words(self._s, out)
        return out

    def ints(self, bound: int, count: int) -> np.ndarray:
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        out = np.empty(count, dtype=np.uint64)
        _k.fill_ints(self._s, np.uint64(bound), out)
        return out

    def __repr__(self) -> str:  # never expose state words
        return (f"GeneratorState(seed_fingerprint={self.seed_fingerprint()[:12]}..., "
                f"call_count={self.call_count})")


def seed(seed_material: bytes) -> GeneratorState:
    """Build a generator from >= 16 bytes of seed material.

    The bytes are absorbed word-by-word into a splitmix-style accumulator and
    the 256-bit state is drawn from the scrambled stream, so sparse seeds do
    not produce correlated state lanes and any single-bit change reaches every
    lane.
    """
    if not isinstance(seed_material, (bytes, bytearray, memoryview)):
        raise TypeError("seed material must be bytes-like")
    seed_material = bytes(seed_material)
    if len(seed_material) < MIN_SEED_BYTES:
        raise ValueError(
            f"seed material must be at least {MIN_SEED_BYTES} bytes, got {len(seed_material)}")

    padded = seed_material + b"\x00" * (-len(seed_material) % 8)
    words = np.frombuffer(padded, dtype="<u8")

    acc = len(seed_material) ^ _GOLDEN
    for w in words:
        acc, out = _mix_stream(acc ^ int(w))
        acc ^= out

    state = np.zeros(_k.STATE_SLOTS, dtype=np.uint64)
    for i in range(4):
        acc, out = _mix_stream(acc)
        state[i] = out
    if not state[:4].any():  # all-zero state would be absorbing
        state[0] = _GOLDEN
    return GeneratorState(state, seed_material)
