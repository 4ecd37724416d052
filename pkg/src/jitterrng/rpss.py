"""Recursive permutation engine.

Each cycle draws a Poisson count n_p, times a burst of n_p small Fisher-Yates
shuffles on the monotonic clock, converts the elapsed nanoseconds to ticks,
and advances the generator by that tick count. The timing jitter harvested
per cycle therefore decides every future draw; the counts n_p are the
Poisson-distributed output and the elapsed ticks n_t are a second,
jitter-dominated output stream.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as _k
from . import detprng, poisson, projection

TICK_ENV_VAR = "JITTERRNG_TICK_NS"
DEFAULT_TICK_NS = 100
REAL_CLOCK = "real-clock"
SCRIPTED = "scripted"

_CHUNK_CYCLES = 1 << 21  # batch size for streaming generation


def default_tick_ns() -> int:
    """Configured tick resolution: environment override or 100 ns."""
    raw = os.environ.get(TICK_ENV_VAR)
    if raw is None:
        return DEFAULT_TICK_NS
    tick = int(raw)
    if tick < 1:
        raise ValueError(f"{TICK_ENV_VAR} must be >= 1, got {tick}")
    return tick


@dataclass(frozen=True)
class RpssConfig:
    mu: float
    array_length: int = 4
    security_discard: int = 1024
    tick_ns: int | None = None  # None -> env override or 100
    obfuscation_enabled: bool = False
    advance_cap: int = detprng.DEFAULT_ADVANCE_CAP
    jitter_source: str = REAL_CLOCK
    script: tuple[int, ...] | None = None  # elapsed ticks replayed when scripted

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.array_length < 2:
            raise ValueError(f"array_length must be >= 2, got {self.array_length}")
        if self.security_discard < 0:
            raise ValueError("security_discard must be >= 0")
        if self.tick_ns is None:
            object.__setattr__(self, "tick_ns", default_tick_ns())
        if self.tick_ns < 1:
            raise ValueError(f"tick_ns must be >= 1, got {self.tick_ns}")
        if self.advance_cap < 1:
            raise ValueError("advance_cap must be >= 1")
        if self.jitter_source not in (REAL_CLOCK, SCRIPTED):
            raise ValueError(f"unknown jitter_source {self.jitter_source!r}")
        if self.jitter_source == SCRIPTED:
            if not self.script:
                raise ValueError("scripted jitter requires a non-empty script")
            object.__setattr__(self, "script", tuple(int(t) for t in self.script))
            if any(t < 0 for t in self.script):
                raise ValueError("scripted ticks must be >= 0")


@dataclass(frozen=True)
class RpssCycleRecord:
    n_p: int
    n_t: int
    cycle_index: int


@dataclass
class RpssDiagnostics:
    nonmonotonic_clock_events: int = 0
    obfuscation_clock_reads: int = 0
    cycles_run: int = 0


def derive_obfuscation_seed(seed_material: bytes) -> bytes:
    """Deterministic independent seed for the obfuscation generator."""
    return hashlib.sha256(b"obfuscation:" + seed_material).digest()


class RpssEngine:
    """One single-threaded engine instance bound to a pair of generators."""

    def __init__(self, config: RpssConfig, seed_material: bytes,
                 obf_seed_material: bytes | None = None):
        gen = detprng.seed(seed_material)
        if obf_seed_material is None:
            obf_seed_material = derive_obfuscation_seed(seed_material)
        obf = detprng.seed(obf_seed_material)
        self._init(config, gen, obf)

    @classmethod
    def from_generators(cls, config: RpssConfig, gen: detprng.GeneratorState,
                        obf_gen: detprng.GeneratorState) -> "RpssEngine":
        eng = cls.__new__(cls)
        eng._init(config, gen, obf_gen)
        return eng

    def _init(self, config, gen, obf_gen):
        self.config = config
        self.gen = gen
        self.obf_gen = obf_gen
        self.diagnostics = RpssDiagnostics()
        self._spec = poisson.PoissonSpec(config.mu)
        self._work = np.arange(config.array_length, dtype=np.int64)
        self._diag = np.zeros(2, dtype=np.int64)
        self._script = (np.asarray(config.script, dtype=np.int64)
                        if config.jitter_source == SCRIPTED else None)
        self._script_pos = 0

    def _run_batch(self, count: int) -> tuple[np.ndarray, np.ndarray]:
        out_np = np.empty(count, dtype=np.int64)
        out_nt = np.empty(count, dtype=np.int64)
        cfg = self.config
        if cfg.jitter_source == REAL_CLOCK:
            _k.run_cycles_real(
                self.gen._s, self.obf_gen._s, self._spec.cdf_table, self._work,
                np.int64(cfg.tick_ns), np.uint64(cfg.advance_cap),
                cfg.obfuscation_enabled, out_np, out_nt, self._diag)
        else:
            self._script_pos = int(_k.run_cycles_scripted(
                self.gen._s, self.obf_gen._s, self._spec.cdf_table, self._work,
                np.uint64(cfg.advance_cap), cfg.obfuscation_enabled,
                self._script, np.int64(self._script_pos), out_np, out_nt))
        d = self.diagnostics
        d.nonmonotonic_clock_events = int(self._diag[0])
        d.obfuscation_clock_reads = int(self._diag[1])
        d.cycles_run += count
        return out_np, out_nt

    def run_cycle(self) -> RpssCycleRecord:
        idx = self.diagnostics.cycles_run
        out_np, out_nt = self._run_batch(1)
        return RpssCycleRecord(n_p=int(out_np[0]), n_t=int(out_nt[0]), cycle_index=idx)

    def generate_counts(self, count: int) -> np.ndarray:
        """security_discard + count cycles; the first discard outputs are dropped."""
        if count < 1:
            raise ValueError("count must be >= 1")
        if self.config.security_discard:
            self._run_batch(self.config.security_discard)
        return self._run_batch(count)[0]

    def generate_elapsed(self, count: int) -> np.ndarray:
        """Elapsed-tick stream after the same discard phase (counts dropped in lockstep)."""
        if count < 1:
            raise ValueError("count must be >= 1")
        if self.config.security_discard:
            self._run_batch(self.config.security_discard)
        return self._run_batch(count)[1]

    def generate_bytes(self, n_bytes: int, modulus: int, source: str = "counts") -> bytes:
        """Streamed pipeline: cycles -> residues mod modulus -> packed bytes.

        One discard phase up front, then chunked generation so arbitrarily
        large outputs never materialize the full count sequence in memory.
        """
        if n_bytes < 1:
            raise ValueError("n_bytes must be >= 1")
        if source not in ("counts", "elapsed"):
            raise ValueError(f"source must be 'counts' or 'elapsed', got {source!r}")
        bits = projection._residue_bits(modulus)
        group = 8 // np.gcd(bits, 8)  # residues per whole number of bytes
        if self.config.security_discard:
            self._run_batch(self.config.security_discard)
        out = bytearray()
        pending = np.empty(0, dtype=np.int64)
        while len(out) < n_bytes:
            want = -(-(n_bytes - len(out)) * 8 // bits) + group
            counts, ticks = self._run_batch(min(int(want), _CHUNK_CYCLES))
            values = counts if source == "counts" else ticks
            pending = np.concatenate([pending, values % modulus])
            usable = pending.size - pending.size % group
            out += projection.pack_bytes(pending[:usable], modulus)
            pending = pending[usable:]
        return bytes(out[:n_bytes])


def run_cycle(config: RpssConfig, gen: detprng.GeneratorState,
              obf_gen: detprng.GeneratorState) -> RpssCycleRecord:
    """Single cycle against caller-owned generators."""
    return RpssEngine.from_generators(config, gen, obf_gen).run_cycle()


def generate_counts(config: RpssConfig, gen: detprng.GeneratorState,
                    obf_gen: detprng.GeneratorState, count: int) -> np.ndarray:
    """Poisson count stream after the security discard (caller-owned generators)."""
    return RpssEngine.from_generators(config, gen, obf_gen).generate_counts(count)


def generate_elapsed(config: RpssConfig, gen: detprng.GeneratorState,
                     obf_gen: detprng.GeneratorState, count: int) -> np.ndarray:
    """Elapsed-tick stream after the security discard (caller-owned generators)."""
    return RpssEngine.from_generators(config, gen, obf_gen).generate_elapsed(count)
