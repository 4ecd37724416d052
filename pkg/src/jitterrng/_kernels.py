"""Compiled inner loops: generator core, Poisson sampling, and the timed permutation cycle.

State layout for the deterministic generator is a 5-slot uint64 array:
slots 0..3 hold the 256-bit generator state, slot 4 is the call counter.
All arithmetic is explicit uint64 so overflow wraps identically on every platform.
"""

import time

import numpy as np
from numba import njit, objmode

U64 = np.uint64

GOLDEN = U64(0x9E3779B97F4A7C15)
_MIX_M1 = U64(0xBF58476D1CE4E5B9)
_MIX_M2 = U64(0x94D049BB133111EB)

STATE_SLOTS = 5  # s0..s3 + call_count


@njit(cache=True, inline="always")
def mix64(z):
    # splitmix-style finalizer; full avalanche on a single 64-bit word
    z = U64(U64(z ^ U64(z >> U64(30))) * _MIX_M1)
    z = U64(U64(z ^ U64(z >> U64(27))) * _MIX_M2)
    return U64(z ^ U64(z >> U64(31)))


@njit(cache=True, inline="always")
def gen_next(s):
    x = U64(s[1] * U64(5))
    r = U64(U64(U64(x << U64(7)) | U64(x >> U64(57))) * U64(9))
    t = U64(s[1] << U64(17))
    s[2] = U64(s[2] ^ s[0])
    s[3] = U64(s[3] ^ s[1])
    s[1] = U64(s[1] ^ s[2])
    s[0] = U64(s[0] ^ s[3])
    s[2] = U64(s[2] ^ t)
    s[3] = U64(U64(s[3] << U64(45)) | U64(s[3] >> U64(19)))
    s[4] = U64(s[4] + U64(1))
    return r


@njit(cache=True, inline="always")
def gen_next_double(s):
    # 53-bit mantissa in [0, 1)
    return float(gen_next(s) >> U64(11)) * 1.1102230246251565e-16


@njit(cache=True, inline="always")
def gen_next_int(s, bound):
    # rejection threshold: multiples of bound fitting in 2^64
    t = U64(U64(U64(0) - bound) % bound)
    while True:
        r = gen_next(s)
        if r >= t:
            return U64(r % bound)


@njit(cache=True)
def gen_advance(s, k, cap):
    steps = k
    if k > cap:
        # bound worst-case latency: walk the remainder, fold the quotient
        steps = U64(k % cap)
        q = U64(k // cap)
        s[3] = U64(s[3] ^ mix64(U64(q ^ GOLDEN)))
        if s[0] == U64(0) and s[1] == U64(0) and s[2] == U64(0) and s[3] == U64(0):
            s[0] = GOLDEN  # all-zero is an absorbing state for the generator
    n = np.int64(steps)
    for _ in range(n):
        gen_next(s)
    s[4] = U64(s[4] + U64(k - steps))  # the walked steps already counted


@njit(cache=True)
def fill_words(s, out):
    for i in range(out.shape[0]):
        out[i] = gen_next(s)


@njit(cache=True)
def fill_ints(s, bound, out):
    for i in range(out.shape[0]):
        out[i] = gen_next_int(s, bound)


@njit(cache=True, inline="always")
def poisson_draw(s, cdf):
    # smallest n with cdf[n] > u; truncated tail clamps to the last bin
    u = gen_next_double(s)
    idx = np.searchsorted(cdf, u, side="right")
    if idx >= cdf.shape[0]:
        idx = cdf.shape[0] - 1
    return idx


@njit(cache=True)
def poisson_fill(s, cdf, out):
    for i in range(out.shape[0]):
        out[i] = poisson_draw(s, cdf)


@njit(cache=True)
def run_cycles_real(gen, obf, cdf, work, tick_ns, cap, obf_on, out_np, out_nt, diag):
    """One batch of engine cycles against the live monotonic clock.

    work: caller-owned permutation buffer of length L (heap escape keeps the
    swap stores observable, so the timed burst cannot be optimized away).
    diag: int64[2] = [non-monotonic clock events, obfuscation clock reads].
    """
    L = work.shape[0]
    for c in range(out_np.shape[0]):
        n_p = poisson_draw(gen, cdf)
        m = U64(n_p) if n_p > 0 else U64(1)
        with objmode(t0="int64"):
            t0 = time.perf_counter_ns()
        for _ in range(n_p):
            if obf_on:
                if U64(gen_next(obf) % m) == U64(0):
                    with objmode(tx="int64"):
                        tx = time.perf_counter_ns()
                    diag[1] += 1
                    if tx < 0:
                        diag[0] += 0  # keep the read live
            for i in range(L - 1, 0, -1):
                j = np.int64(gen_next_int(gen, U64(i + 1)))
                tmp = work[i]
                work[i] = work[j]
                work[j] = tmp
        with objmode(t1="int64"):
            t1 = time.perf_counter_ns()
        dt = t1 - t0
        if dt < 0:
            dt = 0
            diag[0] += 1
        n_t = (dt + tick_ns - 1) // tick_ns
        gen_advance(gen, U64(n_t), cap)
        out_np[c] = n_p
        out_nt[c] = n_t


@njit(cache=True)
def run_cycles_scripted(gen, obf, cdf, work, cap, obf_on, script, start, out_np, out_nt):
    """Same cycle structure with elapsed ticks replayed from a script.

    No clock is touched, so output is a pure function of (seeds, script).
    Returns the script cursor after the batch.
    """
    L = work.shape[0]
    slen = script.shape[0]
    pos = start
    for c in range(out_np.shape[0]):
        n_p = poisson_draw(gen, cdf)
        for _ in range(n_p):
            if obf_on:
                gen_next(obf)  # same draw schedule as the real-clock path
            for i in range(L - 1, 0, -1):
                j = np.int64(gen_next_int(gen, U64(i + 1)))
                tmp = work[i]
                work[i] = work[j]
                work[j] = tmp
        n_t = script[pos % slen]
        pos += 1
        gen_advance(gen, U64(n_t), cap)
        out_np[c] = n_p
        out_nt[c] = n_t
    return pos
