"""Modular projection of counts and bit-packing of residues into bytes."""

from __future__ import annotations

import numpy as np

PACKABLE_MODULI = (2, 4, 8, 16, 32, 64, 128, 256)


def project(n, M: int):
    """n mod M for a non-negative count or array of counts; any M >= 2."""
    M = int(M)
    if M < 2:
        raise ValueError(f"modulus must be >= 2, got {M}")
    arr = np.asarray(n)
    if np.any(arr < 0):
        raise ValueError("counts must be non-negative")
    out = arr % M
    return int(out) if arr.ndim == 0 else out


def _residue_bits(M: int) -> int:
    M = int(M)
    if M not in PACKABLE_MODULI:
        raise ValueError(
            f"packing requires a power-of-two modulus in {PACKABLE_MODULI}, got {M}")
    return M.bit_length() - 1


def pack_bytes(residues, M: int) -> bytes:
    """Pack residues MSB-first, log2(M) bits each; trailing partial byte dropped.

    First residue lands in the most significant bits of the first byte.
    Dropping (never zero-padding) the ragged tail keeps every emitted byte
    a full product of residues.
    """
    b = _residue_bits(M)
    r = np.ascontiguousarray(residues, dtype=np.int64)
    if r.size and (r.min() < 0 or r.max() >= M):
        raise ValueError(f"residues out of range for modulus {M}")
    r8 = r.astype(np.uint8)
    if b == 8:
        return r8.tobytes()
    bits = np.unpackbits(r8.reshape(-1, 1), axis=1)[:, 8 - b:]
    usable = (bits.size // 8) * 8
    return np.packbits(bits.reshape(-1)[:usable]).tobytes()


def unpack_bytes(data, M: int) -> np.ndarray:
    """Inverse of pack_bytes up to the dropped trailing bits."""
    b = _residue_bits(M)
    buf = np.frombuffer(bytes(data), dtype=np.uint8)
    if b == 8:
        return buf.copy()
    bits = np.unpackbits(buf)
    usable = (bits.size // b) * b
    groups = bits[:usable].reshape(-1, b)
    weights = (1 << np.arange(b - 1, -1, -1)).astype(np.uint8)
    return (groups * weights).sum(axis=1).astype(np.uint8)
