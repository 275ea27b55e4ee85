"""Seeded, named random streams for reproducible experiment sampling."""

import hashlib

import numpy as np


def stream(seed: int, name: str) -> np.random.Generator:
    """Derive an independent generator from a 64-bit seed and a stream name.

    The generator is PCG64 seeded with the first 8 bytes (big-endian) of
    SHA-256(name + NUL + seed), so the same (seed, name) pair always yields
    the same sample sequence, and distinct experiment names never share a
    stream.
    """
    digest = hashlib.sha256(f"{name}\x00{seed}".encode()).digest()
    return np.random.Generator(np.random.PCG64(int.from_bytes(digest[:8], "big")))
