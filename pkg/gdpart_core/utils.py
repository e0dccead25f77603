"""
Utility functions for gdpart.
Seeded random streams, the stable 64-bit hash and small vector helpers.
"""

import hashlib
import json
from typing import Any, Dict, Sequence

import numpy as np


# Stream tags keep noise, rounding and sampling draws independent of each other
STREAM_NOISE = 1
STREAM_ROUNDING = 2
STREAM_SAMPLING = 3
STREAM_PERTURBATION = 4

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)


def make_rng(seed: int, *path: int) -> np.random.Generator:
    """
    Counter-based generator for a (seed, path) pair.

    Philox streams depend only on the key, so the same (seed, path) yields the
    same draws regardless of which worker thread asks for them.
    """
    sequence = np.random.SeedSequence(entropy=int(seed) & 0xFFFFFFFFFFFFFFFF,
                                      spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(sequence))


def splitmix64(values: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer applied element-wise to uint64 values."""
    z = np.asarray(values, dtype=np.uint64).copy()
    with np.errstate(over='ignore'):
        z = z + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z & _MASK64


def stable_hash(external_ids: Sequence[int], seed: int) -> np.ndarray:
    """Platform-independent 64-bit hash of vertex ids under a seed."""
    ids = np.asarray(external_ids).astype(np.uint64)
    salt = splitmix64(np.array([int(seed) & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64))[0]
    return splitmix64(ids ^ salt)


def config_digest(payload: Dict[str, Any]) -> str:
    """Short sha256 digest of a JSON-serializable dict."""
    text = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()[:12]


def as_vector(values, length: int, name: str = 'x') -> np.ndarray:
    """Float64 copy of `values`, checked against the expected length."""
    vector = np.asarray(values, dtype=np.float64)
    if vector.ndim != 1 or vector.shape[0] != length:
        raise ValueError(f"{name} has shape {vector.shape}, expected ({length},)")
    return vector
