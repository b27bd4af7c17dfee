"""Deterministic, optionally parallel random sampling utilities.

Reproducibility contract: sample streams are split into fixed-size blocks
and block b is always drawn from ``Philox(SeedSequence(seed, spawn_key=(b,)))``.
The concatenated output is therefore byte-identical for the same (seed, n)
no matter how many worker processes execute the blocks, and independent of
scheduling order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

import numpy as np

#: Samples per RNG block.  Fixed: changing it changes every sampled stream.
BLOCK_SIZE = 1 << 14

WORKERS_ENV = "YBX_WORKERS"


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """The dedicated counter-based generator for one block of samples."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(block_index),))
    return np.random.Generator(np.random.Philox(ss))


def block_sizes(n: int) -> list[int]:
    """Sizes of the consecutive blocks covering n samples."""
    if n < 0:
        raise ValueError(f"sample count must be >= 0, got {n}")
    full, rem = divmod(n, BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * full
    if rem:
        sizes.append(rem)
    return sizes


def resolve_workers(workers: int | None = None) -> int:
    """Worker count: explicit argument, else the YBX_WORKERS variable, else 1."""
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def run_blocks(
    fn: Callable[[int, int, int], Sequence[np.ndarray]],
    seed: int,
    n: int,
    workers: int | None = None,
) -> list[np.ndarray]:
    """Evaluate ``fn(seed, block_index, size)`` over all blocks and concatenate.

    fn must be a module-level function (it is pickled when workers > 1) and
    must draw randomness only from ``block_generator(seed, block_index)``; it
    returns a tuple of arrays whose leading axis is the sample axis.  The
    returned list holds one concatenated array per tuple slot, in block order,
    so results never depend on the worker count.
    """
    sizes = block_sizes(n)
    if not sizes:
        raise ValueError("cannot run over zero samples")
    workers = resolve_workers(workers)
    args = [(seed, b, size) for b, size in enumerate(sizes)]
    if workers == 1 or len(args) == 1:
        chunks = [fn(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(fn, *zip(*args), chunksize=4))
    nslots = len(chunks[0])
    return [np.concatenate([c[k] for c in chunks], axis=0) for k in range(nslots)]


def haar_vector(rng: np.random.Generator, dim: int, count: int = 1) -> np.ndarray:
    """(count, dim) rows drawn uniformly from the unit sphere in C^dim."""
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return z


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """One Haar-distributed unitary, via QR with the standard phase fix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_kappa_sq(rng: np.random.Generator, d: int, count: int) -> np.ndarray:
    """(count, d) squared Schmidt spectra, uniform on the simplex.

    Normalizing the squared moduli of a complex Gaussian vector gives
    kappa^2 ~ Dirichlet(1, ..., 1), the distribution induced by Haar-random
    pure states' Schmidt weights conditioned on uniform simplex measure.
    """
    z = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
    w = np.abs(z) ** 2
    return w / w.sum(axis=1, keepdims=True)
