"""Sequential-insertion sampling from the Ewens measure P_{n;theta}.

Element i (1-based) opens a new cycle with probability theta / (theta + i - 1)
and otherwise is spliced into the cycle of a uniformly chosen earlier element
j, directly after j.  Replicates are drawn in vectorized blocks of
``BLOCK`` rows.  Block b uses the numpy stream seeded by
``SeedSequence(seed, spawn_key=(b,))`` and always draws full-size arrays,
so replicate r depends only on (seed, r) and never on ``replicates``.

The permutation view and the cycle-count view consume identical random
draws, so for the same config ``cycle_type(sample_permutation(cfg, r))``
equals row r of ``sample_cycle_counts(cfg, n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .perm import Permutation

BLOCK = 4096


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    theta: float | Fraction = 1.0
    seed: int = 0
    replicates: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.theta <= 0:
            raise DomainError(f"theta must be > 0, got {self.theta}")
        if self.replicates < 1:
            raise DomainError(f"replicates must be >= 1, got {self.replicates}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _insertion_steps(cfg: SamplerConfig, block: int) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (i, opens_new_cycle, partner) for 0-based elements i = 1..n-1."""
    rng = _block_rng(cfg.seed, block)
    theta = float(cfg.theta)
    for i in range(1, cfg.n):
        opens = rng.random(BLOCK) < theta / (theta + i)
        partner = rng.integers(0, i, size=BLOCK)
        yield i, opens, partner


def _block_images(cfg: SamplerConfig, block: int) -> np.ndarray:
    """0-based images for one block of BLOCK replicates, shape (BLOCK, n)."""
    dtype = np.int32 if cfg.n < 2**31 else np.int64
    images = np.zeros((BLOCK, cfg.n), dtype=dtype)
    rows = np.arange(BLOCK)
    for i, opens, partner in _insertion_steps(cfg, block):
        old = images[rows, partner]
        images[:, i] = np.where(opens, i, old)
        images[rows, partner] = np.where(opens, old, i)
    return images


def _block_cycle_sizes(cfg: SamplerConfig, block: int) -> np.ndarray:
    """Cycle sizes indexed by founding element, shape (BLOCK, n); 0 = unused."""
    cycle_of = np.zeros((BLOCK, cfg.n), dtype=np.int64)
    sizes = np.zeros((BLOCK, cfg.n), dtype=np.int64)
    sizes[:, 0] = 1
    rows = np.arange(BLOCK)
    for i, opens, partner in _insertion_steps(cfg, block):
        cid = np.where(opens, i, cycle_of[rows, partner])
        cycle_of[:, i] = cid
        sizes[rows, cid] += 1
    return sizes


def _blocks(replicates: int) -> Iterator[tuple[int, int]]:
    for b in range(math.ceil(replicates / BLOCK)):
        yield b, min(BLOCK, replicates - b * BLOCK)


def sample_permutations(cfg: SamplerConfig) -> np.ndarray:
    """All replicates as 1-based one-line images, shape (replicates, n)."""
    out = [_block_images(cfg, b)[:rows] for b, rows in _blocks(cfg.replicates)]
    return np.concatenate(out) + 1


def sample_permutation(cfg: SamplerConfig, replicate: int = 0) -> Permutation:
    """Replicate ``replicate`` of the stream defined by ``cfg``."""
    if not 0 <= replicate:
        raise DomainError("replicate index must be >= 0")
    block, row = divmod(replicate, BLOCK)
    return Permutation(tuple(int(v) + 1 for v in _block_images(cfg, block)[row]))


def sample_cycle_counts(cfg: SamplerConfig, max_m: int) -> np.ndarray:
    """Cycle counts c_1..c_max_m per replicate, shape (replicates, max_m).

    Only cycle sizes are tracked, so memory is O(BLOCK * n) regardless of
    how large n is.
    """
    if not 1 <= max_m <= cfg.n:
        raise DomainError(f"need 1 <= max_m <= n={cfg.n}, got {max_m}")
    n = cfg.n
    out = []
    for b, rows in _blocks(cfg.replicates):
        sizes = _block_cycle_sizes(cfg, b)[:rows]
        flat = sizes + (n + 1) * np.arange(rows)[:, None]
        tally = np.bincount(flat.ravel(), minlength=rows * (n + 1)).reshape(rows, n + 1)
        out.append(tally[:, 1 : max_m + 1])
    return np.concatenate(out)


def _mean_stderr(values: np.ndarray) -> tuple[float, float]:
    r = len(values)
    mean = math.fsum(values.tolist()) / r
    if r < 2:
        return mean, float("nan")
    var = math.fsum(((values - mean) ** 2).tolist()) / (r - 1)
    return mean, math.sqrt(var / r)


def mc_moment(cfg: SamplerConfig, specs: Sequence[tuple[int, int]]) -> tuple[float, float]:
    """Monte Carlo mean and standard error of prod_i C_{m_i}^{k_i}."""
    if not specs:
        raise DomainError("need at least one (m, k) spec")
    for m, k in specs:
        if not 1 <= m <= cfg.n or k < 0:
            raise DomainError(f"bad moment spec (m={m}, k={k}) for n={cfg.n}")
    counts = sample_cycle_counts(cfg, max(m for m, _ in specs)).astype(np.float64)
    values = np.ones(len(counts))
    for m, k in specs:
        values *= counts[:, m - 1] ** k
    return _mean_stderr(values)


def mc_covariance(cfg: SamplerConfig, m1: int, m2: int) -> tuple[float, float]:
    """Sample covariance of (C_{m1}, C_{m2}) with a delta-method standard error."""
    counts = sample_cycle_counts(cfg, max(m1, m2)).astype(np.float64)
    a = counts[:, m1 - 1]
    b = counts[:, m2 - 1]
    centred = (a - a.mean()) * (b - b.mean())
    return _mean_stderr(centred)
