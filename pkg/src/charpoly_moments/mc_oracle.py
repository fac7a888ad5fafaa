"""Monte Carlo oracle for Gaussian-ensemble characteristic-polynomial moments.

Sample s draws its matrix from its own Philox stream (key = seed, counter
with the sample index in the top word), so the estimate depends only on
(seed, samples) and not on how samples are split across workers.  Per-sample
values are reduced with math.fsum in index order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .external_source import SourceSpec

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SamplerConfig:
    M: int
    N: float
    source: Optional[SourceSpec] = None
    samples: int = 10_000
    seed: int = 0
    workers: int = 1
    antithetic: bool = False

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be positive")
        if float(self.N) <= 0:
            raise ValueError("N must be positive")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.source is not None and self.source.size != self.M:
            raise ValueError("source size does not match M")

    def source_diagonal(self) -> np.ndarray:
        if self.source is None:
            return np.zeros(self.M)
        return np.array([float(a) for a in self.source.flat()])


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int

    def covers(self, exact, k: float = 3.0) -> bool:
        return abs(self.mean - float(exact)) <= k * self.stderr


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & SEED_MASK, counter=[0, 0, 0, index]))


def _raw_normals(config: SamplerConfig, index: int) -> np.ndarray:
    """The 2 M^2 standard normals of sample ``index`` (sign-flipped for the
    odd member of an antithetic pair)."""
    if config.antithetic:
        z = _stream(config.seed, index // 2).standard_normal((2, config.M, config.M))
        return -z if index % 2 else z
    return _stream(config.seed, index).standard_normal((2, config.M, config.M))


def _assemble(z: np.ndarray, N: float, diag: np.ndarray) -> np.ndarray:
    """Hermitian matrices from normals of shape (..., 2, M, M): diag ~ N(0, 1/N),
    Re/Im of off-diagonals ~ N(0, 1/(2N)), plus the source diagonal."""
    M = z.shape[-1]
    upper = np.triu(z[..., 0, :, :] + 1j * z[..., 1, :, :], 1) / math.sqrt(2.0 * N)
    g = upper + np.swapaxes(upper.conj(), -1, -2)
    idx = np.arange(M)
    g[..., idx, idx] = z[..., 0, idx, idx] / math.sqrt(N) + diag
    return g


def sample_matrix(config: SamplerConfig, stream_index: int) -> np.ndarray:
    """Hermitian X = A + G for sample ``stream_index``.

    With antithetic pairing, samples 2j and 2j+1 share stream j and use G, -G.
    """
    return _assemble(_raw_normals(config, stream_index), float(config.N), config.source_diagonal())


def _factor_values(eigs: np.ndarray, lambdas: Sequence[float], D: int) -> np.ndarray:
    """prod_l d^D/dlam^D det(lam_l - X) for a batch of eigenvalue rows."""
    out = np.ones(eigs.shape[0])
    if D == 0:
        for lam in lambdas:
            out *= np.prod(lam - eigs, axis=1)
        return out
    M = eigs.shape[1]
    if D > M:
        return np.zeros(eigs.shape[0])
    # coefficients of prod_i (x - e_i), highest power first, built row-wise
    c = np.zeros((eigs.shape[0], M + 1))
    c[:, 0] = 1.0
    for i in range(M):
        c[:, 1:i + 2] -= eigs[:, i:i + 1] * c[:, 0:i + 1]
    for lam in lambdas:
        val = np.zeros(eigs.shape[0])
        # d^D/dx^D of sum_k c_k x^{M-k}, Horner in x = lam
        for k in range(M - D + 1):
            p = M - k
            val = val * lam + c[:, k] * math.perm(p, D)
        out *= val
    return out


def _chunk(args) -> list[float]:
    config, lambdas, D, start, stop = args
    if stop <= start:
        return []
    z = np.stack([_raw_normals(config, i) for i in range(start, stop)])
    mats = _assemble(z, float(config.N), config.source_diagonal())
    eigs = np.linalg.eigvalsh(mats)
    return _factor_values(eigs, lambdas, D).tolist()


def sample_values(config: SamplerConfig, lambdas: Sequence[float], D: int = 0,
                  chunk_size: int = 4096) -> list[float]:
    lams = [float(x) for x in lambdas]
    bounds = [(s, min(s + chunk_size, config.samples)) for s in range(0, config.samples, chunk_size)]
    jobs = [(config, lams, D, a, b) for a, b in bounds]
    if config.workers == 1 or len(jobs) == 1:
        parts = [_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(_chunk, jobs))
    return [v for part in parts for v in part]


def estimate_moment(config: SamplerConfig, lambdas: Sequence, K: Optional[int] = None,
                    D: int = 0) -> MCEstimate:
    """Mean and standard error of prod_l d^D det(lam_l - X) over the samples.

    One matrix per sample serves all K factors.
    """
    if K is None:
        K = len(lambdas)
    if len(lambdas) != K:
        raise ValueError(f"expected {K} lambda values, got {len(lambdas)}")
    if D < 0:
        raise ValueError("D must be nonnegative")
    if K == 0:
        return MCEstimate(1.0, 0.0, config.samples)
    vals = sample_values(config, lambdas, D)
    n = len(vals)
    mean = math.fsum(vals) / n
    if n == 1:
        return MCEstimate(mean, math.inf, 1)
    var = math.fsum((v - mean) ** 2 for v in vals) / (n - 1)
    return MCEstimate(mean, math.sqrt(var / n), n)
