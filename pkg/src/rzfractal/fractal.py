"""Truncated Berry-Lewis alternating-sign sine series.

    A(x, gamma) = sigma * sum_{m=m_lo}^{m_hi} (-1)^m sin(gamma^m x) / gamma^((2-d) m)

For d = 3/2 the untruncated series obeys A(gamma x) = -sqrt(gamma) A(x).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FractalParams:
    gamma: float
    sigma: float = 1.0
    d: float = 1.5
    m_lo: int = -30
    m_hi: int = 30

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 1.0):
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")
        if not 1.0 < self.d < 2.0:
            raise ValueError(f"fractal dimension must lie in (1, 2), got {self.d}")
        if not self.m_lo <= 0 <= self.m_hi:
            raise ValueError("truncation bounds must satisfy m_lo <= 0 <= m_hi")

    @classmethod
    def symmetric(cls, gamma, sigma=1.0, d=1.5, m_cutoff=30):
        return cls(gamma, sigma, d, -m_cutoff, m_cutoff)

    @property
    def n_terms(self) -> int:
        return self.m_hi - self.m_lo + 1


def _terms(x, gamma, d, m_lo, m_hi):
    # ascending m, one row per term
    m = np.arange(m_lo, m_hi + 1, dtype=float)
    sign = np.where(np.arange(m_lo, m_hi + 1) % 2 == 0, 1.0, -1.0)
    freq = gamma ** m
    amp = sign / gamma ** ((2.0 - d) * m)
    return amp[:, None] * np.sin(freq[:, None] * x[None, :])


def eval_A(x, params: FractalParams):
    """Evaluate sigma * A(x, gamma) at scalar or array `x`.

    Terms are accumulated from the most negative `m` upward in double
    precision.
    """
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise ValueError("eval_A needs finite x")
    flat = xa.reshape(-1)
    out = np.zeros_like(flat)
    if params.sigma != 0.0:
        # chunk to bound memory on long grids
        step = 1 << 15
        for start in range(0, flat.size, step):
            t = _terms(flat[start:start + step], params.gamma, params.d, params.m_lo, params.m_hi)
            acc = np.zeros(t.shape[1])
            for row in t:
                acc += row
            out[start:start + step] = params.sigma * acc
    out = out.reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def affine_residual(x, gamma: float, d: float = 1.5, m_cutoff: int = 30):
    """|A(gamma x) + gamma^(2-d) A(x)| for the unscaled, symmetrically truncated series.

    With d = 3/2 the factor is sqrt(gamma) and the residual is a pure
    truncation effect.
    """
    p = FractalParams.symmetric(gamma, 1.0, d, m_cutoff)
    xa = np.asarray(x, dtype=float)
    return np.abs(eval_A(gamma * xa, p) + gamma ** (2.0 - d) * eval_A(xa, p))


def affine_truncation_bound(x, gamma: float, m_cutoff: int = 30):
    """Upper bound on `affine_residual` for d = 3/2.

    Shifting the summation index by one shows the truncated residual is
    exactly sqrt(gamma) times the difference of the two edge terms
    m = -M and m = M + 1, whose magnitudes are at most
    min(1, gamma^-M |x|) gamma^(M/2) and gamma^(-(M+1)/2).
    """
    xa = np.abs(np.asarray(x, dtype=float))
    M = m_cutoff
    low = np.minimum(1.0, gamma ** (-M) * xa) * gamma ** (M / 2.0)
    high = gamma ** (-(M + 1) / 2.0)
    return math.sqrt(gamma) * (low + high)


def box_counting_dimension(params: FractalParams, window=(0.0, 50.0), k_min=3, k_max=12,
                           samples_per_column=64, return_counts=False):
    """Box-counting estimate of the dimension of the graph of A on `window`.

    The graph is normalised into the unit square, then covered by boxes of
    side 2^-k for k in [k_min, k_max].  For each column the occupied boxes
    are those spanned between the column's minimum and maximum sample.
    The returned value is the least-squares slope of log N against log(1/eps).
    """
    lo, hi = map(float, window)
    if not hi > lo:
        raise ValueError("degenerate window")
    if k_max - k_min < 2:
        raise ValueError("need at least three box sizes")
    ncol = 2 ** k_max
    x = np.linspace(lo, hi, ncol * samples_per_column + 1)
    y = np.asarray(eval_A(x, params))
    xs = (x - lo) / (hi - lo)
    span = y.max() - y.min()
    ys = (y - y.min()) / span if span > 0 else np.zeros_like(y)
    ys = np.minimum(ys, np.nextafter(1.0, 0.0))

    eps, counts = [], []
    for k in range(k_min, k_max + 1):
        c = 2 ** k
        col = np.minimum((xs * c).astype(int), c - 1)
        top = np.full(c, -np.inf)
        bot = np.full(c, np.inf)
        np.maximum.at(top, col, ys)
        np.minimum.at(bot, col, ys)
        n = np.floor(top * c) - np.floor(bot * c) + 1
        eps.append(1.0 / c)
        counts.append(n.sum())
    eps = np.array(eps)
    counts = np.array(counts)
    slope = np.polyfit(np.log(1.0 / eps), np.log(counts), 1)[0]
    if return_counts:
        return float(slope), eps, counts
    return float(slope)
