"""Goodness of fit, rankit normality scores, histograms and spline minima."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import ndtri

from .zeros import ZeroTable


class BoundaryMinimumError(ValueError):
    """The interpolated minimum sits on the edge of the sampled range."""


@dataclass
class FitReport:
    n: int
    eigenvalues: np.ndarray
    zeros: np.ndarray
    deviations: np.ndarray
    sse: float
    sse_fraction: float
    baseline_sse: Optional[float] = None
    sse_uncertainty: Optional[float] = None

    @property
    def improves(self) -> bool:
        return self.baseline_sse is not None and self.sse < self.baseline_sse


def fit(eigen, zeros: ZeroTable | Sequence[float], baseline_sse: float | None = None) -> FitReport:
    """Pair the k-th eigenvalue with the k-th zero and sum squared deviations.

    `eigen` may be an EigenResult or a plain sequence.  When the solver
    supplied per-level error estimates, the first-order bound on the SSE
    error, sum(2 |dev| err + err^2), is reported as `sse_uncertainty`.
    """
    w = np.asarray(getattr(eigen, "eigenvalues", eigen), dtype=float)
    z = np.asarray(zeros.values if isinstance(zeros, ZeroTable) else zeros, dtype=float)
    if w.shape != z.shape:
        raise ValueError(f"length mismatch: {w.size} eigenvalues, {z.size} zeros")
    dev = w - z
    sse = math.fsum(dev * dev)
    total = math.fsum(z * z)
    err = getattr(eigen, "error_estimate", None)
    unc = None
    if err is not None:
        err = np.asarray(err)
        unc = float(np.sum(2.0 * np.abs(dev) * err + err * err))
    return FitReport(len(w), w, z, dev, sse, sse / total if total else 0.0, baseline_sse, unc)


def rankit_points(deviations):
    """Blom rankits paired with the sorted sample.

    Returns ``(scores, ordered, r)`` where scores[i] = Phi^-1((i + 1 - 3/8)/(n + 1/4))
    and r is the Pearson correlation between the two columns.
    """
    y = np.sort(np.asarray(deviations, dtype=float))
    n = y.size
    if n < 3:
        raise ValueError("rankit scores need at least 3 points")
    i = np.arange(1, n + 1)
    scores = ndtri((i - 0.375) / (n + 0.25))
    r = float(np.corrcoef(scores, y)[0, 1]) if np.ptp(y) > 0 else float("nan")
    return scores, y, r


@dataclass
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    below: int
    above: int

    @property
    def out_of_range(self) -> int:
        return self.below + self.above

    def rows(self):
        for k, c in enumerate(self.counts):
            yield float(self.edges[k]), float(self.edges[k + 1]), int(c)


def histogram(values, lo: float, hi: float, width: float) -> Histogram:
    """Left-closed, right-open bins [lo + k w, lo + (k+1) w); empty bins kept."""
    if not width > 0:
        raise ValueError("bin width must be positive")
    nbins = int(math.ceil((hi - lo) / width - 1e-9))
    edges = lo + width * np.arange(nbins + 1)
    vals = np.asarray(values, dtype=float).reshape(-1)
    idx = np.floor((vals - lo) / width).astype(int)
    inside = (idx >= 0) & (idx < nbins)
    below = int(np.sum(idx < 0))
    above = int(np.sum(idx >= nbins))
    counts = np.bincount(idx[inside], minlength=nbins)
    return Histogram(edges, counts, below, above)


def _spline(samples):
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("samples must be (x, y) pairs")
    order = np.argsort(arr[:, 0], kind="stable")
    x, y = arr[order, 0], arr[order, 1]
    # average duplicate abscissae
    ux, inv = np.unique(x, return_inverse=True)
    if ux.size != x.size:
        y = np.bincount(inv, weights=y) / np.bincount(inv)
        x = ux
    if x.size < 4:
        raise ValueError("need at least 4 distinct samples")
    return CubicSpline(x, y, bc_type="not-a-knot"), x, y


def refine_minimum(samples):
    """Minimum of the not-a-knot cubic spline through (x, y) samples.

    Not-a-knot end conditions reproduce any quadratic exactly, so a sampled
    parabola gives back its vertex.

    Candidates are the sample points and the interior critical points of
    the spline.  Raises BoundaryMinimumError when the smallest candidate is
    an end of the sampled range.
    """
    spl, x, y = _spline(samples)
    crit = spl.derivative().roots(extrapolate=False)
    cand_x = np.concatenate([x, crit[(crit > x[0]) & (crit < x[-1])]])
    cand_y = spl(cand_x)
    cand_y[: x.size] = y
    k = int(np.argmin(cand_y))
    xm, ym = float(cand_x[k]), float(cand_y[k])
    if xm <= x[0] or xm >= x[-1]:
        raise BoundaryMinimumError(f"minimum at range boundary x = {xm}")
    return xm, ym


def improvement_regions(samples, baseline: float):
    """Maximal intervals on which the interpolating cubic spline lies below `baseline`."""
    spl, x, _ = _spline(samples)
    cross = spl.solve(baseline, extrapolate=False)
    cuts = np.unique(np.concatenate([[x[0]], cross[(cross > x[0]) & (cross < x[-1])], [x[-1]]]))
    regions = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        if spl(0.5 * (a + b)) < baseline:
            if regions and regions[-1][1] == a:
                regions[-1] = (regions[-1][0], float(b))
            else:
                regions.append((float(a), float(b)))
    return regions


def pearson(x, y) -> float:
    return float(np.corrcoef(np.asarray(x, float), np.asarray(y, float))[0, 1])

