"""Smooth Riemann-von Mangoldt counting functions.

Only non-oscillatory pieces are provided; the argument term
S(E) = arg zeta(1/2 + iE) / pi is deliberately absent everywhere.
"""
from __future__ import annotations

import math

import numpy as np


class QuadratureError(RuntimeError):
    pass


def _positive(E):
    Ea = np.asarray(E, dtype=float)
    if np.any(~(Ea > 0)):
        raise ValueError("counting functions need E > 0")
    return Ea


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def n_smooth(E):
    """(E / 2 pi) log(E / 2 pi e) + 7/8."""
    Ea = _positive(E)
    t = Ea / (2.0 * math.pi)
    return _out(t * (np.log(t) - 1.0) + 0.875)


def correction_terms(E):
    """(E/4) log(1 + 1/(4E^2)) + (1/4) arctan(1/(2E)).

    Positive; decreasing for E above about 0.0711, where it peaks near 0.427.
    """
    Ea = _positive(E)
    return _out(0.25 * Ea * np.log1p(0.25 / Ea ** 2) + 0.25 * np.arctan(0.5 / Ea))


def n_corrected(E):
    return _out(np.asarray(n_smooth(E)) + np.asarray(correction_terms(E)))


def n_connes(E, lam: float):
    """Cutoff-dependent count (E/2pi) log(lam^2) - (E/2pi)(log(E/2pi) - 1)."""
    Ea = _positive(E)
    if not lam > 0:
        raise ValueError("cutoff must be positive")
    t = Ea / (2.0 * math.pi)
    return _out(t * 2.0 * math.log(lam) - t * (np.log(t) - 1.0))


def _sawtooth_integral(b: float, segments: int, nodes: int) -> float:
    # int_0^segments (1/2 - {u}) / ((u + 1/4)^2 + b^2) du, Gauss-Legendre per unit cell
    t, w = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    rho = 0.5 - t
    total = 0.0
    chunk = 1 << 16
    for start in range(0, segments, chunk):
        k = np.arange(start, min(segments, start + chunk), dtype=float)[:, None]
        u = k + t[None, :] + 0.25
        total += float(np.sum((w * rho)[None, :] / (u * u + b * b)))
    return total


def delta_term(E: float, tol: float = 1e-10, segments: int | None = None, nodes: int = 12,
               max_segments: int = 50_000_000, return_error: bool = False):
    """delta(E) = (E/4) log(1 + 1/4E^2) + (1/4) arctan(1/2E)
                 - (E/2) int_0^inf rho(u) du / ((u + 1/4)^2 + (E/2)^2),  rho(u) = 1/2 - {u}.

    The integral runs over whole unit cells, where rho is linear.  Because
    rho has zero mean on each cell and the weight f is decreasing, each
    cell beyond U contributes at most (f(k) - f(k+1))/4, so the tail is
    bounded by f(U)/4.  The cell count is the smallest U that pushes the
    bound on delta below `tol`, unless `segments` fixes it.
    """
    if not E > 0:
        raise ValueError("delta_term needs E > 0")
    b = 0.5 * E
    if segments is None:
        need = E / (8.0 * tol) - b * b
        segments = max(1, int(math.ceil(math.sqrt(max(need, 0.0)) - 0.25)))
    if segments > max_segments:
        raise QuadratureError(f"{segments} cells needed for tol={tol:g}")
    integral = _sawtooth_integral(b, segments, nodes)
    u = segments + 0.25
    err = 0.5 * E * 0.25 / (u * u + b * b)
    value = float(correction_terms(E)) - 0.5 * E * integral
    if return_error:
        return value, err
    return value
