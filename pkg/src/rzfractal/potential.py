"""Smooth Wu-Sprung potential and its variants.

Units are hbar^2/2m = 1, so the Schrodinger operator is -psi'' + V psi.
The smooth potential is known only through its inverse x_ws(V); it is
realised on a grid by root finding.  All functions here are pure.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .fractal import FractalParams, eval_A

V0_DEFAULT = 3.10073 * math.pi

_LN_2PI = math.log(2.0 * math.pi)


class InversionError(RuntimeError):
    pass


class Variant(str, enum.Enum):
    LEADING = "leading"
    HIGHER_ORDER = "higher_order"
    ASYMPTOTIC = "asymptotic"


def _check_v(V, v0):
    Va = np.asarray(V, dtype=float)
    if v0 <= 0:
        raise ValueError("v0 must be positive")
    if np.any(Va < v0) or not np.all(np.isfinite(Va)):
        raise ValueError("x_ws is defined for finite V >= v0")
    return Va


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def x_ws(V, v0: float = V0_DEFAULT):
    """Half-width of the smooth well at height V.

    x = (1/pi) [ sqrt(V-v0) ln(v0 / (2 pi e^2)) + sqrt(V) ln((sqrt V + sqrt(V-v0)) / (sqrt V - sqrt(V-v0))) ]

    The second logarithm is evaluated as 2 ln((sqrt V + sqrt(V-v0)) / sqrt v0),
    which is the same quantity without the cancellation in the denominator.
    """
    Va = _check_v(V, v0)
    s = np.sqrt(Va - v0)
    r = np.sqrt(Va)
    c = math.log(v0) - _LN_2PI - 2.0
    out = (s * c + 2.0 * r * np.log((r + s) / math.sqrt(v0))) / math.pi
    return _scalar(out)


def _x_of_s(s, v0):
    r = np.sqrt(v0 + s * s)
    c = math.log(v0) - _LN_2PI - 2.0
    return (s * c + 2.0 * r * np.log((r + s) / math.sqrt(v0))) / math.pi


def _dx_ds(s, v0):
    # d x / d s with s = sqrt(V - v0); strictly positive when v0 > 2 pi
    r = np.sqrt(v0 + s * s)
    return (math.log(v0) - _LN_2PI + 2.0 * s * np.log((r + s) / math.sqrt(v0)) / r) / math.pi


def dx_ws_dV(V, v0: float = V0_DEFAULT):
    Va = _check_v(V, v0)
    s = np.sqrt(Va - v0)
    r = np.sqrt(Va)
    with np.errstate(divide="ignore"):
        out = ((math.log(v0) - _LN_2PI) / (2.0 * s) + np.log((r + s) / math.sqrt(v0)) / r) / math.pi
    return _scalar(out)


def invert_potential(x, v0: float = V0_DEFAULT, tol: float = 1e-10, max_iter: int = 200):
    """Solve x_ws(V) = |x| for V (scalar or array).

    Works in s = sqrt(V - v0), where x(s) is increasing and convex with
    slope at least ln(v0/2pi)/pi.  That gives the bracket
    [0, pi |x| / ln(v0/2pi)]; Newton steps start from the upper end and
    fall back to bisection whenever they leave the bracket.

    `tol` applies in s.  Mapping back to V = v0 + s^2 loses s^2 below one
    ulp of v0, so for |x| under about 1e-8 the round trip x_ws(V) is only
    good to about ln(v0/2pi)/pi * sqrt(ulp(v0)), roughly 6e-9.
    """
    if v0 <= 2.0 * math.pi:
        raise InversionError(f"v0 = {v0} gives a non-monotone x_ws; need v0 > 2 pi")
    xa = np.abs(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(xa)):
        raise ValueError("invert_potential needs finite x")
    flat = xa.reshape(-1)
    slope0 = (math.log(v0) - _LN_2PI) / math.pi
    lo = np.zeros_like(flat)
    hi = flat / slope0
    s = hi.copy()
    done = flat == 0.0
    for _ in range(max_iter):
        f = _x_of_s(s, v0) - flat
        lo = np.where(f < 0, s, lo)
        hi = np.where(f > 0, s, hi)
        done = done | (np.abs(f) <= 0.25 * tol)
        if np.all(done):
            break
        step = s - f / _dx_ds(s, v0)
        bad = ~((step > lo) & (step < hi))
        step = np.where(bad, 0.5 * (lo + hi), step)
        s = np.where(done, s, step)
    else:
        resid = np.abs(_x_of_s(s, v0) - flat)
        if np.any(resid > tol):
            raise InversionError(f"inversion did not converge (max residual {resid.max():.3g})")
    out = (v0 + s * s).reshape(xa.shape)
    return _scalar(out)


def x_ws_higher(V, v0: float = V0_DEFAULT, return_imag: bool = False):
    """Implicit form x(V) of the smooth potential with the two extra
    non-oscillatory counting terms.

    Evaluated in complex arithmetic with principal branches; the terms
    come in conjugate pairs, so the imaginary part of the total is a
    rounding residue.  Returns the real part, and the imaginary part too
    when `return_imag` is set.  Unlike `x_ws`, the expression does not
    vanish at V = v0.
    """
    Va = _check_v(V, v0)
    V = Va.astype(complex)
    I = 1j
    pi2 = math.pi ** 2
    sq2 = math.sqrt(2.0)
    s = np.sqrt(V - v0)
    r = np.sqrt(V)
    vm = np.sqrt(V - I / 2)
    vp = np.sqrt(V + I / 2)
    a = np.sqrt(2 * v0 - I)
    b = np.sqrt(2 * v0 + I)
    c = np.sqrt(2 * I - 4 * v0)
    d = np.sqrt(-4 * v0 - 2 * I)
    e = np.sqrt(I - 2 * v0)

    terms = [
        2 * (1 + math.pi) * r * np.arctanh(s / r) / pi2,
        -2 * (1 + math.pi) * s / pi2,
        2 * s / pi2,
        -V * np.arctanh(s / vm) / (pi2 * vm),
        -V * np.arctanh(s / vp) / (pi2 * vp),
        -I * (np.arctan(sq2 * s / a) / a - np.arctan(sq2 * s / b) / b) / (sq2 * pi2),
        -(math.log(1 + 1 / (4 * v0 ** 2)) + math.pi * (math.log(4 * pi2) - 2 * math.log(v0))) * s / (2 * pi2),
        -I * np.log(((1 - I) * v0 + r) / (((1 + I) * r + I) * c)
                    + 2 * I * s / (4 * r + (2 + 2 * I))) / (2 * pi2 * c),
        I * np.log(((-1 + I) * v0 - I * r) / (((1 + I) * r - 1) * d)
                   - 2 * I * s / (4 * r - (2 - 2 * I))) / (2 * pi2 * d),
        -I * np.log(((1 - I) * (e * s - sq2 * v0) + sq2 * r)
                    / ((2 * I - (2 + 2 * I) * r) * e)) / (2 * pi2 * c),
        I * np.log(I * ((1 + I) * v0 + r) / (((1 + I) * r + 1) * d)
                   + (1 - I) * s / ((2 + 2 * I) * r + 2)) / (2 * pi2 * d),
    ]
    total = sum(terms)
    re = _scalar(total.real)
    if return_imag:
        return re, _scalar(total.imag)
    return re


def higher_order_residual(V, v0: float = V0_DEFAULT, rel_tol: float = 1e-8):
    """Relative imaginary residue of `x_ws_higher`; raises above `rel_tol`."""
    re, im = x_ws_higher(V, v0, return_imag=True)
    re, im = np.asarray(re), np.asarray(im)
    rel = np.abs(im) / np.maximum(np.abs(re), 1e-300)
    if np.any(rel > rel_tol):
        raise ArithmeticError(f"imaginary residue {rel.max():.3g} exceeds {rel_tol:g}")
    return _scalar(rel)


def lambert_w(z):
    """Principal branch W0 of the Lambert function for real z >= -1/e.

    Initial guesses: branch-point series near -1/e, log1p on the middle
    range, ln z - ln ln z for large z; then Halley iteration.
    """
    za = np.asarray(z, dtype=float)
    if np.any(za < -1.0 / math.e - 1e-15) or not np.all(np.isfinite(za)):
        raise ValueError("lambert_w is defined for finite z >= -1/e")
    out = np.array([_lambert_w_scalar(float(v)) for v in za.reshape(-1)]).reshape(za.shape)
    return _scalar(out)


def _lambert_w_scalar(z: float) -> float:
    if z == 0.0:
        return 0.0
    if z <= -1.0 / math.e:
        return -1.0
    if z < -0.25:
        p = math.sqrt(2.0 * (math.e * z + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    elif z < math.e:
        w = math.log1p(z)
    else:
        l1 = math.log(z)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4e-16 * (1.0 + abs(w)):
            break
    return w


def v_asymptotic(x):
    """Large-|x| form (pi^2 x^2 / 4) / W0(sqrt(pi/2) |x| / e)^2.

    Even in x; at x = 0 the limit pi e^2 / 2 is returned.
    """
    xa = np.abs(np.asarray(x, dtype=float))
    c = math.sqrt(math.pi / 2.0) / math.e
    w = np.asarray(lambert_w(c * xa), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(xa == 0.0, math.pi * math.e ** 2 / 2.0,
                       (math.pi * xa / 2.0) ** 2 / np.where(w == 0.0, 1.0, w) ** 2)
    return _scalar(out)


@dataclass(frozen=True)
class PotentialSpec:
    variant: Variant = Variant.LEADING
    v0: float = V0_DEFAULT
    fractal: Optional[FractalParams] = None
    symmetric_extension: bool = True

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.v0 > 0:
            raise ValueError("v0 must be positive")
        if self.variant is Variant.HIGHER_ORDER and self.fractal is not None:
            raise ValueError("the higher-order variant takes no fractal supplement")

    def smooth(self) -> "PotentialSpec":
        return PotentialSpec(self.variant, self.v0, None, self.symmetric_extension)


@dataclass(frozen=True)
class PotentialGrid:
    """Potential sampled on the interior points of [-L, L] with step h.

    The walls at +-L themselves are Dirichlet boundaries and are not
    stored.  `sampler`, when present, re-samples the same potential on a
    different step, which the eigensolver needs for Richardson refinement.
    """
    x: np.ndarray
    v: np.ndarray
    h: float
    L: float
    meta: dict = field(default_factory=dict)
    sampler: Optional[Callable[[float], "PotentialGrid"]] = field(default=None, repr=False, compare=False)

    def resample(self, h: float) -> "PotentialGrid":
        if self.sampler is None:
            raise ValueError("this grid cannot be re-sampled")
        return self.sampler(h)

    @property
    def barrier(self) -> float:
        return float(min(self.v[0], self.v[-1]))

    @classmethod
    def from_function(cls, func, L: float, h: float, **meta):
        x = _interior(L, h)
        v = np.asarray(func(x), dtype=float)
        if v.shape != x.shape:
            v = np.broadcast_to(v, x.shape).astype(float)
        return cls(x, v, h, L, dict(meta), lambda hh: cls.from_function(func, L, hh, **meta))


def _interior(L: float, h: float) -> np.ndarray:
    if not (L > 0 and h > 0):
        raise ValueError("need L > 0 and h > 0")
    ratio = L / h
    n = int(round(ratio))
    if n < 2 or abs(ratio - n) > 1e-9 * max(1.0, ratio):
        raise ValueError(f"L/h = {ratio} is not a whole number >= 2")
    return h * np.arange(-n + 1, n, dtype=float)


_SMOOTH_CACHE: dict = {}


def smooth_samples(variant: Variant, v0: float, L: float, h: float) -> np.ndarray:
    """Smooth potential on the interior grid (cached, read-only)."""
    key = (Variant(variant), float(v0), float(L), float(h))
    arr = _SMOOTH_CACHE.get(key)
    if arr is None:
        x = _interior(L, h)
        if key[0] is Variant.LEADING:
            # even by construction: solve on x >= 0 and mirror
            n = x.size // 2
            half = np.asarray(invert_potential(x[n:], v0), dtype=float)
            arr = np.concatenate([half[:0:-1], half])
        elif key[0] is Variant.ASYMPTOTIC:
            arr = np.asarray(v_asymptotic(x), dtype=float)
        else:
            raise NotImplementedError("the higher-order potential has no explicit V(x) inversion")
        arr.setflags(write=False)
        if len(_SMOOTH_CACHE) > 32:
            _SMOOTH_CACHE.clear()
        _SMOOTH_CACHE[key] = arr
    return arr


def build_grid(spec: PotentialSpec, L: float, h: float) -> PotentialGrid:
    """Sample smooth(|x|) + sigma * A(x, gamma) on the interior of [-L, L]."""
    if not spec.symmetric_extension:
        raise NotImplementedError("only the even extension of the smooth well is supported")
    x = _interior(L, h)
    v = smooth_samples(spec.variant, spec.v0, L, h)
    if spec.fractal is not None and spec.fractal.sigma != 0.0:
        v = v + eval_A(x, spec.fractal)
    else:
        v = v.copy()
    meta = {"variant": spec.variant.value, "v0": spec.v0, "L": L, "h": h,
            "fractal": None if spec.fractal is None else vars(spec.fractal).copy()}
    return PotentialGrid(x, v, h, L, meta, lambda hh: build_grid(spec, L, hh))


def default_half_width(e_max: float, v0: float = V0_DEFAULT, margin: float = 1.5) -> float:
    """Smallest whole-number L with smooth V(L) >= margin * e_max."""
    target = max(margin * e_max, v0)
    return float(max(1, math.ceil(x_ws(target, v0))))
