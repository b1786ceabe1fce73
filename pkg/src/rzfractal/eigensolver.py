"""Lowest eigenvalues of -psi'' + V psi = E psi with hard walls at +-L.

Two independent routes:

* ``finite_difference``: three-point second difference, a symmetric
  tridiagonal matrix whose lowest eigenvalues are isolated by Sturm
  sequence bisection (LAPACK ``stebz``).  Optional Richardson
  extrapolation over steps h and h/2.
* ``shooting``: Numerov integration inwards from both walls, matched at
  the right classical turning point; eigenvalues are bracketed by node
  counting and polished with Brent's method.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .potential import PotentialGrid


class SolverError(RuntimeError):
    pass


class InsufficientBoundStates(SolverError):
    pass


class ResolutionError(SolverError):
    pass


class MatchingError(SolverError):
    pass


@dataclass(frozen=True)
class SolverSettings:
    h: float
    L: float
    n: int
    method: str = "finite_difference"
    refine: bool = True
    refine_tol: float = 1e-3
    max_refinements: int = 4
    min_points_per_wavelength: float = 20.0
    check_resolution: bool = True
    require_barrier: bool = True
    want_vectors: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.method not in ("finite_difference", "shooting"):
            raise ValueError(f"unknown method {self.method!r}")
        if not (self.h > 0 and self.L > 0):
            raise ValueError("h and L must be positive")


@dataclass
class EigenResult:
    eigenvalues: np.ndarray
    converged: bool
    h_used: float
    L_used: float
    method: str
    error_estimate: Optional[np.ndarray] = None
    raw: Optional[np.ndarray] = None
    eigenfunctions: Optional[np.ndarray] = None
    x: Optional[np.ndarray] = None
    points_per_wavelength: float = math.inf
    refinements: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def fd_matrix(grid: PotentialGrid):
    """Diagonal and off-diagonal of the second-difference Hamiltonian."""
    h2 = grid.h * grid.h
    d = 2.0 / h2 + grid.v
    e = np.full(grid.v.size - 1, -1.0 / h2)
    return d, e


def sturm_count(d, e, lam: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below `lam`."""
    count = 0
    q = 1.0
    tiny = 1e-300
    e2 = [float(t) * float(t) for t in e]
    for i, di in enumerate(d):
        q = float(di) - lam - (e2[i - 1] / q if i else 0.0)
        if q == 0.0:
            q = -tiny
        if q < 0.0:
            count += 1
    return count


def sturm_bisection(d, e, k: int, tol: float = 1e-12) -> float:
    """k-th (0-based) eigenvalue of a tridiagonal matrix by plain bisection."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    ae = np.abs(np.concatenate([[0.0], e, [0.0]]))
    radius = ae[:-1] + ae[1:]
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius))
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if sturm_count(d, e, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _fd_lowest(grid: PotentialGrid, n: int, vectors: bool):
    d, e = fd_matrix(grid)
    if vectors:
        w, vec = eigh_tridiagonal(d, e, select="i", select_range=(0, n - 1),
                                  lapack_driver="stebz")
        return w, vec
    w = eigh_tridiagonal(d, e, select="i", select_range=(0, n - 1),
                         eigvals_only=True, lapack_driver="stebz")
    return w, None


def _check_bound_states(grid: PotentialGrid, n: int):
    d, e = fd_matrix(grid)
    available = sturm_count(d, e, grid.barrier)
    if available < n:
        raise InsufficientBoundStates(
            f"only {available} states lie below the wall barrier {grid.barrier:.4g}; {n} requested")


def _gershgorin_top(grid: PotentialGrid) -> float:
    return float(np.max(grid.v)) + 4.0 / grid.h ** 2


def points_per_wavelength(grid: PotentialGrid, e_max: float) -> float:
    kinetic = e_max - float(np.min(grid.v))
    if kinetic <= 0:
        return math.inf
    return 2.0 * math.pi / (math.sqrt(kinetic) * grid.h)


def _normalise(vec, h):
    if vec is None:
        return None
    vec = vec / np.sqrt(h * np.sum(vec * vec, axis=0))
    # fix the sign so each state starts positive on the left
    lead = np.array([vec[np.argmax(np.abs(vec[:, j]) > 1e-8 * np.abs(vec[:, j]).max()), j]
                     for j in range(vec.shape[1])])
    return vec * np.where(lead < 0, -1.0, 1.0)


def solve(grid: PotentialGrid, settings: SolverSettings) -> EigenResult:
    """Lowest `settings.n` eigenvalues on `grid`.

    With ``refine`` the problem is also solved at h/2 and the two results
    combined as E_h/2 + (E_h/2 - E_h)/3.  The reported error estimate is
    |E_h/2 - E_h|/3 per level, a conservative bound for the extrapolated
    value.  While it exceeds ``refine_tol`` the step is halved again, up
    to ``max_refinements`` times.
    """
    n = settings.n
    if not np.all(np.isfinite(grid.v)):
        raise SolverError("potential grid contains non-finite values")
    if settings.require_barrier:
        _check_bound_states(grid, n)

    if settings.method == "shooting":
        w = shooting_eigenvalues(grid, n, e_max=None if settings.require_barrier else _gershgorin_top(grid))
        res = EigenResult(w, True, grid.h, grid.L, "shooting")
    elif not settings.refine:
        w, vec = _fd_lowest(grid, n, settings.want_vectors)
        res = EigenResult(w, True, grid.h, grid.L, "finite_difference", raw=w,
                          eigenfunctions=_normalise(vec, grid.h), x=grid.x if vec is not None else None)
    else:
        res = _solve_richardson(grid, settings)

    w = res.eigenvalues
    if np.any(np.diff(w) <= 0):
        raise SolverError("eigenvalues are not strictly increasing")
    if settings.require_barrier and w[-1] >= grid.barrier:
        raise InsufficientBoundStates("highest eigenvalue reaches the wall barrier")
    res.points_per_wavelength = points_per_wavelength(grid, float(w[-1])) * grid.h / res.h_used
    if settings.check_resolution and res.points_per_wavelength < settings.min_points_per_wavelength:
        raise ResolutionError(
            f"{res.points_per_wavelength:.1f} points per wavelength at E = {w[-1]:.4g}; "
            f"need {settings.min_points_per_wavelength:g}")
    return res


def _solve_richardson(grid: PotentialGrid, settings: SolverSettings) -> EigenResult:
    n = settings.n
    coarse = grid
    w_coarse, _ = _fd_lowest(coarse, n, False)
    refinements = 0
    while True:
        fine = coarse.resample(coarse.h / 2.0)
        w_fine, vec = _fd_lowest(fine, n, settings.want_vectors)
        delta = (w_fine - w_coarse) / 3.0
        err = np.abs(delta)
        ok = float(err.max()) <= settings.refine_tol
        if ok or refinements >= settings.max_refinements:
            break
        coarse, w_coarse = fine, w_fine
        refinements += 1
    return EigenResult(
        eigenvalues=w_fine + delta,
        converged=ok,
        h_used=fine.h,
        L_used=grid.L,
        method="finite_difference",
        error_estimate=err,
        raw=w_fine,
        eigenfunctions=_normalise(vec, fine.h),
        x=fine.x if vec is not None else None,
        refinements=refinements,
        meta={"h_coarse": coarse.h},
    )


# ---------------------------------------------------------------- shooting

def _numerov(g: list, h2: float, start: int, stop: int, step: int, psi: list):
    """Fill psi[start+step .. stop] by Numerov from psi[start-step], psi[start].

    psi'' = g psi.  Returns the number of sign changes encountered and the
    cumulative rescaling applied (so callers can keep values bounded).
    """
    c = h2 / 12.0
    nodes = 0
    i = start
    while i != stop:
        a_prev = 1.0 - c * g[i - step]
        a_cur = 1.0 + 5.0 * c * g[i]
        a_next = 1.0 - c * g[i + step]
        nxt = (2.0 * a_cur * psi[i] - a_prev * psi[i - step]) / a_next
        i += step
        psi[i] = nxt
        if abs(nxt) > 1e150:
            lo = min(start - step, i)
            hi = max(start - step, i)
            for j in range(lo, hi + 1):
                psi[j] *= 1e-150
        if (psi[i] < 0.0) != (psi[i - step] < 0.0) and psi[i - step] != 0.0:
            nodes += 1
    return nodes


def _shoot_left(v, E, h2):
    """Integrate from the left wall to the right wall; return (psi, nodes)."""
    N = len(v)
    g = [0.0] + [vi - E for vi in v] + [0.0]
    psi = [0.0] * (N + 2)
    psi[1] = 1e-12
    nodes = _numerov(g, h2, 1, N + 1, 1, psi)
    return psi, nodes, g


def _node_count(v, E, h2) -> int:
    # interior sign changes plus the crossing of psi(L) through zero
    _, nodes, _ = _shoot_left(v, E, h2)
    return nodes


def _mismatch(v, E, h2, m):
    N = len(v)
    g = [0.0] + [vi - E for vi in v] + [0.0]
    left = [0.0] * (N + 2)
    left[1] = 1e-12
    _numerov(g, h2, 1, m + 1, 1, left)
    right = [0.0] * (N + 2)
    right[N] = 1e-12
    _numerov(g, h2, N, m, -1, right)
    a0, a1 = left[m], left[m + 1]
    b0, b1 = right[m], right[m + 1]
    norm = (abs(a0) + abs(a1)) * (abs(b0) + abs(b1))
    if norm == 0.0:
        raise MatchingError("vanishing solutions at the matching point")
    return (a0 * b1 - a1 * b0) / norm


def _matching_index(v, E):
    # last interior point still classically allowed, kept off the walls
    N = len(v)
    allowed = np.nonzero(np.asarray(v) < E)[0]
    m = int(allowed[-1]) + 1 if allowed.size else N // 2
    return min(max(m, 2), N - 2)


def shooting_eigenvalues(grid: PotentialGrid, n: int, xtol: float = 1e-13,
                        e_max: float | None = None) -> np.ndarray:
    """Lowest n eigenvalues by two-sided Numerov shooting.

    Brackets are searched below `e_max`, by default the wall barrier.
    """
    v = [float(t) for t in grid.v]
    h2 = grid.h * grid.h
    lo_all = float(np.min(grid.v))
    hi_all = grid.barrier if e_max is None else float(e_max)
    cache: dict[float, int] = {}

    def count(E):
        c = cache.get(E)
        if c is None:
            c = cache[E] = _node_count(v, E, h2)
        return c

    if count(hi_all) < n:
        raise InsufficientBoundStates(f"fewer than {n} states below {hi_all:.4g}")
    out = []
    a = lo_all
    for k in range(n):
        b = hi_all
        # shrink [a, b] until it holds exactly eigenvalue k
        lo, hi = a, b
        while True:
            if count(lo) == k and count(hi) == k + 1:
                break
            mid = 0.5 * (lo + hi)
            if hi - lo < 1e-12 * max(1.0, abs(hi)):
                raise MatchingError(f"could not isolate eigenvalue {k}")
            if count(mid) > k:
                hi = mid
            else:
                lo = mid
        m = _matching_index(v, 0.5 * (lo + hi))
        f_lo = _mismatch(v, lo, h2, m)
        f_hi = _mismatch(v, hi, h2, m)
        if f_lo == 0.0:
            E = lo
        elif f_hi == 0.0:
            E = hi
        elif (f_lo > 0) == (f_hi > 0):
            # matching point unlucky for this bracket; fall back on the node-count bisection
            while hi - lo > xtol * max(1.0, abs(hi)):
                mid = 0.5 * (lo + hi)
                if count(mid) > k:
                    hi = mid
                else:
                    lo = mid
            E = 0.5 * (lo + hi)
        else:
            E = brentq(lambda t: _mismatch(v, t, h2, m), lo, hi, xtol=xtol * max(1.0, abs(hi)),
                       rtol=1e-15, maxiter=200)
        out.append(E)
        a = hi
    return np.array(out)


@dataclass
class CrossValidation:
    fd: np.ndarray
    shooting: np.ndarray
    max_rel_discrepancy: float
    tol: float
    converged: bool
    notes: list = field(default_factory=list)


def cross_validate(grid: PotentialGrid, settings: SolverSettings, tol: float = 1e-5) -> CrossValidation:
    """Compare refined finite differences with Numerov shooting on `grid`.

    Never raises for accuracy problems; they are reported through
    `converged` and `notes`.
    """
    notes = []
    relaxed = replace(settings, check_resolution=False, method="finite_difference", want_vectors=False)
    fd = solve(grid, relaxed)
    if not fd.converged:
        notes.append("Richardson refinement did not reach its tolerance")
    ppw = points_per_wavelength(grid, float(fd.eigenvalues[-1]))
    if ppw < settings.min_points_per_wavelength:
        notes.append(f"grid resolves only {ppw:.1f} points per wavelength")
    sh = shooting_eigenvalues(grid, settings.n,
                              e_max=None if settings.require_barrier else _gershgorin_top(grid))
    rel = np.abs(fd.eigenvalues - sh) / np.abs(sh)
    worst = float(rel.max())
    if worst > tol:
        notes.append(f"methods disagree by {worst:.3g} (relative)")
    return CrossValidation(fd.eigenvalues, sh, worst, tol, worst <= tol and not notes, notes)
