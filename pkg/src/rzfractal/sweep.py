"""Seeded random-search campaigns over the fractal parameters (gamma, sigma).

Every campaign draws its full parameter list up front from a PCG64
generator seeded with the campaign seed: one call producing a
``(samples, 2)`` array of uniforms, column 0 mapped to gamma and column 1
to sigma.  Evaluation order and worker count therefore cannot change
which parameters a record gets.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .eigensolver import SolverError, SolverSettings, solve
from .fitstats import fit
from .fractal import FractalParams
from .potential import V0_DEFAULT, PotentialSpec, build_grid, default_half_width
from .zeros import ZeroTable, load_zeros

CSV_COLUMNS = ("index", "gamma", "sigma", "sse", "status", "millis")


@dataclass(frozen=True)
class SweepConfig:
    n: int = 25
    samples: int = 100
    seed: int = 0
    gamma_range: tuple = (1.0, 10.0)
    sigma_range: tuple = (0.0, 10.0)
    d: float = 1.5
    m_cutoff: int = 30
    v0: float = V0_DEFAULT
    solver: Optional[SolverSettings] = None

    def __post_init__(self):
        g0, g1 = self.gamma_range
        s0, s1 = self.sigma_range
        if not (1.0 <= g0 <= g1):
            raise ValueError("gamma range must satisfy 1 <= lo <= hi")
        if not (0.0 <= s0 <= s1):
            raise ValueError("sigma range must satisfy 0 <= lo <= hi")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if self.n < 1:
            raise ValueError("n must be positive")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["gamma_range"] = list(self.gamma_range)
        out["sigma_range"] = list(self.sigma_range)
        return out


@dataclass
class SweepRecord:
    index: int
    gamma: float
    sigma: float
    sse: float
    status: str = "ok"
    wall_time: float = 0.0
    converged: bool = True
    error_estimate: float = field(default=float("nan"), compare=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def default_settings(n: int, zeros: ZeroTable | None = None, v0: float = V0_DEFAULT) -> SolverSettings:
    """Initial solver settings for fitting the first n zeros.

    The half-width puts the smooth barrier at 1.5 times the n-th zero.
    The step is the largest of 0.01 / 2^j with k_max h <= 0.1, where
    k_max = sqrt(t_n - v0); that is well over the 20 points per
    wavelength the solver insists on.
    """
    table = zeros if zeros is not None else load_zeros(n=n)
    e_max = table.values[n - 1]
    L = default_half_width(e_max, v0)
    kmax = math.sqrt(max(e_max - v0, 1.0))
    h = 0.01
    while kmax * h > 0.1:
        h /= 2.0
    return SolverSettings(h=h, L=L, n=n)


def resolve_settings(n: int, zeros: ZeroTable, v0: float = V0_DEFAULT,
                     settings: SolverSettings | None = None) -> SolverSettings:
    """Pin the step at which the smooth problem meets the refinement tolerance.

    Campaign records are then all solved at that same step with automatic
    refinement switched off, so every record is comparable with the baseline.
    """
    s = settings or default_settings(n, zeros, v0)
    grid = build_grid(PotentialSpec(v0=v0), s.L, s.h)
    res = solve(grid, s)
    coarse = res.meta.get("h_coarse", s.h)
    return replace(s, h=coarse, max_refinements=0)


def draw_parameters(config: SweepConfig) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(config.seed))
    u = rng.random((config.samples, 2))
    g0, g1 = config.gamma_range
    s0, s1 = config.sigma_range
    return np.column_stack([g0 + (g1 - g0) * u[:, 0], s0 + (s1 - s0) * u[:, 1]])


def evaluate_point(gamma: float, sigma: float, n: int, zeros: ZeroTable | None = None,
                   settings: SolverSettings | None = None, d: float = 1.5, m_cutoff: int = 30,
                   v0: float = V0_DEFAULT, index: int = 0) -> SweepRecord:
    """Build the supplemented grid, solve it and score the first n levels.

    Solver failures come back as a record with status ``failed:<Error>``
    and a NaN sse.
    """
    table = (zeros if zeros is not None else load_zeros(n=n)).head(n)
    s = settings or resolve_settings(n, table, v0)
    t0 = time.perf_counter()
    try:
        frac = FractalParams.symmetric(gamma, sigma, d, m_cutoff) if sigma != 0.0 else None
        grid = build_grid(PotentialSpec(v0=v0, fractal=frac), s.L, s.h)
        res = solve(grid, s)
        rep = fit(res, table)
        err = float(np.max(res.error_estimate)) if res.error_estimate is not None else float("nan")
        rec = SweepRecord(index, gamma, sigma, rep.sse, "ok", 0.0, res.converged, err)
    except (SolverError, ValueError, ArithmeticError) as exc:
        rec = SweepRecord(index, gamma, sigma, float("nan"), f"failed:{type(exc).__name__}", 0.0, False)
    rec.wall_time = time.perf_counter() - t0
    return rec


def smooth_baseline(n: int, zeros: ZeroTable, settings: SolverSettings, v0: float = V0_DEFAULT) -> float:
    rec = evaluate_point(1.5, 0.0, n, zeros, settings, v0=v0)
    if not rec.ok:
        raise SolverError(f"smooth baseline failed: {rec.status}")
    return rec.sse


def _work(args):
    chunk, n, zeros_vals, settings, d, m_cutoff, v0 = args
    table = ZeroTable(zeros_vals, "worker")
    return [evaluate_point(g, s, n, table, settings, d, m_cutoff, v0, index=i) for i, g, s in chunk]


def run_sweep(config: SweepConfig, zeros: ZeroTable, workers: int = 1,
              settings: SolverSettings | None = None) -> list[SweepRecord]:
    """Evaluate every drawn (gamma, sigma) pair; records come back sorted by index."""
    table = zeros.head(config.n)
    s = settings or config.solver or resolve_settings(config.n, table, config.v0)
    params = draw_parameters(config)
    jobs = [(i, float(g), float(sg)) for i, (g, sg) in enumerate(params)]
    if workers <= 1 or len(jobs) == 1:
        records = _work((jobs, config.n, table.values, s, config.d, config.m_cutoff, config.v0))
    else:
        size = max(1, math.ceil(len(jobs) / (4 * workers)))
        chunks = [jobs[k:k + size] for k in range(0, len(jobs), size)]
        args = [(c, config.n, table.values, s, config.d, config.m_cutoff, config.v0) for c in chunks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for part in pool.map(_work, args) for r in part]
    records.sort(key=lambda r: r.index)
    return records


def best_records(records: Sequence[SweepRecord], k: int) -> list[SweepRecord]:
    """Top-k successful records by ascending sse; ties go to the lower index."""
    if k <= 0:
        return []
    good = [r for r in records if r.ok and not math.isnan(r.sse)]
    return sorted(good, key=lambda r: (r.sse, r.index))[:k]


def format_records(records: Sequence[SweepRecord], timing: bool = True) -> str:
    """CSV text with fixed columns and round-trippable floats.

    With ``timing=False`` the millis column is left empty so that files
    from repeated runs compare byte for byte.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        millis = f"{1000.0 * r.wall_time:.3f}" if timing else ""
        w.writerow([r.index, repr(float(r.gamma)), repr(float(r.sigma)), repr(float(r.sse)), r.status, millis])
    return buf.getvalue()


def read_records(path) -> list[SweepRecord]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            millis = row.get("millis") or ""
            out.append(SweepRecord(int(row["index"]), float(row["gamma"]), float(row["sigma"]),
                                   float(row["sse"]), row["status"],
                                   float(millis) / 1000.0 if millis else 0.0))
    return out
