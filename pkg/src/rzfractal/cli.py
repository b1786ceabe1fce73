"""Command line entry point: ``rzfractal <subcommand> [options]``.

Every file written is accompanied by ``<file>.manifest.json`` (or a
``manifest.json`` in the output directory for `report`) holding the fully
resolved configuration; passing that manifest back through ``--config``
replays the run.  Option precedence is flags > config file > defaults.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import time
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, plotting
from .eigensolver import SolverError, SolverSettings, cross_validate, solve
from .fitstats import (BoundaryMinimumError, fit, histogram, improvement_regions, pearson,
                       rankit_points, refine_minimum)
from .fractal import FractalParams
from .potential import (V0_DEFAULT, InversionError, PotentialSpec, build_grid, x_ws,
                        x_ws_higher)
from .rvm import QuadratureError, delta_term, n_connes, n_corrected, n_smooth
from .sweep import (SweepConfig, best_records, default_settings, format_records, read_records,
                    resolve_settings, run_sweep, smooth_baseline)
from .zeros import ZeroTableError, default_table_path, load_zeros, sum_of_squares

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4

DEFAULTS = {
    "zeros": {"n": 100, "emit": None},
    "potential": {"v0": V0_DEFAULT, "v_max": None, "points": 200, "emit": None, "grid_dump": None,
                  "variant": "leading", "half_width": 10.0, "grid_step": 0.01, "gamma": None,
                  "sigma": 0.0, "fractal_dim": 1.5, "m_cutoff": 30, "figures": False},
    "solve": {"n": 25, "grid_step": None, "half_width": None, "method": "finite_difference",
              "refine": True, "emit": None, "emit_wavefunctions": None, "gamma": None, "sigma": 0.0,
              "fractal_dim": 1.5, "m_cutoff": 30, "v0": V0_DEFAULT, "cross_validate": False,
              "figures": False},
    "sweep": {"n": 25, "samples": 100, "gamma_range": "1:10", "sigma_range": "0:10", "seed": 0,
              "threads": 1, "out": "sweep.csv", "omit_timing": False, "fractal_dim": 1.5,
              "m_cutoff": 30, "v0": V0_DEFAULT, "grid_step": None, "half_width": None},
    "report": {"sweep": None, "out_dir": "report", "baseline": None, "bin_width": 0.5,
               "eigen": None, "figures": True},
    "count": {"e_min": 1.0, "e_max": 100.0, "points": 100, "lambda_": 1.0, "emit": None,
              "tol": 1e-10},
}

GLOBAL_DEFAULTS = {"zeros_file": None, "threads": 1, "seed": 0}


class InputError(Exception):
    pass


# ------------------------------------------------------------------ parsing

def _range(text):
    if text.startswith("fixed:"):
        v = float(text.split(":", 1)[1])
        return (v, v)
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi or fixed:v, got {text!r}") from None
    return (lo, hi)


def _fractal_flags(p):
    p.add_argument("--gamma", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--fractal-dim", type=float, dest="fractal_dim")
    p.add_argument("--m-cutoff", type=int, dest="m_cutoff")


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    common.add_argument("--config", help="JSON config file or run manifest")
    common.add_argument("--zeros", dest="zeros_file", help="zero table (default: bundled 100 zeros)")
    common.add_argument("--threads", type=int)
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="rzfractal", argument_default=S,
                                     description="Riemann zeros from fractal-supplemented Wu-Sprung potentials")
    parser.add_argument("--version", action="version", version=f"rzfractal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", parents=[common], argument_default=S, help="inspect the zero table")
    p.add_argument("--n", type=int)
    p.add_argument("--emit")

    p = sub.add_parser("potential", parents=[common], argument_default=S,
                       help="tabulate x_ws and its higher-order variant; dump V(x) grids")
    p.add_argument("--v0", type=float)
    p.add_argument("--v-max", type=float, dest="v_max")
    p.add_argument("--points", type=int)
    p.add_argument("--emit")
    p.add_argument("--grid-dump", dest="grid_dump")
    p.add_argument("--variant", choices=["leading", "asymptotic"])
    p.add_argument("--half-width", type=float, dest="half_width")
    p.add_argument("--grid-step", type=float, dest="grid_step")
    p.add_argument("--figures", action="store_true")
    _fractal_flags(p)

    p = sub.add_parser("solve", parents=[common], argument_default=S, help="lowest n eigenvalues")
    p.add_argument("--n", type=int)
    p.add_argument("--grid-step", type=float, dest="grid_step")
    p.add_argument("--half-width", type=float, dest="half_width")
    p.add_argument("--method", choices=["finite_difference", "shooting"])
    p.add_argument("--refine", action=argparse.BooleanOptionalAction)
    p.add_argument("--emit")
    p.add_argument("--emit-wavefunctions", dest="emit_wavefunctions")
    p.add_argument("--v0", type=float)
    p.add_argument("--cross-validate", action="store_true", dest="cross_validate")
    p.add_argument("--figures", action="store_true")
    _fractal_flags(p)

    p = sub.add_parser("sweep", parents=[common], argument_default=S, help="seeded random search")
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--gamma-range", dest="gamma_range")
    p.add_argument("--sigma-range", dest="sigma_range")
    p.add_argument("--out")
    p.add_argument("--omit-timing", action="store_true", dest="omit_timing")
    p.add_argument("--fractal-dim", type=float, dest="fractal_dim")
    p.add_argument("--m-cutoff", type=int, dest="m_cutoff")
    p.add_argument("--v0", type=float)
    p.add_argument("--grid-step", type=float, dest="grid_step")
    p.add_argument("--half-width", type=float, dest="half_width")

    p = sub.add_parser("report", parents=[common], argument_default=S,
                       help="histograms, rankits, minima and figures from a sweep")
    p.add_argument("--sweep")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--baseline", type=float)
    p.add_argument("--bin-width", type=float, dest="bin_width")
    p.add_argument("--eigen", help="eigen CSV whose deviations feed the rankit table")
    p.add_argument("--figures", action=argparse.BooleanOptionalAction)

    p = sub.add_parser("count", parents=[common], argument_default=S, help="counting functions")
    p.add_argument("--e-min", type=float, dest="e_min")
    p.add_argument("--e-max", type=float, dest="e_max")
    p.add_argument("--points", type=int)
    p.add_argument("--lambda", type=float, dest="lambda_")
    p.add_argument("--tol", type=float)
    p.add_argument("--emit")
    return parser


def resolve_options(ns: argparse.Namespace) -> dict:
    explicit = vars(ns).copy()
    command = explicit.pop("command")
    cfg_path = explicit.pop("config", None)
    from_file = {}
    if cfg_path:
        try:
            data = json.loads(Path(cfg_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {cfg_path}: {exc}") from None
        if "config" in data and "subcommand" in data:
            if data["subcommand"] != command:
                raise InputError(f"manifest is for {data['subcommand']!r}, not {command!r}")
            data = data["config"]
        from_file = data
    known = set(DEFAULTS[command]) | set(GLOBAL_DEFAULTS)
    unknown = set(from_file) - known
    if unknown:
        raise InputError(f"unknown config keys for {command}: {sorted(unknown)}")
    return {**GLOBAL_DEFAULTS, **DEFAULTS[command], **from_file, **explicit}


# ------------------------------------------------------------------ output

def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


class Run:
    """Collects provenance for one invocation and writes its manifest."""

    def __init__(self, command: str, opts: dict):
        self.command = command
        self.opts = opts
        self.started = datetime.now(timezone.utc).isoformat()
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []
        self.results: dict = {}

    def add_input(self, path):
        self.inputs[str(path)] = _sha256(path)

    def write_csv(self, path, header, rows):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(v) for v in row])
        self.outputs.append(str(path))
        return path

    def write_text(self, path, text):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        self.outputs.append(str(path))
        return path

    def write_json(self, path, obj):
        return self.write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def manifest(self, path):
        doc = {
            "subcommand": self.command,
            "config": self.opts,
            "tool_version": __version__,
            "seed": self.opts.get("seed"),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "results": self.results,
            "started": self.started,
            "finished": datetime.now(timezone.utc).isoformat(),
        }
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n",
                              encoding="utf-8")
        return path


def _jsonable(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o).__name__)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _zeros(opts, run: Run, n: int):
    path = opts.get("zeros_file") or default_table_path()
    table = load_zeros(path, n)
    run.add_input(path)
    return table


def _fractal(opts):
    if opts.get("gamma") is None or not opts.get("sigma"):
        return None
    return FractalParams.symmetric(opts["gamma"], opts["sigma"], opts["fractal_dim"], opts["m_cutoff"])


def _say(msg):
    print(msg, file=sys.stdout)


# ------------------------------------------------------------------ commands

def cmd_zeros(opts, run):
    table = _zeros(opts, run, opts["n"])
    cum = np.cumsum(np.square(table.values))
    for k in (25, 50, 75):
        if k <= table.count:
            _say(f"sum of squares, first {k}: {sum_of_squares(table.head(k)):.6f}")
    run.results["sum_of_squares"] = sum_of_squares(table)
    if opts["emit"]:
        run.write_csv(opts["emit"], ["index", "zero", "cumulative_sum_of_squares"],
                      ((k + 1, t, c) for k, (t, c) in enumerate(zip(table.values, cum))))
        return opts["emit"]
    return None


def cmd_potential(opts, run):
    v0 = opts["v0"]
    primary = None
    if opts["emit"] or not opts["grid_dump"]:
        vmax = opts["v_max"] or 100.0 * v0
        V = v0 + np.concatenate([[0.0], np.geomspace(1e-6 * v0, vmax - v0, opts["points"] - 1)])
        xw = np.asarray(x_ws(V, v0))
        xh, im = x_ws_higher(V, v0, return_imag=True)
        xh, im = np.asarray(xh), np.asarray(im)
        ratio = np.divide(xw, xh, out=np.full_like(xw, np.nan), where=xh != 0)
        rel_im = np.abs(im) / np.maximum(np.abs(xh), 1e-300)
        run.results["max_relative_imaginary_residue"] = float(rel_im.max())
        _say(f"max relative imaginary residue of x_ws_higher: {rel_im.max():.3e}")
        rows = zip(V, xw, xh, xw - xh, ratio, rel_im)
        header = ["V", "x_ws", "x_ws_higher", "difference", "ratio", "imag_residue"]
        if opts["emit"]:
            primary = run.write_csv(opts["emit"], header, rows)
            if opts["figures"]:
                run.outputs.append(str(plotting.potential_comparison(
                    V, xw - xh, ratio, Path(opts["emit"]).with_suffix(".png"))))
        else:
            w = csv.writer(sys.stdout, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(v) for v in row])
    if opts["grid_dump"]:
        spec = PotentialSpec(opts["variant"], v0, _fractal(opts))
        grid = build_grid(spec, opts["half_width"], opts["grid_step"])
        p = run.write_csv(opts["grid_dump"], ["x", "V"], zip(grid.x, grid.v))
        primary = primary or p
    return primary


def _solver_settings(opts, table, n):
    base = default_settings(n, table, opts["v0"])
    h = opts["grid_step"] or base.h
    L = opts["half_width"] or base.L
    return SolverSettings(h=h, L=L, n=n, method=opts["method"], refine=opts["refine"],
                          want_vectors=bool(opts["emit_wavefunctions"]))


def cmd_solve(opts, run):
    n = opts["n"]
    table = _zeros(opts, run, n)
    settings = _solver_settings(opts, table, n)
    spec = PotentialSpec(v0=opts["v0"], fractal=_fractal(opts))
    grid = build_grid(spec, settings.L, settings.h)
    res = solve(grid, settings)
    rep = fit(res, table)
    run.results.update(sse=rep.sse, sse_fraction=rep.sse_fraction, sse_uncertainty=rep.sse_uncertainty,
                       h_used=res.h_used, L_used=res.L_used, converged=res.converged)
    _say(f"n={n}  SSE={rep.sse:.6f}  fraction={rep.sse_fraction:.3e}  h={res.h_used:g}  L={res.L_used:g}")
    if rep.sse_uncertainty is not None:
        _say(f"solver uncertainty on SSE <= {rep.sse_uncertainty:.2e}")
    if opts["cross_validate"]:
        cv = cross_validate(grid, settings)
        run.results["cross_validation"] = {"max_rel_discrepancy": cv.max_rel_discrepancy,
                                           "converged": cv.converged, "notes": cv.notes}
        _say(f"finite difference vs shooting: {cv.max_rel_discrepancy:.2e} relative"
             + ("" if cv.converged else "  [NOT CONVERGED: " + "; ".join(cv.notes) + "]"))
    primary = None
    header = ["index", "eigenvalue", "zero", "deviation", "abs_deviation"]
    rows = [(k + 1, e, z, d, abs(d)) for k, (e, z, d) in enumerate(zip(rep.eigenvalues, rep.zeros, rep.deviations))]
    if opts["emit"]:
        primary = run.write_csv(opts["emit"], header, rows)
        if opts["figures"]:
            run.outputs.append(str(plotting.deviations(np.arange(1, n + 1), rep.deviations,
                                                       Path(opts["emit"]).with_suffix(".png"))))
    else:
        for row in rows:
            _say(",".join(str(_fmt(v)) for v in row))
    if opts["emit_wavefunctions"]:
        out = Path(opts["emit_wavefunctions"])
        psi = res.eigenfunctions
        vfine = grid.resample(res.h_used).v if res.h_used != grid.h else grid.v
        cols = ["x", "V"] + [f"psi_{k + 1}" for k in range(n)]
        p = run.write_csv(out / "wavefunctions.csv", cols,
                          (np.concatenate([[x, v], row]) for x, v, row in zip(res.x, vfine, psi)))
        run.write_csv(out / "levels.csv", ["index", "eigenvalue"], ((k + 1, e) for k, e in enumerate(res.eigenvalues)))
        if opts["figures"]:
            run.outputs.append(str(plotting.wavefunctions(res.x, vfine, res.eigenvalues, psi,
                                                          out / "wavefunctions.png")))
        primary = primary or p
    return primary


def cmd_sweep(opts, run):
    n = opts["n"]
    table = _zeros(opts, run, n)
    try:
        g = _range(opts["gamma_range"]) if isinstance(opts["gamma_range"], str) else tuple(opts["gamma_range"])
        s = _range(opts["sigma_range"]) if isinstance(opts["sigma_range"], str) else tuple(opts["sigma_range"])
    except argparse.ArgumentTypeError as exc:
        raise InputError(str(exc)) from None
    cfg = SweepConfig(n=n, samples=opts["samples"], seed=opts["seed"], gamma_range=g, sigma_range=s,
                      d=opts["fractal_dim"], m_cutoff=opts["m_cutoff"], v0=opts["v0"])
    base = default_settings(n, table, cfg.v0)
    if opts["grid_step"] or opts["half_width"]:
        base = replace(base, h=opts["grid_step"] or base.h, L=opts["half_width"] or base.L)
    settings = resolve_settings(n, table, cfg.v0, base)
    baseline = smooth_baseline(n, table, settings, cfg.v0)
    t0 = time.perf_counter()
    records = run_sweep(cfg, table, workers=opts["threads"], settings=settings)
    elapsed = time.perf_counter() - t0
    out = run.write_text(opts["out"], format_records(records, timing=not opts["omit_timing"]))
    ok = [r for r in records if r.ok]
    improving = [r for r in ok if r.sse < baseline]
    run.results.update(baseline_sse=baseline, solver={"h": settings.h, "L": settings.L, "refine": settings.refine},
                       records=len(records), failed=len(records) - len(ok), improving=len(improving),
                       best=[{"index": r.index, "gamma": r.gamma, "sigma": r.sigma, "sse": r.sse}
                             for r in best_records(records, 5)])
    _say(f"{len(records)} records ({len(records) - len(ok)} failed) in {elapsed:.1f}s; "
         f"smooth baseline {baseline:.6f}; {len(improving)} improve on it")
    for r in best_records(records, 3):
        _say(f"  #{r.index}: gamma={r.gamma:.5f} sigma={r.sigma:.5f} sse={r.sse:.6f}")
    return out


def _sweep_manifest(path: Path):
    side = Path(str(path) + ".manifest.json")
    if side.is_file():
        return json.loads(side.read_text(encoding="utf-8"))
    return None


def max_count_bins(hist):
    """All [lo, hi) bins sharing the largest non-zero count."""
    top = int(hist.counts.max()) if hist.counts.size else 0
    if top == 0:
        return []
    return [[lo, hi] for lo, hi, c in hist.rows() if c == top]


def cmd_report(opts, run):
    if not opts["sweep"]:
        raise InputError("report needs --sweep")
    sweep_path = Path(opts["sweep"])
    if not sweep_path.is_file():
        raise InputError(f"sweep file not found: {sweep_path}")
    run.add_input(sweep_path)
    records = read_records(sweep_path)
    man = _sweep_manifest(sweep_path)
    n = (man or {}).get("config", {}).get("n", 25)
    baseline = opts["baseline"]
    if baseline is None:
        baseline = (man or {}).get("results", {}).get("baseline_sse")
    if baseline is None:
        raise InputError("no baseline: pass --baseline or keep the sweep manifest next to the CSV")
    out = Path(opts["out_dir"])
    ok = [r for r in records if r.ok]
    imp = [r for r in ok if r.sse < baseline]
    g_lo = (man or {}).get("config", {}).get("gamma_range", "1:10")
    g_lo, g_hi = _range(g_lo) if isinstance(g_lo, str) else tuple(g_lo)
    width = opts["bin_width"]
    hg = histogram([r.gamma for r in imp], g_lo, g_hi, width)
    run.write_csv(out / "histogram_gamma.csv", ["lo", "hi", "count"], hg.rows())
    sig = [r.sigma for r in imp]
    sig_hi = max([r.sigma for r in records], default=1.0)
    hs = histogram(sig, 0.0, max(math.ceil(sig_hi / width) * width, width), width)
    run.write_csv(out / "histogram_sigma.csv", ["lo", "hi", "count"], hs.rows())

    if opts["eigen"]:
        with open(opts["eigen"], newline="", encoding="utf-8") as fh:
            dev = [float(row["deviation"]) for row in csv.DictReader(fh)]
        run.add_input(opts["eigen"])
    else:
        table = _zeros(opts, run, n)
        settings = resolve_settings(n, table)
        grid = build_grid(PotentialSpec(), settings.L, settings.h)
        dev = list(fit(solve(grid, settings), table).deviations)
    scores, ordered, rank_r = rankit_points(dev)
    run.write_csv(out / "rankit.csv", ["rankit", "deviation"], zip(scores, ordered))

    fixed_sigma = len({r.sigma for r in ok}) == 1
    samples = [(r.gamma, r.sse) for r in ok]
    intervals, minimum = [], None
    if fixed_sigma and len(samples) >= 4:
        intervals = improvement_regions(samples, baseline)
        try:
            gm, sm = refine_minimum(samples)
            minimum = {"gamma": gm, "sse": sm}
        except BoundaryMinimumError as exc:
            minimum = {"error": str(exc)}
    run.write_json(out / "improvement_intervals.json",
                   {"baseline_sse": baseline, "fixed_sigma": fixed_sigma,
                    "intervals": [list(iv) for iv in intervals]})
    minima = {
        "baseline_sse": baseline,
        "records": len(records),
        "improving": len(imp),
        "improving_fraction": len(imp) / len(records) if records else 0.0,
        "best": [{"index": b.index, "gamma": b.gamma, "sigma": b.sigma, "sse": b.sse}
                 for b in best_records(records, 10)],
        "interpolated_minimum": minimum,
        "gamma_sigma_correlation": pearson([r.gamma for r in imp], sig) if len(imp) > 2 and not fixed_sigma else None,
        "rankit_correlation": rank_r,
        "max_gamma_bins": max_count_bins(hg),
    }
    run.write_json(out / "minima.json", minima)
    if opts["figures"]:
        run.outputs.append(str(plotting.sse_scatter([r.gamma for r in ok], [r.sse for r in ok], baseline,
                                                    out / "sse_vs_gamma.png",
                                                    ylim=(-1.5, 4.0))))
        run.outputs.append(str(plotting.histogram(hg, out / "histogram_gamma.png", r"$\gamma$")))
        run.outputs.append(str(plotting.histogram(hs, out / "histogram_sigma.png", r"$\sigma$")))
        run.outputs.append(str(plotting.rankit(scores, ordered, out / "rankit.png")))
        if not fixed_sigma and imp:
            run.outputs.append(str(plotting.pairs([r.gamma for r in imp], sig, out / "improving_pairs.png")))
    _say(f"{len(imp)}/{len(records)} records improve on {baseline:.6f}; report in {out}")
    return out / "manifest.json"


def cmd_count(opts, run):
    lam = opts["lambda_"]
    E = np.linspace(opts["e_min"], opts["e_max"], opts["points"])
    rows = [(e, n_smooth(e), n_corrected(e), delta_term(e, tol=opts["tol"]), n_connes(e, lam)) for e in E]
    header = ["E", "n_smooth", "n_corrected", "delta", "n_connes"]
    if opts["emit"]:
        return run.write_csv(opts["emit"], header, rows)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return None


COMMANDS = {"zeros": cmd_zeros, "potential": cmd_potential, "solve": cmd_solve,
            "sweep": cmd_sweep, "report": cmd_report, "count": cmd_count}


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    command = ns.command
    try:
        opts = resolve_options(ns)
        run = Run(command, opts)
        primary = COMMANDS[command](opts, run)
        if primary is not None:
            target = Path(primary)
            manifest = target if target.name == "manifest.json" else Path(str(target) + ".manifest.json")
            run.manifest(manifest)
    except (InputError, ZeroTableError, FileNotFoundError, ValueError, KeyError) as exc:
        print(f"rzfractal {command}: input error ({_origin(exc)}): {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, InversionError, QuadratureError, ArithmeticError) as exc:
        print(f"rzfractal {command}: numerical failure ({_origin(exc)}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _origin(exc) -> str:
    tb = exc.__traceback__
    mod = type(exc).__module__
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("rzfractal."):
            mod = name
        tb = tb.tb_next
    return mod.replace("rzfractal.", "")


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
