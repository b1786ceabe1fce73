"""Figure rendering for CLI reports (non-interactive, Agg backend)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def deviations(index, dev, path, title=""):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.plot(index, dev, "o", ms=4)
    ax.set_xlabel("level k")
    ax.set_ylabel("eigenvalue - zero")
    if title:
        ax.set_title(title)
    return _save(fig, path)


def sse_scatter(gamma, sse, baseline, path, ylim=None):
    """SSE against gamma, shifted so points below zero improve on the baseline."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.axhline(0.0, color="k", lw=0.8)
    ax.plot(gamma, np.asarray(sse) - baseline, ".", ms=3)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel("SSE - smooth SSE")
    if ylim is not None:
        ax.set_ylim(*ylim)
    return _save(fig, path)


def histogram(hist, path, xlabel):
    fig, ax = plt.subplots(figsize=(6, 4))
    widths = np.diff(hist.edges)
    ax.bar(hist.edges[:-1], hist.counts, width=widths, align="edge", edgecolor="k")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("count")
    return _save(fig, path)


def rankit(scores, ordered, path):
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.plot(scores, ordered, "o", ms=4)
    slope, icpt = np.polyfit(scores, ordered, 1)
    ax.plot(scores, slope * np.asarray(scores) + icpt, "-", color="0.5", lw=0.8)
    ax.set_xlabel("expected normal score")
    ax.set_ylabel("ordered deviation")
    return _save(fig, path)


def pairs(gamma, sigma, path):
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(gamma, sigma, ".", ms=4)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$\sigma$")
    return _save(fig, path)


def potential_comparison(V, diff, ratio, path):
    fig, (a1, a2) = plt.subplots(1, 2, figsize=(9, 3.5))
    a1.plot(V, diff)
    a1.set_xlabel("V")
    a1.set_ylabel("x_ws - x_ws_higher")
    a2.plot(V, ratio)
    a2.set_xlabel("V")
    a2.set_ylabel("x_ws / x_ws_higher")
    return _save(fig, path)


def wavefunctions(x, v, energies, psi, path, scale=None):
    """Eigenfunctions drawn at their eigenvalues over the potential."""
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.plot(x, v, color="k", lw=0.8)
    if scale is None:
        gaps = np.diff(energies)
        scale = 0.4 * (gaps.min() if gaps.size else 1.0) / max(np.abs(psi).max(), 1e-300)
    for E, col in zip(energies, psi.T):
        ax.plot(x, E + scale * col, lw=0.7)
    ax.set_ylim(float(np.min(v)) - 1.0, float(energies[-1]) * 1.1)
    ax.set_xlabel("x")
    ax.set_ylabel("E")
    return _save(fig, path)
