"""Figure rendering for reports. All functions write a file and return its path."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import bounds as bounds_mod
from . import poisson

_DPI = 150


def byte_histogram_figure(histogram, path, title="Byte value distribution"):
    hist = np.asarray(histogram, dtype=np.float64)
    n = hist.sum()
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.bar(np.arange(256), hist, width=1.0, color="#4878a8", linewidth=0)
    ax.axhline(n / 256.0, color="crimson", linestyle="--", linewidth=1.2,
               label=f"uniform expectation {n / 256.0:.0f}")
    ax.set_xlabel("byte value")
    ax.set_ylabel("count")
    ax.set_xlim(-1, 256)
    ax.set_title(title)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def count_distribution_figure(counts, mu, path):
    """Empirical count frequencies against the exact Poisson PMF."""
    counts = np.asarray(counts)
    hist = np.bincount(counts)
    n = counts.size
    ns = np.arange(hist.size)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, hist / n, "o", ms=3.5, color="#4878a8", label="empirical")
    ax.plot(ns, poisson.pmf(mu, ns), "-", color="crimson", linewidth=1.2,
            label=f"Poisson({mu:g}) pmf")
    ax.set_xlabel("count $n_p$")
    ax.set_ylabel("probability")
    ax.set_title(f"Engine count distribution, mu={mu:g}, n={n:,}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def elapsed_distribution_figure(ticks, path, tick_ns):
    """Elapsed-tick burst durations: the harvested jitter compound."""
    ticks = np.asarray(ticks)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    hi = int(np.percentile(ticks, 99.9)) + 2
    ax.hist(ticks[ticks < hi], bins=min(hi, 200), color="#4878a8")
    ax.set_xlabel(f"elapsed ticks (tick = {tick_ns} ns)")
    ax.set_ylabel("cycles")
    ax.set_title(f"Burst duration distribution (mean {ticks.mean():.2f} ticks)")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def deviation_bound_figure(path, moduli=(4, 8, 16, 32, 64, 256), epsilon=1e-3,
                           reference_points=None):
    """Deviation bound vs mu per modulus, with the target epsilon line."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for M in moduli:
        mu_hi = bounds_mod.invert_bound(1e-6, M)
        mus = np.geomspace(max(mu_hi * 1e-3, 0.1), mu_hi, 300)
        ax.plot(mus, [bounds_mod.deviation_bound(m, M) for m in mus], label=f"M={M}")
    ax.axhline(epsilon, color="k", linestyle=":", linewidth=1.0,
               label=f"target {epsilon:g}")
    if reference_points:
        xs, ys = zip(*[(mu, bounds_mod.deviation_bound(mu, M))
                       for M, mu in reference_points.items()])
        ax.plot(xs, ys, "k*", ms=9, label="reference minimum mu")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("mu")
    ax.set_ylabel("deviation bound")
    ax.set_title("Worst-case residue deviation vs mu")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def convergence_figure(rows, path, label):
    """Shannon/min-entropy vs sample size (rows: (bytes, shannon, min_entropy))."""
    rows = sorted(rows)
    sizes = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(sizes, [r[1] for r in rows], "o-", label="Shannon")
    ax.plot(sizes, [r[2] for r in rows], "s-", label="min-entropy")
    ax.axhline(8.0, color="k", linestyle=":", linewidth=1.0)
    ax.set_xscale("log")
    ax.set_xlabel("sample size (bytes)")
    ax.set_ylabel("bits/byte")
    ax.set_title(f"Entropy convergence, {label}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def uniformity_runs_figure(measured, reference, path, label):
    """Per-run chi-square values, measured vs bundled reference runs."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(np.arange(1, len(measured) + 1), [r[2] for r in measured],
            "o-", label="measured")
    if reference:
        ax.plot(np.arange(1, len(reference) + 1), [r[2] for r in reference],
                "s--", alpha=0.6, label="reference runs")
    ax.axhline(325.8, color="crimson", linestyle=":",
               label="critical 325.8 (dof 255, a=0.001)")
    ax.set_xlabel("run")
    ax.set_ylabel("chi-square")
    ax.set_title(f"Uniformity across runs, {label}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
