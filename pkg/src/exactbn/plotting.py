"""Figures written next to the CSV reports (Agg backend, files only)."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .tradeoff import B_RANGE_DERIVED, B_RANGE_STATED  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_tradeoff(rows, path):
    """Time exponents a(r) and b(r) against the space ratio r."""
    rs = [row[0] for row in rows]
    a = [row[1] for row in rows]
    rb = [row[0] for row in rows if row[2] is not None]
    b = [row[2] for row in rows if row[2] is not None]
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(rs, a, "-", color="k", label="partition, a(r)")
    ax.plot(rb, b, "--", color="tab:blue", label="pairwise, b(r)")
    ax.axvline(B_RANGE_STATED, color="0.6", lw=0.8, ls=":")
    ax.axvline(B_RANGE_DERIVED, color="0.6", lw=0.8, ls="-.")
    ax.set_xlabel("space ratio r  (space = 2^(rn))")
    ax.set_ylabel("time exponent  (time = 2^(n x))")
    ax.set_xlim(min(rs), 1.0)
    ax.legend(frameon=False)
    return _finish(fig, path)


def plot_bench(reports, path):
    """Peak table entries and wall time per benchmark cell, pairwise cells against p."""
    pw = sorted((r for r in reports if r.algorithm == "pairwise"), key=lambda r: r.p)
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(8.0, 3.4))
    if pw:
        ps = [r.p for r in pw]
        ax0.semilogy(ps, [r.peak_table_entries for r in pw], "o-k", label="measured")
        ax0.semilogy(ps, [r.predicted_entries for r in pw], "x--", color="tab:red", label="(n+1) 3^p 2^(n-2p)")
        ax0.set_xlabel("pairs p")
        ax0.set_ylabel("peak table entries")
        ax0.legend(frameon=False)
        ax1.semilogy(ps, [r.total_seconds for r in pw], "o-k", label="total T")
        ax1.semilogy(ps, [r.unit_seconds for r in pw], "s--", color="tab:blue", label="per orientation")
        ax1.set_xlabel("pairs p")
        ax1.set_ylabel("seconds")
        ax1.legend(frameon=False)
    others = [r for r in reports if r.algorithm != "pairwise"]
    if others and not pw:
        labels = [f"{r.algorithm}" + (f" s={r.s}" if r.s is not None else "") +
                  (f" d={r.depth}" if r.depth is not None else "") for r in others]
        ax0.bar(labels, [r.peak_table_entries for r in others], color="0.5")
        ax0.set_yscale("log")
        ax0.set_ylabel("peak table entries")
        ax1.bar(labels, [max(r.total_seconds, 1e-3) for r in others], color="0.5")
        ax1.set_yscale("log")
        ax1.set_ylabel("seconds")
        for ax in (ax0, ax1):
            ax.tick_params(axis="x", rotation=45)
    return _finish(fig, path)
