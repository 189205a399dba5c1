"""Figure rendering for reports and comparisons.

Renders PNG files next to the delimited outputs: a per-concept grid of
normalized-rank histograms for a single report, and a scatter of the
averaged skewness against user-supplied metadata (accuracy, for example)
for comparisons. Colors follow the band convention used throughout:
fractured blue, overlapped red, clustered green.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

PATTERN_COLORS = {
    "fractured": "tab:blue",
    "overlapped": "tab:red",
    "clustered": "tab:green",
    "degenerate": "tab:gray",
}

MAX_CONCEPT_PANELS = 36


def save_report_figure(report: dict, out_path) -> Path:
    """Histogram grid, one panel per concept (capped at 36 panels)."""
    concepts = report["concepts"][:MAX_CONCEPT_PANELS]
    bins = report["histogram_bins"]
    ncols = min(4, max(1, len(concepts)))
    nrows = (len(concepts) + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.2 * ncols, 2.4 * nrows), squeeze=False
    )
    centers = [(b + 0.5) / bins for b in range(bins)]
    for ax, concept in zip(axes.flat, concepts):
        color = PATTERN_COLORS[concept["pattern"]]
        ax.bar(centers, concept["histogram"], width=1.0 / bins, color=color)
        gamma = concept["gamma"]
        gtxt = "undef" if gamma is None else f"{gamma:+.2f}"
        ax.set_title(
            f"{concept['name']}  ({concept['pattern']}, skew {gtxt})", fontsize=8
        )
        ax.set_xlim(0, 1)
        ax.tick_params(labelsize=7)
    for ax in axes.flat[len(concepts):]:
        ax.axis("off")
    fig.suptitle(
        f"{report.get('source') or 'latent space'} -- normalized cross-class "
        f"rank distributions ({report['metric']})",
        fontsize=10,
    )
    fig.tight_layout(rect=(0, 0, 1, 0.95))
    out = Path(out_path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def _shade_bands(ax) -> None:
    lo, hi = ax.get_ylim()
    top = max(hi, 0.6)
    bottom = min(lo, -0.6)
    ax.axhspan(0.5, top, color="tab:blue", alpha=0.08)
    ax.axhspan(-0.5, 0.5, color="tab:red", alpha=0.08)
    ax.axhspan(bottom, -0.5, color="tab:green", alpha=0.08)
    ax.set_ylim(bottom, top)


def save_compare_figure(rows: list[dict], shared_keys: list[str], out_path) -> Path:
    """Averaged skewness against each shared numeric metadata key; falls
    back to a per-report bar chart when no numeric key is shared."""
    numeric = [
        k
        for k in shared_keys
        if all(isinstance(r["metadata"].get(k), (int, float)) for r in rows)
    ]
    out = Path(out_path)
    if numeric:
        fig, axes = plt.subplots(
            1, len(numeric), figsize=(4.5 * len(numeric), 3.6), squeeze=False
        )
        for ax, key in zip(axes.flat, numeric):
            xs = [r["metadata"][key] for r in rows]
            ys = [r["gamma_approx"] for r in rows]
            ax.scatter(xs, ys, color="black", zorder=3)
            for r, x, y in zip(rows, xs, ys):
                if y is not None:
                    ax.annotate(
                        str(r.get("source") or ""), (x, y), fontsize=7,
                        xytext=(3, 3), textcoords="offset points",
                    )
            ax.set_xlabel(key)
            ax.set_ylabel("averaged skewness")
            _shade_bands(ax)
        fig.tight_layout()
    else:
        fig, ax = plt.subplots(figsize=(1.2 + 1.1 * len(rows), 3.6))
        labels = [str(r.get("source") or f"report {i}") for i, r in enumerate(rows)]
        xs = range(len(rows))
        ax.bar(
            xs,
            [r["gamma_approx"] if r["gamma_approx"] is not None else 0.0 for r in rows],
            color="dimgray",
        )
        ax.set_xticks(list(xs))
        ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=7)
        ax.set_ylabel("averaged skewness")
        _shade_bands(ax)
        fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
