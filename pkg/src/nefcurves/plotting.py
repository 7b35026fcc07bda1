"""Figures for census reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .census import CensusReport  # noqa: E402

_TITLES = {
    "genus_slack": ("g(e) - sum g(e_i)", "genus bound slack"),
    "multi1_slack": ("g(e) - 1 - sum m_j g(e_j)", "multiplicity lemma slack"),
    "dimension_slack": ("L - 1 - sum m_i l_i", "dimension bound slack"),
}


def _bar(ax, counts: dict, xlabel: str, title: str):
    keys = sorted(counts, key=int)
    xs = [int(k) for k in keys]
    ax.bar(xs, [counts[k] for k in keys], width=0.8, color="0.35")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("configurations")
    ax.set_title(title)


def render_report(report: CensusReport, outdir: str | Path, fmt: str = "png") -> list[Path]:
    """Write one figure per non-empty histogram plus a checker overview."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for key, (xlabel, title) in _TITLES.items():
        counts = report.histograms.get(key) or {}
        if not counts:
            continue
        fig, ax = plt.subplots(figsize=(6, 3.5))
        _bar(ax, counts, xlabel, title)
        fig.tight_layout()
        path = outdir / f"{key}.{fmt}"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)

    tags = report.histograms.get("codim1_tag") or {}
    if tags:
        fig, ax = plt.subplots(figsize=(6, 3.5))
        names = sorted(tags)
        ax.barh(names, [tags[n] for n in names], color="0.35")
        ax.set_xlabel("configurations")
        ax.set_title("maximal-dimension classification")
        fig.tight_layout()
        path = outdir / f"codim1_tags.{fmt}"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)

    if report.checked:
        names = list(report.checked)
        passed = [report.checked[n]["pass"] for n in names]
        failed = [report.checked[n]["fail"] for n in names]
        skipped = [report.checked[n]["out_of_hypothesis"] for n in names]
        fig, ax = plt.subplots(figsize=(6, 3.5))
        ax.barh(names, passed, color="0.35", label="pass")
        ax.barh(names, failed, left=passed, color="tab:red", label="fail")
        left = [p + f for p, f in zip(passed, failed)]
        ax.barh(names, skipped, left=left, color="0.8", label="out of hypothesis")
        ax.set_xlabel("configurations")
        ax.legend(loc="lower right", fontsize=8)
        ax.set_title(f"{report.candidates} configurations")
        fig.tight_layout()
        path = outdir / f"checkers.{fmt}"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written
