"""Render report figures to image files next to the report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .formats import FAIL, INCONCLUSIVE, PASS, VerificationReport

_STATUS_COLORS = {PASS: "#2a9d4e", FAIL: "#c8402e", INCONCLUSIVE: "#d8a022"}


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def _checks_figure(report: VerificationReport, path: Path) -> Path:
    names = [c.name for c in report.checks]
    elapsed = [report.timing.get("checks", {}).get(c.name, 0.0) for c in report.checks]
    colors = [_STATUS_COLORS.get(c.status, "#777777") for c in report.checks]
    fig, ax = plt.subplots(figsize=(7, 0.4 * max(4, len(names)) + 1))
    ax.barh(range(len(names)), elapsed, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title(f"checks ({report.overall_status})")
    return _save(fig, path)


def _layers_figure(report: VerificationReport, path: Path) -> Path | None:
    try:
        sizes = report.check("construction_counts").details["layer_sizes"]
    except (KeyError, TypeError):
        return None
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(range(1, len(sizes) + 1), sizes, color="#41658a")
    ax.set_yscale("log")
    ax.set_xlabel("block")
    ax.set_ylabel("vertices")
    ax.set_xticks(range(1, len(sizes) + 1))
    ax.set_title("layer block sizes")
    return _save(fig, path)


def _sample_sizes_figure(report: VerificationReport, path: Path) -> Path | None:
    series = []
    for check in report.checks:
        hist = check.details.get("size_histogram") if check.details else None
        if hist:
            series.append((check.name, hist))
    if not series:
        return None
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for name, hist in series:
        xs = [row[0] for row in hist]
        ys = [row[1] for row in hist]
        ax.plot(xs, ys, marker=".", linestyle="-", label=name)
    ax.set_xlabel("sampled set size")
    ax.set_ylabel("count")
    ax.legend(fontsize=8)
    ax.set_title("sampled set sizes")
    return _save(fig, path)


def render_report_figures(
    report: VerificationReport, out_dir, prefix: str = ""
) -> list[Path]:
    """Write PNG figures for a report; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    made = _checks_figure(report, out / f"{prefix}checks.png")
    written.append(made)
    for maybe in (
        _layers_figure(report, out / f"{prefix}layer_sizes.png"),
        _sample_sizes_figure(report, out / f"{prefix}sample_sizes.png"),
    ):
        if maybe is not None:
            written.append(maybe)
    return written
