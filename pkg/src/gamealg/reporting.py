"""Campaign report files: delimited tables plus a rendered summary figure."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def write_rows_csv(
    path: str | Path, header: Sequence[str], rows: Sequence[Sequence[object]]
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_counts_png(
    path: str | Path,
    labels: Sequence[str],
    checked: Sequence[int],
    failed: Sequence[int],
    title: str,
) -> None:
    fig, ax = plt.subplots(figsize=(max(6.0, 0.55 * len(labels) + 2.0), 4.0))
    positions = range(len(labels))
    ax.bar(positions, checked, color="#4878a8", label="checked")
    if any(failed):
        ax.bar(positions, failed, color="#c44e52", label="failed")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("instances")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
