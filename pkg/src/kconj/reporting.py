"""Report rendering: delimited tables plus matplotlib figures on disk.

The `verify` and `tor` report paths can drop a CSV next to a PNG chart of
the same numbers, so CI artifacts stay diffable while humans get the
picture.  The Agg backend is forced before pyplot loads; nothing here
needs a display.
"""

from __future__ import annotations

import csv
import os


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_csv(path: str, header, rows) -> str:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_tor_report(directory: str, group_name: str, table) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    csv_path = os.path.join(directory, "tor_ranks.csv")
    rows = [(-k, rank, "odd" if k % 2 else "even")
            for k, rank in enumerate(table.ranks)]
    write_csv(csv_path, ["degree", "rank", "parity"], rows)

    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    degrees = [-k for k in range(len(table.ranks))]
    ax.bar(degrees, table.ranks, color="#4878a8", width=0.6)
    ax.set_xlabel("homological degree")
    ax.set_ylabel("rank")
    ax.set_title(f"Tor ranks for {group_name}")
    ax.set_xticks(degrees)
    fig.tight_layout()
    png_path = os.path.join(directory, "tor_ranks.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def write_verify_report(directory: str, report) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    checks_path = os.path.join(directory, "verify_checks.csv")
    write_csv(
        checks_path,
        ["name", "module", "ok", "detail"],
        [(c.name, c.module, "ok" if c.ok else "FAIL", c.detail) for c in report.checks],
    )
    paths.append(checks_path)

    if report.window_reports:
        windows_path = os.path.join(directory, "window_homology.csv")
        rows = []
        for label, reps in sorted(report.window_reports.items()):
            for rep in reps:
                rows.append(
                    (label, rep.degree, rep.rank_cycles, rep.rank_boundaries, rep.deficit)
                )
        write_csv(
            windows_path,
            ["suite", "degree", "rank_cycles", "rank_boundaries", "deficit"],
            rows,
        )
        paths.append(windows_path)

        plt = _pyplot()
        fig, ax = plt.subplots(figsize=(5.6, 3.4))
        markers = {"koszul-window-exactness": "o", "augmentation-window-exactness": "s"}
        for label, reps in sorted(report.window_reports.items()):
            degrees = [rep.degree for rep in reps]
            deficits = [rep.deficit for rep in reps]
            ax.plot(degrees, deficits, marker=markers.get(label, "d"), label=label)
        ax.set_xlabel("homological degree")
        ax.set_ylabel("deficit")
        ax.set_title(f"Windowed exactness for {report.group}")
        ax.axhline(0.0, color="grey", linewidth=0.8)
        ax.legend(fontsize=8)
        fig.tight_layout()
        png_path = os.path.join(directory, "window_deficits.png")
        fig.savefig(png_path, dpi=150)
        plt.close(fig)
        paths.append(png_path)
    return paths
