"""Report artifacts: model timelines drawn to image files and verdict
tables written as tab-separated text.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.ticker import MaxNLocator

from .model import TemporalModel

_KIND_COLOR = {"event": "#4878a8", "state": "#8a9a5b"}


def draw_timeline(
    model: TemporalModel,
    path: str | Path,
    title: str = "",
    highlight: tuple[str, ...] = (),
) -> Path:
    """Draw every eventuality as a horizontal bar on its own lane
    (events blue, states green, highlighted ids outlined), with a
    dashed vertical line at the utterance point.  A closed interval
    [a, b] is drawn from a to b + 1 so single-point traces stay
    visible.  Returns the path written.
    """
    path = Path(path)
    evs = model.eventualities
    lanes = max(len(evs), 1)
    fig, ax = plt.subplots(
        figsize=(max(6.0, model.timeline_end * 0.22), 1.2 + 0.55 * lanes)
    )
    wanted = set(highlight)
    labels = []
    for lane, ev in enumerate(evs):
        y = lanes - lane
        ax.broken_barh(
            [(ev.trace.start, ev.trace.length)],
            (y - 0.3, 0.6),
            facecolors=_KIND_COLOR[ev.kind],
            edgecolors="#b8860b" if ev.id in wanted else "#333333",
            linewidth=2.0 if ev.id in wanted else 0.5,
        )
        args = ", ".join(ev.args)
        labels.append((y, f"{ev.id}: {ev.predicate}({args})"))
    ax.axvline(model.now, color="#aa3333", linestyle="--", linewidth=1.0)
    ax.text(
        model.now,
        lanes + 0.55,
        f"now = {model.now}",
        color="#aa3333",
        fontsize=8,
        ha="center",
    )
    ax.set_yticks([y for y, _ in labels])
    ax.set_yticklabels([text for _, text in labels], fontsize=8)
    ax.set_ylim(0.3, lanes + 0.9)
    ax.set_xlim(-0.5, model.timeline_end + 1.5)
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("time")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_tsv(path: str | Path, header: tuple[str, ...], rows) -> Path:
    """Write rows of cells as tab-separated text with a header line."""
    path = Path(path)
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
