"""Optional matplotlib renderings of report data.

matplotlib is imported lazily and pointed at the Agg backend so rendering
works headless and nothing here runs unless a figure was requested.
"""

from __future__ import annotations

from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_interval_map(samples: Sequence[tuple], path: str) -> None:
    """Graph of the sampled map with the diagonal for orbit reading."""
    plt = _pyplot()
    xs = [float(x) for x, _ in samples]
    ys = [float(fx) for _, fx in samples]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(xs, ys, lw=1.5)
    ax.plot([xs[0], xs[-1]], [xs[0], xs[-1]], lw=0.75, ls="--", color="gray")
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_hitting_times(
    times: Sequence[int], horizon: int, kind: str, path: str
) -> None:
    """Event raster of the reported times inside [1, horizon]."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8, 1.8))
    if times:
        ax.eventplot([list(times)], lineoffsets=0.5, linelengths=0.8, lw=0.6)
    ax.set_xlim(0, horizon)
    ax.set_yticks([])
    ax.set_xlabel(f"{kind} times up to {horizon} ({len(times)} hits)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
