"""Figures for the bound, audit and bench reports (rendered to files, never shown)."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.figsize": (4.5, 3.0),
    "savefig.dpi": 150,
}


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_bandwidth(ds: Sequence[int], measured: Sequence[float], bound: Sequence[float],
                   path: str | Path, title: str = "", supported: Sequence[bool] | None = None) -> Path:
    """Downloaded symbols against the lower bound, one point per decoder size ``d``."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(ds, bound, "k--", lw=1, label="lower bound")
        ax.plot(ds, measured, "o-", color="C0", ms=4, label="measured")
        if supported is not None:
            off = [(d, m) for d, m, s in zip(ds, measured, supported) if not s]
            if off:
                ax.plot(*zip(*off), "x", color="C3", ms=6, label="unsupported d")
        ax.set_xlabel("available nodes d")
        ax.set_ylabel("symbols downloaded")
        ax.set_xticks(list(ds))
        if title:
            ax.set_title(title, fontsize=9)
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_overhead(ds: Sequence[int], overhead: Sequence[float], path: str | Path, title: str = "") -> Path:
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.step(ds, overhead, where="mid", color="C0")
        ax.plot(ds, overhead, "o", color="C0", ms=4)
        ax.set_xlabel("available nodes d")
        ax.set_ylabel("overhead (shares)")
        ax.set_xticks(list(ds))
        ax.set_ylim(bottom=0)
        if title:
            ax.set_title(title, fontsize=9)
        return _save(fig, path)


def plot_timings(ds: Sequence[int], encode_ms: Sequence[float], decode_ms: Sequence[float],
                 path: str | Path, title: str = "") -> Path:
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(ds, decode_ms, "o-", ms=4, label="decode")
        ax.axhline(encode_ms[0] if encode_ms else 0, color="k", lw=0.8, ls=":", label="encode")
        ax.set_xlabel("available nodes d")
        ax.set_ylabel("mean wall time (ms)")
        ax.set_xticks(list(ds))
        if title:
            ax.set_title(title, fontsize=9)
        ax.legend(frameon=False)
        return _save(fig, path)
