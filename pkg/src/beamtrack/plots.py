"""Figure rendering for the CLI report paths.

Figures are rasterized in memory and returned as PNG bytes so the
caller can commit them atomically next to the delimited output.  The
Software metadata chunk is stripped to keep files byte-identical across
reruns of the same seed.
"""

import io
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_PNG_KW = {"dpi": 110, "metadata": {"Software": None}}


def _to_png(fig) -> bytes:
    buf = io.BytesIO()
    fig.savefig(buf, format="png", **_PNG_KW)
    plt.close(fig)
    return buf.getvalue()


def gain_figure(steps, aligned_gain: float, title: str = "Beam gain at the target") -> bytes:
    t = [s.time for s in steps]
    g = [s.gain for s in steps]
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.plot(t, g, lw=1.2, label="beam gain")
    ax.axhline(aligned_gain, color="0.6", ls=":", label="aligned maximum")
    ax.axhline(aligned_gain / 2, color="0.6", ls="--", label="half maximum")
    recon_t = [s.time for s in steps if s.reconstructed]
    if recon_t:
        ax.plot(recon_t, [0.0] * len(recon_t), "|", color="tab:red", ms=10,
                label="reconstruction")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("gain")
    ax.set_title(title)
    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    return _to_png(fig)


def angles_figure(steps) -> bytes:
    t = [s.time for s in steps]
    fig, axes = plt.subplots(2, 1, figsize=(6.4, 4.8), sharex=True)
    for ax, true, pred, name in (
            (axes[0], [s.u_true for s in steps], [s.u_pred for s in steps], "azimuth u"),
            (axes[1], [s.v_true for s in steps], [s.v_pred for s in steps], "elevation v")):
        ax.plot(t, true, lw=1.2, label="true")
        ax.plot(t, pred, lw=1.0, ls="--", label="beam center")
        ax.set_ylabel(f"{name} (rad)")
        ax.legend(loc="best", fontsize=8)
    axes[1].set_xlabel("time (s)")
    axes[0].set_title("Tracked spatial angles")
    fig.tight_layout()
    return _to_png(fig)


def interval_figure(steps) -> bytes:
    t = [s.time for s in steps]
    fig, ax = plt.subplots(figsize=(6.4, 3.2))
    ax.step(t, [s.dt_star for s in steps], where="post", lw=1.2)
    ax.set_xlabel("time (s)")
    ax.set_ylabel("reconstruction interval (s)")
    ax.set_title("Adaptive reconstruction interval")
    fig.tight_layout()
    return _to_png(fig)


def run_figures(steps, aligned_gain: float) -> dict:
    return {
        "gain.png": gain_figure(steps, aligned_gain),
        "angles.png": angles_figure(steps),
        "interval.png": interval_figure(steps),
    }


def comparison_figure(labelled_steps, aligned_gain: float) -> bytes:
    """Overlay of per-tracker gain traces on the shared trajectory."""
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for label, steps in labelled_steps:
        ax.plot([s.time for s in steps], [s.gain for s in steps], lw=1.1, label=label)
    ax.axhline(aligned_gain / 2, color="0.6", ls="--", label="half maximum")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("gain")
    ax.set_title("Tracker comparison")
    ax.legend(loc="lower left", fontsize=8)
    fig.tight_layout()
    return _to_png(fig)


def localization_figure(records) -> bytes:
    by_pattern = defaultdict(list)
    for r in records:
        by_pattern[r.pattern].append(r)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for pattern, recs in by_pattern.items():
        ax.plot([r.epoch for r in recs], [r.error_m for r in recs], lw=1.0,
                marker=".", ms=3, label=pattern)
    ax.axhline(0.5, color="0.6", ls="--", label="0.5 m")
    ax.set_xlabel("epoch")
    ax.set_ylabel("position error (m)")
    ax.set_title("Platform localization error")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return _to_png(fig)


def runtime_figure(rows) -> bytes:
    by_tracker = defaultdict(list)
    for r in rows:
        by_tracker[r.tracker].append(r)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for tracker, recs in by_tracker.items():
        recs = sorted(recs, key=lambda r: r.n_side)
        ax.plot([r.n_side**2 for r in recs], [r.median_s for r in recs],
                marker="o", ms=4, lw=1.2, label=tracker)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("UPA antenna count")
    ax.set_ylabel("median cycle time (s)")
    ax.set_title("Per-cycle runtime vs array size")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    return _to_png(fig)


def bench_figure(table) -> bytes:
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    names = [row["algorithm"] for row in table]
    meds = [row["median_fitness"] for row in table]
    ax.bar(names, meds, color=["tab:blue", "tab:orange", "tab:green"][:len(names)])
    ax.set_yscale("log")
    ax.set_ylabel("median final fitness")
    ax.set_title("Optimizer comparison")
    fig.tight_layout()
    return _to_png(fig)
