"""Delimited and JSON exports of run results.

All numbers are serialized with 9 significant digits; booleans as 0/1.
Writers stage every output in memory and commit the whole bundle at
once, so no file appears on an error path.
"""

import json
import math
import os

from .simulator import RunSummary, StepRecord

STEP_COLUMNS = ("t", "u_true", "v_true", "u_pred", "v_pred", "gain", "snr_db",
                "rate", "ee", "reconstructed", "dt_star", "rebuild_u", "rebuild_v")

SUMMARY_COLUMNS = ("mean_gain", "min_gain", "mean_rate", "mean_ee",
                   "reconstruction_count", "rebuild_count_u", "rebuild_count_v",
                   "coverage_fraction", "angle_rms_error_rad", "localization_error_m")


def fmt(x) -> str:
    """9-significant-digit rendering of a number; bools become 0/1."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".9g")


def _step_row(s: StepRecord) -> tuple:
    return (s.time, s.u_true, s.v_true, s.u_pred, s.v_pred, s.gain, s.snr_db,
            s.rate, s.ee, s.reconstructed, s.dt_star, s.rebuild_u, s.rebuild_v)


def steps_csv(steps) -> str:
    lines = [",".join(STEP_COLUMNS)]
    for s in steps:
        lines.append(",".join(fmt(v) for v in _step_row(s)))
    return "\n".join(lines) + "\n"


def summary_values(summary: RunSummary) -> dict:
    # wall_clock_per_cycle_s is intentionally absent: it is neither
    # deterministic nor recomputable from the step log.
    return {
        "mean_gain": summary.mean_gain,
        "min_gain": summary.min_gain,
        "mean_rate": summary.mean_rate,
        "mean_ee": summary.mean_ee,
        "reconstruction_count": summary.reconstruction_count,
        "rebuild_count_u": summary.rebuild_count_u,
        "rebuild_count_v": summary.rebuild_count_v,
        "coverage_fraction": summary.coverage_fraction,
        "angle_rms_error_rad": summary.angle_rms_error_rad,
        "localization_error_m": summary.localization_error_m,
    }


def summary_csv(summary: RunSummary) -> str:
    values = summary_values(summary)
    header = ",".join(SUMMARY_COLUMNS)
    row = ",".join(fmt(values[c]) for c in SUMMARY_COLUMNS)
    return header + "\n" + row + "\n"


def _round9(x):
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isnan(x):
            return None
        return float(format(x, ".9g"))
    return x


def run_json(steps, summary: RunSummary, metadata: dict) -> str:
    doc = {
        "metadata": metadata,
        "summary": {k: _round9(v) for k, v in summary_values(summary).items()},
        "steps": [
            {c: _round9(v) for c, v in zip(STEP_COLUMNS, _step_row(s))}
            for s in steps
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def meta_json(metadata: dict) -> str:
    return json.dumps(metadata, indent=2, sort_keys=True) + "\n"


def table_csv(rows, columns) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def read_steps_csv(path) -> list:
    """Parse a steps.csv back into StepRecord values."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != ",".join(STEP_COLUMNS):
            raise ValueError(f"{path}: unexpected header {header!r}")
        steps = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.strip().split(",")
            if len(parts) != len(STEP_COLUMNS):
                raise ValueError(f"{path}:{lineno}: expected {len(STEP_COLUMNS)} fields")
            (t, u_t, v_t, u_p, v_p, g, sdb, r, ee, rec, dts, rb_u, rb_v) = parts
            steps.append(StepRecord(
                time=float(t), u_true=float(u_t), v_true=float(v_t),
                u_pred=float(u_p), v_pred=float(v_p), gain=float(g),
                snr_db=float(sdb), rate=float(r), ee=float(ee),
                reconstructed=bool(int(rec)), dt_star=float(dts),
                rebuild_u=bool(int(rb_u)), rebuild_v=bool(int(rb_v))))
    return steps


def commit_files(out_dir, files: dict) -> list:
    """Atomically write a staged {name: str|bytes} bundle into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, payload in files.items():
        path = os.path.join(out_dir, name)
        data = payload.encode("utf-8") if isinstance(payload, str) else payload
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
        written.append(path)
    return written
