"""Motion models for MUs and UAVs, trace ingestion, and shake perturbation.

The CTRV/CTRA steppers use exact circular-arc integration, so a step of
2*dt equals two steps of dt up to floating-point roundoff.  All random
perturbations draw from explicitly passed generators.
"""

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

_YAW_EPS = 1e-12


@dataclass(frozen=True)
class MotionState:
    """Planar vehicle state: position (m), heading (rad), speed (m/s),
    yaw_rate (rad/s), acceleration (m/s^2)."""

    position: tuple
    heading: float
    speed: float = 0.0
    yaw_rate: float = 0.0
    acceleration: float = 0.0

    def __post_init__(self):
        if self.speed < 0:
            raise ValueError(f"speed must be >= 0, got {self.speed}")
        vals = (*self.position, self.heading, self.speed, self.yaw_rate, self.acceleration)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite motion state: {self}")


@dataclass(frozen=True)
class TrajectorySample:
    time: float
    position: tuple


def ctrv_step(state: MotionState, dt: float) -> MotionState:
    """Constant turn rate and velocity: exact arc update."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    x, y = state.position
    h, v, w = state.heading, state.speed, state.yaw_rate
    if abs(w) < _YAW_EPS:
        x += v * dt * math.cos(h)
        y += v * dt * math.sin(h)
    else:
        x += (v / w) * (math.sin(h + w * dt) - math.sin(h))
        y += (v / w) * (math.cos(h) - math.cos(h + w * dt))
    return replace(state, position=(x, y), heading=h + w * dt)


def ctra_step(state: MotionState, dt: float) -> MotionState:
    """Constant turn rate and acceleration: exact arc update with a linear
    speed profile; speed bottoms out at zero (no reversing)."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    x, y = state.position
    h, v, w, a = state.heading, state.speed, state.yaw_rate, state.acceleration
    # Integrate translation only until the speed reaches zero.
    t_end = dt
    if a < 0 and v + a * dt < 0:
        t_end = -v / a
    if abs(w) < _YAW_EPS:
        s = v * t_end + 0.5 * a * t_end * t_end
        x += s * math.cos(h)
        y += s * math.sin(h)
    else:
        vt = v + a * t_end
        ht = h + w * t_end
        x += (vt * math.sin(ht) - v * math.sin(h)) / w + (a / w**2) * (math.cos(ht) - math.cos(h))
        y += (v * math.cos(h) - vt * math.cos(ht)) / w + (a / w**2) * (math.sin(ht) - math.sin(h))
    return replace(state, position=(x, y), heading=h + w * dt,
                   speed=max(0.0, v + a * dt))


def random_step(state: MotionState, dt: float, rng: np.random.Generator,
                delta: float = math.pi / 6) -> MotionState:
    """Random wander: perturb heading by uniform(-delta, +delta), then CTRV."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    jitter = rng.uniform(-delta, delta) if delta > 0 else 0.0
    return ctrv_step(replace(state, heading=state.heading + jitter), dt)


def apply_shake(position, radius: float, rng: np.random.Generator) -> tuple:
    """Displace a position by an area-uniform draw from a disc of the given radius.

    Draw order is fixed: radial fraction first, then bearing.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius == 0:
        return (position[0], position[1])
    r = radius * math.sqrt(rng.random())
    ang = rng.uniform(0.0, 2.0 * math.pi)
    return (position[0] + r * math.cos(ang), position[1] + r * math.sin(ang))


def load_trace(path) -> list:
    """Read a `t,x,y` CSV trace; times must be strictly increasing."""
    samples = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty trace file")
        if [c.strip() for c in header] != ["t", "x", "y"]:
            raise ValueError(f"{path}:1: expected header 't,x,y', got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                t, x, y = (float(c) for c in row)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if samples and t <= samples[-1].time:
                raise ValueError(f"{path}:{lineno}: non-increasing time {t} after {samples[-1].time}")
            samples.append(TrajectorySample(time=t, position=(x, y)))
    if not samples:
        raise ValueError(f"{path}: trace has no data rows")
    return samples


def save_trace(samples, path) -> None:
    """Write samples in the same `t,x,y` format load_trace reads."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("t,x,y\n")
        for s in samples:
            fh.write(f"{s.time:.12g},{s.position[0]:.12g},{s.position[1]:.12g}\n")
