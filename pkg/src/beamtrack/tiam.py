"""Adaptive beam-reconstruction scheduling from predicted angular kinematics.

The interval solver answers: starting from the current angular velocity
and acceleration, how long until the target drifts half a beamwidth off
center?  Both axes are solved independently and the smaller interval
wins, clamped to [dt_min, dt_max].

Two solver modes exist.  "kinematic" solves the coverage equation
|w|*t + |a|*t^2/2 = theta/2 for its positive root.  "paper-literal"
computes sqrt(2*(theta/2 - w)/a) with magnitude guards; the subtraction
of a rate from an angle is kept verbatim by request, falling back to
dt_max whenever the radicand is non-positive.
"""

import math
from dataclasses import dataclass

import numpy as np

from .arrays import ArrayConfig, Hpbw, hpbw, upa_beam_vector
from .gpr import GprModel, predict

_TINY = 1e-15

MODES = ("kinematic", "paper-literal")


def wrap_angle(x: float) -> float:
    """Wrap to (-pi, pi]."""
    w = (x + math.pi) % (2.0 * math.pi) - math.pi
    return math.pi if w == -math.pi else w


def angular_velocity(angle_now: float, angle_next: float, dt: float) -> float:
    """Wrap-aware difference quotient (angle_next - angle_now)/dt."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    return wrap_angle(angle_next - angle_now) / dt


def angular_acceleration(omega_prev: float, omega_now: float, dt: float) -> float:
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    return (omega_now - omega_prev) / dt


@dataclass(frozen=True)
class AngularKinematics:
    """Per-axis angular velocity (rad/s) and acceleration (rad/s^2)."""

    omega_u: float
    omega_v: float
    alpha_u: float
    alpha_v: float
    last_interval: float = 0.1

    def __post_init__(self):
        vals = (self.omega_u, self.omega_v, self.alpha_u, self.alpha_v)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite kinematics: {self}")
        if not self.last_interval > 0:
            raise ValueError(f"last_interval must be > 0, got {self.last_interval}")


@dataclass(frozen=True)
class TiamConfig:
    dt_min: float = 0.001
    dt_max: float = 1.0
    mode: str = "kinematic"
    initial_dt: float = 0.1

    def __post_init__(self):
        if not 0 < self.dt_min <= self.initial_dt <= self.dt_max:
            raise ValueError(
                f"need 0 < dt_min <= initial_dt <= dt_max, got {self}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


def _axis_interval_kinematic(omega: float, alpha: float, half_width: float) -> float:
    w, a = abs(omega), abs(alpha)
    if a < _TINY:
        if w < _TINY:
            return math.inf
        return half_width / w
    return (-w + math.sqrt(w * w + 2.0 * a * half_width)) / a


def _axis_interval_paper(omega: float, alpha: float, half_width: float) -> float:
    w, a = abs(omega), abs(alpha)
    if a < _TINY:
        return math.inf
    radicand = 2.0 * (half_width - w) / a
    if radicand <= 0:
        return math.inf
    return math.sqrt(radicand)


def reconstruction_interval(kin: AngularKinematics, width: Hpbw, cfg: TiamConfig) -> float:
    """Seconds until the next beam reconstruction, the per-axis minimum
    clamped to [dt_min, dt_max]."""
    if not (width.theta_u > 0 and width.theta_v > 0):
        raise ValueError(f"beamwidths must be positive, got {width}")
    solve = _axis_interval_kinematic if cfg.mode == "kinematic" else _axis_interval_paper
    t = min(solve(kin.omega_u, kin.alpha_u, width.theta_u / 2.0),
            solve(kin.omega_v, kin.alpha_v, width.theta_v / 2.0))
    if not math.isfinite(t):
        return cfg.dt_max
    return min(max(t, cfg.dt_min), cfg.dt_max)


@dataclass(frozen=True)
class TiamState:
    """Tracker clock: the latest reconstruction's time and pointing angles,
    plus the scheduled gap to the next reconstruction."""

    t: float
    dt_next: float
    u_now: float
    v_now: float


@dataclass(frozen=True)
class TiamStepResult:
    state: TiamState
    dt_star: float
    u_pred: float
    v_pred: float
    beam: np.ndarray
    width: Hpbw

    @property
    def next_reconstruction_time(self) -> float:
        return self.state.t + self.state.dt_next


def tiam_step(state: TiamState, model_u: GprModel, model_v: GprModel,
              array_cfg: ArrayConfig, cfg: TiamConfig,
              dt_override: float | None = None) -> TiamStepResult:
    """One reconstruction-loop body, executed at the scheduled instant
    state.t + state.dt_next.

    Points the beam at the angles the models predict for that instant,
    estimates angular velocity from the last two pointing angles, probes
    one interval further ahead to get acceleration, and solves for the
    gap to the next reconstruction.  dt_override replaces the solved gap
    (fixed-schedule trackers) while keeping the loop identical otherwise.
    """
    t_now = state.t + state.dt_next
    u_now, _ = predict(model_u, t_now)
    v_now, _ = predict(model_v, t_now)
    beam = upa_beam_vector(u_now, v_now, array_cfg)
    width = hpbw(u_now, v_now, array_cfg)

    omega_u_prev = angular_velocity(state.u_now, u_now, state.dt_next)
    omega_v_prev = angular_velocity(state.v_now, v_now, state.dt_next)
    dt_probe = state.dt_next
    u_probe, _ = predict(model_u, t_now + dt_probe)
    v_probe, _ = predict(model_v, t_now + dt_probe)
    omega_u = angular_velocity(u_now, u_probe, dt_probe)
    omega_v = angular_velocity(v_now, v_probe, dt_probe)
    kin = AngularKinematics(
        omega_u=omega_u, omega_v=omega_v,
        alpha_u=angular_acceleration(omega_u_prev, omega_u, dt_probe),
        alpha_v=angular_acceleration(omega_v_prev, omega_v, dt_probe),
        last_interval=state.dt_next)
    dt_star = reconstruction_interval(kin, width, cfg)
    if dt_override is not None:
        dt_star = dt_override

    new_state = TiamState(t=t_now, dt_next=dt_star, u_now=u_now, v_now=v_now)
    return TiamStepResult(state=new_state, dt_star=dt_star,
                          u_pred=u_now, v_pred=v_now, beam=beam, width=width)
