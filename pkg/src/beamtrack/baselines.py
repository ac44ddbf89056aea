"""Comparison trackers: codebook selection, budgeted beam-vector search,
and the fixed-interval reconstruction schedule."""

import math
from dataclasses import dataclass

import numpy as np

from .arrays import ArrayConfig, beam_gain, inner_product, upa_beam_vector


@dataclass(frozen=True)
class Codebook:
    """Precomputed beams on a complete (u, v) grid with their design angles."""

    beams: np.ndarray  # (n_c, n_x*n_y) complex
    angles: np.ndarray  # (n_c, 2) design (u, v)
    grid_u: int
    grid_v: int

    @property
    def size(self) -> int:
        return len(self.beams)


@dataclass(frozen=True)
class SelectedBeam:
    beam: np.ndarray
    gain: float
    index: int
    design_u: float
    design_v: float


def build_codebook(grid_u: int, grid_v: int, cfg: ArrayConfig) -> Codebook:
    """Cell-centered beams over u in (-pi/2, pi/2), v in [0, pi/2)."""
    if grid_u < 1 or grid_v < 1:
        raise ValueError(f"grids must be >= 1, got {grid_u}x{grid_v}")
    us = -math.pi / 2 + (np.arange(grid_u) + 0.5) * math.pi / grid_u
    vs = (np.arange(grid_v) + 0.5) * (math.pi / 2) / grid_v
    beams = []
    angles = []
    for u in us:
        for v in vs:
            beams.append(upa_beam_vector(u, v, cfg))
            angles.append((u, v))
    return Codebook(beams=np.array(beams), angles=np.array(angles),
                    grid_u=grid_u, grid_v=grid_v)


def select_beam(cb: Codebook, a_true: np.ndarray, channel: complex) -> SelectedBeam:
    """Exhaustive scan for the codebook beam with the highest gain toward
    the given steering vector; ties go to the lowest index."""
    n = a_true.shape[0]
    gains = np.abs(math.sqrt(n) * (cb.beams @ np.conj(a_true)) * channel)
    idx = int(np.argmax(gains))
    u, v = cb.angles[idx]
    return SelectedBeam(beam=cb.beams[idx], gain=float(gains[idx]), index=idx,
                        design_u=float(u), design_v=float(v))


def optimize_beam_vector(a: np.ndarray, iteration_budget: int,
                         rng: np.random.Generator) -> np.ndarray:
    """Budgeted per-element phase search maximizing |<w, a>|.

    Each candidate evaluation recomputes the full inner product and
    counts one call against the budget, including the initial point;
    the kept gain never decreases.
    """
    if iteration_budget < 1:
        raise ValueError(f"budget must be >= 1, got {iteration_budget}")
    n = len(a)
    scale = 1.0 / math.sqrt(n)
    phases = rng.uniform(0.0, 2.0 * math.pi, n)
    w = scale * np.exp(1j * phases)
    best_gain = abs(inner_product(w, a))
    calls = 1
    m = 0
    while calls < iteration_budget:
        # Coordinate step: align element m with the rest of the sum.
        rest = inner_product(w, a) - w[m] * np.conj(a[m])
        candidate = w.copy()
        candidate[m] = scale * np.exp(1j * (np.angle(rest) + np.angle(a[m])))
        gain = abs(inner_product(candidate, a))
        calls += 1
        if gain >= best_gain:
            w, best_gain = candidate, gain
        m = (m + 1) % n
    return w


def optimized_beam_gain(w: np.ndarray, a: np.ndarray, channel: complex) -> float:
    return beam_gain(w, a, channel, len(a))


@dataclass(frozen=True)
class FixedSchedule:
    """Reconstruction at every multiple of dt_fixed."""

    dt_fixed: float

    def __post_init__(self):
        if not self.dt_fixed > 0:
            raise ValueError(f"dt_fixed must be > 0, got {self.dt_fixed}")

    def first(self) -> float:
        return 0.0

    def next_after(self, t: float) -> float:
        return t + self.dt_fixed


def fixed_interval_schedule(dt_fixed: float) -> FixedSchedule:
    return FixedSchedule(dt_fixed=dt_fixed)
