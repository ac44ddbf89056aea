"""Cooperative swarm localization of a position-unknown UAV.

The fitness compares, per anchor UAV, the complex signal it actually
received against the signal a candidate position would have produced
(path gain times line-array response), summed over anchors.  Three
optimizers share that objective with identical evaluation budgets: the
dynamic crow search (low-discrepancy init, decaying awareness
probability), the original crow search, and a global-best PSO.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .arrays import ArrayConfig, ula_steering
from .channel import LinkBudget, angle_2d, distance_2d, path_gain

PSO_INERTIA = 0.729
PSO_COGNITIVE = 1.494
PSO_SOCIAL = 1.494


class SingularGeometryError(ValueError):
    """Candidate coincides with an anchor; the channel model diverges."""


@dataclass(frozen=True)
class GdcsaParams:
    population: int = 30
    iterations: int = 100
    flight_length: float = 2.0
    beta: float = 0.5
    box: tuple = ((0.0, 0.0), (150.0, 150.0))

    def __post_init__(self):
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not self.flight_length > 0:
            raise ValueError(f"flight_length must be > 0, got {self.flight_length}")
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        (x0, y0), (x1, y1) = self.box
        if not (x1 > x0 and y1 > y0):
            raise ValueError(f"degenerate search box {self.box}")


@dataclass
class Crow:
    """One swarm member: current position, best position visited, its fitness."""

    position: np.ndarray
    memory: np.ndarray
    fitness: float


@dataclass
class LocalizationProblem:
    """Observed per-anchor signals plus the link/array context to model them.

    Reliable localization needs at least two anchors; a single anchor
    leaves a mirror ambiguity about its axis.
    """

    a_uav_positions: list
    observed_signals: list
    link: LinkBudget = field(default_factory=LinkBudget)
    array: ArrayConfig = field(default_factory=ArrayConfig)

    def __post_init__(self):
        if len(self.a_uav_positions) < 1:
            raise ValueError("need at least one anchor UAV")
        if len(self.a_uav_positions) != len(self.observed_signals):
            raise ValueError(
                f"{len(self.a_uav_positions)} anchors but {len(self.observed_signals)} signals")
        for sig in self.observed_signals:
            if len(sig) != self.array.n_ula:
                raise ValueError(f"signal length {len(sig)} != n_ula {self.array.n_ula}")


@dataclass
class LocateResult:
    position: tuple
    fitness: float
    n_evaluations: int


def model_signal(candidate, anchor, link: LinkBudget, array: ArrayConfig) -> np.ndarray:
    """Signal an anchor would receive from a transmitter at `candidate`."""
    d = distance_2d(candidate, anchor)
    if d == 0.0:
        raise SingularGeometryError(
            f"singular geometry: candidate coincides with anchor {anchor}")
    g = path_gain(d, link)
    return g * ula_steering(angle_2d(anchor, candidate), array.n_ula, array)


def synth_observations(true_position, a_uav_positions, link: LinkBudget,
                       array: ArrayConfig, noise_power: float = 0.0,
                       rng: np.random.Generator | None = None) -> list:
    """Generate per-anchor received signals, optionally with CN(0, noise_power) noise."""
    signals = []
    for anchor in a_uav_positions:
        sig = model_signal(true_position, anchor, link, array)
        if noise_power > 0:
            if rng is None:
                raise ValueError("noise requested but no rng supplied")
            std = math.sqrt(noise_power / 2.0)
            sig = sig + std * (rng.standard_normal(array.n_ula)
                               + 1j * rng.standard_normal(array.n_ula))
        signals.append(sig)
    return signals


def localization_objective(candidate, problem: LocalizationProblem) -> float:
    """Half the summed complex-norm residual between observed and modelled signals."""
    total = 0.0
    for anchor, observed in zip(problem.a_uav_positions, problem.observed_signals):
        modelled = model_signal(candidate, anchor, problem.link, problem.array)
        total += float(np.linalg.norm(observed - modelled))
    return 0.5 * total


def _smallest_prime_for(dims: int) -> int:
    p = 2 * dims + 3
    while True:
        if all(p % q for q in range(2, int(math.isqrt(p)) + 1)):
            return p
        p += 1


def good_point_set(n: int, dims: int, box) -> np.ndarray:
    """Low-discrepancy points: fractional parts of k*2cos(2*pi*i/p), mapped into the box.

    p is the smallest prime with (p-3)/2 >= dims.
    """
    if n < 1 or dims < 1:
        raise ValueError(f"need n >= 1 and dims >= 1, got n={n}, dims={dims}")
    p = _smallest_prime_for(dims)
    r = 2.0 * np.cos(2.0 * np.pi * np.arange(1, dims + 1) / p)
    k = np.arange(1, n + 1)[:, None]
    unit = np.mod(r[None, :] * k, 1.0)
    low = np.asarray(box[0], dtype=float)
    high = np.asarray(box[1], dtype=float)
    return low + unit * (high - low)


def dynamic_ap(t: int, iter_max: int, beta: float) -> float:
    """Awareness probability beta * ((iter_max - t)/iter_max)^2, decaying to 0."""
    if not 0 <= t <= iter_max:
        raise ValueError(f"t must be in [0, {iter_max}], got {t}")
    return beta * ((iter_max - t) / iter_max) ** 2


def crow_update(crow: Crow, crow_j: Crow, ap: float, fl: float, box,
                rng: np.random.Generator, objective) -> Crow:
    """One position update: follow crow j's memory with probability 1-ap,
    otherwise restart uniformly in the box.  Memory keeps the best visited."""
    low = np.asarray(box[0], dtype=float)
    high = np.asarray(box[1], dtype=float)
    r = rng.random()
    if r >= ap:
        new = crow.position + rng.random() * fl * (crow_j.memory - crow.position)
    else:
        new = low + rng.random(len(low)) * (high - low)
    new = np.clip(new, low, high)
    f = objective(new)
    if f < crow.fitness:
        return Crow(position=new, memory=new.copy(), fitness=f)
    return Crow(position=new, memory=crow.memory, fitness=crow.fitness)


def _counting(objective):
    """Wraps an objective: counts calls, scores anchor-coincident points +inf."""
    counter = {"n": 0}

    def counted(x):
        counter["n"] += 1
        try:
            return objective(x)
        except SingularGeometryError:
            return math.inf

    return counted, counter


def _crow_search(objective, params: GdcsaParams, rng: np.random.Generator,
                 init_points: np.ndarray, ap_schedule) -> LocateResult:
    counted, counter = _counting(objective)

    crows = [Crow(position=p.copy(), memory=p.copy(), fitness=counted(p))
             for p in init_points]
    for t in range(params.iterations):
        ap = ap_schedule(t)
        for i in range(params.population):
            j = int(rng.integers(params.population))
            crows[i] = crow_update(crows[i], crows[j], ap, params.flight_length,
                                   params.box, rng, counted)
    best = min(range(params.population), key=lambda i: (crows[i].fitness, i))
    pos = crows[best].memory
    return LocateResult(position=(float(pos[0]), float(pos[1])),
                        fitness=float(crows[best].fitness),
                        n_evaluations=counter["n"])


def gdcsa_locate(problem: LocalizationProblem, params: GdcsaParams,
                 rng: np.random.Generator) -> LocateResult:
    """Dynamic crow search: low-discrepancy init, AP decaying over iterations."""
    init = good_point_set(params.population, 2, params.box)
    return _crow_search(lambda x: localization_objective(x, problem), params, rng,
                        init, lambda t: dynamic_ap(t, params.iterations, params.beta))


def csa_locate(problem: LocalizationProblem, params: GdcsaParams,
               rng: np.random.Generator, awareness: float | None = None) -> LocateResult:
    """Original crow search: uniform-random init, constant awareness probability.

    The awareness defaults to params.beta, i.e. the same value the dynamic
    schedule starts from, held constant; pass e.g. 0.1 for the literature's
    canonical setting.
    """
    ap = params.beta if awareness is None else awareness
    low = np.asarray(params.box[0], dtype=float)
    high = np.asarray(params.box[1], dtype=float)
    init = low + rng.random((params.population, 2)) * (high - low)
    return _crow_search(lambda x: localization_objective(x, problem), params, rng,
                        init, lambda t: ap)


def pso_locate(problem: LocalizationProblem, params: GdcsaParams,
               rng: np.random.Generator) -> LocateResult:
    """Global-best PSO with canonical constriction weights, same budget as the crows."""
    counted, counter = _counting(lambda x: localization_objective(x, problem))
    low = np.asarray(params.box[0], dtype=float)
    high = np.asarray(params.box[1], dtype=float)
    n = params.population
    pos = low + rng.random((n, 2)) * (high - low)
    vel = np.zeros((n, 2))
    pbest = pos.copy()
    pfit = np.array([counted(p) for p in pos])
    g = int(np.argmin(pfit))
    gbest, gfit = pbest[g].copy(), float(pfit[g])
    for _ in range(params.iterations):
        for i in range(n):
            r1 = rng.random(2)
            r2 = rng.random(2)
            vel[i] = (PSO_INERTIA * vel[i]
                      + PSO_COGNITIVE * r1 * (pbest[i] - pos[i])
                      + PSO_SOCIAL * r2 * (gbest - pos[i]))
            pos[i] = np.clip(pos[i] + vel[i], low, high)
            f = counted(pos[i])
            if f < pfit[i]:
                pbest[i], pfit[i] = pos[i].copy(), f
                if f < gfit:
                    gbest, gfit = pos[i].copy(), float(f)
    return LocateResult(position=(float(gbest[0]), float(gbest[1])),
                        fitness=gfit, n_evaluations=counter["n"])
