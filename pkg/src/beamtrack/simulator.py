"""Scenario orchestration: localization epochs, trajectory collection,
the shared tracking loop, metric logging, and runtime measurement.

One scenario is a sequential deterministic state machine.  All trackers
run the identical loop (trajectory, collection, localization refresh,
model upkeep); only the beam-construction policy differs, so comparisons
see the same trajectory and noise realizations by construction.
"""

import hashlib
import math
import time
from bisect import bisect_right
from dataclasses import dataclass, field, replace

import numpy as np

from . import gpr, tiam
from .arrays import ArrayConfig, beam_gain, hpbw, upa_beam_vector, upa_steering
from .baselines import build_codebook, optimize_beam_vector, select_beam
from .channel import (LinkBudget, PowerModel, angle_2d, angles_3d, distance_2d,
                      distance_3d, energy_efficiency, path_gain, rate,
                      received_amplitude, snr, snr_to_db)
from .gpr import RebuildPolicy
from .localization import (GdcsaParams, LocalizationProblem, gdcsa_locate,
                           synth_observations)
from .rngstream import SeedStreams
from .tiam import TiamConfig, TiamState, tiam_step, wrap_angle
from .trajectory import (MotionState, TrajectorySample, apply_shake, ctra_step,
                         ctrv_step, load_trace, random_step)

TRACKERS = ("bab-ar", "fixed", "codebook", "beamopt")
MOTION_PATTERNS = ("static", "ctrv", "ctra", "random", "trace")


@dataclass(frozen=True)
class MotionSpec:
    """A mobile node's motion pattern and parameters (or a trace file)."""

    pattern: str = "ctra"
    start: tuple = (90.0, 40.0)
    heading: float = 2.0
    speed: float = 10.0
    yaw_rate: float = 0.1
    acceleration: float = 1.0
    wander_delta: float = math.pi / 6
    trace_path: str = ""

    def __post_init__(self):
        if self.pattern not in MOTION_PATTERNS:
            raise ValueError(f"pattern must be one of {MOTION_PATTERNS}, got {self.pattern!r}")
        if self.pattern == "trace" and not self.trace_path:
            raise ValueError("trace pattern requires trace_path")


@dataclass(frozen=True)
class UuavSpec:
    """The position-unknown UAV: pose, optional motion, shake perturbation."""

    start: tuple = (75.0, 75.0)
    shake_radius: float = 0.0
    motion: MotionSpec = field(default_factory=lambda: MotionSpec(
        pattern="static", start=(75.0, 75.0)))

    def __post_init__(self):
        if self.shake_radius < 0:
            raise ValueError(f"shake_radius must be >= 0, got {self.shake_radius}")


@dataclass(frozen=True)
class GprSettings:
    length_scale: float | None = 0.5  # None selects from the grid at fit time
    noise_variance: float = 1e-4
    window: int = 30

    def __post_init__(self):
        if self.window < 2:
            raise ValueError(f"window must be >= 2, got {self.window}")


@dataclass(frozen=True)
class BaselineSettings:
    codebook_grid_u: int = 8
    codebook_grid_v: int = 8
    beamopt_budget_per_antenna: int = 10
    dt_fixed: float = 0.1

    def __post_init__(self):
        if self.codebook_grid_u < 1 or self.codebook_grid_v < 1:
            raise ValueError("codebook grids must be >= 1")
        if self.beamopt_budget_per_antenna < 1:
            raise ValueError("beamopt budget must be >= 1")
        if not self.dt_fixed > 0:
            raise ValueError(f"dt_fixed must be > 0, got {self.dt_fixed}")


@dataclass(frozen=True)
class ScenarioConfig:
    area: tuple = ((0.0, 0.0), (150.0, 150.0))
    altitude: float = 100.0
    a_uav_positions: tuple = ((0.0, 0.0), (50.0, 50.0))
    array: ArrayConfig = field(default_factory=ArrayConfig)
    link: LinkBudget = field(default_factory=LinkBudget)
    power: PowerModel = field(default_factory=PowerModel)
    motion: MotionSpec = field(default_factory=MotionSpec)
    u_uav: UuavSpec = field(default_factory=UuavSpec)
    tracker: str = "bab-ar"
    tiam: TiamConfig = field(default_factory=TiamConfig)
    gpr: GprSettings = field(default_factory=GprSettings)
    rebuild: RebuildPolicy = field(default_factory=RebuildPolicy)
    gdcsa: GdcsaParams = field(default_factory=GdcsaParams)
    baselines: BaselineSettings = field(default_factory=BaselineSettings)
    duration: float = 5.0
    collection_dt: float = 0.1
    seed: int = 2024

    def __post_init__(self):
        if len(self.a_uav_positions) < 2:
            raise ValueError(f"need >= 2 anchor UAVs, got {len(self.a_uav_positions)}")
        if not self.duration > 0:
            raise ValueError(f"duration must be > 0, got {self.duration}")
        if not self.collection_dt > 0:
            raise ValueError(f"collection_dt must be > 0, got {self.collection_dt}")
        if self.tracker not in TRACKERS:
            raise ValueError(f"tracker must be one of {TRACKERS}, got {self.tracker!r}")
        if not self.altitude > 0:
            raise ValueError(f"altitude must be > 0, got {self.altitude}")
        (x0, y0), (x1, y1) = self.area
        if not (x1 > x0 and y1 > y0):
            raise ValueError(f"degenerate area {self.area}")


@dataclass(frozen=True)
class StepRecord:
    time: float
    u_true: float
    v_true: float
    u_pred: float
    v_pred: float
    gain: float
    snr_db: float
    rate: float
    ee: float
    reconstructed: bool
    dt_star: float
    rebuild_u: bool
    rebuild_v: bool


@dataclass(frozen=True)
class RunSummary:
    mean_gain: float
    min_gain: float
    mean_rate: float
    mean_ee: float
    reconstruction_count: int
    rebuild_count_u: int
    rebuild_count_v: int
    coverage_fraction: float
    angle_rms_error_rad: float
    localization_error_m: float
    wall_clock_per_cycle_s: float


@dataclass
class RunResult:
    summary: RunSummary
    steps: list
    metadata: dict


def _step_state(state: MotionState, pattern: str, dt: float, wander_delta: float,
                rng) -> MotionState:
    if pattern == "static":
        return state
    if pattern == "ctrv":
        return ctrv_step(state, dt)
    if pattern == "ctra":
        return ctra_step(state, dt)
    if pattern == "random":
        return random_step(state, dt, rng, wander_delta)
    raise ValueError(f"unsupported pattern {pattern!r}")


def _initial_state(spec: MotionSpec) -> MotionState:
    return MotionState(position=tuple(spec.start), heading=spec.heading,
                       speed=spec.speed, yaw_rate=spec.yaw_rate,
                       acceleration=spec.acceleration)


def build_trajectory(cfg: ScenarioConfig, rng) -> tuple:
    """MU positions sampled every collection_dt from -window*dt (warmup)
    through duration.  Returns (times, positions, digest)."""
    dt = cfg.collection_dt
    w = cfg.gpr.window
    n_steps = int(round(cfg.duration / dt))
    times = (np.arange(w + n_steps + 1) - w) * dt
    spec = cfg.motion
    if spec.pattern == "trace":
        samples = load_trace(spec.trace_path)
        t0 = samples[0].time
        span = samples[-1].time - t0
        needed = times[-1] - times[0]
        if span + 1e-9 < needed:
            raise ValueError(
                f"trace spans {span:.3f}s but scenario needs {needed:.3f}s incl. warmup")
        st = np.array([s.time for s in samples]) - t0 - w * dt
        sx = np.array([s.position[0] for s in samples])
        sy = np.array([s.position[1] for s in samples])
        xs = np.interp(times, st, sx)
        ys = np.interp(times, st, sy)
        positions = np.column_stack([xs, ys])
    elif spec.pattern == "static":
        positions = np.tile(np.asarray(spec.start, dtype=float), (len(times), 1))
    else:
        state = _initial_state(spec)
        pts = [state.position]
        for _ in range(len(times) - 1):
            state = _step_state(state, spec.pattern, dt, spec.wander_delta, rng)
            pts.append(state.position)
        positions = np.asarray(pts, dtype=float)
    digest = hashlib.sha256()
    digest.update(np.ascontiguousarray(times).tobytes())
    digest.update(np.ascontiguousarray(positions).tobytes())
    return times, positions, digest.hexdigest()


class _Interpolant:
    """Piecewise-linear position lookup over the sampled trajectory."""

    def __init__(self, times, positions):
        self._t = times
        self._x = positions[:, 0]
        self._y = positions[:, 1]

    def __call__(self, t: float) -> tuple:
        return (float(np.interp(t, self._t, self._x)),
                float(np.interp(t, self._t, self._y)))


def summarize(steps, array_cfg: ArrayConfig, localization_error_m: float = math.nan,
              wall_clock_per_cycle_s: float = math.nan) -> RunSummary:
    """Aggregate a step log; every derived field is recomputable from it."""
    gains = np.array([s.gain for s in steps])
    rates = np.array([s.rate for s in steps])
    ees = np.array([s.ee for s in steps])
    covered = 0
    sq = 0.0
    for s in steps:
        width = hpbw(s.u_pred, s.v_pred, array_cfg)
        du = abs(wrap_angle(s.u_pred - s.u_true))
        dv = abs(wrap_angle(s.v_pred - s.v_true))
        if du <= width.theta_u / 2.0 and dv <= width.theta_v / 2.0:
            covered += 1
        sq += (du * du + dv * dv) / 2.0
    return RunSummary(
        mean_gain=float(gains.mean()), min_gain=float(gains.min()),
        mean_rate=float(rates.mean()), mean_ee=float(ees.mean()),
        reconstruction_count=sum(1 for s in steps if s.reconstructed),
        rebuild_count_u=sum(1 for s in steps if s.rebuild_u),
        rebuild_count_v=sum(1 for s in steps if s.rebuild_v),
        coverage_fraction=covered / len(steps),
        angle_rms_error_rad=math.sqrt(sq / len(steps)),
        localization_error_m=localization_error_m,
        wall_clock_per_cycle_s=wall_clock_per_cycle_s)


def run_scenario(cfg: ScenarioConfig) -> RunResult:
    """Execute one scenario: localization, collection + model fit, then the
    tracking loop with the configured beam policy.  Deterministic per seed."""
    streams = SeedStreams(cfg.seed)
    traj_rng = streams.get("trajectory")
    shake_rng = streams.get("shake")
    obs_rng = streams.get("observation-noise")
    opt_rng = streams.get("optimizer")
    beam_rng = streams.get("beam-optimizer")

    dt = cfg.collection_dt
    w = cfg.gpr.window
    n_steps = int(round(cfg.duration / dt))
    n_upa = cfg.array.n_x * cfg.array.n_y

    times, positions, traj_digest = build_trajectory(cfg, traj_rng)
    mu_at = _Interpolant(times, positions)

    uuav_base = tuple(cfg.u_uav.start)

    def uuav_true():
        if cfg.u_uav.shake_radius > 0:
            return apply_shake(uuav_base, cfg.u_uav.shake_radius, shake_rng)
        return uuav_base

    loc_errors = []
    current_uuav = uuav_true()
    estimate = None

    def localize(true_pos):
        obs = synth_observations(true_pos, cfg.a_uav_positions, cfg.link, cfg.array,
                                 noise_power=cfg.link.noise_power, rng=obs_rng)
        problem = LocalizationProblem(a_uav_positions=list(cfg.a_uav_positions),
                                      observed_signals=obs, link=cfg.link,
                                      array=cfg.array)
        res = gdcsa_locate(problem, cfg.gdcsa, opt_rng)
        loc_errors.append(distance_2d(res.position, true_pos))
        return res.position

    wall_start = time.perf_counter()
    estimate = localize(current_uuav)

    # Collected angle history (what the anchors can compute: MU locations
    # against the *estimated* platform position).
    col_t, col_u, col_v = [], [], []

    def collect(t):
        u, v = angles_3d(mu_at(t), estimate, cfg.altitude)
        col_t.append(t)
        col_u.append(u)
        col_v.append(v)

    for j in range(w):
        collect(times[j])

    def fit_axis(values):
        lo = max(0, len(col_t) - cfg.gpr.window)
        return gpr.fit(col_t[lo:], values[lo:], length_scale=cfg.gpr.length_scale,
                       noise_variance=cfg.gpr.noise_variance)

    model_u = fit_axis(col_u)
    model_v = fit_axis(col_v)

    codebook = None
    if cfg.tracker == "codebook":
        codebook = build_codebook(cfg.baselines.codebook_grid_u,
                                  cfg.baselines.codebook_grid_v, cfg.array)

    tiam_like = cfg.tracker in ("bab-ar", "fixed")
    dt_override = None if cfg.tracker == "bab-ar" else cfg.baselines.dt_fixed
    state = TiamState(t=-cfg.tiam.initial_dt, dt_next=cfg.tiam.initial_dt,
                      u_now=col_u[-1], v_now=col_v[-1])
    next_recon = 0.0
    active_beam = None
    active_pred = (col_u[-1], col_v[-1])
    active_dt_star = cfg.tiam.initial_dt
    recon_total = 0

    check_times = []
    m = 1
    while m * cfg.rebuild.t_check <= cfg.duration + 1e-9:
        check_times.append(m * cfg.rebuild.t_check)
        m += 1
    next_check_idx = 0

    def latest_collected(t_event):
        i = bisect_right(col_t, t_event + 1e-12) - 1
        return col_t[i], col_u[i], col_v[i]

    steps = []
    flags = {"recon": False, "rebuild_u": False, "rebuild_v": False}

    def process_check(tc):
        nonlocal estimate, model_u, model_v, current_uuav
        current_uuav = uuav_true() if cfg.u_uav.shake_radius > 0 else current_uuav
        estimate = localize(current_uuav)
        t_ref, act_u, act_v = latest_collected(tc)
        pred_u, _ = gpr.predict(model_u, t_ref)
        pred_v, _ = gpr.predict(model_v, t_ref)
        if gpr.should_rebuild(pred_u, act_u, cfg.rebuild):
            model_u = fit_axis(col_u)
            flags["rebuild_u"] = True
        if gpr.should_rebuild(pred_v, act_v, cfg.rebuild):
            model_v = fit_axis(col_v)
            flags["rebuild_v"] = True

    def process_reconstruction(tr):
        nonlocal state, next_recon, active_beam, active_pred, active_dt_star, recon_total
        if tiam_like:
            result = tiam_step(state, model_u, model_v, cfg.array, cfg.tiam,
                               dt_override=dt_override)
            state = result.state
            active_beam = result.beam
            active_pred = (result.u_pred, result.v_pred)
            active_dt_star = result.dt_star
            next_recon = state.t + state.dt_next
        else:
            true_u, true_v = angles_3d(mu_at(tr), current_uuav, cfg.altitude)
            if cfg.tracker == "codebook":
                sel = select_beam(codebook, upa_steering(true_u, true_v, cfg.array), 1.0)
                active_beam = sel.beam
                active_pred = (sel.design_u, sel.design_v)
            else:  # beamopt
                target = upa_steering(true_u, true_v, cfg.array)
                budget = cfg.baselines.beamopt_budget_per_antenna * n_upa
                active_beam = optimize_beam_vector(target, budget, beam_rng)
                active_pred = (true_u, true_v)
            active_dt_star = cfg.baselines.dt_fixed
            next_recon = tr + cfg.baselines.dt_fixed
        recon_total += 1
        flags["recon"] = True

    for j in range(n_steps + 1):
        t_j = j * dt
        collect(t_j)
        while True:
            tc = check_times[next_check_idx] if next_check_idx < len(check_times) else math.inf
            tc = tc if tc <= t_j + 1e-9 else math.inf
            tr = next_recon if (next_recon <= t_j + 1e-9
                                and next_recon < cfg.duration - 1e-9) else math.inf
            if not math.isfinite(tc) and not math.isfinite(tr):
                break
            if tc <= tr:
                process_check(tc)
                next_check_idx += 1
            else:
                process_reconstruction(tr)

        true_u, true_v = angles_3d(mu_at(t_j), current_uuav, cfg.altitude)
        a_true = upa_steering(true_u, true_v, cfg.array)
        g = beam_gain(active_beam, a_true, 1.0, n_upa)
        h_l = path_gain(distance_3d(mu_at(t_j), current_uuav, cfg.altitude), cfg.link)
        amp = received_amplitude(active_beam, a_true, h_l, n_upa)
        s = snr(amp, cfg.link)
        r = rate(s)
        ee = energy_efficiency(r, cfg.link.tx_power, cfg.power, cfg.array.n_x,
                               cfg.array.n_y, phase_shifters_active=flags["recon"])
        steps.append(StepRecord(
            time=t_j, u_true=true_u, v_true=true_v,
            u_pred=active_pred[0], v_pred=active_pred[1],
            gain=g, snr_db=snr_to_db(s), rate=r, ee=ee,
            reconstructed=flags["recon"], dt_star=active_dt_star,
            rebuild_u=flags["rebuild_u"], rebuild_v=flags["rebuild_v"]))
        flags = {"recon": False, "rebuild_u": False, "rebuild_v": False}

    wall = time.perf_counter() - wall_start
    summary = summarize(steps, cfg.array,
                        localization_error_m=float(np.mean(loc_errors)),
                        wall_clock_per_cycle_s=wall / max(recon_total, 1))
    metadata = {
        "seed": cfg.seed,
        "tracker": cfg.tracker,
        "tiam_mode": cfg.tiam.mode,
        "trajectory_digest": traj_digest,
        "aligned_gain": float(n_upa),
    }
    return RunResult(summary=summary, steps=steps, metadata=metadata)


def validate_comparison_configs(cfgs) -> None:
    if len(cfgs) < 2:
        raise ValueError("comparison needs at least two configs")
    base = cfgs[0]
    for c in cfgs[1:]:
        if replace(c, tracker=base.tracker) != base:
            raise ValueError("comparison configs must differ only in tracker")


def comparison_rows(cfgs, results) -> list:
    """Tabulate per-tracker summaries plus relative improvements of the
    first tracker over each row's tracker."""
    digests = {r.metadata["trajectory_digest"] for r in results}
    if len(digests) != 1:
        raise ValueError(f"trajectory digests diverged: {digests}")
    first = results[0].summary
    rows = []
    for cfg, res in zip(cfgs, results):
        s = res.summary
        rows.append({
            "tracker": cfg.tracker,
            "mean_gain": s.mean_gain, "min_gain": s.min_gain,
            "mean_rate": s.mean_rate, "mean_ee": s.mean_ee,
            "reconstruction_count": s.reconstruction_count,
            "rebuild_count_u": s.rebuild_count_u,
            "rebuild_count_v": s.rebuild_count_v,
            "coverage_fraction": s.coverage_fraction,
            "angle_rms_error_rad": s.angle_rms_error_rad,
            "gain_gain_vs_this": _rel(first.mean_gain, s.mean_gain),
            "rate_gain_vs_this": _rel(first.mean_rate, s.mean_rate),
            "ee_gain_vs_this": _rel(first.mean_ee, s.mean_ee),
            "trajectory_digest": res.metadata["trajectory_digest"],
        })
    return rows


def run_comparison(cfgs) -> list:
    """Run scenarios differing only in tracker on one shared trajectory."""
    validate_comparison_configs(cfgs)
    results = [run_scenario(c) for c in cfgs]
    return comparison_rows(cfgs, results)


def _rel(a: float, b: float) -> float:
    return (a - b) / b if b != 0 else math.inf


def bench_optimizers(cfg: ScenarioConfig, n_seeds: int = 21) -> list:
    """Head-to-head optimizer comparison on the localization objective.

    Per seed, one noisy problem instance is shared by all three
    optimizers with equal evaluation budgets; rows report the median
    final fitness and median wall time in a fixed order.
    """
    if n_seeds < 1:
        raise ValueError(f"n_seeds must be >= 1, got {n_seeds}")
    from .localization import csa_locate, pso_locate

    algorithms = (("GDCSA", gdcsa_locate), ("CSA", csa_locate), ("PSO", pso_locate))
    fitness = {name: [] for name, _ in algorithms}
    runtime = {name: [] for name, _ in algorithms}
    evaluations = set()
    streams = SeedStreams(cfg.seed)
    true_pos = tuple(cfg.u_uav.start)
    for s in range(n_seeds):
        obs_rng = streams.get(f"bench/{s}/observation-noise")
        obs = synth_observations(true_pos, cfg.a_uav_positions, cfg.link, cfg.array,
                                 noise_power=cfg.link.noise_power, rng=obs_rng)
        problem = LocalizationProblem(a_uav_positions=list(cfg.a_uav_positions),
                                      observed_signals=obs, link=cfg.link,
                                      array=cfg.array)
        for name, locate in algorithms:
            rng = streams.get(f"bench/{s}/{name}")
            t0 = time.perf_counter()
            res = locate(problem, cfg.gdcsa, rng)
            runtime[name].append(time.perf_counter() - t0)
            fitness[name].append(res.fitness)
            evaluations.add(res.n_evaluations)
    if len(evaluations) != 1:
        raise AssertionError(f"unequal evaluation budgets: {evaluations}")
    budget = next(iter(evaluations))
    return [{
        "algorithm": name,
        "median_fitness": float(np.median(fitness[name])),
        "median_runtime_s": float(np.median(runtime[name])),
        "evaluations": budget,
        "seeds": n_seeds,
    } for name, _ in algorithms]


@dataclass(frozen=True)
class LocalizationEpoch:
    pattern: str
    epoch: int
    time: float
    true_position: tuple
    estimated_position: tuple
    error_m: float
    fitness: float
    angle_rel_errors: tuple  # per anchor


def run_localization_experiment(cfg: ScenarioConfig, patterns=("ctrv", "ctra", "random"),
                                epochs: int = 50,
                                shake_radius: float | None = None) -> list:
    """Repeated single-epoch localizations of a moving platform.

    Per epoch: perturb the true position by the shake disc (if any),
    synthesize noisy anchor observations, localize, and record position
    and per-anchor relative bearing errors.
    """
    radius = cfg.u_uav.shake_radius if shake_radius is None else shake_radius
    streams = SeedStreams(cfg.seed)
    records = []
    for pattern in patterns:
        traj_rng = streams.get(f"uuav-trajectory/{pattern}")
        shk_rng = streams.get(f"shake/{pattern}")
        obs_rng = streams.get(f"observation-noise/{pattern}")
        opt_rng = streams.get(f"optimizer/{pattern}")
        spec = replace(cfg.u_uav.motion, pattern=pattern, start=cfg.u_uav.start)
        state = _initial_state(spec)
        for epoch in range(epochs):
            base = state.position
            true_pos = apply_shake(base, radius, shk_rng) if radius > 0 else base
            obs = synth_observations(true_pos, cfg.a_uav_positions, cfg.link,
                                     cfg.array, noise_power=cfg.link.noise_power,
                                     rng=obs_rng)
            problem = LocalizationProblem(a_uav_positions=list(cfg.a_uav_positions),
                                          observed_signals=obs, link=cfg.link,
                                          array=cfg.array)
            res = gdcsa_locate(problem, cfg.gdcsa, opt_rng)
            rel = []
            for anchor in cfg.a_uav_positions:
                theta = angle_2d(anchor, true_pos)
                theta_hat = angle_2d(anchor, res.position)
                rel.append(abs(wrap_angle(theta_hat - theta)) / max(abs(theta), 1e-9))
            records.append(LocalizationEpoch(
                pattern=pattern, epoch=epoch, time=epoch * cfg.collection_dt,
                true_position=tuple(true_pos), estimated_position=res.position,
                error_m=distance_2d(res.position, true_pos), fitness=res.fitness,
                angle_rel_errors=tuple(rel)))
            state = _step_state(state, pattern, cfg.collection_dt,
                                spec.wander_delta, traj_rng)
    return records


@dataclass(frozen=True)
class RuntimeRow:
    tracker: str
    n_side: int
    median_s: float
    iqr_s: float
    samples: tuple


def measure_runtime(cfg: ScenarioConfig, repetitions: int = 5,
                    antenna_counts=(8, 16, 32),
                    trackers=("bab-ar", "codebook", "beamopt")) -> list:
    """Per-reconstruction-cycle wall time per tracker over a UPA size sweep.

    The bab-ar cycle is localization + prediction + interval + beam; the
    codebook cycle is one exhaustive selection; the beamopt cycle is one
    budgeted phase search (budget scales with the antenna count).
    """
    if repetitions < 3:
        raise ValueError(f"repetitions must be >= 3, got {repetitions}")
    streams = SeedStreams(cfg.seed)
    obs_rng = streams.get("observation-noise")
    mu0 = tuple(cfg.motion.start)
    true_pos = tuple(cfg.u_uav.start)
    rows = []
    for n_side in antenna_counts:
        array = replace(cfg.array, n_x=n_side, n_y=n_side)
        n_upa = n_side * n_side
        u, v = angles_3d(mu0, true_pos, cfg.altitude)
        target = upa_steering(u, v, array)
        obs = synth_observations(true_pos, cfg.a_uav_positions, cfg.link, array,
                                 noise_power=cfg.link.noise_power, rng=obs_rng)
        problem = LocalizationProblem(a_uav_positions=list(cfg.a_uav_positions),
                                      observed_signals=obs, link=cfg.link, array=array)
        hist_t = [-(cfg.gpr.window - i) * cfg.collection_dt for i in range(cfg.gpr.window)]
        hist_u = [u + 0.01 * i for i in range(cfg.gpr.window)]
        hist_v = [v + 0.005 * i for i in range(cfg.gpr.window)]
        model_u = gpr.fit(hist_t, hist_u, length_scale=cfg.gpr.length_scale,
                          noise_variance=cfg.gpr.noise_variance)
        model_v = gpr.fit(hist_t, hist_v, length_scale=cfg.gpr.length_scale,
                          noise_variance=cfg.gpr.noise_variance)
        codebook = build_codebook(cfg.baselines.codebook_grid_u,
                                  cfg.baselines.codebook_grid_v, array)

        def cycle_bab_ar(rng):
            gdcsa_locate(problem, cfg.gdcsa, rng)
            st = TiamState(t=-cfg.tiam.initial_dt, dt_next=cfg.tiam.initial_dt,
                           u_now=hist_u[-1], v_now=hist_v[-1])
            tiam_step(st, model_u, model_v, array, cfg.tiam)

        def cycle_codebook(rng):
            select_beam(codebook, target, 1.0)

        def cycle_beamopt(rng):
            optimize_beam_vector(target, cfg.baselines.beamopt_budget_per_antenna * n_upa, rng)

        cycles = {"bab-ar": cycle_bab_ar, "codebook": cycle_codebook,
                  "beamopt": cycle_beamopt}
        for tracker in trackers:
            fn = cycles[tracker]
            samples = []
            for rep in range(repetitions):
                rng = streams.get(f"runtime/{tracker}/{n_side}/{rep}")
                t0 = time.perf_counter()
                fn(rng)
                samples.append(time.perf_counter() - t0)
            q25, q50, q75 = np.percentile(samples, [25, 50, 75])
            rows.append(RuntimeRow(tracker=tracker, n_side=n_side,
                                   median_s=float(q50), iqr_s=float(q75 - q25),
                                   samples=tuple(samples)))
    return rows
