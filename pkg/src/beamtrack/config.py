"""Scenario config files: load, validate, emit.

The file format is TOML restricted to dotted scalar keys and point
lists, so configs stay line-oriented and diff-friendly.  Every key is
optional; omitted keys take the experiment defaults.  Unknown keys are
rejected with their dotted path.
"""

import hashlib
import math
from dataclasses import replace
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .arrays import ArrayConfig
from .channel import LinkBudget, PowerModel, dbm_to_watts, watts_to_dbm
from .gpr import RebuildPolicy
from .localization import GdcsaParams
from .simulator import (BaselineSettings, GprSettings, MotionSpec,
                        ScenarioConfig, UuavSpec)
from .tiam import TiamConfig

# key -> (type tag, default); order fixes the emitted layout.
SCHEMA = {
    "seed": ("int", 2024),
    "tracker": ("str", "bab-ar"),
    "duration": ("float", 5.0),
    "collection_dt": ("float", 0.1),
    "altitude": ("float", 100.0),
    "area": ("box", ((0.0, 0.0), (150.0, 150.0))),
    "a_uavs": ("points", ((0.0, 0.0), (50.0, 50.0))),
    "t_check": ("float", 3.0),
    "sigma_check": ("float", 0.05 * math.pi),
    "array.n_ula": ("int", 16),
    "array.n_x": ("int", 16),
    "array.n_y": ("int", 16),
    "array.phase_constant": ("float", math.pi),
    "array.hpbw_coefficient": ("float", 0.886),
    "link.carrier_frequency": ("float", 28e9),
    "link.tx_power_dbm": ("float", 20.0),
    "link.noise_power_dbm": ("float", -100.0),
    "link.fading": ("float", 1.0),
    "power.p_ps": ("float", 0.040),
    "power.p_rf": ("float", 0.300),
    "power.n_rf": ("int", 1),
    "power.p_bb": ("float", 0.200),
    "motion.pattern": ("str", "ctra"),
    "motion.start": ("point", (90.0, 40.0)),
    "motion.heading": ("float", 2.0),
    "motion.speed": ("float", 10.0),
    "motion.yaw_rate": ("float", 0.1),
    "motion.acceleration": ("float", 1.0),
    "motion.wander_delta": ("float", math.pi / 6),
    "motion.trace_path": ("str", ""),
    "u_uav.start": ("point", (75.0, 75.0)),
    "u_uav.shake_radius": ("float", 0.0),
    "u_uav.heading": ("float", 0.5),
    "u_uav.speed": ("float", 10.0),
    "u_uav.yaw_rate": ("float", 0.1),
    "u_uav.acceleration": ("float", 1.0),
    "u_uav.wander_delta": ("float", math.pi / 6),
    "tiam.mode": ("str", "kinematic"),
    "tiam.dt_min": ("float", 0.001),
    "tiam.dt_max": ("float", 1.0),
    "tiam.initial_dt": ("float", 0.1),
    "gpr.length_scale": ("length_scale", 0.5),
    "gpr.noise_variance": ("float", 1e-4),
    "gpr.window": ("int", 30),
    "gdcsa.population": ("int", 30),
    "gdcsa.iterations": ("int", 100),
    "gdcsa.flight_length": ("float", 2.0),
    "gdcsa.beta": ("float", 0.5),
    "baselines.codebook_grid_u": ("int", 8),
    "baselines.codebook_grid_v": ("int", 8),
    "baselines.beamopt_budget_per_antenna": ("int", 10),
    "baselines.dt_fixed": ("float", 0.1),
}


def _coerce(key: str, kind: str, value):
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{key}: expected an integer, got {value!r}")
        return value
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"{key}: expected a number, got {value!r}")
        return float(value)
    if kind == "str":
        if not isinstance(value, str):
            raise ValueError(f"{key}: expected a string, got {value!r}")
        return value
    if kind == "length_scale":
        if value == "grid":
            return "grid"
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f'{key}: expected a number or "grid", got {value!r}')
        return float(value)
    if kind == "point":
        try:
            x, y = value
            return (float(x), float(y))
        except (TypeError, ValueError):
            raise ValueError(f"{key}: expected [x, y], got {value!r}") from None
    if kind in ("points", "box"):
        try:
            pts = tuple((float(p[0]), float(p[1])) for p in value)
        except (TypeError, ValueError, IndexError):
            raise ValueError(f"{key}: expected [[x, y], ...], got {value!r}") from None
        if kind == "box" and len(pts) != 2:
            raise ValueError(f"{key}: expected exactly two corner points, got {len(pts)}")
        if not pts:
            raise ValueError(f"{key}: expected at least one point")
        return pts
    raise AssertionError(kind)


def _flatten(tree: dict, prefix: str = "") -> dict:
    flat = {}
    for name, value in tree.items():
        key = f"{prefix}{name}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{key}."))
        else:
            flat[key] = value
    return flat


def from_mapping(tree: dict) -> ScenarioConfig:
    """Build a validated ScenarioConfig from a (possibly nested) mapping."""
    flat = dict(_flatten(tree))
    values = {}
    for key, (kind, default) in SCHEMA.items():
        if key in flat:
            values[key] = _coerce(key, kind, flat.pop(key))
        else:
            values[key] = default
    if flat:
        unknown = sorted(flat)
        raise ValueError(f"unknown config key(s): {', '.join(unknown)}")
    return _assemble(values)


def _assemble(v: dict) -> ScenarioConfig:
    ls = v["gpr.length_scale"]
    area = v["area"]
    return ScenarioConfig(
        area=area,
        altitude=v["altitude"],
        a_uav_positions=v["a_uavs"],
        array=ArrayConfig(n_ula=v["array.n_ula"], n_x=v["array.n_x"],
                          n_y=v["array.n_y"],
                          phase_constant=v["array.phase_constant"],
                          hpbw_coefficient=v["array.hpbw_coefficient"]),
        link=LinkBudget(carrier_frequency=v["link.carrier_frequency"],
                        fading=complex(v["link.fading"], 0.0),
                        tx_power=dbm_to_watts(v["link.tx_power_dbm"]),
                        noise_power=dbm_to_watts(v["link.noise_power_dbm"])),
        power=PowerModel(p_ps=v["power.p_ps"], p_rf=v["power.p_rf"],
                         n_rf=v["power.n_rf"], p_bb=v["power.p_bb"]),
        motion=MotionSpec(pattern=v["motion.pattern"], start=v["motion.start"],
                          heading=v["motion.heading"], speed=v["motion.speed"],
                          yaw_rate=v["motion.yaw_rate"],
                          acceleration=v["motion.acceleration"],
                          wander_delta=v["motion.wander_delta"],
                          trace_path=v["motion.trace_path"]),
        u_uav=UuavSpec(start=v["u_uav.start"], shake_radius=v["u_uav.shake_radius"],
                       motion=MotionSpec(pattern="static", start=v["u_uav.start"],
                                         heading=v["u_uav.heading"],
                                         speed=v["u_uav.speed"],
                                         yaw_rate=v["u_uav.yaw_rate"],
                                         acceleration=v["u_uav.acceleration"],
                                         wander_delta=v["u_uav.wander_delta"])),
        tracker=v["tracker"],
        tiam=TiamConfig(dt_min=v["tiam.dt_min"], dt_max=v["tiam.dt_max"],
                        mode=v["tiam.mode"], initial_dt=v["tiam.initial_dt"]),
        gpr=GprSettings(length_scale=None if ls == "grid" else ls,
                        noise_variance=v["gpr.noise_variance"],
                        window=v["gpr.window"]),
        rebuild=RebuildPolicy(t_check=v["t_check"], sigma_check=v["sigma_check"]),
        gdcsa=GdcsaParams(population=v["gdcsa.population"],
                          iterations=v["gdcsa.iterations"],
                          flight_length=v["gdcsa.flight_length"],
                          beta=v["gdcsa.beta"], box=area),
        baselines=BaselineSettings(
            codebook_grid_u=v["baselines.codebook_grid_u"],
            codebook_grid_v=v["baselines.codebook_grid_v"],
            beamopt_budget_per_antenna=v["baselines.beamopt_budget_per_antenna"],
            dt_fixed=v["baselines.dt_fixed"]),
        duration=v["duration"],
        collection_dt=v["collection_dt"],
        seed=v["seed"],
    )


def to_values(cfg: ScenarioConfig) -> dict:
    """Flat dotted-key view of a config, in schema order."""
    ls = cfg.gpr.length_scale
    return {
        "seed": cfg.seed,
        "tracker": cfg.tracker,
        "duration": cfg.duration,
        "collection_dt": cfg.collection_dt,
        "altitude": cfg.altitude,
        "area": cfg.area,
        "a_uavs": tuple(cfg.a_uav_positions),
        "t_check": cfg.rebuild.t_check,
        "sigma_check": cfg.rebuild.sigma_check,
        "array.n_ula": cfg.array.n_ula,
        "array.n_x": cfg.array.n_x,
        "array.n_y": cfg.array.n_y,
        "array.phase_constant": cfg.array.phase_constant,
        "array.hpbw_coefficient": cfg.array.hpbw_coefficient,
        "link.carrier_frequency": cfg.link.carrier_frequency,
        "link.tx_power_dbm": watts_to_dbm(cfg.link.tx_power),
        "link.noise_power_dbm": watts_to_dbm(cfg.link.noise_power),
        "link.fading": cfg.link.fading.real,
        "power.p_ps": cfg.power.p_ps,
        "power.p_rf": cfg.power.p_rf,
        "power.n_rf": cfg.power.n_rf,
        "power.p_bb": cfg.power.p_bb,
        "motion.pattern": cfg.motion.pattern,
        "motion.start": cfg.motion.start,
        "motion.heading": cfg.motion.heading,
        "motion.speed": cfg.motion.speed,
        "motion.yaw_rate": cfg.motion.yaw_rate,
        "motion.acceleration": cfg.motion.acceleration,
        "motion.wander_delta": cfg.motion.wander_delta,
        "motion.trace_path": cfg.motion.trace_path,
        "u_uav.start": cfg.u_uav.start,
        "u_uav.shake_radius": cfg.u_uav.shake_radius,
        "u_uav.heading": cfg.u_uav.motion.heading,
        "u_uav.speed": cfg.u_uav.motion.speed,
        "u_uav.yaw_rate": cfg.u_uav.motion.yaw_rate,
        "u_uav.acceleration": cfg.u_uav.motion.acceleration,
        "u_uav.wander_delta": cfg.u_uav.motion.wander_delta,
        "tiam.mode": cfg.tiam.mode,
        "tiam.dt_min": cfg.tiam.dt_min,
        "tiam.dt_max": cfg.tiam.dt_max,
        "tiam.initial_dt": cfg.tiam.initial_dt,
        "gpr.length_scale": "grid" if ls is None else ls,
        "gpr.noise_variance": cfg.gpr.noise_variance,
        "gpr.window": cfg.gpr.window,
        "gdcsa.population": cfg.gdcsa.population,
        "gdcsa.iterations": cfg.gdcsa.iterations,
        "gdcsa.flight_length": cfg.gdcsa.flight_length,
        "gdcsa.beta": cfg.gdcsa.beta,
        "baselines.codebook_grid_u": cfg.baselines.codebook_grid_u,
        "baselines.codebook_grid_v": cfg.baselines.codebook_grid_v,
        "baselines.beamopt_budget_per_antenna": cfg.baselines.beamopt_budget_per_antenna,
        "baselines.dt_fixed": cfg.baselines.dt_fixed,
    }


def _toml_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, tuple):
        return "[" + ", ".join(_toml_scalar(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {value!r}")


def _point_value(v) -> str:
    return "[" + ", ".join(repr(float(c)) for c in v) + "]"


def canonical_text(cfg: ScenarioConfig) -> str:
    """Deterministic dotted-key TOML rendering of a config."""
    values = to_values(cfg)
    lines = []
    for key, (kind, _) in SCHEMA.items():
        v = values[key]
        if kind == "point":
            rendered = _point_value(v)
        elif kind in ("points", "box"):
            rendered = "[" + ", ".join(_point_value(p) for p in v) + "]"
        else:
            rendered = _toml_scalar(v)
        lines.append(f"{key} = {rendered}")
    return "\n".join(lines) + "\n"


def emit_defaults() -> str:
    return canonical_text(from_mapping({}))


def config_digest(cfg: ScenarioConfig) -> str:
    return hashlib.sha256(canonical_text(cfg).encode("utf-8")).hexdigest()


def parse_config(path) -> ScenarioConfig:
    """Load, validate, and default-fill a scenario config file."""
    with open(path, "rb") as fh:
        try:
            tree = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ValueError(f"{path}: {exc}") from None
    try:
        return from_mapping(tree)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def demo_trace_path() -> str:
    """Filesystem path of the bundled demo vehicle trace."""
    return str(resources.files("beamtrack").joinpath("data/demo_trace.csv"))


PRESETS = {
    # Table-style default: CTRA target, moderate speed.
    "default": {},
    "ctrv": {"motion": {"pattern": "ctrv"}},
    "ctra": {"motion": {"pattern": "ctra"}},
    "random": {"motion": {"pattern": "random", "yaw_rate": 0.0}},
    # Stationary target: one reconstruction suffices for the whole run.
    "static": {"motion": {"pattern": "static", "speed": 0.0},
               "tiam": {"dt_max": 10.0}},
    # High angular-rate pass close to the platform, fine data cadence.
    "fast": {"collection_dt": 0.01,
             "duration": 5.0,
             "t_check": 0.1,
             "sigma_check": 0.02,
             "motion": {"pattern": "ctra", "start": (95.0, 35.0), "heading": 2.4,
                        "speed": 20.0, "yaw_rate": 0.05, "acceleration": 2.0},
             "tiam": {"dt_max": 0.5, "initial_dt": 0.01},
             "baselines": {"dt_fixed": 0.1}},
    # Slow drift far from the platform: reconstruction can be sparse.
    "slow": {"motion": {"pattern": "ctrv", "start": (140.0, 10.0), "heading": 2.0,
                        "speed": 1.0, "yaw_rate": 0.02, "acceleration": 0.0},
             "t_check": 1.0,
             "sigma_check": 0.02,
             "baselines": {"dt_fixed": 0.1}},
    # Recorded-trajectory target from the bundled trace file.
    "trace": {"motion": {"pattern": "trace", "trace_path": "<demo>"},
              "t_check": 1.0,
              "sigma_check": 0.02},
    # Moving-platform localization protocol (position estimation only).
    "localize": {"u_uav": {"start": (100.0, 110.0), "heading": 0.5}},
}


def preset_config(name: str, seed: int | None = None,
                  tracker: str | None = None) -> ScenarioConfig:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    overrides = {}
    _deep_update(overrides, PRESETS[name])
    motion = overrides.get("motion", {})
    if motion.get("trace_path") == "<demo>":
        motion["trace_path"] = demo_trace_path()
    if seed is not None:
        overrides["seed"] = seed
    if tracker is not None:
        overrides["tracker"] = tracker
    return from_mapping(overrides)


def _deep_update(dst: dict, src: dict) -> dict:
    for k, v in src.items():
        if isinstance(v, dict):
            dst[k] = _deep_update(dict(dst.get(k, {})), v)
        else:
            dst[k] = v
    return dst
