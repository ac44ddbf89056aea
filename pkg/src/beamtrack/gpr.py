"""Gaussian-process regression of angle time series with an RBF kernel.

Targets are min-max normalized to [0, 1] before fitting; the prior mean
is the (constant) mean of the normalized targets, subtracted before the
solve and added back at prediction.  A fitted model is immutable; refits
produce new model values.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

LENGTH_SCALE_GRID = (0.1, 0.2, 0.5, 1.0, 2.0)  # seconds
DEFAULT_LENGTH_SCALE = 0.5
DEFAULT_NOISE_VARIANCE = 1e-4


@dataclass(frozen=True)
class RebuildPolicy:
    """When to refresh the model: check cadence and the error threshold."""

    t_check: float = 3.0  # s
    sigma_check: float = 0.05 * math.pi  # rad

    def __post_init__(self):
        if not self.t_check > 0 or not self.sigma_check > 0:
            raise ValueError(f"t_check and sigma_check must be > 0: {self}")


@dataclass(frozen=True)
class GprModel:
    train_times: np.ndarray
    train_targets_normalized: np.ndarray
    target_min: float
    target_max: float
    length_scale: float
    noise_variance: float
    degenerate: bool
    # cached solve of (K + noise*I) against the mean-centered normalized targets
    _cho: tuple
    _alpha: np.ndarray
    _norm_mean: float


def minmax_normalize(values):
    """Map values to [0, 1]; a constant series maps to all 0.5."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot normalize an empty sequence")
    vmin, vmax = float(arr.min()), float(arr.max())
    if vmax == vmin:
        return np.full_like(arr, 0.5), vmin, vmax
    return (arr - vmin) / (vmax - vmin), vmin, vmax


def denormalize(normalized, vmin: float, vmax: float):
    return np.asarray(normalized) * (vmax - vmin) + vmin


def rbf_kernel(t1, t2, length_scale: float):
    """exp(-(t1-t2)^2 / (2*length_scale^2))."""
    if not length_scale > 0:
        raise ValueError(f"length_scale must be > 0, got {length_scale}")
    d = np.subtract(t1, t2)
    return np.exp(-(d * d) / (2.0 * length_scale * length_scale))


def _gram(times: np.ndarray, length_scale: float) -> np.ndarray:
    return rbf_kernel(times[:, None], times[None, :], length_scale)


def _fit_fixed(times, norm, vmin, vmax, length_scale, noise_variance) -> GprModel:
    gram = _gram(times, length_scale) + noise_variance * np.eye(len(times))
    try:
        cho = cho_factor(gram, lower=True)
    except np.linalg.LinAlgError as exc:
        raise ValueError(
            f"ill-conditioned kernel matrix ({exc}); increase noise_variance") from None
    norm_mean = float(norm.mean())
    alpha = cho_solve(cho, norm - norm_mean)
    return GprModel(train_times=times, train_targets_normalized=norm,
                    target_min=vmin, target_max=vmax, length_scale=length_scale,
                    noise_variance=noise_variance, degenerate=(vmax == vmin),
                    _cho=cho, _alpha=alpha, _norm_mean=norm_mean)


def log_marginal_likelihood(model: GprModel) -> float:
    y = model.train_targets_normalized - model._norm_mean
    n = len(y)
    log_det = 2.0 * float(np.sum(np.log(np.diag(model._cho[0]))))
    return -0.5 * float(y @ model._alpha) - 0.5 * log_det - 0.5 * n * math.log(2.0 * math.pi)


def fit(times, angles, length_scale: float | None = DEFAULT_LENGTH_SCALE,
        noise_variance: float = DEFAULT_NOISE_VARIANCE) -> GprModel:
    """Fit one angle channel over strictly increasing times.

    length_scale=None selects the scale from LENGTH_SCALE_GRID by log
    marginal likelihood; the chosen value is recorded on the model.
    """
    times = np.asarray(times, dtype=float)
    angles = np.asarray(angles, dtype=float)
    if times.ndim != 1 or times.shape != angles.shape:
        raise ValueError(f"times and angles must be matching 1-d arrays")
    if len(times) < 2:
        raise ValueError(f"need at least 2 samples, got {len(times)}")
    if np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    if noise_variance < 0:
        raise ValueError(f"noise_variance must be >= 0, got {noise_variance}")
    norm, vmin, vmax = minmax_normalize(angles)
    if length_scale is not None:
        return _fit_fixed(times, norm, vmin, vmax, length_scale, noise_variance)
    best = None
    for ls in LENGTH_SCALE_GRID:
        model = _fit_fixed(times, norm, vmin, vmax, ls, noise_variance)
        lml = log_marginal_likelihood(model)
        if best is None or lml > best[0]:
            best = (lml, model)
    return best[1]


def predict(model: GprModel, t_star: float):
    """Posterior mean (rad) and variance (rad^2) at a query time."""
    k_star = rbf_kernel(model.train_times, t_star, model.length_scale)
    mu_norm = float(k_star @ model._alpha) + model._norm_mean
    scale = model.target_max - model.target_min
    mean = mu_norm * scale + model.target_min
    var_norm = 1.0 - float(k_star @ cho_solve(model._cho, k_star))
    variance = max(var_norm, 0.0) * scale * scale
    return mean, variance


def should_rebuild(predicted: float, actual: float, policy: RebuildPolicy) -> bool:
    """True when the wrapped prediction error strictly exceeds sigma_check."""
    err = math.remainder(predicted - actual, 2.0 * math.pi)
    return abs(err) > policy.sigma_check
