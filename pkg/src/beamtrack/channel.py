"""LoS link budget, received-signal model, and scalar link metrics.

Geometry helpers return angles via two-argument arctangents.  The
received amplitude is noiseless; noise enters the SNR analytically
through the budget's noise power.
"""

import math
from dataclasses import dataclass

import numpy as np

from .arrays import inner_product

LIGHT_SPEED = 2.998e8  # m/s


def dbm_to_watts(p_dbm: float) -> float:
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_watts: float) -> float:
    return 10.0 * math.log10(p_watts) + 30.0


@dataclass(frozen=True)
class LinkBudget:
    """Carrier, fading, and power figures for one LoS link."""

    carrier_frequency: float = 28e9  # Hz
    fading: complex = 1.0 + 0.0j
    tx_power: float = dbm_to_watts(20.0)  # W
    noise_power: float = dbm_to_watts(-100.0)  # W

    def __post_init__(self):
        if not self.carrier_frequency > 0:
            raise ValueError(f"carrier_frequency must be > 0, got {self.carrier_frequency}")
        if not self.tx_power > 0:
            raise ValueError(f"tx_power must be > 0, got {self.tx_power}")
        if not self.noise_power > 0:
            raise ValueError(f"noise_power must be > 0, got {self.noise_power}")


@dataclass(frozen=True)
class PowerModel:
    """Hardware power draws for the energy-efficiency denominator."""

    p_ps: float = 0.040  # W per phase shifter
    p_rf: float = 0.300  # W per RF chain
    n_rf: int = 1
    p_bb: float = 0.200  # W baseband

    def __post_init__(self):
        if min(self.p_ps, self.p_rf, self.p_bb) < 0:
            raise ValueError("power draws must be non-negative")
        if self.n_rf < 1:
            raise ValueError(f"n_rf must be >= 1, got {self.n_rf}")


def path_gain(distance: float, budget: LinkBudget) -> complex:
    """Flat-fading LoS channel scalar c*rho / (4*pi*f_c*d)."""
    if distance <= 0:
        raise ValueError(f"distance must be > 0, got {distance}")
    return LIGHT_SPEED * budget.fading / (4.0 * math.pi * budget.carrier_frequency * distance)


def distance_2d(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def distance_3d(mu, uav, h: float) -> float:
    """Slant distance from a ground point to a platform at altitude h."""
    return math.sqrt((mu[0] - uav[0]) ** 2 + (mu[1] - uav[1]) ** 2 + h * h)


def angle_2d(p, q) -> float:
    """Bearing of q as seen from p, in (-pi, pi]."""
    dy, dx = q[1] - p[1], q[0] - p[0]
    if dx == 0.0 and dy == 0.0:
        raise ValueError(f"undefined angle: coincident points {p}")
    return math.atan2(dy, dx)


def angles_3d(mu, uav, h: float):
    """Azimuth u and elevation v from a ground point toward a platform at altitude h.

    u is the ground-plane bearing of the MU relative to the platform's
    ground projection; v = arctan(horizontal distance / h), zero directly
    underneath.
    """
    if not h > 0:
        raise ValueError(f"altitude must be > 0, got {h}")
    dx, dy = mu[0] - uav[0], mu[1] - uav[1]
    u = math.atan2(dy, dx)
    v = math.atan2(math.hypot(dx, dy), h)
    return u, v


def received_amplitude(w, a: np.ndarray, gain: complex, n: int) -> complex:
    """Noiseless received amplitude for a unit-power symbol.

    Without beamforming (w is None): gain * sum_m conj(a_m); with a beam
    vector: sqrt(n) * gain * <w, a>.
    """
    if len(a) != n:
        raise ValueError(f"dimension mismatch: expected length {n}, got {len(a)}")
    if w is None:
        return complex(gain * np.sum(np.conj(a)))
    if len(w) != n:
        raise ValueError(f"dimension mismatch: expected length {n}, got {len(w)}")
    return complex(np.sqrt(n) * gain * inner_product(w, a))


def snr(amplitude: complex, budget: LinkBudget) -> float:
    """Linear SNR = tx_power * |amplitude|^2 / noise_power."""
    return budget.tx_power * abs(amplitude) ** 2 / budget.noise_power


def snr_to_db(snr_linear: float) -> float:
    return 10.0 * math.log10(snr_linear) if snr_linear > 0 else -math.inf


def rate(snr_linear: float) -> float:
    """Spectral efficiency log2(1 + SNR) in bits/s/Hz."""
    if snr_linear < 0:
        raise ValueError(f"snr must be >= 0, got {snr_linear}")
    return math.log2(1.0 + snr_linear)


def energy_efficiency(rate_value: float, tx_power: float, pm: PowerModel,
                      n_x: int, n_y: int, phase_shifters_active: bool = True) -> float:
    """Rate divided by total consumed power (bits/s/Hz/W).

    The phase-shifter term n_x*n_y*p_ps can be gated off for steps on
    which the beam was not reconfigured.
    """
    denom = tx_power + pm.n_rf * pm.p_rf + pm.p_bb
    if phase_shifters_active:
        denom += n_x * n_y * pm.p_ps
    if not denom > 0:
        raise ValueError(f"power denominator must be > 0, got {denom}")
    return rate_value / denom
