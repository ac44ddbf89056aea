"""Complex array-response math for ULA and UPA antenna geometries.

Steering vectors hold unit-modulus phasors; beam vectors are the matched
transmit weights scaled by 1/sqrt(N).  The inner-product convention used
throughout is <w, a> = sum_m w_m * conj(a_m), so a beam vector matched to
a steering vector attains |<w, a>| = sqrt(N).
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayConfig:
    """Antenna-array geometry and the per-element phase scale.

    phase_constant multiplies the direction terms in every exponent; the
    default pi corresponds to half-wavelength element spacing.  Setting it
    to 1 recovers the bare-exponent convention.  hpbw_coefficient is the
    beamwidth factor (0.886 for the -3 dB width of a uniform line source).
    """

    n_ula: int = 16
    n_x: int = 16
    n_y: int = 16
    phase_constant: float = float(np.pi)
    hpbw_coefficient: float = 0.886

    def __post_init__(self):
        if self.n_ula < 1:
            raise ValueError(f"n_ula must be >= 1, got {self.n_ula}")
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError(f"planar dimensions must be >= 1, got {self.n_x}x{self.n_y}")
        if not self.hpbw_coefficient > 0:
            raise ValueError(f"hpbw_coefficient must be > 0, got {self.hpbw_coefficient}")


@dataclass(frozen=True)
class Hpbw:
    """Half-power beamwidths (radians) in the azimuth and elevation planes."""

    theta_u: float
    theta_v: float


def ula_steering(theta: float, n: int, cfg: ArrayConfig) -> np.ndarray:
    """Line-array response toward angle theta: entry m = exp(-j*c*m*cos(theta))."""
    if n < 1:
        raise ValueError(f"antenna count must be >= 1, got {n}")
    if not np.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta}")
    m = np.arange(n)
    return np.exp(-1j * cfg.phase_constant * m * np.cos(theta))


def ula_beam_vector(theta_hat: float, n: int, cfg: ArrayConfig) -> np.ndarray:
    """Matched line-array precoder: ula_steering phases scaled by 1/sqrt(n)."""
    return ula_steering(theta_hat, n, cfg) / np.sqrt(n)


def _upa_phases(u: float, v: float, cfg: ArrayConfig) -> np.ndarray:
    # Row-major over (m_x, m_y): index m_x * n_y + m_y.
    m_x = np.arange(cfg.n_x)
    m_y = np.arange(cfg.n_y)
    terms = m_x[:, None] * np.cos(v) + m_y[None, :] * np.sin(v)
    return cfg.phase_constant * terms.ravel() * np.sin(u)


def upa_steering(u: float, v: float, cfg: ArrayConfig) -> np.ndarray:
    """Planar-array response: entry (m_x,m_y) = exp(+j*c*(m_x*cos v + m_y*sin v)*sin u)."""
    return np.exp(1j * _upa_phases(u, v, cfg))


def upa_beam_vector(u_hat: float, v_hat: float, cfg: ArrayConfig) -> np.ndarray:
    """Matched planar-array precoder scaled by 1/sqrt(n_x*n_y)."""
    return upa_steering(u_hat, v_hat, cfg) / np.sqrt(cfg.n_x * cfg.n_y)


def hpbw(u: float, v: float, cfg: ArrayConfig) -> Hpbw:
    """Half-power beamwidth of the planar-array beam pointed at (u, v).

    The per-axis line-array widths are 2*coef/n; the pointed-beam widths
    combine them with the direction cosines and divide the azimuth width
    by cos(u), which is singular at |u| = pi/2.
    """
    delta_u = 2.0 * cfg.hpbw_coefficient / cfg.n_x
    delta_v = 2.0 * cfg.hpbw_coefficient / cfg.n_y
    cos_u = np.cos(u)
    if abs(cos_u) < 1e-12:
        raise ValueError(f"singular geometry: |u| = pi/2 (u={u})")
    sin_v, cos_v = np.sin(v), np.cos(v)
    theta_u = 1.0 / (cos_u * np.sqrt(cos_v**2 / delta_u**2 + sin_v**2 / delta_v**2))
    theta_v = 1.0 / np.sqrt(sin_v**2 / delta_u**2 + cos_v**2 / delta_v**2)
    return Hpbw(theta_u=float(abs(theta_u)), theta_v=float(theta_v))


def inner_product(w: np.ndarray, a: np.ndarray) -> complex:
    """<w, a> = sum_m w_m * conj(a_m)."""
    if w.shape != a.shape:
        raise ValueError(f"dimension mismatch: {w.shape} vs {a.shape}")
    return complex(np.vdot(a, w))


def beam_gain(w: np.ndarray, a: np.ndarray, channel: complex, n: int) -> float:
    """Beam gain |sqrt(n) * <w, a> * channel| at the receiver."""
    if len(w) != n or len(a) != n:
        raise ValueError(f"dimension mismatch: expected length {n}, got {len(w)} and {len(a)}")
    return float(abs(np.sqrt(n) * inner_product(w, a) * channel))
