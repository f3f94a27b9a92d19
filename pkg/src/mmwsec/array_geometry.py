"""Uniform linear array geometry: steering phases, response vectors, weights.

Angles are accepted in degrees everywhere and converted to radians
internally.  Antennas are indexed n = 0..N-1 and the phase reference is
the array center, so elements n and N-1-n carry opposite phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayConfig:
    """Transmit array geometry.

    Attributes
    ----------
    n_antennas : int
        Number of elements N, at least 2.
    spacing_over_wavelength : float
        Element spacing d/lambda; default half wavelength.
    """

    n_antennas: int
    spacing_over_wavelength: float = 0.5

    def __post_init__(self):
        if self.n_antennas < 2:
            raise ValueError(f"n_antennas must be >= 2, got {self.n_antennas}")
        if self.spacing_over_wavelength <= 0:
            raise ValueError(
                f"spacing_over_wavelength must be > 0, got {self.spacing_over_wavelength}"
            )


def steering_phase(n, cfg: ArrayConfig, theta_deg):
    """Phase shift (radians) of antenna n when steering toward theta_deg.

    Returns ((N-1)/2 - n) * 2*pi * (d/lambda) * cos(theta).  `n` may be an
    integer or an index array.
    """
    n = np.asarray(n)
    if np.any(n < 0) or np.any(n >= cfg.n_antennas):
        raise ValueError(f"antenna index out of range 0..{cfg.n_antennas - 1}")
    centered = (cfg.n_antennas - 1) / 2.0 - n
    return centered * 2.0 * np.pi * cfg.spacing_over_wavelength * np.cos(np.deg2rad(theta_deg))


def steering_phases(cfg: ArrayConfig, theta_deg):
    """All N steering phases toward theta_deg as a float vector."""
    return steering_phase(np.arange(cfg.n_antennas), cfg, theta_deg)


def array_response(cfg: ArrayConfig, theta_deg) -> np.ndarray:
    """Unit-norm array response vector a(theta), entries (1/sqrt(N)) e^{j phase}."""
    return np.exp(1j * steering_phases(cfg, theta_deg)) / np.sqrt(cfg.n_antennas)


def steered_weights(cfg: ArrayConfig, theta_deg) -> np.ndarray:
    """Phase-only beamforming weights aligned with theta_deg.

    Each entry has magnitude 1/sqrt(N), so a(theta)^H w = 1 exactly.
    """
    return np.exp(1j * steering_phases(cfg, theta_deg)) / np.sqrt(cfg.n_antennas)


def beam_coupling(cfg: ArrayConfig, theta_obs_deg, weights: np.ndarray) -> complex:
    """Observed complex pattern value a(theta_obs)^H w for arbitrary weights."""
    return complex(np.vdot(array_response(cfg, theta_obs_deg), weights))
