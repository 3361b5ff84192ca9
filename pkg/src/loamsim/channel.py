"""Scenario state and the amplitude-observation model of an envelope receiver.

The receiver output is z = |h*x + b + n|: the transmitted symbol x scaled by
the complex channel gain h, offset by the known receiver-side reference b,
plus circular complex Gaussian noise n. Phase is lost at detection, so
everything downstream (constellation design, detection, SER simulation) works
on the transformed magnitudes |h*x + b|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelState",
    "transformed_magnitude",
    "observe",
    "draw_complex_noise",
    "snr_db_to_sigma2",
    "effective_min_distance",
]


def _as_finite_complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return z


@dataclass(frozen=True)
class ChannelState:
    """One design/detection scenario.

    Attributes:
        h: complex channel gain (must be nonzero).
        b: complex reference signal added at the receiver.
        power: average transmit power budget (> 0).
        order: alphabet size M (>= 2).
        sigma2: total variance of the complex noise (>= 0).
    """

    h: complex
    b: complex
    power: float
    order: int
    sigma2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "h", _as_finite_complex(self.h, "h"))
        object.__setattr__(self, "b", _as_finite_complex(self.b, "b"))
        object.__setattr__(self, "power", float(self.power))
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        if abs(self.h) == 0.0:
            raise ValueError("channel gain h must be nonzero")
        if not math.isfinite(self.power) or self.power <= 0.0:
            raise ValueError(f"power must be positive, got {self.power}")
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")
        if not math.isfinite(self.sigma2) or self.sigma2 < 0.0:
            raise ValueError(f"sigma2 must be >= 0, got {self.sigma2}")


def transformed_magnitude(x, h, b) -> float:
    """Noiseless receiver amplitude |h*x + b| for a constellation point x."""
    x = _as_finite_complex(x, "x")
    h = _as_finite_complex(h, "h")
    b = _as_finite_complex(b, "b")
    return abs(h * x + b)


def observe(x, state: ChannelState, noise) -> float:
    """Detected amplitude |h*x + b + noise| for one noise realization.

    The caller draws the noise sample (see draw_complex_noise); this function
    itself is deterministic.
    """
    x = _as_finite_complex(x, "x")
    noise = _as_finite_complex(noise, "noise")
    return abs(state.h * x + state.b + noise)


def draw_complex_noise(rng: np.random.Generator, sigma2: float) -> complex:
    """Draw one circular complex Gaussian sample with total variance sigma2.

    Real and imaginary parts are independent zero-mean Gaussians with
    variance sigma2/2 each.
    """
    sigma2 = float(sigma2)
    if not math.isfinite(sigma2) or sigma2 < 0.0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    scale = math.sqrt(sigma2 / 2.0)
    return complex(rng.normal(0.0, scale), rng.normal(0.0, scale))


def snr_db_to_sigma2(snr_db: float, state: ChannelState) -> float:
    """Noise variance for a target SNR, with SNR defined as P*|h|^2 / sigma2.

    The reference signal b is receiver-side and does not count as signal
    power.
    """
    return state.power * abs(state.h) ** 2 / 10.0 ** (float(snr_db) / 10.0)


def effective_min_distance(points, h, b) -> float:
    """Minimum pairwise gap between the transformed magnitudes of `points`."""
    pts = np.asarray(points, dtype=complex)
    if pts.size < 2:
        raise ValueError("need at least 2 points")
    h = _as_finite_complex(h, "h")
    b = _as_finite_complex(b, "b")
    if not np.all(np.isfinite(pts.view(float))):
        raise ValueError("points must be finite")
    radii = np.sort(np.abs(h * pts + b))
    return float(np.min(np.diff(radii)))
