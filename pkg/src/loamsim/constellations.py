"""Constellation generators: the adaptive LOAM designer plus PAM/QAM/PSK baselines.

LOAM places all points on the line through the origin and the null point
c = -b/h (the transmit value that would zero the received amplitude), spacing
the received magnitudes |h*x + b| evenly. Two regimes emerge from the power
budget:

* strong reference (|b|^2 >= 3*P*(M-1)*|h|^2/(M+1)): points centered on the
  origin with spacing sqrt(12P/(M^2-1)), all on one side of c;
* weak reference: the first point anchors at c (received amplitude zero) and
  the rest walk back toward the origin and out the far side, which costs the
  least power for a given spacing and therefore allows the widest spacing.

With b = 0 the design degenerates to unipolar equally spaced amplitudes
starting at zero.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelState

__all__ = [
    "Regime",
    "Constellation",
    "DesignOutcome",
    "InfeasibleDesignError",
    "classify_regime",
    "strong_reference_threshold",
    "spacing_strong",
    "spacing_anchor",
    "spacing_weak",
    "design_loam",
    "gen_pam",
    "gen_psk",
    "gen_qam",
    "mean_power",
    "design_to_json",
    "constellation_to_json",
]

# |b| below this fraction of sqrt(P)*|h| counts as "no reference at all".
_LO_FREE_RTOL = 1e-12
# Slack on the strong/weak boundary so that |b| = sqrt(threshold) computed in
# floating point still classifies as strong (boundary equality is strong).
_BOUNDARY_RTOL = 1e-12


class InfeasibleDesignError(ValueError):
    """No constellation satisfies the power budget for the requested geometry."""


class Regime(enum.Enum):
    """Operating regime of the adaptive design."""

    STRONG_REFERENCE = "StrongReference"
    WEAK_REFERENCE = "WeakReference"
    LO_FREE = "LoFree"


@dataclass
class Constellation:
    """An ordered symbol alphabet with its scheme label."""

    points: np.ndarray
    scheme: str
    order: int

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)
        if self.points.size != self.order:
            raise ValueError("points length must equal order")


@dataclass
class DesignOutcome:
    """A designed constellation plus its geometry summary.

    magnitudes[i] is |h*points[i] + b|; indices are ordered so magnitudes
    strictly increase.
    """

    constellation: Constellation
    regime: Regime
    ray_phase: float
    spacing: float
    magnitudes: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def points(self) -> np.ndarray:
        return self.constellation.points


def mean_power(points) -> float:
    """Average squared modulus (1/M) * sum |x_i|^2."""
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        raise ValueError("need at least 1 point")
    return float(np.mean(np.abs(pts) ** 2))


def strong_reference_threshold(power: float, order: int, h_mag: float) -> float:
    """Value of |b|^2 at which the centered design first fits one side of c."""
    return 3.0 * power * (order - 1) * h_mag**2 / (order + 1)


def classify_regime(state: ChannelState) -> Regime:
    """Classify the scenario; boundary equality counts as strong."""
    b_mag = abs(state.b)
    h_mag = abs(state.h)
    if b_mag <= _LO_FREE_RTOL * math.sqrt(state.power) * h_mag:
        return Regime.LO_FREE
    threshold = strong_reference_threshold(state.power, state.order, h_mag)
    if b_mag**2 >= threshold * (1.0 - _BOUNDARY_RTOL):
        return Regime.STRONG_REFERENCE
    return Regime.WEAK_REFERENCE


def spacing_strong(power: float, order: int) -> float:
    """Spacing of the origin-centered design: sqrt(12P/(M^2-1))."""
    if power <= 0:
        raise ValueError("power must be positive")
    if order < 2:
        raise ValueError("order must be >= 2")
    return math.sqrt(12.0 * power / (order**2 - 1))


def _anchored_quadratic(order: int):
    # (1/M) sum (c +- i*d)^2 = P  ->  A*d^2 +- B*d + (c^2 - P) = 0
    return (order - 1) * (2 * order - 1) / 6.0


def spacing_anchor(c_mag: float, power: float, order: int) -> float:
    """Positive root of the outward anchored power equation.

    Solves (1/M) * sum_{i=0}^{M-1} (c_mag + i*d)^2 = P for d > 0: the spacing
    of a design anchored at distance c_mag from the origin and extending away
    from it, saturating the power budget.
    """
    if power <= 0:
        raise ValueError("power must be positive")
    if order < 2:
        raise ValueError("order must be >= 2")
    c_mag = float(c_mag)
    if c_mag < 0:
        raise ValueError("c_mag must be >= 0")
    a = _anchored_quadratic(order)
    lin = c_mag * (order - 1)
    disc = lin**2 - 4.0 * a * (c_mag**2 - power)
    if disc < 0:
        raise InfeasibleDesignError(
            f"no positive spacing for anchor {c_mag} under power {power}"
        )
    d = (-lin + math.sqrt(disc)) / (2.0 * a)
    if d <= 0:
        raise InfeasibleDesignError(
            f"no positive spacing for anchor {c_mag} under power {power}"
        )
    return d


def spacing_weak(c_mag: float, power: float, order: int) -> float:
    """Positive root of the inward anchored power equation.

    Solves (1/M) * sum_{i=0}^{M-1} (c_mag - i*d)^2 = P for the largest d > 0:
    the spacing of a design anchored at distance c_mag from the origin and
    extending back toward it (and past it). Walking inward costs less power
    than walking outward, so this root is never smaller than spacing_anchor
    and the two coincide at c_mag = 0.
    """
    if power <= 0:
        raise ValueError("power must be positive")
    if order < 2:
        raise ValueError("order must be >= 2")
    c_mag = float(c_mag)
    if c_mag < 0:
        raise ValueError("c_mag must be >= 0")
    a = _anchored_quadratic(order)
    lin = c_mag * (order - 1)
    disc = lin**2 - 4.0 * a * (c_mag**2 - power)
    if disc < 0:
        raise InfeasibleDesignError(
            f"no feasible spacing for anchor {c_mag} under power {power}"
        )
    d = (lin + math.sqrt(disc)) / (2.0 * a)
    if d <= 0:
        raise InfeasibleDesignError(
            f"no positive spacing for anchor {c_mag} under power {power}"
        )
    return d


def design_loam(state: ChannelState) -> DesignOutcome:
    """Design the max-min-magnitude-gap constellation for one scenario.

    Points are indexed so that received magnitudes strictly increase; the
    power budget is met with equality in every regime.
    """
    regime = classify_regime(state)
    order = state.order
    power = state.power
    idx = np.arange(order, dtype=float)

    if regime is Regime.LO_FREE:
        # Unipolar ramp from zero along the positive real axis (any phase is
        # equivalent by rotation; 0 is the convention).
        ray_phase = 0.0
        d = spacing_anchor(0.0, power, order)
        rotated = idx * d
    else:
        null_point = -state.b / state.h
        ray_phase = cmath.phase(null_point)
        c_mag = abs(null_point)
        if regime is Regime.STRONG_REFERENCE:
            d = spacing_strong(power, order)
            # Centered on the origin, enumerated from the c side outward so
            # that magnitudes |h*x + b| ascend with the index.
            rotated = (order - 1) * d / 2.0 - idx * d
        else:
            d = spacing_weak(c_mag, power, order)
            # First point sits exactly on the null point (received amplitude
            # zero); the rest walk inward through the origin.
            rotated = c_mag - idx * d

    points = np.exp(1j * ray_phase) * rotated
    magnitudes = np.abs(state.h * points + state.b)
    constellation = Constellation(points=points, scheme="LOAM", order=order)
    return DesignOutcome(
        constellation=constellation,
        regime=regime,
        ray_phase=ray_phase,
        spacing=d,
        magnitudes=magnitudes,
    )


def gen_pam(power: float, order: int) -> Constellation:
    """Real-axis PAM with standard spacing sqrt(12P/(M^2-1)); mean power P."""
    d = spacing_strong(power, order)
    levels = -(order - 1) * d / 2.0 + np.arange(order) * d
    return Constellation(points=levels.astype(complex), scheme="PAM", order=order)


def gen_psk(power: float, order: int) -> Constellation:
    """Equal-energy phase shift keying: sqrt(P) * exp(2j*pi*k/M)."""
    if power <= 0:
        raise ValueError("power must be positive")
    if order < 2:
        raise ValueError("order must be >= 2")
    k = np.arange(order)
    points = math.sqrt(power) * np.exp(2j * math.pi * k / order)
    return Constellation(points=points, scheme="PSK", order=order)


def gen_qam(power: float, order: int) -> Constellation:
    """Square QAM on an odd-integer grid, scaled so mean power equals P."""
    if power <= 0:
        raise ValueError("power must be positive")
    root = math.isqrt(order)
    if root * root != order or order < 4:
        raise ValueError(f"QAM order must be a perfect square >= 4, got {order}")
    levels = 2.0 * np.arange(root) - (root - 1)
    grid = levels[:, None] + 1j * levels[None, :]
    points = grid.ravel()
    points = points * math.sqrt(power / mean_power(points))
    return Constellation(points=points, scheme="QAM", order=order)


# --------------------------------------------------------------------------
# JSON export
# --------------------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return "null"
    return format(float(x), ".17g")


def _json_document(scheme, order, regime, ray_phase, spacing, points, magnitudes):
    pts = ", ".join(f"[{_fmt(p.real)}, {_fmt(p.imag)}]" for p in points)
    mags = ", ".join(_fmt(m) for m in magnitudes)
    regime_str = "null" if regime is None else f'"{regime.value}"'
    return (
        "{\n"
        f'  "scheme": "{scheme}",\n'
        f'  "order": {int(order)},\n'
        f'  "regime": {regime_str},\n'
        f'  "ray_phase": {_fmt(ray_phase)},\n'
        f'  "spacing": {_fmt(spacing)},\n'
        f'  "points": [{pts}],\n'
        f'  "magnitudes": [{mags}]\n'
        "}\n"
    )


def design_to_json(outcome: DesignOutcome) -> str:
    """Serialize a DesignOutcome; doubles carry 17 significant digits."""
    return _json_document(
        outcome.constellation.scheme,
        outcome.constellation.order,
        outcome.regime,
        outcome.ray_phase,
        outcome.spacing,
        outcome.points,
        outcome.magnitudes,
    )


def constellation_to_json(constellation: Constellation, h, b) -> str:
    """Serialize a baseline constellation with its magnitudes under (h, b)."""
    magnitudes = np.abs(complex(h) * constellation.points + complex(b))
    return _json_document(
        constellation.scheme,
        constellation.order,
        None,
        None,
        None,
        constellation.points,
        magnitudes,
    )
