"""Brute-force verification searches, independent of the closed-form designer.

Two searches back the designer's claims:

* oracle_ray_search optimizes M real offsets along the line through the
  origin and the null point c = -b/h (multi-start cyclic coordinate ascent
  with grid line searches and a global rescale move), maximizing the minimum
  pairwise gap between received magnitudes under the power budget.
* oracle_free_search_m2 drops the co-linearity assumption entirely and
  searches both points of an M = 2 alphabet over the full complex plane
  (coarse grid plus coordinate refinement), which is tractable only at M = 2.

Neither search consults the closed forms it is used to certify.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .channel import ChannelState
from .constellations import mean_power

__all__ = [
    "power_feasible",
    "RaySearchResult",
    "oracle_ray_search",
    "FreeSearchResult",
    "oracle_free_search_m2",
]

_POWER_SLACK = 1.0 + 1e-9


def power_feasible(points, power: float) -> bool:
    """True when mean power does not exceed the budget (tiny slack allowed)."""
    return mean_power(points) <= power * _POWER_SLACK


class RaySearchResult(NamedTuple):
    min_distance: float
    offsets: np.ndarray


class FreeSearchResult(NamedTuple):
    min_distance: float
    x0: complex
    x1: complex


def _min_gap(values: np.ndarray) -> float:
    v = np.sort(values)
    return float(np.min(np.diff(v)))


def _radii_gap(offsets: np.ndarray, c_mag: float) -> float:
    return _min_gap(np.abs(offsets - c_mag))


def _saturate_affine(base: np.ndarray, direction: np.ndarray, power: float):
    """Largest g >= 0 with mean((base + g*direction)^2) == power, or None.

    Start patterns for the ray search are affine in their scale, so the
    power-saturating scale is the larger root of a quadratic.
    """
    a = float(np.mean(direction**2))
    b = 2.0 * float(np.mean(base * direction))
    c = float(np.mean(base**2)) - power
    if a <= 0:
        return None
    disc = b * b - 4.0 * a * c
    if disc < 0:
        return None
    g = (-b + math.sqrt(disc)) / (2.0 * a)
    if g <= 0:
        return None
    return base + g * direction


def _line_search(offsets, k, c_mag, power, bound, grid_points):
    """Best value for offsets[k] with the others fixed; returns (gap, t)."""
    others = np.delete(offsets, k)
    other_radii = np.abs(others - c_mag)
    base_gap = _min_gap(other_radii) if other_radii.size >= 2 else math.inf
    slack = len(offsets) * power - float(np.sum(others**2))
    t_max = min(bound, math.sqrt(max(slack, 0.0)))

    lo, hi = -t_max, t_max
    best_gap, best_t = -math.inf, offsets[k]
    for _ in range(4):  # coarse grid then three zooms
        grid = np.linspace(lo, hi, grid_points)
        cand = np.abs(grid - c_mag)
        gap_to_others = np.min(np.abs(cand[:, None] - other_radii[None, :]), axis=1)
        f = np.minimum(gap_to_others, base_gap)
        j = int(np.argmax(f))
        if f[j] > best_gap:
            best_gap, best_t = float(f[j]), float(grid[j])
        step = (hi - lo) / (grid_points - 1)
        lo = max(-t_max, grid[j] - 2 * step)
        hi = min(t_max, grid[j] + 2 * step)
        grid_points = 65
    return best_gap, best_t


def _rescale_search(offsets, c_mag, power):
    """Best uniform rescale t*offsets within the power budget; (gap, scaled)."""
    pw = float(np.mean(offsets**2))
    if pw <= 0:
        return -math.inf, offsets
    t_hi = math.sqrt(power / pw)
    lo, hi = 0.25, t_hi
    best_gap, best_u = -math.inf, offsets
    for _ in range(3):
        scales = np.linspace(lo, hi, 257)
        radii = np.abs(scales[:, None] * offsets[None, :] - c_mag)
        radii.sort(axis=1)
        f = np.min(np.diff(radii, axis=1), axis=1)
        j = int(np.argmax(f))
        if f[j] > best_gap:
            best_gap, best_u = float(f[j]), scales[j] * offsets
        step = (hi - lo) / 256
        lo = max(0.0, scales[j] - 2 * step)
        hi = min(t_hi, scales[j] + 2 * step)
    return best_gap, best_u


def oracle_ray_search(
    state: ChannelState,
    steps: int = 1500,
    seed: int = 0,
    random_starts: int = 4,
) -> RaySearchResult:
    """Maximize the min pairwise magnitude gap over offsets along the ray.

    Offsets live in the rotated frame where the null point sits at +|c| on
    the real axis; they may take either sign within [-2*sqrt(M*P),
    2*sqrt(M*P)]. Deterministic for a fixed seed.

    Returns the best found (min_distance in receive units, offsets).
    """
    if steps < 10:
        raise ValueError("steps must be >= 10")
    order, power = state.order, state.power
    h_mag = abs(state.h)
    c_mag = abs(state.b) / h_mag
    bound = 2.0 * math.sqrt(order * power)
    rng = np.random.default_rng(seed)
    idx = np.arange(order, dtype=float)

    anchored = np.full(order, c_mag)
    zero = np.zeros(order)
    patterns = [
        (anchored, -idx),  # anchored at c, walking inward
        (zero, idx - (order - 1) / 2.0),  # centered on the origin
        (anchored, idx),  # anchored at c, walking outward
        (zero, idx),  # ramp from the origin
    ]
    starts = []
    for base, direction in patterns:
        u = _saturate_affine(base, direction, power)
        if u is not None:
            starts.append(u)
    for _ in range(random_starts):
        u = rng.uniform(-bound, bound, order)
        pw = np.mean(u**2)
        if pw > power:
            u = u * math.sqrt(power / pw)
        starts.append(u)

    best_gap, best_u = -math.inf, starts[0]
    for u in starts:
        u = u.astype(float).copy()
        gap = _radii_gap(u, c_mag)
        for _ in range(60):
            improved = False
            for k in range(order):
                cand_gap, cand_t = _line_search(u, k, c_mag, power, bound, steps)
                if cand_gap > gap + 1e-14:
                    u[k] = cand_t
                    gap = cand_gap
                    improved = True
            s_gap, s_u = _rescale_search(u, c_mag, power)
            if s_gap > gap + 1e-14:
                u, gap = s_u, s_gap
                improved = True
            if not improved:
                break
        if gap > best_gap:
            best_gap, best_u = gap, u
    return RaySearchResult(min_distance=h_mag * best_gap, offsets=best_u)


def oracle_free_search_m2(h, b, power: float, grid: int = 60) -> FreeSearchResult:
    """Unconstrained two-point search over the complex plane.

    Coarse exhaustive grid over the disk of radius sqrt(2P) for both points,
    followed by coordinate refinement of the four real coordinates. Makes no
    co-linearity assumption.
    """
    if grid < 50:
        raise ValueError("grid must be >= 50 points per real dimension")
    h = complex(h)
    b = complex(b)
    power = float(power)
    radius = math.sqrt(2.0 * power)

    axis = np.linspace(-radius, radius, grid)
    pts = (axis[:, None] + 1j * axis[None, :]).ravel()
    pts = pts[np.abs(pts) <= radius]
    radii = np.abs(h * pts + b)
    sq = np.abs(pts) ** 2

    feasible = (sq[:, None] + sq[None, :]) <= 2.0 * power * _POWER_SLACK
    gaps = np.abs(radii[:, None] - radii[None, :])
    gaps[~feasible] = -1.0
    i, j = np.unravel_index(np.argmax(gaps), gaps.shape)

    # Refine in polar coordinates, one coordinate at a time. The power
    # constraint separates over the two moduli, so every line search has an
    # exact feasible bracket, and the angular searches are unconstrained.
    rho = np.array([abs(pts[i]), abs(pts[j])])
    theta = np.array([np.angle(pts[i]), np.angle(pts[j])])

    def pair_points(r, t):
        return r * np.exp(1j * t)

    def gap_of(r, t):
        z = np.abs(h * pair_points(r, t) + b)
        return abs(float(z[0]) - float(z[1]))

    best = gap_of(rho, theta)
    for _ in range(60):
        improved = False
        for which in (0, 1):
            r_fixed = abs(h * rho[1 - which] * np.exp(1j * theta[1 - which]) + b)

            # angle sweep (full circle, then zoomed)
            center, half, n_pts = float(theta[which]), math.pi, 1025
            for _ in range(4):
                angles = np.linspace(center - half, center + half, n_pts)
                z = np.abs(h * rho[which] * np.exp(1j * angles) + b)
                f = np.abs(z - r_fixed)
                m = int(np.argmax(f))
                if f[m] > best + 1e-14:
                    best = float(f[m])
                    theta[which] = float(angles[m])
                    improved = True
                center = float(angles[m])
                half = 4.0 * half / (n_pts - 1)
                n_pts = 65

            # radius sweep within the power budget
            r_cap = math.sqrt(max(2.0 * power - rho[1 - which] ** 2, 0.0))
            lo, hi, n_pts = 0.0, r_cap, 1025
            for _ in range(4):
                rads = np.linspace(lo, hi, n_pts)
                z = np.abs(h * rads * np.exp(1j * theta[which]) + b)
                f = np.abs(z - r_fixed)
                m = int(np.argmax(f))
                if f[m] > best + 1e-14:
                    best = float(f[m])
                    rho[which] = float(rads[m])
                    improved = True
                step = (hi - lo) / (n_pts - 1)
                lo = max(0.0, rads[m] - 2 * step)
                hi = min(r_cap, rads[m] + 2 * step)
                n_pts = 65

        # joint radius split on the saturated power sphere; per-point moves
        # alone stall when budget should shift between the points
        r_tot = math.sqrt(2.0 * power)
        lo, hi, n_pts = 0.0, math.pi / 2.0, 1025
        for _ in range(4):
            phis = np.linspace(lo, hi, n_pts)
            z0 = np.abs(h * (r_tot * np.cos(phis)) * np.exp(1j * theta[0]) + b)
            z1 = np.abs(h * (r_tot * np.sin(phis)) * np.exp(1j * theta[1]) + b)
            f = np.abs(z0 - z1)
            m = int(np.argmax(f))
            if f[m] > best + 1e-14:
                best = float(f[m])
                rho[0] = r_tot * math.cos(float(phis[m]))
                rho[1] = r_tot * math.sin(float(phis[m]))
                improved = True
            step = (hi - lo) / (n_pts - 1)
            lo = max(0.0, phis[m] - 2 * step)
            hi = min(math.pi / 2.0, phis[m] + 2 * step)
            n_pts = 65
        if not improved:
            break

    x0, x1 = pair_points(rho, theta)
    return FreeSearchResult(min_distance=best, x0=complex(x0), x1=complex(x1))
