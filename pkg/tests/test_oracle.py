import math

import numpy as np
import pytest

from loamsim import (
    ChannelState,
    design_loam,
    effective_min_distance,
    oracle_free_search_m2,
    oracle_ray_search,
    power_feasible,
    strong_reference_threshold,
)


def test_power_feasible_examples():
    assert power_feasible([-1 + 0j, 1 + 0j], 1.0)
    assert not power_feasible([-1.1 + 0j, 1.1 + 0j], 1.0)
    out = design_loam(ChannelState(h=1.0, b=0.6, power=1.0, order=4))
    assert power_feasible(out.points, 1.0)


def test_ray_search_strong_m2():
    state = ChannelState(h=1.0, b=2.0, power=1.0, order=2)
    result = oracle_ray_search(state, steps=1500)
    assert result.min_distance == pytest.approx(2.0, rel=1e-3)


def test_ray_search_lo_free_m4():
    state = ChannelState(h=1.0, b=0.0, power=1.0, order=4)
    result = oracle_ray_search(state, steps=1500)
    assert result.min_distance == pytest.approx(math.sqrt(6.0 / 21.0), rel=1e-3)


def test_ray_search_weak_m4():
    # certifies the inward-anchored weak design (spacing 0.756121...)
    state = ChannelState(h=1.0, b=0.6, power=1.0, order=4)
    result = oracle_ray_search(state, steps=1500)
    assert result.min_distance == pytest.approx(0.7561214056163709, rel=1e-3)


def test_ray_search_offsets_are_feasible():
    state = ChannelState(h=1.0, b=0.6, power=1.0, order=4)
    result = oracle_ray_search(state, steps=1500)
    assert power_feasible(result.offsets.astype(complex), 1.0)


def test_ray_search_matches_closed_form_random():
    rng = np.random.default_rng(31)
    for regime in ("lofree", "weak", "strong"):
        for k in range(8):
            order = int(rng.choice([2, 4, 8]))
            h = rng.uniform(0.25, 2.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
            threshold = strong_reference_threshold(1.0, order, abs(h))
            if regime == "lofree":
                b = 0j
            elif regime == "weak":
                b = math.sqrt(rng.uniform(0.02, 0.98) * threshold) * np.exp(
                    1j * rng.uniform(0, 2 * math.pi)
                )
            else:
                b = math.sqrt(rng.uniform(1.0, 5.0) * threshold) * np.exp(
                    1j * rng.uniform(0, 2 * math.pi)
                )
            state = ChannelState(h=complex(h), b=complex(b), power=1.0, order=order)
            expected = effective_min_distance(design_loam(state).points, h, b)
            found = oracle_ray_search(state, steps=1500, seed=k).min_distance
            rel = (found - expected) / expected
            assert -1e-2 <= rel <= 1e-3


def test_ray_search_deterministic():
    state = ChannelState(h=0.8 + 0.4j, b=0.5 - 0.2j, power=1.0, order=4)
    a = oracle_ray_search(state, steps=1000, seed=3)
    b = oracle_ray_search(state, steps=1000, seed=3)
    assert a.min_distance == b.min_distance
    assert np.array_equal(a.offsets, b.offsets)


def test_ray_search_rejects_tiny_budget():
    state = ChannelState(h=1.0, b=0.0, power=1.0, order=2)
    with pytest.raises(ValueError):
        oracle_ray_search(state, steps=5)


def test_free_search_collinearity_strong():
    result = oracle_free_search_m2(1.0, 2.0, 1.0, grid=60)
    ray = np.exp(-1j * np.angle(-2.0 / 1.0))
    assert abs((result.x0 * ray).imag) < 0.02
    assert abs((result.x1 * ray).imag) < 0.02
    assert result.min_distance == pytest.approx(2.0, rel=1e-2)


def test_free_search_lo_free():
    result = oracle_free_search_m2(1.0, 0.0, 1.0, grid=60)
    assert result.min_distance == pytest.approx(math.sqrt(2.0), rel=1e-2)


def test_free_search_rotated_strong():
    h = complex(np.exp(1j * math.pi / 3))
    b = 2.0 * complex(np.exp(-1j * math.pi / 6))
    result = oracle_free_search_m2(h, b, 1.0, grid=60)
    assert result.min_distance == pytest.approx(2.0, rel=1e-2)


def test_free_search_never_beats_ray_search():
    rng = np.random.default_rng(32)
    for k in range(10):
        h = rng.uniform(0.25, 2.0) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        threshold = strong_reference_threshold(1.0, 2, abs(h))
        b = math.sqrt(rng.uniform(0.05, 2.0) * threshold) * np.exp(
            1j * rng.uniform(0, 2 * math.pi)
        )
        state = ChannelState(h=complex(h), b=complex(b), power=1.0, order=2)
        free = oracle_free_search_m2(complex(h), complex(b), 1.0, grid=60)
        ray = oracle_ray_search(state, steps=1500, seed=k)
        assert free.min_distance <= ray.min_distance * (1.0 + 1e-2)


def test_free_search_rejects_coarse_grid():
    with pytest.raises(ValueError):
        oracle_free_search_m2(1.0, 1.0, 1.0, grid=10)
