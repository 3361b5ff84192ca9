import math

import numpy as np
import pytest

from loamsim import (
    ChannelState,
    draw_complex_noise,
    effective_min_distance,
    gen_pam,
    gen_psk,
    observe,
    snr_db_to_sigma2,
    spacing_strong,
    transformed_magnitude,
)


def test_transformed_magnitude_reduces_to_reference():
    assert transformed_magnitude(0.0, 1.5 - 0.5j, 3 + 4j) == pytest.approx(5.0)


def test_transformed_magnitude_real_line():
    assert transformed_magnitude(1.0, 1.0, 2.0) == pytest.approx(3.0)


def test_transformed_magnitude_offset_level():
    # direct evaluation of |h*x + b| for an interior PAM-like level
    assert transformed_magnitude(1.3416, 1.0, 2.0) == pytest.approx(3.3416)


def test_transformed_magnitude_rejects_non_finite():
    with pytest.raises(ValueError):
        transformed_magnitude(float("nan"), 1.0, 0.0)
    with pytest.raises(ValueError):
        transformed_magnitude(1.0, complex(float("inf"), 0), 0.0)


def test_observe_zero_noise_matches_transformed_magnitude():
    rng = np.random.default_rng(1)
    state = ChannelState(h=0.7 - 0.2j, b=1.1 + 0.3j, power=1.0, order=4)
    for _ in range(50):
        x = complex(rng.normal(), rng.normal())
        assert observe(x, state, 0.0) == pytest.approx(
            transformed_magnitude(x, state.h, state.b)
        )


def test_observe_pure_noise():
    state = ChannelState(h=1.0, b=0.0, power=1.0, order=2)
    assert observe(0.0, state, 3 - 4j) == pytest.approx(5.0)


def test_observe_collinear_noise():
    state = ChannelState(h=1.0, b=2.0, power=1.0, order=2)
    assert observe(1.0, state, -0.1 + 0j) == pytest.approx(2.9)


def test_draw_complex_noise_zero_variance():
    rng = np.random.default_rng(0)
    assert draw_complex_noise(rng, 0.0) == 0j


def test_draw_complex_noise_rejects_negative_variance():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        draw_complex_noise(rng, -1e-6)


def test_draw_complex_noise_statistics():
    rng = np.random.default_rng(1234)
    sigma2 = 0.49
    n = 1_000_000
    draws = np.fromiter(
        (draw_complex_noise(rng, sigma2) for _ in range(n)), dtype=complex, count=n
    )
    assert isinstance(draw_complex_noise(rng, sigma2), complex)
    assert abs(draws.mean()) < 5e-3 * math.sqrt(sigma2)
    assert np.var(draws.real) == pytest.approx(sigma2 / 2.0, rel=0.01)
    assert np.var(draws.imag) == pytest.approx(sigma2 / 2.0, rel=0.01)


@pytest.mark.parametrize(
    "snr_db,h,expected",
    [(0.0, 1.0, 1.0), (10.0, 1.0, 0.1), (0.0, 2.0, 4.0)],
)
def test_snr_db_to_sigma2(snr_db, h, expected):
    state = ChannelState(h=h, b=0.0, power=1.0, order=2)
    assert snr_db_to_sigma2(snr_db, state) == pytest.approx(expected)


def test_effective_min_distance_psk_collapses():
    rng = np.random.default_rng(6)
    points = gen_psk(1.0, 4).points
    for _ in range(20):
        h = complex(rng.normal(), rng.normal())
        assert effective_min_distance(points, h, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_effective_min_distance_strong_design():
    from loamsim import design_loam

    out = design_loam(ChannelState(h=1.0, b=2.0, power=1.0, order=4))
    d = effective_min_distance(out.points, 1.0, 2.0)
    assert d == pytest.approx(math.sqrt(12.0 / 15.0), rel=1e-12)


def test_effective_min_distance_needs_two_points():
    with pytest.raises(ValueError):
        effective_min_distance([1 + 0j], 1.0, 0.0)


def test_pam_projection_asymptotes():
    """Reference far off-phase kills PAM's gaps; co-phased preserves them."""
    power = 1.0
    t = 1e3 * math.sqrt(power)
    pam = gen_pam(power, 4).points
    d = spacing_strong(power, 4)
    # orthogonal reference: +/- levels fold together
    assert effective_min_distance(pam, 1.0, 1j * t) / t < 1e-2
    # co-phased reference: gaps approach the native spacing
    assert effective_min_distance(pam, 1.0, t) == pytest.approx(d, rel=1e-2)


def test_phase_shift_invariance():
    """|h*x + b| is unchanged under (x, h, b) -> (x e^{j phi}, h e^{-j phi}, b)."""
    rng = np.random.default_rng(3)
    for _ in range(200):
        x = complex(rng.normal(), rng.normal())
        h = complex(rng.normal(), rng.normal())
        b = complex(rng.normal(), rng.normal())
        phi = rng.uniform(0, 2 * math.pi)
        r0 = transformed_magnitude(x, h, b)
        r1 = transformed_magnitude(x * np.exp(1j * phi), h * np.exp(-1j * phi), b)
        assert r1 == pytest.approx(r0, rel=1e-12, abs=1e-12)


def test_channel_state_validation():
    with pytest.raises(ValueError):
        ChannelState(h=0.0, b=0.0, power=1.0, order=2)
    with pytest.raises(ValueError):
        ChannelState(h=1.0, b=0.0, power=0.0, order=2)
    with pytest.raises(ValueError):
        ChannelState(h=1.0, b=0.0, power=1.0, order=1)
    with pytest.raises(ValueError):
        ChannelState(h=1.0, b=0.0, power=1.0, order=2, sigma2=-0.1)
    with pytest.raises(ValueError):
        ChannelState(h=complex(float("nan"), 0), b=0.0, power=1.0, order=2)
