import math

import numpy as np
import pytest

from loamsim import (
    ChannelState,
    build_detector,
    design_loam,
    detect,
    gen_pam,
    gen_psk,
    transformed_magnitude,
)


def _strong_table():
    out = design_loam(ChannelState(h=1.0, b=2.0, power=1.0, order=4))
    return build_detector(out.points, 1.0, 2.0), out


def test_table_of_strong_design():
    table, out = _strong_table()
    assert np.allclose(
        table.magnitudes,
        [0.6583592135001262, 1.5527864045000421, 2.4472135954999579, 3.3416407864998741],
        rtol=1e-9,
    )
    assert np.allclose(table.thresholds, [1.1055728090000841, 2.0, 2.894427190999916], rtol=1e-9)
    assert not table.ambiguous
    # design indices ascend with magnitude, so the sorted slots are identity
    assert np.array_equal(table.symbol_index, np.arange(4))


def test_threshold_midpoint_identity():
    rng = np.random.default_rng(0)
    for _ in range(100):
        pts = rng.normal(size=6) + 1j * rng.normal(size=6)
        table = build_detector(pts, complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()))
        assert np.allclose(
            table.thresholds, (table.magnitudes[:-1] + table.magnitudes[1:]) / 2.0
        )


def test_ambiguity_flag_psk():
    table = build_detector(gen_psk(1.0, 4).points, 1.0, 0.0)
    assert table.ambiguous
    # all symbols collapse onto the lowest index
    assert np.all(table.decision_index == 0)


def test_ambiguity_flag_antipodal():
    table = build_detector(np.array([-1 + 0j, 1 + 0j]), 1.0, 0.0)
    assert table.ambiguous
    assert np.allclose(table.magnitudes, [1.0, 1.0])
    assert np.all(table.decision_index == 0)


def test_pam_folds_pairwise():
    table = build_detector(gen_pam(1.0, 4).points, 1.0, 0.0)
    assert table.ambiguous
    # {+-a} pairs collapse; two distinct receive levels remain usable
    assert set(table.decision_index.tolist()) == {0, 1}


def test_detect_examples():
    table, out = _strong_table()
    assert detect(table, 2.1) == 2  # nearest magnitude is 2.4472
    assert detect(table, 0.0) == 0
    assert detect(table, float(table.thresholds[0])) == 0  # exact tie -> lower


def test_detect_rejects_bad_input():
    table, _ = _strong_table()
    with pytest.raises(ValueError):
        detect(table, -0.1)
    with pytest.raises(ValueError):
        detect(table, float("nan"))


def test_zero_noise_identity():
    rng = np.random.default_rng(4)
    for _ in range(100):
        order = int(rng.integers(2, 9))
        pts = rng.normal(size=order) + 1j * rng.normal(size=order)
        h = complex(rng.normal(), rng.normal()) or 1.0
        b = complex(rng.normal(), rng.normal())
        table = build_detector(pts, h, b)
        if table.ambiguous:
            continue
        for i in range(order):
            z = transformed_magnitude(pts[i], h, b)
            assert detect(table, z) == i


def test_detect_matches_exhaustive_argmin():
    rng = np.random.default_rng(5)
    for _ in range(300):
        order = int(rng.integers(2, 9))
        pts = rng.normal(size=order) + 1j * rng.normal(size=order)
        h = complex(rng.normal(), rng.normal()) or 1.0
        b = complex(rng.normal(), rng.normal())
        table = build_detector(pts, h, b)
        radii = np.abs(h * pts + b)
        z = np.abs(rng.normal(size=64) * radii.max())
        got = detect(table, z)
        brute = np.argmin(np.abs(z[:, None] - radii[None, :]), axis=1)
        assert np.array_equal(got, brute)


def test_detect_monotone_in_observation():
    table, _ = _strong_table()
    z = np.linspace(0.0, 5.0, 4001)
    slots = np.searchsorted(table.thresholds, z, side="left")
    assert np.all(np.diff(slots) >= 0)
