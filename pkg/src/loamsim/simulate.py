"""Seeded, shardable Monte-Carlo symbol-error-rate engine.

Trials are grouped into fixed-size blocks; every (scheme, SNR point, block)
triple owns a private counter-based random stream derived from the sweep seed
via Philox, and block results reduce by integer summation. Sweep output is
therefore bit-identical for any worker count.

Two channel modes are supported: a fixed complex gain, and an independent
Rayleigh draw per trial. The adaptive scheme is redesigned for every channel
realization (the transmitter knows h and b); baseline alphabets stay fixed.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelState, draw_complex_noise, observe, snr_db_to_sigma2
from .constellations import (
    design_loam,
    gen_pam,
    gen_psk,
    gen_qam,
    spacing_strong,
    strong_reference_threshold,
)
from .detector import build_detector, detect

__all__ = [
    "FixedChannel",
    "RayleighPerTrial",
    "ZeroReference",
    "FixedReference",
    "ThresholdRatioReference",
    "SweepConfig",
    "SerPoint",
    "ConfigError",
    "SCHEMES",
    "run_trial",
    "run_sweep",
    "sweep_config_from_dict",
    "theoretical_ser_asymptotic",
    "ser_points_to_csv",
    "ser_points_to_json",
]

SCHEMES = ("loam", "pam", "qam", "psk")

_BLOCK = 16384  # trials per random-stream block; fixed so results never
# depend on how blocks are assigned to workers


@dataclass(frozen=True)
class FixedChannel:
    """Single channel realization used for every trial."""

    h: complex


@dataclass(frozen=True)
class RayleighPerTrial:
    """Independent complex Gaussian gain (unit mean power) per trial."""


@dataclass(frozen=True)
class ZeroReference:
    """No reference signal (b = 0)."""


@dataclass(frozen=True)
class FixedReference:
    """Explicit complex reference value."""

    b: complex


@dataclass(frozen=True)
class ThresholdRatioReference:
    """Reference power pinned to a fraction of the strong-reference threshold.

    Sets |b|^2 = ratio * 3*P*(M-1)*|h|^2/(M+1). The phase of b is 0 under a
    fixed channel and uniform per trial under per-trial fading.
    """

    ratio: float


class ConfigError(ValueError):
    """Invalid sweep configuration; `path` names the first offending key."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class SweepConfig:
    schemes: tuple
    order: int
    snr_grid_db: tuple
    trials_per_point: int
    seed: int
    channel_mode: object
    reference_mode: object
    power: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "schemes", tuple(self.schemes))
        object.__setattr__(self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db))

    def validate(self) -> None:
        for i, scheme in enumerate(self.schemes):
            if scheme not in SCHEMES:
                raise ConfigError(f"schemes[{i}]", f"unknown scheme {scheme!r}")
        if not self.schemes:
            raise ConfigError("schemes", "must list at least one scheme")
        if not isinstance(self.order, int) or self.order < 2:
            raise ConfigError("order", f"must be an integer >= 2, got {self.order!r}")
        for i, scheme in enumerate(self.schemes):
            if scheme == "qam" and math.isqrt(self.order) ** 2 != self.order:
                raise ConfigError(
                    f"schemes[{i}]", f"qam requires a square order, got {self.order}"
                )
        if not self.snr_grid_db:
            raise ConfigError("snr_grid_db", "must list at least one SNR point")
        for i, snr in enumerate(self.snr_grid_db):
            if not math.isfinite(snr):
                raise ConfigError(f"snr_grid_db[{i}]", f"must be finite, got {snr!r}")
        if not isinstance(self.trials_per_point, int) or self.trials_per_point < 1000:
            raise ConfigError(
                "trials_per_point",
                f"must be an integer >= 1000, got {self.trials_per_point!r}",
            )
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError("seed", f"must be a 64-bit unsigned integer, got {self.seed!r}")
        if not (isinstance(self.power, (int, float)) and self.power > 0):
            raise ConfigError("power", f"must be positive, got {self.power!r}")
        if isinstance(self.channel_mode, FixedChannel):
            h = complex(self.channel_mode.h)
            if not (math.isfinite(h.real) and math.isfinite(h.imag)) or abs(h) == 0:
                raise ConfigError("channel_mode.h", f"must be finite and nonzero, got {h!r}")
        elif not isinstance(self.channel_mode, RayleighPerTrial):
            raise ConfigError("channel_mode", f"unknown mode {self.channel_mode!r}")
        if isinstance(self.reference_mode, ThresholdRatioReference):
            if not (
                isinstance(self.reference_mode.ratio, (int, float))
                and self.reference_mode.ratio >= 0
                and math.isfinite(self.reference_mode.ratio)
            ):
                raise ConfigError(
                    "reference_mode.ratio",
                    f"must be >= 0, got {self.reference_mode.ratio!r}",
                )
        elif isinstance(self.reference_mode, FixedReference):
            b = complex(self.reference_mode.b)
            if not (math.isfinite(b.real) and math.isfinite(b.imag)):
                raise ConfigError("reference_mode.b", f"must be finite, got {b!r}")
        elif not isinstance(self.reference_mode, ZeroReference):
            raise ConfigError("reference_mode", f"unknown mode {self.reference_mode!r}")


@dataclass(frozen=True)
class SerPoint:
    scheme: str
    order: int
    snr_db: float
    trials: int
    errors: int
    ser: float
    ci95_halfwidth: float


def _baseline_points(scheme: str, power: float, order: int) -> np.ndarray:
    if scheme == "pam":
        return gen_pam(power, order).points
    if scheme == "qam":
        return gen_qam(power, order).points
    if scheme == "psk":
        return gen_psk(power, order).points
    raise ValueError(f"unknown baseline scheme {scheme!r}")


def _scheme_points(scheme: str, state: ChannelState) -> np.ndarray:
    if scheme == "loam":
        return design_loam(state).points
    return _baseline_points(scheme, state.power, state.order)


def run_trial(scheme: str, state: ChannelState, rng: np.random.Generator) -> bool:
    """Run one symbol transmission; True means a symbol error occurred.

    Reference implementation for a single trial; run_sweep uses the same
    model with block-vectorized draws.
    """
    points = _scheme_points(scheme, state)
    table = build_detector(points, state.h, state.b)
    symbol = int(rng.integers(state.order))
    noise = draw_complex_noise(rng, state.sigma2)
    z = observe(points[symbol], state, noise)
    return detect(table, z) != symbol


def theoretical_ser_asymptotic(delta: float, sigma2: float, order: int) -> float:
    """High-amplitude Gaussian approximation of the folded-noise SER.

    SER ~= 2*(M-1)/M * Q(delta / (2*sqrt(sigma2/2))): the amplitude noise is
    approximately Gaussian with deviation sqrt(sigma2/2) when the receive
    levels sit far above it, interior symbols err on two sides and edge
    symbols on one.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    if order < 2:
        raise ValueError("order must be >= 2")
    q_arg = delta / (2.0 * math.sqrt(sigma2 / 2.0))
    q = 0.5 * math.erfc(q_arg / math.sqrt(2.0))
    return 2.0 * (order - 1) / order * q


# --------------------------------------------------------------------------
# Block simulation kernels
# --------------------------------------------------------------------------

def _block_rng(seed: int, scheme_idx: int, snr_idx: int, block_idx: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(scheme_idx, snr_idx, block_idx))
    return np.random.Generator(np.random.Philox(ss))


def _normal_pair(rng: np.random.Generator, n: int):
    return rng.standard_normal(n), rng.standard_normal(n)


def _fixed_block(rng, n, sigma2, order, mu, thresholds, decision_index):
    symbols = rng.integers(0, order, size=n)
    n_re, n_im = _normal_pair(rng, n)
    noise = (n_re + 1j * n_im) * math.sqrt(sigma2 / 2.0)
    z = np.abs(mu[symbols] + noise)
    slots = np.searchsorted(thresholds, z, side="left")
    return int(np.count_nonzero(decision_index[slots] != symbols))


def _resolve_fixed_reference(reference_mode, h: complex, power: float, order: int) -> complex:
    if isinstance(reference_mode, ZeroReference):
        return 0.0 + 0.0j
    if isinstance(reference_mode, FixedReference):
        return complex(reference_mode.b)
    ratio = reference_mode.ratio
    return complex(math.sqrt(ratio * strong_reference_threshold(power, order, abs(h))))


def _rayleigh_block(rng, n, sigma2, order, power, scheme, reference_mode):
    symbols = rng.integers(0, order, size=n)
    h_re, h_im = _normal_pair(rng, n)
    h = (h_re + 1j * h_im) / math.sqrt(2.0)
    h_mag = np.abs(h)
    # A zero-magnitude fade is a measure-zero event but would divide below.
    h_mag = np.maximum(h_mag, 1e-300)

    if isinstance(reference_mode, ZeroReference):
        b = np.zeros(n, dtype=complex)
    elif isinstance(reference_mode, FixedReference):
        b = np.full(n, complex(reference_mode.b))
    else:
        mag = np.sqrt(reference_mode.ratio * strong_reference_threshold(power, order, h_mag))
        phase = rng.uniform(0.0, 2.0 * math.pi, size=n)
        b = mag * np.exp(1j * phase)

    n_re, n_im = _normal_pair(rng, n)
    noise = (n_re + 1j * n_im) * math.sqrt(sigma2 / 2.0)

    if scheme == "loam":
        return _loam_fading_errors(symbols, h, b, noise, power, order)
    points = _baseline_points(scheme, power, order)
    mu = h[:, None] * points[None, :] + b[:, None]
    r_mat = np.abs(mu)
    z = np.abs(mu[np.arange(n), symbols] + noise)
    detected = np.argmin(np.abs(z[:, None] - r_mat), axis=1)
    return int(np.count_nonzero(detected != symbols))


def _loam_fading_errors(symbols, h, b, noise, power, order):
    """Vectorized per-trial redesign, observation, and detection."""
    n = symbols.size
    h_mag = np.abs(h)
    null_point = -b / h
    c_mag = np.abs(null_point)
    ray = np.where(c_mag > 0, null_point / np.where(c_mag > 0, c_mag, 1.0), 1.0)

    threshold = strong_reference_threshold(power, order, h_mag)
    strong = np.abs(b) ** 2 >= threshold * (1.0 - 1e-12)

    a = (order - 1) * (2 * order - 1) / 6.0
    lin = c_mag * (order - 1)
    disc = np.maximum(lin**2 - 4.0 * a * (c_mag**2 - power), 0.0)
    d_weak = (lin + np.sqrt(disc)) / (2.0 * a)
    d = np.where(strong, spacing_strong(power, order), d_weak)
    rho0 = np.where(strong, c_mag - (order - 1) * d / 2.0, 0.0)

    sent_rotated = c_mag - (rho0 + symbols * d)
    z = np.abs(h * ray * sent_rotated + b + noise)

    levels = h_mag[:, None] * (rho0[:, None] + np.arange(order)[None, :] * d[:, None])
    mids = 0.5 * (levels[:, :-1] + levels[:, 1:])
    detected = np.sum(z[:, None] > mids, axis=1)
    return int(np.count_nonzero(detected != symbols))


def run_sweep(config: SweepConfig, workers: int | None = None) -> list[SerPoint]:
    """Simulate every (scheme, SNR) point of the sweep.

    Deterministic given the config seed, independent of `workers`.
    """
    config.validate()
    order, power = config.order, config.power
    trials = config.trials_per_point
    fixed = isinstance(config.channel_mode, FixedChannel)

    prepared = {}
    if fixed:
        h = complex(config.channel_mode.h)
        b = _resolve_fixed_reference(config.reference_mode, h, power, order)
        state = ChannelState(h=h, b=b, power=power, order=order)
        for scheme in set(config.schemes):
            points = _scheme_points(scheme, state)
            table = build_detector(points, h, b)
            mu = h * points + b
            prepared[scheme] = (mu, table.thresholds, table.decision_index)

    n_blocks = (trials + _BLOCK - 1) // _BLOCK
    tasks = []
    for si, scheme in enumerate(config.schemes):
        for ni, snr in enumerate(config.snr_grid_db):
            if fixed:
                sigma2 = snr_db_to_sigma2(snr, state)
            else:
                # Fading gains are normalized to unit mean power, so the SNR
                # definition P*|h|^2/sigma2 is applied in expectation.
                sigma2 = power / 10.0 ** (snr / 10.0)
            for bi in range(n_blocks):
                n = min(_BLOCK, trials - bi * _BLOCK)
                tasks.append((si, ni, bi, scheme, sigma2, n))

    def run_block(task):
        si, ni, bi, scheme, sigma2, n = task
        rng = _block_rng(config.seed, si, ni, bi)
        if fixed:
            mu, thresholds, decision_index = prepared[scheme]
            return si, ni, _fixed_block(rng, n, sigma2, order, mu, thresholds, decision_index)
        return si, ni, _rayleigh_block(rng, n, sigma2, order, power, scheme, config.reference_mode)

    errors = np.zeros((len(config.schemes), len(config.snr_grid_db)), dtype=np.int64)
    max_workers = workers if workers else (os.cpu_count() or 1)
    if max_workers <= 1:
        for si, ni, err in map(run_block, tasks):
            errors[si, ni] += err
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            for si, ni, err in pool.map(run_block, tasks):
                errors[si, ni] += err

    points = []
    for si, scheme in enumerate(config.schemes):
        for ni, snr in enumerate(config.snr_grid_db):
            err = int(errors[si, ni])
            ser = err / trials
            ci = 1.96 * math.sqrt(ser * (1.0 - ser) / trials)
            points.append(
                SerPoint(
                    scheme=scheme,
                    order=order,
                    snr_db=snr,
                    trials=trials,
                    errors=err,
                    ser=ser,
                    ci95_halfwidth=ci,
                )
            )
    return points


# --------------------------------------------------------------------------
# Config file schema
# --------------------------------------------------------------------------

_TOP_KEYS = {
    "schemes",
    "order",
    "snr_grid_db",
    "trials_per_point",
    "seed",
    "channel_mode",
    "reference_mode",
    "power",
}


def _complex_from_pair(value, path: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) for v in value)
    ):
        raise ConfigError(path, f"must be a [re, im] pair of numbers, got {value!r}")
    return complex(value[0], value[1])


def _channel_mode_from_dict(doc, path: str):
    if not isinstance(doc, dict) or "mode" not in doc:
        raise ConfigError(path, "must be an object with a 'mode' key")
    mode = doc["mode"]
    if mode == "fixed_channel":
        extra = set(doc) - {"mode", "h"}
        if extra:
            raise ConfigError(f"{path}.{sorted(extra)[0]}", "unknown key")
        if "h" not in doc:
            raise ConfigError(f"{path}.h", "required for fixed_channel")
        return FixedChannel(h=_complex_from_pair(doc["h"], f"{path}.h"))
    if mode == "rayleigh_per_trial":
        extra = set(doc) - {"mode"}
        if extra:
            raise ConfigError(f"{path}.{sorted(extra)[0]}", "unknown key")
        return RayleighPerTrial()
    raise ConfigError(f"{path}.mode", f"must be fixed_channel or rayleigh_per_trial, got {mode!r}")


def _reference_mode_from_dict(doc, path: str):
    if not isinstance(doc, dict) or "mode" not in doc:
        raise ConfigError(path, "must be an object with a 'mode' key")
    mode = doc["mode"]
    if mode == "zero":
        extra = set(doc) - {"mode"}
        if extra:
            raise ConfigError(f"{path}.{sorted(extra)[0]}", "unknown key")
        return ZeroReference()
    if mode == "fixed_value":
        extra = set(doc) - {"mode", "b"}
        if extra:
            raise ConfigError(f"{path}.{sorted(extra)[0]}", "unknown key")
        if "b" not in doc:
            raise ConfigError(f"{path}.b", "required for fixed_value")
        return FixedReference(b=_complex_from_pair(doc["b"], f"{path}.b"))
    if mode == "threshold_ratio":
        extra = set(doc) - {"mode", "ratio"}
        if extra:
            raise ConfigError(f"{path}.{sorted(extra)[0]}", "unknown key")
        if "ratio" not in doc or not isinstance(doc["ratio"], (int, float)):
            raise ConfigError(f"{path}.ratio", "required number for threshold_ratio")
        return ThresholdRatioReference(ratio=float(doc["ratio"]))
    raise ConfigError(
        f"{path}.mode", f"must be zero, fixed_value, or threshold_ratio, got {mode!r}"
    )


def sweep_config_from_dict(doc) -> SweepConfig:
    """Build a SweepConfig from a parsed JSON document.

    Raises ConfigError carrying the first offending key path.
    """
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    for key in doc:
        if key not in _TOP_KEYS:
            raise ConfigError(key, "unknown key")
    for key in ("schemes", "order", "snr_grid_db", "trials_per_point", "seed",
                "channel_mode", "reference_mode"):
        if key not in doc:
            raise ConfigError(key, "missing required key")
    schemes = doc["schemes"]
    if not isinstance(schemes, list) or not all(isinstance(s, str) for s in schemes):
        raise ConfigError("schemes", f"must be a list of scheme names, got {schemes!r}")
    snr_grid = doc["snr_grid_db"]
    if not isinstance(snr_grid, list) or not all(
        isinstance(s, (int, float)) for s in snr_grid
    ):
        raise ConfigError("snr_grid_db", f"must be a list of numbers, got {snr_grid!r}")
    for name, key in (("order", "order"), ("trials_per_point", "trials_per_point"),
                      ("seed", "seed")):
        if not isinstance(doc[key], int) or isinstance(doc[key], bool):
            raise ConfigError(name, f"must be an integer, got {doc[key]!r}")
    power = doc.get("power", 1.0)
    if not isinstance(power, (int, float)) or isinstance(power, bool):
        raise ConfigError("power", f"must be a number, got {power!r}")
    config = SweepConfig(
        schemes=tuple(schemes),
        order=doc["order"],
        snr_grid_db=tuple(float(s) for s in snr_grid),
        trials_per_point=doc["trials_per_point"],
        seed=doc["seed"],
        channel_mode=_channel_mode_from_dict(doc["channel_mode"], "channel_mode"),
        reference_mode=_reference_mode_from_dict(doc["reference_mode"], "reference_mode"),
        power=float(power),
    )
    config.validate()
    return config


# --------------------------------------------------------------------------
# Output formats
# --------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def ser_points_to_csv(points: list[SerPoint]) -> str:
    """CSV with header scheme,order,snr_db,trials,errors,ser,ci95."""
    lines = ["scheme,order,snr_db,trials,errors,ser,ci95"]
    for p in points:
        lines.append(
            f"{p.scheme},{p.order},{_fmt(p.snr_db)},{p.trials},{p.errors},"
            f"{_fmt(p.ser)},{_fmt(p.ci95_halfwidth)}"
        )
    return "\n".join(lines) + "\n"


def ser_points_to_json(points: list[SerPoint]) -> str:
    """JSON mirror of the CSV rows (same fields, same float precision)."""
    rows = []
    for p in points:
        rows.append(
            "  {"
            f'"scheme": "{p.scheme}", "order": {p.order}, "snr_db": {_fmt(p.snr_db)}, '
            f'"trials": {p.trials}, "errors": {p.errors}, "ser": {_fmt(p.ser)}, '
            f'"ci95": {_fmt(p.ci95_halfwidth)}'
            "}"
        )
    return "[\n" + ",\n".join(rows) + "\n]\n"
