"""Gallery of adaptive constellations across the three operating regimes.

Designs M=4 alphabets for null-point phases {0, pi/4, pi/2, 3pi/4} in each
regime (no reference, weak reference, strong reference), prints the geometry,
and writes one JSON document per design next to this script.

Run: python demos/constellation_gallery.py
"""

import math
import pathlib

import numpy as np

from loamsim import (
    ChannelState,
    design_loam,
    design_to_json,
    strong_reference_threshold,
)

OUT_DIR = pathlib.Path(__file__).parent / "output"
ORDER = 4
POWER = 1.0


def design_for(regime: str, phase: float):
    """Pick (h, b) that realize the requested regime with the null point at `phase`."""
    h = 1.0 + 0.0j
    threshold = strong_reference_threshold(POWER, ORDER, abs(h))
    if regime == "lo-free":
        b = 0.0 + 0.0j
    else:
        frac = 1.0 / 3.0 if regime == "weak" else 2.0
        # c = -b/h, so placing b opposite the target phase puts c on it
        b = -math.sqrt(frac * threshold) * np.exp(1j * phase)
    return ChannelState(h=h, b=complex(b), power=POWER, order=ORDER)


def main():
    OUT_DIR.mkdir(exist_ok=True)
    for regime in ("lo-free", "weak", "strong"):
        print(f"=== {regime} reference ===")
        phases = [0.0] if regime == "lo-free" else [0, math.pi / 4, math.pi / 2, 3 * math.pi / 4]
        for phase in phases:
            state = design_for(regime, phase)
            out = design_loam(state)
            pts = ", ".join(f"{p.real:+.3f}{p.imag:+.3f}j" for p in out.points)
            mags = ", ".join(f"{m:.3f}" for m in out.magnitudes)
            print(
                f"  ray phase {out.ray_phase:+.3f} rad | spacing {out.spacing:.4f} | "
                f"points [{pts}] | receive levels [{mags}]"
            )
            name = f"m4_{regime.replace('-', '')}_phase{int(round(math.degrees(phase)))}.json"
            (OUT_DIR / name).write_text(design_to_json(out))
        print()
    print(f"JSON documents written to {OUT_DIR}/")


if __name__ == "__main__":
    main()
