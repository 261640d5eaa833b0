"""Challenge-seeded sweep-region selection.

Each 8-bit challenge seeds a fixed 32-bit LCG; for every inverter the
next two outputs choose the probe region's center and halfwidth. The
constants are pinned so an independent implementation reproduces the
regions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..rng import round_half_up

REGION_COUNT = 18

_LCG_A = 1664525
_LCG_C = 1013904223
_M32 = 1 << 32
_SEED_XOR = 0x9E3779B9
_SEED_MUL = 0x01000193


@dataclass(frozen=True)
class SweepRegion:
    lo: float
    hi: float


def sweep_regions(challenge: int, v_dd: float = 1.0) -> list[SweepRegion]:
    """The 18 probe regions for one challenge; device-independent."""
    if not (0 <= challenge <= 255):
        raise ValueError("challenge must be an 8-bit value")
    x = (_SEED_XOR ^ ((challenge * _SEED_MUL) & (_M32 - 1))) & (_M32 - 1)
    regions = []
    for _ in range(REGION_COUNT):
        x = (_LCG_A * x + _LCG_C) % _M32
        u1 = x / _M32
        x = (_LCG_A * x + _LCG_C) % _M32
        u2 = x / _M32
        center = (0.25 + 0.5 * u1) * v_dd
        halfwidth = (0.05 + 0.10 * u2) * v_dd
        lo = max(center - halfwidth, 0.02 * v_dd)
        hi = min(center + halfwidth, 0.98 * v_dd)
        regions.append(SweepRegion(lo=lo, hi=hi))
    return regions


def challenge_from_level(quantized_level: int, capacity: float) -> int:
    """Map a quantized tank level onto the 8-bit challenge space."""
    if quantized_level < 0:
        raise ValueError("quantized_level must be non-negative")
    clamped = min(float(quantized_level), capacity)
    return round_half_up(clamped * 255.0 / capacity)
