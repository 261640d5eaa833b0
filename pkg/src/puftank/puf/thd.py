"""Harmonic-distortion extraction from tabulated transfer curves.

A cosine probe v_in(theta) = center + amp*cos(theta) sweeps the region;
the curve output is sampled by linear interpolation at 256 probe angles
and projected onto cos(k*theta) for k = 1..5. THD is the RMS of the
harmonics over the fundamental magnitude.

The probe-angle cosine tables are built once with math.cos and shared
by both kernel backends, which keeps their outputs bit-identical.
"""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from .device import DeviceModel
from .sweep import SweepRegion, sweep_regions

PROBE_COUNT = 256
HARMONIC_COUNT = 5


def _build_cos_table() -> np.ndarray:
    tab = np.empty((HARMONIC_COUNT, PROBE_COUNT))
    for k in range(1, HARMONIC_COUNT + 1):
        for j in range(PROBE_COUNT):
            tab[k - 1, j] = math.cos(k * (2.0 * math.pi * j / PROBE_COUNT))
    tab.flags.writeable = False
    return tab


COS_TABLE = _build_cos_table()
_COS_LISTS = COS_TABLE.tolist()


class DegenerateRegion(ValueError):
    """The probe region saw no fundamental (flat curve segment)."""


def thd_many(curves: np.ndarray, idx, lo, hi, v_dd: float) -> np.ndarray:
    """THD per region; idx maps regions to curve rows.

    Dispatches to the selected kernel backend. Raises DegenerateRegion
    if any region's fundamental vanishes.
    """
    n = len(lo)
    out = np.empty(n)
    if kernels.BACKEND == "compiled":
        curves_arr = np.ascontiguousarray(curves, dtype=np.float64)
        kernels.thd_regions(
            curves_arr,
            np.ascontiguousarray(idx, dtype=np.int64),
            np.ascontiguousarray(lo, dtype=np.float64),
            np.ascontiguousarray(hi, dtype=np.float64),
            v_dd,
            COS_TABLE,
            out,
        )
    else:
        rows = curves.tolist() if isinstance(curves, np.ndarray) else curves
        kernels.thd_regions(rows, list(idx), list(lo), list(hi), v_dd, _COS_LISTS, out)
    if np.isnan(out).any():
        raise DegenerateRegion("probe region has no fundamental component")
    return out


def thd(curve, region: SweepRegion, v_dd: float = 1.0) -> float:
    """THD of a single curve over a single region."""
    curves = np.asarray(curve, dtype=np.float64).reshape(1, -1)
    return float(thd_many(curves, [0], [region.lo], [region.hi], v_dd)[0])


def device_thds(device: DeviceModel, challenge: int) -> np.ndarray:
    """THD of each inverter over its challenge-selected region."""
    regions = sweep_regions(challenge, device.v_dd)
    lo = [r.lo for r in regions]
    hi = [r.hi for r in regions]
    idx = list(range(len(regions)))
    if kernels.BACKEND == "compiled":
        return thd_many(device.curves, idx, lo, hi, device.v_dd)
    out = np.empty(len(regions))
    kernels.thd_regions(device.curves_as_lists(), idx, lo, hi, device.v_dd,
                        _COS_LISTS, out)
    if np.isnan(out).any():
        raise DegenerateRegion("probe region has no fundamental component")
    return out
