"""Synthetic CMOS-inverter devices: the PUF's entropy source.

A device is 18 inverter voltage-transfer curves. Each curve follows the
logistic VTC v_out = v_dd / (1 + exp(g*(v_in - v_m))) with per-inverter
(v_m, g) drawn from the manufacturing-variation distributions, then
tabulated at 1024 points so the rest of the pipeline only ever sees
sampled data arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..rng import SplitMix64

INVERTER_COUNT = 18
CURVE_SAMPLES = 1024


@dataclass(frozen=True)
class InverterParams:
    v_dd: float
    v_m: float
    g: float

    def __post_init__(self) -> None:
        if not (0.0 < self.v_m < self.v_dd):
            raise ValueError("v_m must lie strictly inside (0, v_dd)")
        if self.g <= 0.0:
            raise ValueError("g must be positive")


def vtc(params: InverterParams, v_in: float) -> float:
    """Static transfer curve of one inverter."""
    return params.v_dd / (1.0 + math.exp(params.g * (v_in - params.v_m)))


def tabulate(params: InverterParams, n_samples: int = CURVE_SAMPLES) -> np.ndarray:
    v_in = np.linspace(0.0, params.v_dd, n_samples)
    return params.v_dd / (1.0 + np.exp(params.g * (v_in - params.v_m)))


@dataclass(frozen=True)
class DeviceModel:
    device_id: int
    v_dd: float
    inverters: tuple[InverterParams, ...]
    curves: np.ndarray  # (18, CURVE_SAMPLES) float64
    _curves_list: list = field(default_factory=list, repr=False, compare=False)

    def curves_as_lists(self) -> list:
        """Row-list view of the curves, cached for the pure kernel."""
        if not self._curves_list:
            self._curves_list.extend(self.curves.tolist())
        return self._curves_list


def synthesize_device(device_seed: int, v_dd: float = 1.0) -> DeviceModel:
    """Draw one device's 18 inverters; bit-identical for equal seeds.

    v_m ~ Normal(0.5*v_dd, 0.02*v_dd), g ~ Normal(25/v_dd, 3/v_dd),
    clamped into their invariant ranges.
    """
    draws = SplitMix64(device_seed).normals(2 * INVERTER_COUNT)
    inverters = []
    curves = np.empty((INVERTER_COUNT, CURVE_SAMPLES))
    for i in range(INVERTER_COUNT):
        v_m = 0.5 * v_dd + 0.02 * v_dd * draws[2 * i]
        g = 25.0 / v_dd + 3.0 / v_dd * draws[2 * i + 1]
        v_m = min(max(v_m, 0.02 * v_dd), 0.98 * v_dd)
        g = max(g, 1.0 / v_dd)
        params = InverterParams(v_dd=v_dd, v_m=v_m, g=g)
        inverters.append(params)
        curves[i] = tabulate(params)
    curves.flags.writeable = False
    return DeviceModel(device_id=device_seed, v_dd=v_dd,
                       inverters=tuple(inverters), curves=curves)


def device_to_json(device: DeviceModel, include_curves: bool = False) -> str:
    doc = {
        "device_id": device.device_id,
        "v_dd": device.v_dd,
        "inverters": [{"v_m": p.v_m, "g": p.g} for p in device.inverters],
    }
    if include_curves:
        doc["curve_samples"] = device.curves.tolist()
    return json.dumps(doc, indent=2)


def device_from_json(text: str) -> DeviceModel:
    doc = json.loads(text)
    v_dd = float(doc["v_dd"])
    inverters = tuple(
        InverterParams(v_dd=v_dd, v_m=float(p["v_m"]), g=float(p["g"]))
        for p in doc["inverters"]
    )
    if len(inverters) != INVERTER_COUNT:
        raise ValueError(f"expected {INVERTER_COUNT} inverters, got {len(inverters)}")
    if "curve_samples" in doc:
        curves = np.asarray(doc["curve_samples"], dtype=np.float64)
        if curves.shape != (INVERTER_COUNT, CURVE_SAMPLES):
            raise ValueError("curve_samples has the wrong shape")
    else:
        curves = np.stack([tabulate(p) for p in inverters])
    curves.flags.writeable = False
    return DeviceModel(device_id=int(doc["device_id"]), v_dd=v_dd,
                       inverters=inverters, curves=curves)
