"""LUT provisioning and response generation.

The LUT stores, for every (challenge, inverter) cell, the mean THD over
a reference population of devices. A device's response bit is the
comparison of its own THD against that population mean.

Means are accumulated with math.fsum, so permuting the population seed
list cannot change a single bit of the table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .device import DeviceModel, INVERTER_COUNT, synthesize_device
from .sweep import sweep_regions
from .thd import device_thds, thd_many

CHALLENGE_SPACE = 256
RESPONSE_BITS = INVERTER_COUNT
RESPONSE_HEX_DIGITS = 5


@dataclass(frozen=True)
class LutTable:
    population_seeds: tuple[int, ...]
    v_dd: float
    means: np.ndarray  # (256, 18)


def _all_regions(v_dd: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lo = np.empty(CHALLENGE_SPACE * INVERTER_COUNT)
    hi = np.empty_like(lo)
    idx = np.empty(lo.shape[0], dtype=np.int64)
    pos = 0
    for challenge in range(CHALLENGE_SPACE):
        for i, region in enumerate(sweep_regions(challenge, v_dd)):
            lo[pos] = region.lo
            hi[pos] = region.hi
            idx[pos] = i
            pos += 1
    return idx, lo, hi


def provision_lut(population_seeds, v_dd: float = 1.0) -> LutTable:
    """Mean THD per (challenge, inverter) over the seed population."""
    seeds = tuple(int(s) for s in population_seeds)
    if not seeds:
        raise ValueError("population must be non-empty")
    idx, lo, hi = _all_regions(v_dd)
    samples = np.empty((len(seeds), lo.shape[0]))
    for d, seed in enumerate(seeds):
        device = synthesize_device(seed, v_dd)
        samples[d] = thd_many(device.curves, idx, lo, hi, v_dd)
    columns = samples.T.tolist()
    n = float(len(seeds))
    means = np.array([math.fsum(col) / n for col in columns])
    means = means.reshape(CHALLENGE_SPACE, INVERTER_COUNT)
    means.flags.writeable = False
    return LutTable(population_seeds=seeds, v_dd=v_dd, means=means)


@lru_cache(maxsize=4)
def provision_lut_cached(population_seeds: tuple[int, ...], v_dd: float = 1.0) -> LutTable:
    return provision_lut(population_seeds, v_dd)


def respond(device: DeviceModel, lut: LutTable, challenge: int) -> int:
    """18-bit response; bit i set iff the device's THD exceeds the mean."""
    thds = device_thds(device, challenge)
    row = lut.means[challenge]
    response = 0
    for i in range(RESPONSE_BITS):
        if thds[i] > row[i]:
            response |= 1 << i
    return response


def response_to_hex(response: int) -> str:
    if not (0 <= response < (1 << RESPONSE_BITS)):
        raise ValueError("response out of range")
    return format(response, f"0{RESPONSE_HEX_DIGITS}X")


def response_from_hex(text: str) -> int:
    value = int(text, 16)
    if not (0 <= value < (1 << RESPONSE_BITS)):
        raise ValueError("response out of range")
    return value


def lut_to_json(lut: LutTable) -> str:
    return json.dumps(
        {
            "population_seeds": list(lut.population_seeds),
            "v_dd": lut.v_dd,
            "means": lut.means.tolist(),
        }
    )


def lut_from_json(text: str) -> LutTable:
    doc = json.loads(text)
    means = np.asarray(doc["means"], dtype=np.float64)
    if means.shape != (CHALLENGE_SPACE, INVERTER_COUNT):
        raise ValueError("means grid has the wrong shape")
    if (means < 0).any():
        raise ValueError("means must be non-negative")
    means.flags.writeable = False
    return LutTable(
        population_seeds=tuple(int(s) for s in doc["population_seeds"]),
        v_dd=float(doc["v_dd"]),
        means=means,
    )
