"""CRP quality analytics: uniqueness, reliability, avalanche, bias."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import SplitMix64
from .device import DeviceModel
from .lut import CHALLENGE_SPACE, LutTable, RESPONSE_BITS, respond
from .thd import device_thds


def response_matrix(device: DeviceModel, lut: LutTable) -> np.ndarray:
    """(256, 18) bit matrix of the device's responses to every challenge."""
    bits = np.empty((CHALLENGE_SPACE, RESPONSE_BITS), dtype=np.uint8)
    for challenge in range(CHALLENGE_SPACE):
        r = respond(device, lut, challenge)
        for i in range(RESPONSE_BITS):
            bits[challenge, i] = (r >> i) & 1
    return bits


def bit_bias(device: DeviceModel, lut: LutTable) -> float:
    """Fraction of 1 bits over all challenges."""
    return float(response_matrix(device, lut).mean())


def noisy_respond(device: DeviceModel, lut: LutTable, challenge: int,
                  noise_sigma: float, rng: SplitMix64) -> int:
    """Response with additive gaussian noise on the measured THD values."""
    thds = device_thds(device, challenge)
    if noise_sigma > 0.0:
        draws = rng.normals(RESPONSE_BITS)
        thds = thds + noise_sigma * np.asarray(draws)
    row = lut.means[challenge]
    response = 0
    for i in range(RESPONSE_BITS):
        if thds[i] > row[i]:
            response |= 1 << i
    return response


@dataclass(frozen=True)
class CrpMetrics:
    uniqueness: float
    reliability: float
    avalanche: float
    mean_bias: float
    device_count: int
    pair_count: int


def crp_metrics(devices, lut: LutTable, measurement_noise: float = 0.0,
                reliability_repeats: int = 3, noise_seed: int = 0x5EED) -> CrpMetrics:
    """Standard PUF quality census over a device list.

    uniqueness: mean pairwise fractional Hamming distance across all
    challenges. reliability: mean bit agreement between a reference
    response and repeated noisy measurements. avalanche: mean fractional
    response change under single challenge-bit flips.
    """
    devices = list(devices)
    if len(devices) < 2:
        raise ValueError("need at least two devices")
    mats = [response_matrix(d, lut) for d in devices]

    distances = []
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            distances.append(float(np.mean(mats[a] != mats[b])))
    uniqueness = float(np.mean(distances))

    rng = SplitMix64(noise_seed)
    agreements = []
    for d, device in enumerate(devices):
        for challenge in range(0, CHALLENGE_SPACE, 16):
            reference = respond(device, lut, challenge)
            for _ in range(reliability_repeats):
                again = noisy_respond(device, lut, challenge, measurement_noise, rng)
                same = RESPONSE_BITS - bin(reference ^ again).count("1")
                agreements.append(same / RESPONSE_BITS)
    reliability = float(np.mean(agreements))

    flips = []
    for mat in mats:
        for challenge in range(CHALLENGE_SPACE):
            base = mat[challenge]
            for bit in range(8):
                other = mat[challenge ^ (1 << bit)]
                flips.append(float(np.mean(base != other)))
    avalanche = float(np.mean(flips))

    mean_bias = float(np.mean([m.mean() for m in mats]))
    return CrpMetrics(
        uniqueness=uniqueness,
        reliability=reliability,
        avalanche=avalanche,
        mean_bias=mean_bias,
        device_count=len(devices),
        pair_count=len(distances),
    )
