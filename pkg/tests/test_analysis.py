import numpy as np
import pytest

from puftank.puf.analysis import (
    bit_bias,
    crp_metrics,
    noisy_respond,
    response_matrix,
)
from puftank.puf.device import synthesize_device
from puftank.puf.lut import respond
from puftank.rng import SplitMix64


def test_response_matrix_bits_match_respond(pinned_lut, fixture_device):
    mat = response_matrix(fixture_device, pinned_lut)
    assert mat.shape == (256, 18)
    for challenge in (0, 200):
        r = respond(fixture_device, pinned_lut, challenge)
        assert all(mat[challenge, i] == ((r >> i) & 1) for i in range(18))


def test_fixture_device_bias_is_near_half(pinned_lut, fixture_device):
    bias = bit_bias(fixture_device, pinned_lut)
    assert 0.35 <= bias <= 0.65


def test_noisy_respond_zero_noise_is_exact(pinned_lut, fixture_device):
    rng = SplitMix64(1)
    for challenge in (3, 99):
        assert noisy_respond(fixture_device, pinned_lut, challenge, 0.0, rng) \
            == respond(fixture_device, pinned_lut, challenge)


def test_noisy_respond_flips_bits_under_heavy_noise(pinned_lut, fixture_device):
    rng = SplitMix64(2)
    flipped = sum(
        noisy_respond(fixture_device, pinned_lut, c, 0.5, rng)
        != respond(fixture_device, pinned_lut, c)
        for c in range(0, 256, 32)
    )
    assert flipped > 0


def test_crp_metrics_requires_two_devices(pinned_lut, fixture_device):
    with pytest.raises(ValueError):
        crp_metrics([fixture_device], pinned_lut)


def test_crp_metrics_fields(pinned_lut):
    devices = [synthesize_device(s) for s in pinned_lut.population_seeds[:4]]
    report = crp_metrics(devices, pinned_lut)
    assert report.device_count == 4
    assert report.pair_count == 6
    assert 0.0 <= report.uniqueness <= 1.0
    assert report.reliability == 1.0  # zero-noise repeats are identical
    assert 0.0 <= report.avalanche <= 1.0
    assert 0.0 < report.mean_bias < 1.0


def test_identical_devices_have_zero_distance(pinned_lut, fixture_device):
    twin = synthesize_device(fixture_device.device_id)
    a = response_matrix(fixture_device, pinned_lut)
    b = response_matrix(twin, pinned_lut)
    assert np.array_equal(a, b)
