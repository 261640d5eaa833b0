"""THD-based weak PUF emulator: devices, sweeps, distortion, LUT, responses."""

from .device import (
    CURVE_SAMPLES,
    DeviceModel,
    INVERTER_COUNT,
    InverterParams,
    device_from_json,
    device_to_json,
    synthesize_device,
    tabulate,
    vtc,
)
from .lut import (
    CHALLENGE_SPACE,
    LutTable,
    RESPONSE_BITS,
    lut_from_json,
    lut_to_json,
    provision_lut,
    provision_lut_cached,
    respond,
    response_from_hex,
    response_to_hex,
)
from .sweep import SweepRegion, challenge_from_level, sweep_regions
from .thd import COS_TABLE, DegenerateRegion, PROBE_COUNT, device_thds, thd, thd_many

__all__ = [
    "CHALLENGE_SPACE",
    "COS_TABLE",
    "CURVE_SAMPLES",
    "DegenerateRegion",
    "DeviceModel",
    "INVERTER_COUNT",
    "InverterParams",
    "LutTable",
    "PROBE_COUNT",
    "RESPONSE_BITS",
    "SweepRegion",
    "challenge_from_level",
    "device_from_json",
    "device_thds",
    "device_to_json",
    "lut_from_json",
    "lut_to_json",
    "provision_lut",
    "provision_lut_cached",
    "respond",
    "response_from_hex",
    "response_to_hex",
    "sweep_regions",
    "synthesize_device",
    "tabulate",
    "thd",
    "thd_many",
    "vtc",
]
