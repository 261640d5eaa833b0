import logging

import pytest

from puftank.plc import (
    HR_DRAIN,
    HR_ENROLL,
    HR_FILL_MANUAL,
    HR_HIGH_SP,
    HR_LOW_SP,
    HR_MODE,
    HR_RESET,
    IR_FILL,
    IR_LEVEL,
    IR_TICK_HI,
    IR_TICK_LO,
    MODE_AUTO,
    MODE_MANUAL,
    PlcState,
    RegisterImage,
    consume_flags,
    decode_level,
    encode_level,
    scan,
)


def _image(low=50.0, high=250.0, mode=MODE_AUTO):
    image = RegisterImage()
    image.write_holding(HR_LOW_SP, encode_level(low))
    image.write_holding(HR_HIGH_SP, encode_level(high))
    image.write_holding(HR_MODE, mode)
    return image


def test_fixed_point_round_trip():
    assert encode_level(50.0) == 5000
    assert encode_level(250.0) == 25000
    assert decode_level(5000) == 50.0
    for level in (0.0, 0.005, 149.37, 300.0, 330.0):
        assert abs(decode_level(encode_level(level)) - level) <= 0.005


def test_encode_clamps_to_16_bit():
    assert encode_level(-5.0) == 0
    assert encode_level(1e6) == 0xFFFF


def test_scan_publishes_inputs():
    image = _image()
    state = PlcState()
    scan(image, state, reported_level=149.37, tick=0x1A2B3C)
    ir, _ = image.snapshot()
    assert ir[IR_LEVEL] == encode_level(149.37)
    assert ir[IR_TICK_LO] == 0x2B3C
    assert ir[IR_TICK_HI] == 0x1A


def test_hysteresis_fill_control():
    image = _image(low=50.0, high=250.0)
    state = PlcState()
    fill, _ = scan(image, state, reported_level=40.0, tick=0)
    assert fill is True  # below low: start filling
    fill, _ = scan(image, state, reported_level=150.0, tick=1)
    assert fill is True  # between: hold
    fill, _ = scan(image, state, reported_level=250.0, tick=2)
    assert fill is False  # at high: stop
    fill, _ = scan(image, state, reported_level=150.0, tick=3)
    assert fill is False  # between: hold

    ir, _ = image.snapshot()
    assert ir[IR_FILL] == 0


def test_manual_mode_passthrough():
    image = _image(mode=MODE_MANUAL)
    image.write_holding(HR_FILL_MANUAL, 1)
    image.write_holding(HR_DRAIN, 1)
    state = PlcState()
    fill, drain = scan(image, state, reported_level=10.0, tick=0)
    assert fill is True and drain is True
    image.write_holding(HR_FILL_MANUAL, 0)
    fill, drain = scan(image, state, reported_level=10.0, tick=1)
    assert fill is False


def test_auto_mode_ignores_manual_fill():
    image = _image()
    image.write_holding(HR_FILL_MANUAL, 1)
    state = PlcState()
    fill, _ = scan(image, state, reported_level=150.0, tick=0)
    assert fill is False  # hysteresis state, not the manual register


def test_invalid_setpoints_keep_previous_and_warn_once(caplog):
    image = _image(low=50.0, high=250.0)
    state = PlcState()
    scan(image, state, reported_level=100.0, tick=0)
    assert state.low_sp == 50.0

    image.write_holding(HR_LOW_SP, encode_level(260.0))  # low above high
    with caplog.at_level(logging.WARNING):
        scan(image, state, reported_level=100.0, tick=1)
        scan(image, state, reported_level=100.0, tick=2)
    warnings = [r for r in caplog.records if "setpoint" in r.message.lower()]
    assert len(warnings) == 1
    assert state.low_sp == 50.0 and state.high_sp == 250.0

    # A valid pair rearms the warning.
    image.write_holding(HR_LOW_SP, encode_level(60.0))
    scan(image, state, reported_level=100.0, tick=3)
    assert state.low_sp == 60.0


def test_consume_flags_reset_is_one_shot():
    image = _image()
    image.write_holding(HR_ENROLL, 1)
    image.write_holding(HR_RESET, 1)
    assert consume_flags(image) == (True, True)
    assert consume_flags(image) == (True, False)  # enroll held, reset cleared


def test_register_bounds():
    image = RegisterImage()
    with pytest.raises(IndexError):
        image.read_holding(8, 1)
    with pytest.raises(IndexError):
        image.read_input(0, 5)
    with pytest.raises(IndexError):
        image.write_holding(-1, 0)
    with pytest.raises(IndexError):
        image.write_holding_multi(6, [1, 2, 3])


def test_multi_write_is_all_or_nothing():
    image = RegisterImage()
    image.write_holding(HR_DRAIN, 7)
    with pytest.raises(IndexError):
        image.write_holding_multi(HR_DRAIN, [1] * 10)
    _, hr = image.snapshot()
    assert hr[HR_DRAIN] == 7  # untouched by the failed write


def test_values_masked_to_16_bit():
    image = RegisterImage()
    image.write_holding(0, 0x12345)
    assert image.read_holding(0, 1) == [0x2345]
