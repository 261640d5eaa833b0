"""Soft PLC: register image, ON/OFF level control, flag handoff.

The register image is the wire-visible state shared between the
simulation loop, the Modbus server, and the HTTP gateway. Network
writes land immediately under the image lock; the loop reads one
consistent snapshot per tick, so a scan never observes a torn
multi-register write.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from .rng import round_half_up

log = logging.getLogger(__name__)

IR_LEVEL = 0
IR_FILL = 1
IR_TICK_LO = 2
IR_TICK_HI = 3
INPUT_COUNT = 4

HR_LOW_SP = 0
HR_HIGH_SP = 1
HR_DRAIN = 2
HR_MODE = 3
HR_ENROLL = 4
HR_RESET = 5
HR_CODE = 6
HR_FILL_MANUAL = 7
HOLDING_COUNT = 8

MODE_MANUAL = 0
MODE_AUTO = 1

UNIT_ID = 1
DEFAULT_PORT = 1502

FIXED_POINT_SCALE = 100


def encode_level(level: float) -> int:
    """Level-units to x100 fixed point, clamped to the 16-bit range."""
    raw = round_half_up(level * FIXED_POINT_SCALE)
    return min(max(raw, 0), 0xFFFF)


def decode_level(raw: int) -> float:
    return raw / FIXED_POINT_SCALE


class RegisterImage:
    """Thread-safe 16-bit register file: 4 input + 8 holding registers."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._input = [0] * INPUT_COUNT
        self._holding = [0] * HOLDING_COUNT

    def read_input(self, addr: int, count: int) -> list[int]:
        if addr < 0 or count < 1 or addr + count > INPUT_COUNT:
            raise IndexError("input register address out of range")
        with self._lock:
            return self._input[addr:addr + count]

    def read_holding(self, addr: int, count: int) -> list[int]:
        if addr < 0 or count < 1 or addr + count > HOLDING_COUNT:
            raise IndexError("holding register address out of range")
        with self._lock:
            return self._holding[addr:addr + count]

    def write_holding(self, addr: int, value: int) -> None:
        if addr < 0 or addr >= HOLDING_COUNT:
            raise IndexError("holding register address out of range")
        with self._lock:
            self._holding[addr] = value & 0xFFFF

    def write_holding_multi(self, addr: int, values: list[int]) -> None:
        """All-or-nothing multi-register write."""
        if addr < 0 or not values or addr + len(values) > HOLDING_COUNT:
            raise IndexError("holding register address out of range")
        with self._lock:
            for offset, value in enumerate(values):
                self._holding[addr + offset] = value & 0xFFFF

    def set_input(self, addr: int, value: int) -> None:
        with self._lock:
            self._input[addr] = value & 0xFFFF

    def snapshot(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        with self._lock:
            return tuple(self._input), tuple(self._holding)


@dataclass
class PlcState:
    fill_cmd: bool = False
    low_sp: float = 0.0
    high_sp: float = 0.0
    _warned_invalid: bool = False


def scan(image: RegisterImage, state: PlcState, reported_level: float,
         tick: int) -> tuple[bool, bool]:
    """One PLC scan: publish IR0/IR2/IR3, derive actuator commands.

    Auto mode runs ON/OFF hysteresis between the setpoints; manual mode
    passes the operator's valve commands through. A setpoint pair with
    low >= high is ignored (previous valid pair stays in force) and
    logged once per violation streak.
    """
    _, holding = image.snapshot()
    image.set_input(IR_LEVEL, encode_level(reported_level))
    image.set_input(IR_TICK_LO, tick & 0xFFFF)
    image.set_input(IR_TICK_HI, (tick >> 16) & 0xFFFF)

    low = decode_level(holding[HR_LOW_SP])
    high = decode_level(holding[HR_HIGH_SP])
    if low < high:
        state.low_sp = low
        state.high_sp = high
        state._warned_invalid = False
    elif not state._warned_invalid:
        log.warning("ignoring setpoints low=%.2f high=%.2f (low must be below high)",
                    low, high)
        state._warned_invalid = True

    if holding[HR_MODE] == MODE_AUTO:
        if reported_level <= state.low_sp:
            state.fill_cmd = True
        elif reported_level >= state.high_sp:
            state.fill_cmd = False
    else:
        state.fill_cmd = holding[HR_FILL_MANUAL] != 0

    drain_cmd = holding[HR_DRAIN] != 0
    image.set_input(IR_FILL, 1 if state.fill_cmd else 0)
    return state.fill_cmd, drain_cmd


def consume_flags(image: RegisterImage) -> tuple[bool, bool]:
    """Read (enroll, temporal_reset); the reset flag is one-shot."""
    with image._lock:
        enroll = image._holding[HR_ENROLL] != 0
        reset = image._holding[HR_RESET] != 0
        image._holding[HR_RESET] = 0
    return enroll, reset
