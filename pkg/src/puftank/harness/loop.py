"""Deterministic tick loop wiring plant, PLC, PUF, and verifier.

Fixed per-tick order: scheduled resets and operator/network writes,
flag consumption, tank step (on the previous scan's commands), sensor
transduction, fault injection, PLC scan, challenge/response, verifier
step, code write-back, log row. Everything downstream of the seeds is
bit-reproducible.
"""

from __future__ import annotations

import time

from .. import faults as fault_mod
from ..operator import InProcessTransport, Operator
from ..plc import (
    HR_CODE,
    HR_DRAIN,
    HR_ENROLL,
    HR_FILL_MANUAL,
    HR_HIGH_SP,
    HR_LOW_SP,
    HR_MODE,
    HR_RESET,
    MODE_AUTO,
    MODE_MANUAL,
    PlcState,
    RegisterImage,
    consume_flags,
    decode_level,
    encode_level,
    scan,
)
from ..puf.lut import respond
from ..puf.sweep import challenge_from_level
from ..rng import round_half_up
from ..tank import TankState, step_tank, to_reported, transduce
from ..verifier import (
    EnrollmentTable,
    IncompleteEnrollment,
    Verifier,
    VerifierInput,
    enrollment_coverage,
)
from .logio import LogRow
from .scenario import ScenarioConfig, resolve_puf


class SimRun:
    """One scenario execution; tick() advances a single step."""

    def __init__(self, cfg: ScenarioConfig, table: EnrollmentTable | None = None,
                 enroll: bool = False, device=None, lut=None) -> None:
        self.cfg = cfg
        if device is None or lut is None:
            device, lut = resolve_puf(cfg)
        self.device = device
        self.lut = lut
        self.image = RegisterImage()
        self.plc_state = PlcState()
        self.tank_state = TankState(level=cfg.initial_level,
                                    drain_open=cfg.initial_drain)
        self.verifier = Verifier(cfg.verifier,
                                 table.copy() if table is not None else EnrollmentTable())
        self.script = cfg.faults

        low, high = cfg.fixed_setpoints
        self.image.write_holding(HR_LOW_SP, encode_level(low))
        self.image.write_holding(HR_HIGH_SP, encode_level(high))
        self.image.write_holding(HR_DRAIN, 1 if cfg.initial_drain else 0)
        self.image.write_holding(HR_MODE, MODE_AUTO if cfg.mode_auto else MODE_MANUAL)
        self.image.write_holding(HR_ENROLL, 1 if enroll else 0)

        self.operator = None
        self.operator_enabled = False
        if cfg.operator is not None:
            self.operator = Operator(cfg.operator, InProcessTransport(self.image))
            self.operator_enabled = True

        self._pending_resets: list[float] = []
        if cfg.reset_after_clear_s is not None:
            self._pending_resets = sorted(
                e.t_start + e.duration + cfg.reset_after_clear_s
                for e in cfg.faults.events
            )

        self.fill_cmd = False
        self.drain_cmd = cfg.initial_drain
        self.tick_index = 0
        self.rows: list[LogRow] = []
        self._response_cache: dict[int, int] = {}

    @property
    def sim_time(self) -> float:
        return self.tick_index * self.cfg.tank.dt

    def _respond_cached(self, challenge: int) -> int:
        cached = self._response_cache.get(challenge)
        if cached is None:
            cached = respond(self.device, self.lut, challenge)
            self._response_cache[challenge] = cached
        return cached

    def tick(self) -> LogRow:
        cfg = self.cfg
        t = self.tick_index * cfg.tank.dt

        while self._pending_resets and t >= self._pending_resets[0]:
            self._pending_resets.pop(0)
            self.image.write_holding(HR_RESET, 1)
        if self.operator is not None and self.operator_enabled:
            self.operator.step(t)

        enroll_flag, temporal_reset = consume_flags(self.image)
        self.tank_state = step_tank(self.tank_state, cfg.tank,
                                    self.fill_cmd, self.drain_cmd)
        voltage = transduce(self.tank_state.level, cfg.sensor, cfg.tank,
                            self.tick_index)
        voltage = fault_mod.apply(voltage, t, self.script, cfg.sensor, cfg.tank)
        reported_raw = to_reported(voltage, cfg.sensor, cfg.tank)

        fill, drain = scan(self.image, self.plc_state, reported_raw,
                           self.tick_index)
        self.fill_cmd = fill
        self.drain_cmd = drain

        # The verifier sees exactly what the wire carries: IR0 fixed point.
        reported = decode_level(encode_level(reported_raw))
        key = round_half_up(reported)
        challenge = challenge_from_level(key, cfg.tank.capacity)
        response = self._respond_cached(challenge)
        out = self.verifier.step(
            VerifierInput(reported_level=reported, enroll_flag=enroll_flag,
                          temporal_reset=temporal_reset),
            response,
        )
        self.image.write_holding(HR_CODE, out.code)

        mode = self.image.read_holding(HR_MODE, 1)[0]
        row = LogRow(
            tick=self.tick_index,
            time_s=t,
            true_level=self.tank_state.level,
            reported_level=reported,
            fill=1 if fill else 0,
            drain=1 if drain else 0,
            low_sp=self.plc_state.low_sp,
            high_sp=self.plc_state.high_sp,
            mode=mode,
            code=out.code,
            temporal_diff=out.temporal_diff,
            fault_active=1 if self.script.active_event(t) is not None else 0,
        )
        self.rows.append(row)
        self.tick_index += 1
        return row


def run_enrollment(cfg: ScenarioConfig, device=None, lut=None) -> EnrollmentTable:
    """Two-phase enrollment: normal auto operation, then a full sweep.

    Phase A captures the temporal spread under realistic dynamics for
    the configured duration. Phase B fills to capacity and drains to
    empty in manual mode so every threshold window is crossed in both
    directions. Raises IncompleteEnrollment if coverage < 1.0.
    """
    if cfg.faults.events:
        raise ValueError("enrollment scenarios must not schedule faults")
    sim = SimRun(cfg, table=EnrollmentTable(), enroll=True, device=device, lut=lut)
    for _ in range(int(round(cfg.enrollment.auto_ops_duration * cfg.tick_hz))):
        sim.tick()

    if cfg.enrollment.sweep:
        sim.operator_enabled = False
        capacity = cfg.tank.capacity
        guard = sim.tick_index + int(
            (capacity / cfg.tank.fill_rate + capacity / cfg.tank.drain_rate)
            * cfg.tick_hz * 3
        ) + 10 * cfg.verifier.queue_len
        sim.image.write_holding(HR_MODE, MODE_MANUAL)
        sim.image.write_holding(HR_FILL_MANUAL, 1)
        sim.image.write_holding(HR_DRAIN, 0)
        while sim.tank_state.level < capacity and sim.tick_index < guard:
            sim.tick()
        sim.image.write_holding(HR_FILL_MANUAL, 0)
        sim.image.write_holding(HR_DRAIN, 1)
        while sim.tank_state.level > 0.0 and sim.tick_index < guard:
            sim.tick()

    table = sim.verifier.table
    coverage = enrollment_coverage(table, cfg.verifier)
    if coverage < 1.0:
        raise IncompleteEnrollment(
            f"enrollment covered {coverage:.3f} of threshold windows"
        )
    return table


def run_scenario(cfg: ScenarioConfig, table: EnrollmentTable,
                 device=None, lut=None) -> SimRun:
    """Authentication run over the configured duration."""
    if not table.pairs:
        raise ValueError("authentication runs need a non-empty enrollment table")
    sim = SimRun(cfg, table=table, enroll=False, device=device, lut=lut)
    total = cfg.total_ticks()
    if cfg.acceleration > 0:
        start = time.monotonic()
        for _ in range(total):
            sim.tick()
            lag = sim.sim_time / cfg.acceleration - (time.monotonic() - start)
            if lag > 0:
                time.sleep(lag)
    else:
        for _ in range(total):
            sim.tick()
    return sim
