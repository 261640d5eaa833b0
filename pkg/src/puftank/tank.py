"""Water-tank plant model and the analog sensor transduction path.

The plant is first-order with constant fill/drain rates, integrated by
explicit Euler at a fixed tick. Between valve switching events Euler is
exact, so there is no integration error to tune.

The sensor path is level -> voltage (with additive gaussian noise,
clamped to the rail) -> reported level. Over-range headroom above full
scale lets saturation faults report readings past capacity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import normal_at


@dataclass(frozen=True)
class TankParams:
    capacity: float = 300.0
    fill_rate: float = 6.0
    drain_rate: float = 2.5
    dt: float = 1.0 / 15.0

    def __post_init__(self) -> None:
        if self.capacity <= 0:
            raise ValueError("capacity must be positive")
        if not (self.fill_rate > self.drain_rate > 0):
            raise ValueError("need fill_rate > drain_rate > 0")
        if self.dt <= 0:
            raise ValueError("dt must be positive")


@dataclass
class TankState:
    level: float = 0.0
    fill_open: bool = False
    drain_open: bool = False
    tick: int = 0


@dataclass(frozen=True)
class SensorModel:
    v_max: float = 10.0
    v_rail: float = 11.0
    noise_sigma: float = 0.005  # volts; 0.15 level-units at default scaling
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not (self.v_rail >= self.v_max > 0):
            raise ValueError("need v_rail >= v_max > 0")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")


@dataclass(frozen=True)
class SensorSample:
    true_level: float
    voltage: float
    reported_level: float


def step_tank(state: TankState, params: TankParams, fill_cmd: bool, drain_cmd: bool) -> TankState:
    """Advance one tick; level stays clamped to [0, capacity]."""
    delta = 0.0
    if fill_cmd:
        delta += params.fill_rate * params.dt
    if drain_cmd:
        delta -= params.drain_rate * params.dt
    level = min(max(state.level + delta, 0.0), params.capacity)
    return TankState(level=level, fill_open=fill_cmd, drain_open=drain_cmd, tick=state.tick + 1)


def transduce(true_level: float, sensor: SensorModel, params: TankParams, tick: int) -> float:
    """Level to sensor voltage, with per-tick noise keyed by (seed, tick)."""
    v = true_level * sensor.v_max / params.capacity
    if sensor.noise_sigma > 0.0:
        v += sensor.noise_sigma * normal_at(sensor.rng_seed, tick)
    return min(max(v, 0.0), sensor.v_rail)


def to_reported(voltage: float, sensor: SensorModel, params: TankParams) -> float:
    """Inverse transduction; over-range voltages map above capacity."""
    return voltage * params.capacity / sensor.v_max
