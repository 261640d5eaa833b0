"""Scripted faults and attacks on the sensor voltage path.

Injection sits between transduction and the PLC input register, so the
plant always evolves on the true level while the controller and the
verifier only ever see the corrupted reading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .tank import SensorModel, TankParams


class FaultKind(str, Enum):
    SPIKE = "spike"
    HARDOVER_POS = "hardover_pos"
    HARDOVER_NEG = "hardover_neg"
    TROJAN = "trojan"


@dataclass(frozen=True)
class FaultEvent:
    kind: FaultKind
    t_start: float
    duration: float
    magnitude: float = 100.0  # level-units; ignored for hard-over

    def __post_init__(self) -> None:
        if self.t_start < 0:
            raise ValueError("t_start must be non-negative")
        if self.duration <= 0:
            raise ValueError("duration must be positive")

    def active_at(self, t: float) -> bool:
        return self.t_start <= t < self.t_start + self.duration


@dataclass(frozen=True)
class FaultScript:
    events: tuple[FaultEvent, ...] = ()
    trojan_dormancy: float = 3600.0

    def __post_init__(self) -> None:
        by_kind: dict[FaultKind, list[FaultEvent]] = {}
        for event in self.events:
            by_kind.setdefault(event.kind, []).append(event)
        for kind, events in by_kind.items():
            events = sorted(events, key=lambda e: e.t_start)
            for a, b in zip(events, events[1:]):
                if a.t_start + a.duration > b.t_start:
                    raise ValueError(f"overlapping {kind.value} events")

    def active_event(self, t: float) -> FaultEvent | None:
        for event in self.events:
            if not event.active_at(t):
                continue
            if event.kind is FaultKind.TROJAN and t < self.trojan_dormancy:
                continue
            return event
        return None


def apply(voltage: float, t: float, script: FaultScript,
          sensor: SensorModel, params: TankParams) -> float:
    """Corrupt the sensor voltage if an event is active at time t."""
    event = script.active_event(t)
    if event is None:
        return voltage
    if event.kind is FaultKind.HARDOVER_POS:
        return sensor.v_rail
    if event.kind is FaultKind.HARDOVER_NEG:
        return 0.0
    offset = event.magnitude * sensor.v_max / params.capacity
    if event.kind is FaultKind.TROJAN:
        offset = -offset
    return min(max(voltage + offset, 0.0), sensor.v_rail)


def _spread_events(kind: FaultKind, durations, scenario_duration: float,
                   magnitude: float = 100.0) -> tuple[FaultEvent, ...]:
    fractions = (0.2, 0.5, 0.8)
    return tuple(
        FaultEvent(kind=kind, t_start=scenario_duration * f, duration=d,
                   magnitude=magnitude)
        for f, d in zip(fractions, durations)
    )


def paper_scenarios() -> dict[str, FaultScript]:
    """The four reference fault scripts with their published durations.

    Trojan dormancy is scaled to 60 s for desk runs; the full-scale
    value is 3600 s (one hour before first activation).
    """
    return {
        "spike3": FaultScript(
            events=_spread_events(FaultKind.SPIKE, (4.59, 4.89, 4.94), 300.0),
            trojan_dormancy=60.0,
        ),
        "hardover_pos3": FaultScript(
            events=_spread_events(FaultKind.HARDOVER_POS, (70.49, 87.99, 77.16), 900.0),
            trojan_dormancy=60.0,
        ),
        "hardover_neg3": FaultScript(
            events=_spread_events(FaultKind.HARDOVER_NEG, (59.51, 59.32, 57.87), 900.0),
            trojan_dormancy=60.0,
        ),
        "trojan3": FaultScript(
            events=_spread_events(FaultKind.TROJAN, (76.31, 71.24, 85.07), 600.0),
            trojan_dormancy=60.0,
        ),
    }
