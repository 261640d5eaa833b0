"""Scenario configuration: the declarative description of one run.

A scenario JSON file fixes everything a run needs — physics, sensor,
verifier, operator policy, fault script, enrollment choreography, PUF
provenance — so that two executions of the same file are bit-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..faults import FaultEvent, FaultKind, FaultScript
from ..operator import OperatorPolicy
from ..puf.device import DeviceModel, synthesize_device
from ..puf.lut import LutTable, lut_from_json, provision_lut_cached
from ..rng import derive_seeds
from ..tank import SensorModel, TankParams
from ..verifier import VerifierConfig


@dataclass(frozen=True)
class EnrollmentPlan:
    auto_ops_duration: float = 600.0
    sweep: bool = True

    def __post_init__(self) -> None:
        if self.auto_ops_duration < 0:
            raise ValueError("auto_ops_duration must be non-negative")


@dataclass(frozen=True)
class PufPlan:
    device_seed: int
    population_seed: int = 0xC0FFEE
    population_size: int = 100
    lut_path: str | None = None

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValueError("population_size must be positive")


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int
    duration_s: float
    tick_hz: float = 15.0
    acceleration: float = 0.0
    initial_level: float = 150.0
    mode_auto: bool = True
    initial_drain: bool = True
    fixed_setpoints: tuple[float, float] = (50.0, 250.0)
    tank: TankParams = field(default_factory=TankParams)
    sensor: SensorModel = field(default_factory=SensorModel)
    verifier: VerifierConfig = field(default_factory=VerifierConfig)
    operator: OperatorPolicy | None = None
    faults: FaultScript = field(default_factory=FaultScript)
    enrollment: EnrollmentPlan = field(default_factory=EnrollmentPlan)
    puf: PufPlan = field(default_factory=lambda: PufPlan(device_seed=1))
    reset_after_clear_s: float | None = None

    def __post_init__(self) -> None:
        if self.duration_s <= 0:
            raise ValueError("duration_s must be positive")
        if self.tick_hz <= 0:
            raise ValueError("tick_hz must be positive")
        if self.acceleration < 0:
            raise ValueError("acceleration must be non-negative")
        if not (0 <= self.initial_level <= self.tank.capacity):
            raise ValueError("initial_level outside the tank range")
        low, high = self.fixed_setpoints
        if not (0 <= low < high <= self.tank.capacity):
            raise ValueError("fixed_setpoints must satisfy 0 <= low < high <= capacity")
        if abs(self.tank.dt * self.tick_hz - 1.0) > 1e-9:
            raise ValueError("tank.dt must equal 1/tick_hz")

    @property
    def dt(self) -> float:
        return self.tank.dt

    def total_ticks(self) -> int:
        return int(round(self.duration_s * self.tick_hz))


def _faults_from_doc(doc: dict) -> FaultScript:
    events = tuple(
        FaultEvent(
            kind=FaultKind(e["kind"]),
            t_start=float(e["t_start"]),
            duration=float(e["duration"]),
            magnitude=float(e.get("magnitude", 100.0)),
        )
        for e in doc.get("events", [])
    )
    return FaultScript(events=events,
                       trojan_dormancy=float(doc.get("trojan_dormancy", 3600.0)))


def _faults_to_doc(script: FaultScript) -> dict:
    return {
        "trojan_dormancy": script.trojan_dormancy,
        "events": [
            {
                "kind": e.kind.value,
                "t_start": e.t_start,
                "duration": e.duration,
                "magnitude": e.magnitude,
            }
            for e in script.events
        ],
    }


def scenario_from_doc(doc: dict) -> ScenarioConfig:
    master_seed = int(doc["seed"])
    derived = derive_seeds(master_seed, 2)
    tick_hz = float(doc.get("tick_hz", 15.0))

    tank_doc = doc.get("tank", {})
    tank = TankParams(
        capacity=float(tank_doc.get("capacity", 300.0)),
        fill_rate=float(tank_doc.get("fill_rate", 6.0)),
        drain_rate=float(tank_doc.get("drain_rate", 2.5)),
        dt=1.0 / tick_hz,
    )

    sensor_doc = doc.get("sensor", {})
    sensor = SensorModel(
        v_max=float(sensor_doc.get("v_max", 10.0)),
        v_rail=float(sensor_doc.get("v_rail", 11.0)),
        noise_sigma=float(sensor_doc.get("noise_sigma", 0.005)),
        rng_seed=int(sensor_doc.get("rng_seed", derived[0])),
    )

    verifier_doc = doc.get("verifier", {})
    verifier_kwargs = {}
    if "thresholds" in verifier_doc:
        verifier_kwargs["thresholds"] = tuple(float(t) for t in verifier_doc["thresholds"])
    for key in ("tolerance", "temporal_margin"):
        if key in verifier_doc:
            verifier_kwargs[key] = float(verifier_doc[key])
    for key in ("queue_len", "response_tolerance"):
        if key in verifier_doc:
            verifier_kwargs[key] = int(verifier_doc[key])
    verifier = VerifierConfig(**verifier_kwargs)

    operator = None
    operator_doc = doc.get("operator")
    if operator_doc is not None:
        operator = OperatorPolicy(
            low_range=tuple(float(x) for x in operator_doc.get("low_range", (30.0, 80.0))),
            high_range=tuple(float(x) for x in operator_doc.get("high_range", (200.0, 280.0))),
            action_period=tuple(float(x) for x in operator_doc.get("action_period", (5.0, 30.0))),
            seed=int(operator_doc.get("seed", derived[1])),
        )

    enrollment_doc = doc.get("enrollment", {})
    enrollment = EnrollmentPlan(
        auto_ops_duration=float(enrollment_doc.get("auto_ops_duration", 600.0)),
        sweep=bool(enrollment_doc.get("sweep", True)),
    )

    puf_doc = doc["puf"]
    puf = PufPlan(
        device_seed=int(puf_doc["device_seed"]),
        population_seed=int(puf_doc.get("population_seed", 0xC0FFEE)),
        population_size=int(puf_doc.get("population_size", 100)),
        lut_path=puf_doc.get("lut_path"),
    )

    reset_after = doc.get("reset_after_clear_s")
    return ScenarioConfig(
        seed=master_seed,
        duration_s=float(doc["duration_s"]),
        tick_hz=tick_hz,
        acceleration=float(doc.get("acceleration", 0.0)),
        initial_level=float(doc.get("initial_level", 150.0)),
        mode_auto=doc.get("mode", "auto") == "auto",
        initial_drain=bool(doc.get("initial_drain", True)),
        fixed_setpoints=tuple(float(x) for x in doc.get("fixed_setpoints", (50.0, 250.0))),
        tank=tank,
        sensor=sensor,
        verifier=verifier,
        operator=operator,
        faults=_faults_from_doc(doc.get("faults", {})),
        enrollment=enrollment,
        puf=puf,
        reset_after_clear_s=None if reset_after is None else float(reset_after),
    )


def scenario_to_doc(cfg: ScenarioConfig) -> dict:
    """Fully resolved document: every field explicit, replay-ready."""
    doc = {
        "seed": cfg.seed,
        "duration_s": cfg.duration_s,
        "tick_hz": cfg.tick_hz,
        "acceleration": cfg.acceleration,
        "initial_level": cfg.initial_level,
        "mode": "auto" if cfg.mode_auto else "manual",
        "initial_drain": cfg.initial_drain,
        "fixed_setpoints": list(cfg.fixed_setpoints),
        "tank": {
            "capacity": cfg.tank.capacity,
            "fill_rate": cfg.tank.fill_rate,
            "drain_rate": cfg.tank.drain_rate,
        },
        "sensor": {
            "v_max": cfg.sensor.v_max,
            "v_rail": cfg.sensor.v_rail,
            "noise_sigma": cfg.sensor.noise_sigma,
            "rng_seed": cfg.sensor.rng_seed,
        },
        "verifier": {
            "thresholds": list(cfg.verifier.thresholds),
            "tolerance": cfg.verifier.tolerance,
            "queue_len": cfg.verifier.queue_len,
            "temporal_margin": cfg.verifier.temporal_margin,
            "response_tolerance": cfg.verifier.response_tolerance,
        },
        "operator": None,
        "faults": _faults_to_doc(cfg.faults),
        "enrollment": {
            "auto_ops_duration": cfg.enrollment.auto_ops_duration,
            "sweep": cfg.enrollment.sweep,
        },
        "puf": {
            "device_seed": cfg.puf.device_seed,
            "population_seed": cfg.puf.population_seed,
            "population_size": cfg.puf.population_size,
            "lut_path": cfg.puf.lut_path,
        },
        "reset_after_clear_s": cfg.reset_after_clear_s,
    }
    if cfg.operator is not None:
        doc["operator"] = {
            "low_range": list(cfg.operator.low_range),
            "high_range": list(cfg.operator.high_range),
            "action_period": list(cfg.operator.action_period),
            "seed": cfg.operator.seed,
        }
    return doc


def load_scenario(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    cfg = scenario_from_doc(json.loads(path.read_text()))
    if cfg.puf.lut_path is not None:
        resolved = (path.parent / cfg.puf.lut_path).resolve()
        cfg = replace_lut_path(cfg, str(resolved))
    return cfg


def replace_lut_path(cfg: ScenarioConfig, lut_path: str | None) -> ScenarioConfig:
    from dataclasses import replace

    return replace(cfg, puf=replace(cfg.puf, lut_path=lut_path))


def resolve_puf(cfg: ScenarioConfig) -> tuple[DeviceModel, LutTable]:
    """Build the scenario's device and LUT (from file when pinned)."""
    device = synthesize_device(cfg.puf.device_seed)
    if cfg.puf.lut_path is not None:
        lut = lut_from_json(Path(cfg.puf.lut_path).read_text())
    else:
        seeds = tuple(derive_seeds(cfg.puf.population_seed, cfg.puf.population_size))
        lut = provision_lut_cached(seeds, device.v_dd)
    return device, lut
