"""HTTP/WebSocket gateway over a live simulation.

The REST surface is the only interface the HMI consumes: a state
snapshot, register writes, enrollment/reset controls, and what-if fault
injection. The WebSocket pushes the same snapshot every 100 ms of wall
time.
"""

from __future__ import annotations

import asyncio
import threading
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from ..faults import FaultEvent, FaultKind, FaultScript
from ..modbus import ModbusServer
from ..plc import HOLDING_COUNT, HR_ENROLL, HR_RESET
from ..verifier import EnrollmentTable, enrollment_coverage
from .loop import SimRun
from .scenario import ScenarioConfig

SNAPSHOT_PERIOD_S = 0.1


class LiveSim:
    """Background-threaded SimRun with a thread-safe control surface."""

    def __init__(self, cfg: ScenarioConfig, table: EnrollmentTable | None = None,
                 device=None, lut=None) -> None:
        self.cfg = cfg
        enroll = table is None or not table.pairs
        self.sim = SimRun(cfg, table=table, enroll=enroll, device=device, lut=lut)
        self._lock = threading.Lock()
        self._stop = threading.Event()
        self._thread = threading.Thread(target=self._run, name="sim-loop",
                                        daemon=True)

    def start(self) -> None:
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        self._thread.join(timeout=5.0)

    def _run(self) -> None:
        total = self.cfg.total_ticks()
        accel = self.cfg.acceleration
        start = time.monotonic()
        while not self._stop.is_set() and self.sim.tick_index < total:
            with self._lock:
                self.sim.tick()
            if accel > 0:
                lag = self.sim.sim_time / accel - (time.monotonic() - start)
                if lag > 0:
                    time.sleep(min(lag, 0.5))

    def snapshot(self) -> dict:
        with self._lock:
            sim = self.sim
            ir, hr = sim.image.snapshot()
            row = sim.rows[-1] if sim.rows else None
            table = sim.verifier.table
            return {
                "sim_time": sim.sim_time,
                "true_level": sim.tank_state.level,
                "reported_level": row.reported_level if row else None,
                "registers": {"ir": list(ir), "hr": list(hr)},
                "code": row.code if row else None,
                "temporal": {
                    "diff": row.temporal_diff if row else 0.0,
                    "enrolled_max": table.max_temporal_diff,
                    "latched": sim.verifier.latched_fail,
                },
                "enrollment_coverage": enrollment_coverage(table, sim.cfg.verifier),
                "running": self._thread.is_alive() and sim.tick_index < self.cfg.total_ticks(),
            }

    def write_register(self, addr: int, value: int) -> None:
        if not (0 <= addr < HOLDING_COUNT):
            raise IndexError("holding register address out of range")
        with self._lock:
            self.sim.image.write_holding(addr, value)

    def set_enroll(self, on: bool) -> None:
        with self._lock:
            if not on and not self.sim.verifier.table.pairs:
                raise ValueError("cannot leave enrollment before any pair is stored")
            self.sim.image.write_holding(HR_ENROLL, 1 if on else 0)

    def reset_temporal(self) -> None:
        with self._lock:
            self.sim.image.write_holding(HR_RESET, 1)

    def inject(self, kind: str, duration: float, magnitude: float) -> FaultEvent:
        event_kind = FaultKind(kind)
        with self._lock:
            event = FaultEvent(kind=event_kind, t_start=self.sim.sim_time,
                               duration=duration, magnitude=magnitude)
            script = self.sim.script
            self.sim.script = FaultScript(events=script.events + (event,),
                                          trojan_dormancy=script.trojan_dormancy)
            return event


class RegisterWrite(BaseModel):
    addr: int
    value: int


class EnrollToggle(BaseModel):
    on: bool


class InjectRequest(BaseModel):
    kind: str
    duration: float = 5.0
    magnitude: float = 100.0


def default_ui_dir() -> Path | None:
    """Built HMI bundle (frontend/dist), present only in a source checkout."""
    dist = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    return dist if (dist / "index.html").is_file() else None


def build_app(live: LiveSim, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="puftank gateway")

    @app.get("/api/state")
    def state() -> dict:
        return live.snapshot()

    @app.post("/api/registers")
    def write_register(req: RegisterWrite) -> dict:
        try:
            live.write_register(req.addr, req.value)
        except IndexError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"ok": True}

    @app.post("/api/reset-temporal")
    def reset_temporal() -> dict:
        live.reset_temporal()
        return {"ok": True}

    @app.post("/api/enroll")
    def enroll(req: EnrollToggle) -> dict:
        try:
            live.set_enroll(req.on)
        except ValueError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {"ok": True}

    @app.post("/api/inject")
    def inject(req: InjectRequest) -> dict:
        try:
            event = live.inject(req.kind, req.duration, req.magnitude)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "ok": True,
            "event": {
                "kind": event.kind.value,
                "t_start": event.t_start,
                "duration": event.duration,
                "magnitude": event.magnitude,
            },
        }

    @app.websocket("/api/stream")
    async def stream(ws: WebSocket) -> None:
        await ws.accept()
        try:
            while True:
                await ws.send_json(live.snapshot())
                await asyncio.sleep(SNAPSHOT_PERIOD_S)
        except WebSocketDisconnect:
            pass

    if ui_dir is not None:
        # Mounted after the API routes so /api/* always wins the match.
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve_gateway(cfg: ScenarioConfig, table: EnrollmentTable | None,
                  host: str = "127.0.0.1", port: int = 8000,
                  modbus_port: int | None = 1502,
                  ui_dir: Path | None = None) -> None:
    """Run the live gateway (blocking) plus the Modbus service."""
    import uvicorn

    live = LiveSim(cfg, table=table)
    modbus = None
    if modbus_port is not None:
        modbus = ModbusServer(live.sim.image, host=host, port=modbus_port)
        modbus.start()
    live.start()
    try:
        uvicorn.run(build_app(live, ui_dir=ui_dir), host=host, port=port,
                    log_level="warning")
    finally:
        live.stop()
        if modbus is not None:
            modbus.stop()
