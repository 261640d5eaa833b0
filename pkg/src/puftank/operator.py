"""Scripted operator driving the plant over the Modbus wire.

Every action is a real FC 0x10 frame writing HR0..HR2 (setpoints and
drain command). In deterministic runs the frames pass through an
in-process transport at tick boundaries; live runs use a TCP transport
against the served port. Waits elapse in simulation time so the cadence
scales with acceleration.
"""

from __future__ import annotations

import logging
import random
import socket
import struct
import time
from dataclasses import dataclass

from .plc import FIXED_POINT_SCALE, HR_LOW_SP, UNIT_ID, RegisterImage
from .modbus import handle_frame
from .rng import round_half_up

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorPolicy:
    low_range: tuple[float, float] = (30.0, 80.0)
    high_range: tuple[float, float] = (200.0, 280.0)
    action_period: tuple[float, float] = (5.0, 30.0)
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.low_range[0] <= self.low_range[1] < self.high_range[0]
                <= self.high_range[1]):
            raise ValueError("low_range must lie entirely below high_range")
        if self.action_period[0] <= 0 or self.action_period[1] < self.action_period[0]:
            raise ValueError("action_period must be a positive interval")


@dataclass(frozen=True)
class OperatorAction:
    t: float
    low_sp: float
    high_sp: float
    drain: int


class InProcessTransport:
    """Sends ADUs straight through the frame handler; deterministic."""

    def __init__(self, image: RegisterImage) -> None:
        self._image = image

    def exchange(self, request: bytes) -> bytes | None:
        return handle_frame(self._image, request)


class TcpTransport:
    """TCP client with bounded reconnect for live runs."""

    def __init__(self, host: str, port: int, retries: int = 3,
                 timeout: float = 2.0) -> None:
        self._host = host
        self._port = port
        self._retries = retries
        self._timeout = timeout
        self._sock: socket.socket | None = None

    def _connect(self) -> None:
        self._sock = socket.create_connection((self._host, self._port),
                                              timeout=self._timeout)

    def exchange(self, request: bytes) -> bytes | None:
        for attempt in range(self._retries):
            try:
                if self._sock is None:
                    self._connect()
                assert self._sock is not None
                self._sock.sendall(request)
                header = self._recv_exact(6)
                length = struct.unpack(">H", header[4:6])[0]
                return header + self._recv_exact(length)
            except OSError:
                self.close()
                if attempt + 1 < self._retries:
                    time.sleep(0.1 * (attempt + 1))
        log.warning("operator write lost after %d attempts", self._retries)
        return None

    def _recv_exact(self, n: int) -> bytes:
        assert self._sock is not None
        data = b""
        while len(data) < n:
            chunk = self._sock.recv(n - len(data))
            if not chunk:
                raise OSError("connection closed")
            data += chunk
        return data

    def close(self) -> None:
        if self._sock is not None:
            try:
                self._sock.close()
            except OSError:
                pass
            self._sock = None


def setpoint_frame(txn: int, low_sp: float, high_sp: float, drain: int) -> bytes:
    """FC 0x10 ADU writing HR0..HR2 in one atomic request."""
    values = (
        round_half_up(low_sp * FIXED_POINT_SCALE),
        round_half_up(high_sp * FIXED_POINT_SCALE),
        1 if drain else 0,
    )
    pdu = struct.pack(">BHHB3H", 0x10, HR_LOW_SP, 3, 6, *values)
    return struct.pack(">HHHB", txn & 0xFFFF, 0, 1 + len(pdu), UNIT_ID) + pdu


class Operator:
    """Draws setpoints/drain on a random cadence and writes them."""

    def __init__(self, policy: OperatorPolicy, transport) -> None:
        self.policy = policy
        self.transport = transport
        self._rng = random.Random(policy.seed)
        self._next_action_t = 0.0
        self._txn = 0
        self.actions: list[OperatorAction] = []

    def step(self, sim_time: float) -> OperatorAction | None:
        """Acts when the next scheduled time has arrived."""
        if sim_time < self._next_action_t:
            return None
        rng = self._rng
        low = rng.uniform(*self.policy.low_range)
        high = rng.uniform(*self.policy.high_range)
        drain = 1 if rng.random() < 0.5 else 0
        self._next_action_t = sim_time + rng.uniform(*self.policy.action_period)
        self._txn += 1
        response = self.transport.exchange(setpoint_frame(self._txn, low, high, drain))
        if response is None:
            log.warning("operator action at t=%.3f not delivered", sim_time)
        action = OperatorAction(t=sim_time, low_sp=low, high_sp=high, drain=drain)
        self.actions.append(action)
        return action
