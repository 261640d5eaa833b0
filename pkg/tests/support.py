"""Shared test helpers.

Holds the independently written pieces the suite checks the package
against: a from-scratch Modbus-TCP client (shares no code with the
server module) and a dense analytic THD oracle (no tabulation, no
interpolation, different summation order). Also collects the acceptance
verdict lines that conftest prints at the end of the run.
"""

from __future__ import annotations

import math
import socket
import struct

import numpy as np

ACCEPTANCE_VERDICTS: list[str] = []


def record_verdict(criterion: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_VERDICTS.append(line)
    print(line)
    assert ok, line


class ModbusError(Exception):
    def __init__(self, function: int, code: int) -> None:
        super().__init__(f"modbus exception: function 0x{function:02X} code 0x{code:02X}")
        self.function = function
        self.code = code


class ModbusTcpClient:
    """Minimal independent Modbus-TCP master for interoperability checks.

    Frames are built and parsed here from the published protocol layout
    (MBAP header: transaction, protocol 0, length, unit; then PDU).
    """

    def __init__(self, host: str, port: int, unit: int = 1,
                 timeout: float = 5.0) -> None:
        self._sock = socket.create_connection((host, port), timeout=timeout)
        self._unit = unit
        self._txn = 0

    def close(self) -> None:
        self._sock.close()

    def __enter__(self) -> "ModbusTcpClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _request(self, pdu: bytes) -> bytes:
        self._txn = (self._txn + 1) & 0xFFFF
        adu = struct.pack(">HHHB", self._txn, 0, len(pdu) + 1, self._unit) + pdu
        self._sock.sendall(adu)
        header = self._recv(7)
        txn, proto, length, unit = struct.unpack(">HHHB", header)
        if txn != self._txn or proto != 0 or unit != self._unit:
            raise ValueError("response header does not match request")
        body = self._recv(length - 1)
        if body[0] & 0x80:
            raise ModbusError(body[0] & 0x7F, body[1])
        if body[0] != pdu[0]:
            raise ValueError("function code mismatch in response")
        return body

    def _recv(self, n: int) -> bytes:
        data = b""
        while len(data) < n:
            chunk = self._sock.recv(n - len(data))
            if not chunk:
                raise ConnectionError("server closed the connection")
            data += chunk
        return data

    def _read(self, fc: int, addr: int, count: int) -> list[int]:
        body = self._request(struct.pack(">BHH", fc, addr, count))
        byte_count = body[1]
        if byte_count != 2 * count or len(body) != 2 + byte_count:
            raise ValueError("malformed read response")
        return list(struct.unpack(f">{count}H", body[2:]))

    def read_holding(self, addr: int, count: int = 1) -> list[int]:
        return self._read(0x03, addr, count)

    def read_input(self, addr: int, count: int = 1) -> list[int]:
        return self._read(0x04, addr, count)

    def write_single(self, addr: int, value: int) -> None:
        body = self._request(struct.pack(">BHH", 0x06, addr, value))
        if body != struct.pack(">BHH", 0x06, addr, value):
            raise ValueError("write-single echo mismatch")

    def write_multiple(self, addr: int, values: list[int]) -> None:
        pdu = struct.pack(f">BHHB{len(values)}H", 0x10, addr, len(values),
                          2 * len(values), *values)
        body = self._request(pdu)
        echo_addr, echo_qty = struct.unpack(">HH", body[1:5])
        if echo_addr != addr or echo_qty != len(values):
            raise ValueError("write-multiple acknowledgment mismatch")


def oracle_thd(v_m: float, g: float, v_dd: float, lo: float, hi: float,
               n_probes: int = 65536, harmonics: int = 5) -> float:
    """Reference THD from the analytic logistic curve, densely probed.

    No tabulated samples and no interpolation: the transfer function is
    evaluated exactly at every probe angle, and each harmonic projection
    is a single vectorized dot product.
    """
    theta = 2.0 * math.pi * np.arange(n_probes) / n_probes
    center = 0.5 * (lo + hi)
    amp = 0.5 * (hi - lo)
    v_in = center + amp * np.cos(theta)
    v_out = v_dd / (1.0 + np.exp(g * (v_in - v_m)))
    coeffs = [
        (2.0 / n_probes) * float(np.dot(v_out, np.cos(k * theta)))
        for k in range(1, harmonics + 1)
    ]
    fundamental = abs(coeffs[0])
    if fundamental < 1e-12:
        return math.nan
    return math.sqrt(sum(c * c for c in coeffs[1:])) / fundamental
