"""Modbus-TCP server over the PLC register image.

Implements function codes 0x03 (read holding), 0x04 (read input),
0x06 (write single holding), 0x10 (write multiple holding) with MBAP
framing and standard exception responses. Malformed frames close the
connection; protocol-level errors answer with exception code 0x01
(illegal function), 0x02 (illegal data address), or 0x03 (illegal data
value).
"""

from __future__ import annotations

import logging
import socketserver
import struct
import threading

from .plc import RegisterImage

log = logging.getLogger(__name__)

FC_READ_HOLDING = 0x03
FC_READ_INPUT = 0x04
FC_WRITE_SINGLE = 0x06
FC_WRITE_MULTIPLE = 0x10

EX_ILLEGAL_FUNCTION = 0x01
EX_ILLEGAL_ADDRESS = 0x02
EX_ILLEGAL_VALUE = 0x03

MBAP_LEN = 7
MAX_ADU = 260


def _exception(txn: int, unit: int, fc: int, code: int) -> bytes:
    return struct.pack(">HHHBBB", txn, 0, 3, unit, fc | 0x80, code)


def handle_frame(image: RegisterImage, frame: bytes) -> bytes | None:
    """One request ADU in, one response ADU out; None closes the link."""
    if len(frame) < MBAP_LEN + 1 or len(frame) > MAX_ADU:
        return None
    txn, proto, length = struct.unpack(">HHH", frame[:6])
    unit = frame[6]
    if proto != 0 or length != len(frame) - 6:
        return None
    pdu = frame[7:]
    fc = pdu[0]

    if fc in (FC_READ_HOLDING, FC_READ_INPUT):
        if len(pdu) != 5:
            return None
        addr, qty = struct.unpack(">HH", pdu[1:5])
        if not (1 <= qty <= 125):
            return _exception(txn, unit, fc, EX_ILLEGAL_VALUE)
        try:
            if fc == FC_READ_HOLDING:
                values = image.read_holding(addr, qty)
            else:
                values = image.read_input(addr, qty)
        except IndexError:
            return _exception(txn, unit, fc, EX_ILLEGAL_ADDRESS)
        payload = struct.pack(">B", 2 * qty) + struct.pack(f">{qty}H", *values)
        header = struct.pack(">HHHBB", txn, 0, 2 + len(payload), unit, fc)
        return header + payload

    if fc == FC_WRITE_SINGLE:
        if len(pdu) != 5:
            return None
        addr, value = struct.unpack(">HH", pdu[1:5])
        try:
            image.write_holding(addr, value)
        except IndexError:
            return _exception(txn, unit, fc, EX_ILLEGAL_ADDRESS)
        return frame  # 0x06 echoes the request

    if fc == FC_WRITE_MULTIPLE:
        if len(pdu) < 6:
            return None
        addr, qty, byte_count = struct.unpack(">HHB", pdu[1:6])
        if not (1 <= qty <= 123) or byte_count != 2 * qty:
            return _exception(txn, unit, fc, EX_ILLEGAL_VALUE)
        if len(pdu) != 6 + byte_count:
            return None
        values = list(struct.unpack(f">{qty}H", pdu[6:6 + byte_count]))
        try:
            image.write_holding_multi(addr, values)
        except IndexError:
            return _exception(txn, unit, fc, EX_ILLEGAL_ADDRESS)
        header = struct.pack(">HHHBB", txn, 0, 6, unit, fc)
        return header + struct.pack(">HH", addr, qty)

    return _exception(txn, unit, fc, EX_ILLEGAL_FUNCTION)


class _Handler(socketserver.BaseRequestHandler):
    def handle(self) -> None:
        sock = self.request
        while True:
            header = self._read_exact(sock, MBAP_LEN)
            if header is None:
                return
            _, proto, length = struct.unpack(">HHH", header[:6])
            if proto != 0 or not (2 <= length <= MAX_ADU - 6):
                return
            body = self._read_exact(sock, length - 1)
            if body is None:
                return
            response = handle_frame(self.server.image, header + body)
            if response is None:
                return
            try:
                sock.sendall(response)
            except OSError:
                return

    @staticmethod
    def _read_exact(sock, n: int) -> bytes | None:
        data = b""
        while len(data) < n:
            try:
                chunk = sock.recv(n - len(data))
            except OSError:
                return None
            if not chunk:
                return None
            data += chunk
        return data


class _Server(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address, image: RegisterImage) -> None:
        super().__init__(address, _Handler)
        self.image = image


class ModbusServer:
    """Threaded TCP server; serves until stop()."""

    def __init__(self, image: RegisterImage, host: str = "127.0.0.1",
                 port: int = 1502) -> None:
        self._server = _Server((host, port), image)
        self._thread = threading.Thread(target=self._server.serve_forever,
                                        name="modbus-server", daemon=True)

    @property
    def port(self) -> int:
        return self._server.server_address[1]

    def start(self) -> None:
        self._thread.start()
        log.info("modbus server listening on port %d", self.port)

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()
