"""Run-log rows and their CSV form.

Formatting is pinned: identical rows always serialize to identical
bytes, which is what the replay check compares.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

LOG_HEADER = [
    "tick", "time_s", "true_level", "reported_level", "fill", "drain",
    "low_sp", "high_sp", "mode", "code", "temporal_diff", "fault_active",
]


@dataclass(frozen=True)
class LogRow:
    tick: int
    time_s: float
    true_level: float
    reported_level: float
    fill: int
    drain: int
    low_sp: float
    high_sp: float
    mode: int
    code: int
    temporal_diff: float
    fault_active: int

    def format(self) -> list[str]:
        return [
            str(self.tick),
            f"{self.time_s:.6f}",
            f"{self.true_level:.6f}",
            f"{self.reported_level:.2f}",
            str(self.fill),
            str(self.drain),
            f"{self.low_sp:.2f}",
            f"{self.high_sp:.2f}",
            str(self.mode),
            str(self.code),
            f"{self.temporal_diff:.6f}",
            str(self.fault_active),
        ]


def write_log(rows, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(LOG_HEADER)
        for row in rows:
            writer.writerow(row.format())


def read_log(path: str | Path) -> list[LogRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != LOG_HEADER:
            raise ValueError("unrecognized log header")
        for rec in reader:
            rows.append(LogRow(
                tick=int(rec[0]),
                time_s=float(rec[1]),
                true_level=float(rec[2]),
                reported_level=float(rec[3]),
                fill=int(rec[4]),
                drain=int(rec[5]),
                low_sp=float(rec[6]),
                high_sp=float(rec[7]),
                mode=int(rec[8]),
                code=int(rec[9]),
                temporal_diff=float(rec[10]),
                fault_active=int(rec[11]),
            ))
    return rows
