"""Sensor verification: PUF authentication, temporal check, enrollment.

Output is a 3-bit code written to the PLC each tick:

* bit 0 — PUF authentication (level-keyed response matches the stored
  pair; retains its previous value when the level sits outside every
  threshold window).
* bit 1 — temporal authentication (max-min spread of the recent-reading
  queue within the enrolled bound; fails latched until an explicit
  reset).
* bit 2 — a new (level, response) pair was recorded this tick
  (enrollment mode only).

Normal operation reads 3; a temporal breach reads 1; a PUF mismatch
with healthy dynamics reads 2; enrollment reads 7 on each new pair.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .rng import round_half_up
from .puf.lut import response_from_hex, response_to_hex


class NotEnrolled(RuntimeError):
    """Authentication attempted with an empty enrollment table."""


class IncompleteEnrollment(RuntimeError):
    """Enrollment ended without covering every threshold window."""


@dataclass(frozen=True)
class VerifierConfig:
    thresholds: tuple[float, ...] = tuple(float(t) for t in range(0, 301, 20))
    tolerance: float = 2.0
    queue_len: int = 32
    # Headroom over the enrolled max spread. Gaussian sensor noise makes
    # the running extreme of a long run exceed any finite enrollment's
    # extreme with probability approaching 1, so a bare 1.0 multiplier
    # false-trips on clean data; 1.1 puts the gate ~9 sigma past it
    # while staying an order of magnitude below any scripted fault jump.
    temporal_margin: float = 1.1
    response_tolerance: int = 0  # Hamming slack for noisy-PUF studies

    def __post_init__(self) -> None:
        if len(self.thresholds) < 1:
            raise ValueError("need at least one threshold")
        spacings = [b - a for a, b in zip(self.thresholds, self.thresholds[1:])]
        if any(s <= 0 for s in spacings):
            raise ValueError("thresholds must be strictly increasing")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if spacings and 2 * self.tolerance >= min(spacings):
            raise ValueError("threshold windows must not overlap")
        if self.queue_len < 2:
            raise ValueError("queue_len must be at least 2")
        if self.temporal_margin <= 0:
            raise ValueError("temporal_margin must be positive")
        if self.response_tolerance < 0:
            raise ValueError("response_tolerance must be non-negative")


def nearest_threshold(level: float, cfg: VerifierConfig) -> float | None:
    """The unique threshold within tolerance of the level, if any."""
    for t in cfg.thresholds:
        if abs(level - t) <= cfg.tolerance:
            return t
    return None


@dataclass
class EnrollmentTable:
    pairs: dict[int, int] = field(default_factory=dict)
    max_temporal_diff: float = 0.0

    def copy(self) -> "EnrollmentTable":
        return EnrollmentTable(pairs=dict(self.pairs),
                               max_temporal_diff=self.max_temporal_diff)


def table_to_json(table: EnrollmentTable) -> str:
    pairs = [
        {"level": level, "response_hex": response_to_hex(resp)}
        for level, resp in sorted(table.pairs.items())
    ]
    return json.dumps(
        {"pairs": pairs, "max_temporal_diff": table.max_temporal_diff}, indent=2
    )


def table_from_json(text: str) -> EnrollmentTable:
    doc = json.loads(text)
    pairs: dict[int, int] = {}
    for entry in doc["pairs"]:
        level = int(entry["level"])
        if level in pairs:
            raise ValueError(f"duplicate enrollment key {level}")
        pairs[level] = response_from_hex(entry["response_hex"])
    diff = float(doc["max_temporal_diff"])
    if diff < 0:
        raise ValueError("max_temporal_diff must be non-negative")
    return EnrollmentTable(pairs=pairs, max_temporal_diff=diff)


def enrollment_coverage(table: EnrollmentTable, cfg: VerifierConfig) -> float:
    """Fraction of threshold windows holding at least one key."""
    covered = set()
    for key in table.pairs:
        t = nearest_threshold(key, cfg)
        if t is not None:
            covered.add(t)
    return len(covered) / len(cfg.thresholds)


class MinMaxQueue:
    """Fixed-capacity ring with O(1) amortized max and min.

    Values enter with a monotonically increasing sequence number; two
    monotonic deques hold the candidates for the current extremes.
    """

    def __init__(self, capacity: int) -> None:
        self._capacity = capacity
        self._values: deque[tuple[int, float]] = deque()
        self._maxima: deque[tuple[int, float]] = deque()
        self._minima: deque[tuple[int, float]] = deque()
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._values)

    def push(self, value: float) -> None:
        seq = self._next_seq
        self._next_seq += 1
        self._values.append((seq, value))
        if len(self._values) > self._capacity:
            old_seq, _ = self._values.popleft()
            if self._maxima and self._maxima[0][0] == old_seq:
                self._maxima.popleft()
            if self._minima and self._minima[0][0] == old_seq:
                self._minima.popleft()
        while self._maxima and self._maxima[-1][1] <= value:
            self._maxima.pop()
        self._maxima.append((seq, value))
        while self._minima and self._minima[-1][1] >= value:
            self._minima.pop()
        self._minima.append((seq, value))

    def spread(self) -> float:
        if not self._values:
            return 0.0
        return self._maxima[0][1] - self._minima[0][1]

    def flush(self) -> None:
        self._values.clear()
        self._maxima.clear()
        self._minima.clear()


@dataclass(frozen=True)
class VerifierInput:
    reported_level: float
    enroll_flag: bool
    temporal_reset: bool


@dataclass(frozen=True)
class VerifierOutput:
    code: int
    bit0: int
    bit1: int
    bit2: int
    temporal_diff: float
    key: int
    threshold: float | None


class Verifier:
    """Per-tick authentication state machine."""

    def __init__(self, cfg: VerifierConfig, table: EnrollmentTable | None = None) -> None:
        self.cfg = cfg
        self.table = table if table is not None else EnrollmentTable()
        self.queue = MinMaxQueue(cfg.queue_len)
        self.latched_fail = False
        self.prev_bit0 = 1
        self.last_output: VerifierOutput | None = None

    def _match(self, stored: int, response: int) -> bool:
        if self.cfg.response_tolerance == 0:
            return stored == response
        return bin(stored ^ response).count("1") <= self.cfg.response_tolerance

    def step(self, inp: VerifierInput, response: int) -> VerifierOutput:
        cfg = self.cfg
        self.queue.push(inp.reported_level)
        if inp.temporal_reset:
            self.latched_fail = False
            self.queue.flush()
            self.queue.push(inp.reported_level)

        diff = self.queue.spread()
        if inp.enroll_flag:
            if diff > self.table.max_temporal_diff:
                self.table.max_temporal_diff = diff
            bit1 = 1
        else:
            if diff > cfg.temporal_margin * self.table.max_temporal_diff:
                self.latched_fail = True
            bit1 = 0 if self.latched_fail else 1

        key = round_half_up(inp.reported_level)
        threshold = nearest_threshold(key, cfg)
        if inp.enroll_flag:
            bit0 = 1
            self.prev_bit0 = 1
            bit2 = 0
            if threshold is not None and key not in self.table.pairs:
                self.table.pairs[key] = response
                bit2 = 1
        else:
            if not self.table.pairs:
                raise NotEnrolled("no enrollment pairs stored")
            bit2 = 0
            if threshold is None:
                bit0 = self.prev_bit0
            else:
                stored = self.table.pairs.get(key)
                bit0 = 1 if (stored is not None and self._match(stored, response)) else 0
            self.prev_bit0 = bit0

        out = VerifierOutput(
            code=bit0 | (bit1 << 1) | (bit2 << 2),
            bit0=bit0,
            bit1=bit1,
            bit2=bit2,
            temporal_diff=diff,
            key=key,
            threshold=threshold,
        )
        self.last_output = out
        return out
