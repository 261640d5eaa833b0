"""Deterministic random primitives shared across the simulation.

Two access patterns, both replay-exact:

* ``SplitMix64`` — a sequential stream for one-shot synthesis work
  (device parameter draws, seed-list derivation).
* ``normal_at`` — a stateless counter-keyed gaussian for per-tick
  sensor noise, so the noise at tick *n* never depends on how many
  draws other components made.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state; returns (new_state, output)."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Sequential splitmix64 stream."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state, out = _mix(self._state)
        return out

    def next_unit(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) / 2.0**53

    def normals(self, n: int) -> list[float]:
        """n standard normals via Box-Muller pairs."""
        out: list[float] = []
        while len(out) < n:
            u1 = self.next_unit()
            u2 = self.next_unit()
            if u1 <= 0.0:
                u1 = 2.0**-53
            r = math.sqrt(-2.0 * math.log(u1))
            out.append(r * math.cos(2.0 * math.pi * u2))
            out.append(r * math.sin(2.0 * math.pi * u2))
        return out[:n]


def derive_seeds(master_seed: int, count: int) -> list[int]:
    """Expand one master seed into ``count`` independent 64-bit seeds."""
    stream = SplitMix64(master_seed)
    return [stream.next_u64() for _ in range(count)]


def normal_at(seed: int, counter: int) -> float:
    """Standard normal keyed by (seed, counter), independent of call order."""
    state = (seed ^ ((counter + 1) * _GAMMA)) & _MASK64
    state, a = _mix(state)
    state, b = _mix(state)
    u1 = (a >> 11) / 2.0**53
    u2 = (b >> 11) / 2.0**53
    if u1 <= 0.0:
        u1 = 2.0**-53
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def round_half_up(x: float) -> int:
    """Round to nearest integer, ties away from lower values.

    Used for every level quantization so keys and challenges agree
    across implementations regardless of banker's-rounding defaults.
    """
    return math.floor(x + 0.5)
