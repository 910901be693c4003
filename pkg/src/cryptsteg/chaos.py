"""Keyed pseudorandom bit generation from the logistic map.

The generator iterates ``x' = LAMBDA * x * (1 - x)`` from a secret initial
condition and quantizes each orbit point against a 0.5 threshold. Both ends
of a transmission must reproduce the stream bit for bit, so the arithmetic
is pinned down: IEEE-754 doubles, round-to-nearest-even, evaluated exactly
as written (``(1 - x)`` first, then the two multiplications left to right).
Fused multiply-add would change low-order bits and is never used; the test
suite cross-checks the compiled kernels against a plain Python replay.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from numba import njit

from .errors import DegenerateOrbit, InvalidKey, InvalidParameter

LAMBDA = 3.9996
THRESHOLD = 0.5
DEFAULT_BURN_IN = 1000

_KEY_TEXT = re.compile(r"^0\.[0-9]{1,17}$")


@dataclass(frozen=True)
class CryptoKey:
    """Cipher secret: the map's initial condition, strictly inside (0, 1).

    Canonical text form is ``0.d1d2...dm`` with 1 to 17 digits after the
    point, parsed to the nearest double. ``parse(key.format())`` always
    recovers the identical value.
    """

    x0: float

    def __post_init__(self) -> None:
        x0 = self.x0
        if not isinstance(x0, float):
            try:
                x0 = float(x0)
            except (TypeError, ValueError):
                raise InvalidKey("crypto-key must be a real number") from None
            object.__setattr__(self, "x0", x0)
        if not 0.0 < x0 < 1.0:
            raise InvalidKey("crypto-key must lie strictly inside (0, 1)")
        if not _KEY_TEXT.match(_positional(x0)):
            raise InvalidKey(
                "crypto-key is not representable as 0.d1..dm with at most 17 digits"
            )

    @classmethod
    def parse(cls, text: str) -> "CryptoKey":
        """Parse the canonical decimal form, rejecting degenerate values."""
        if not _KEY_TEXT.match(text):
            raise InvalidKey(
                "crypto-key text must look like 0.d1..dm with 1-17 digits"
            )
        x0 = float(text)
        if not 0.0 < x0 < 1.0:
            # e.g. all zeros, or 17 nines which round to exactly 1.0
            raise InvalidKey("crypto-key parses to a degenerate initial condition")
        return cls(x0)

    def format(self) -> str:
        """Shortest decimal string that parses back to the same value."""
        return _positional(self.x0)


def _positional(x: float) -> str:
    return np.format_float_positional(x, unique=True, trim="-")


@dataclass(frozen=True)
class LogisticState:
    """One point on the map's orbit, plus how many steps produced it.

    ``lam`` is a fixed class-level constant; the map parameter is part of
    the stream format, not a tunable.
    """

    x: float
    iteration_count: int = 0

    lam: ClassVar[float] = LAMBDA

    def __post_init__(self) -> None:
        if not 0.0 < self.x < 1.0:
            raise DegenerateOrbit("state lies outside the open interval (0, 1)")
        if self.iteration_count < 0:
            raise InvalidParameter("iteration_count must be non-negative")

    @classmethod
    def from_key(cls, key: CryptoKey) -> "LogisticState":
        return cls(key.x0)


def iterate(state: LogisticState) -> LogisticState:
    """Advance the orbit by one step.

    The map's maximum is LAMBDA/4 = 0.9999 < 1 so the orbit cannot escape,
    but the guard is kept unconditionally.
    """
    x = LAMBDA * state.x * (1.0 - state.x)
    if x <= 0.0 or x >= 1.0:
        raise DegenerateOrbit(
            f"orbit left (0, 1) at iteration {state.iteration_count + 1}"
        )
    return LogisticState(x, state.iteration_count + 1)


def threshold_bit(x: float) -> int:
    """Quantize an orbit value: 1 when x >= 0.5, else 0."""
    return 1 if x >= THRESHOLD else 0


def burn_in(state: LogisticState, n: int = DEFAULT_BURN_IN) -> LogisticState:
    """Advance the orbit n steps without emitting bits.

    Discarding an initial stretch decorrelates the emitted stream from the
    raw key value; the first few orbit points are a coarse function of the
    key's leading digits.
    """
    if n < 1:
        raise InvalidParameter("burn-in length must be at least 1")
    x = _orbit_advance(state.x, n)
    return LogisticState(x, state.iteration_count + n)


def keystream(key: CryptoKey, n_bits: int) -> np.ndarray:
    """First ``n_bits`` quantized orbit bits after the standard burn-in.

    Deterministic in (key, n_bits): the same key always yields the same
    stream, and ``keystream(k, m)`` is a prefix of ``keystream(k, n)`` for
    m <= n. Returns a uint8 array of 0/1 values.
    """
    if n_bits < 0:
        raise InvalidParameter("bit count must be non-negative")
    if n_bits == 0:
        return np.zeros(0, dtype=np.uint8)
    return _orbit_bits(key.x0, DEFAULT_BURN_IN, n_bits)


@njit(cache=True)
def _orbit_advance(x: float, n: int) -> float:
    for _ in range(n):
        x = LAMBDA * x * (1.0 - x)
        if x <= 0.0 or x >= 1.0:
            raise DegenerateOrbit("orbit left the open interval (0, 1)")
    return x


@njit(cache=True)
def _orbit_bits(x: float, burn: int, n: int) -> np.ndarray:
    for _ in range(burn):
        x = LAMBDA * x * (1.0 - x)
        if x <= 0.0 or x >= 1.0:
            raise DegenerateOrbit("orbit left the open interval (0, 1)")
    out = np.empty(n, dtype=np.uint8)
    for i in range(n):
        x = LAMBDA * x * (1.0 - x)
        if x <= 0.0 or x >= 1.0:
            raise DegenerateOrbit("orbit left the open interval (0, 1)")
        out[i] = 1 if x >= THRESHOLD else 0
    return out
