"""Keyed scheduling of cover byte slots.

The stego-key seeds a SplitMix64 generator which drives a partial
Fisher-Yates shuffle of ``range(total_slots)``. The first ``count`` shuffle
outputs are the slots that carry payload, in embedding order. Distinctness
is guaranteed by construction, and the sequence for a shorter count is
always a prefix of the sequence for a longer one, which lets the extractor
read the length header before it knows the payload size.

One slot is one 8-bit channel sample, so an RGB pixel contributes three
slots and grayscale and RGB covers are handled uniformly.
"""

import re
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import CapacityExceeded, InvalidKey, InvalidParameter

_MASK64 = (1 << 64) - 1
_HEX_TEXT = re.compile(r"^[0-9a-f]{1,16}$")

# SplitMix64 constants (Steele, Lea and Flood's published parameters).
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class StegoKey:
    """Embedding secret: a 64-bit seed for the slot schedule.

    Any 64-bit value is valid, including 0. Canonical text form is
    lowercase hexadecimal without a prefix, 1 to 16 digits.
    """

    seed: int

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise InvalidKey("stego-key seed must be an integer")
        if not 0 <= self.seed <= _MASK64:
            raise InvalidKey("stego-key seed must fit in 64 unsigned bits")

    @classmethod
    def parse(cls, text: str) -> "StegoKey":
        if not _HEX_TEXT.match(text.lower()):
            raise InvalidKey("stego-key text must be 1-16 hex digits")
        return cls(int(text, 16))

    def format(self) -> str:
        return format(self.seed, "x")


class SplitMix64:
    """The SplitMix64 generator. State is owned by a single caller."""

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise InvalidParameter("seed must fit in 64 unsigned bits")
        self._state = seed

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)


def slot_sequence(key: StegoKey, total_slots: int, count: int) -> np.ndarray:
    """First ``count`` slots of the keyed permutation of range(total_slots).

    Deterministic in (key, total_slots, count). Returns an int64 array of
    pairwise-distinct indices; ``slot_sequence(k, T, m)`` is a prefix of
    ``slot_sequence(k, T, n)`` whenever m <= n.
    """
    if total_slots < 1:
        raise InvalidParameter("total_slots must be positive")
    if count < 0:
        raise InvalidParameter("count must be non-negative")
    if count > total_slots:
        raise CapacityExceeded(
            f"requested {count} slots but only {total_slots} exist"
        )
    if count == 0:
        return np.empty(0, dtype=np.int64)
    return _partial_shuffle(np.uint64(key.seed), total_slots, count)


# Typed constants: numba promotes uint64 mixed with int literals to float64,
# which would silently corrupt the generator.
_NB_GAMMA = np.uint64(_GAMMA)
_NB_MIX1 = np.uint64(_MIX1)
_NB_MIX2 = np.uint64(_MIX2)
_NB_S30 = np.uint64(30)
_NB_S27 = np.uint64(27)
_NB_S31 = np.uint64(31)


@njit(cache=True)
def _partial_shuffle(seed: np.uint64, total: int, count: int) -> np.ndarray:
    state = seed
    arr = np.arange(total, dtype=np.int64)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        state = state + _NB_GAMMA
        z = state
        z = (z ^ (z >> _NB_S30)) * _NB_MIX1
        z = (z ^ (z >> _NB_S27)) * _NB_MIX2
        u = z ^ (z >> _NB_S31)
        j = i + np.int64(u % np.uint64(total - i))
        tmp = arr[i]
        arr[i] = arr[j]
        arr[j] = tmp
        out[i] = arr[i]
    return out
