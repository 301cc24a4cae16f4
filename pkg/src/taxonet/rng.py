"""Seeded, cross-platform-stable randomness.

Every stochastic step in the pipeline (train/validation splits, per-epoch
shuffles, evaluation sampling) draws from a splitmix64 stream keyed by the
user seed plus a purpose tag, so reruns are bit-identical on any platform
and the streams for different purposes are independent of each other.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def _fold_bytes(state: int, data: bytes) -> int:
    # FNV-1a over the tag bytes, then scrambled into the stream state.
    h = 0xCBF29CE484222325
    for b in data:
        h = (h ^ b) * 0x100000001B3 & _MASK64
    return _mix(state ^ h)


class SplitMix64:
    """splitmix64 generator; state advances by the golden-ratio gamma."""

    __slots__ = ("_state",)

    def __init__(self, state: int):
        self._state = state & _MASK64

    @classmethod
    def keyed(cls, seed: int, *tags: int | str) -> "SplitMix64":
        """Derive an independent stream from (seed, tags)."""
        state = _mix(seed & _MASK64)
        for tag in tags:
            if isinstance(tag, int):
                state = _mix(state ^ (tag & _MASK64))
            else:
                state = _fold_bytes(state, tag.encode("utf-8"))
        return cls(state)

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
