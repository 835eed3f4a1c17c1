"""Seedable, splittable counter-based random streams.

Built on splitmix64 so that a stream keyed by (seed, *key) always yields
the same draws regardless of how many sibling streams were consumed.
Used everywhere determinism across refactors matters: cell evaluation in
the sandbox engine, script generation, fault injection.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def _hash_key(parts: tuple[int, ...]) -> int:
    h = 0x8C2F1D0A5E93B7C1
    for p in parts:
        h = _mix((h ^ (p & _MASK)) * _GOLDEN & _MASK)
    return h


class Stream:
    """One independent random stream, keyed by integers.

    ``Stream(seed, tick, cell_index)`` and ``Stream(seed, tick + 1, ...)``
    never share state; draws inside one stream advance a private counter.
    """

    __slots__ = ("_state", "_counter")

    def __init__(self, *key: int):
        self._state = _hash_key(tuple(key))
        self._counter = 0

    def split(self, *key: int) -> "Stream":
        """Derive a child stream; independent of this stream's position."""
        child = Stream()
        child._state = _hash_key((self._state,) + tuple(key))
        return child

    def next_u64(self) -> int:
        self._counter += 1
        return _mix((self._state + self._counter * _GOLDEN) & _MASK)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n). Lemire multiply-shift reduction."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def sample(self, seq, k: int) -> list:
        """k distinct elements, order determined by the stream."""
        if k > len(seq):
            raise ValueError("sample larger than population")
        pool = list(seq)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.below(len(pool))))
        return out

    def shuffle(self, seq: list) -> None:
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
