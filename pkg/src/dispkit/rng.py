"""Deterministic 64-bit PRNG behind every randomized operation.

The generator is SplitMix64, a splittable counter-based design: the state
is a 64-bit counter advanced by a fixed odd increment, and each output is
the counter passed through a 64-bit mixing function. State transition and
output, all arithmetic mod 2^64:

    state = state + 0x9E3779B97F4A7C15
    z = state
    z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z XOR (z >> 27)) * 0x94D049BB133111EB
    output = z XOR (z >> 31)

Reimplementing those four lines in any language reproduces the exact
streams used by this package. Everything else is defined on top of the
raw 64-bit outputs:

* ``randbelow(n)``: unbiased integer in [0, n) by rejection. Draw x;
  accept x mod n unless x >= floor(2^64 / n) * n, in which case redraw.
* ``unit53()``: Fraction(output >> 11, 2^53), a dyadic rational in [0, 1).
* ``interior_unit()``: Fraction(2*(output >> 11) + 1, 2^54), strictly
  inside (0, 1).
* ``shuffle(seq)``: Fisher-Yates, descending: for i = len-1 .. 1 swap
  seq[i] with seq[randbelow(i + 1)].
* ``split()``: a child generator seeded with the parent's next output;
  parent and child streams are then independent for all practical
  purposes.

Seeding is the raw 64-bit seed as the initial counter value (no
scrambling), so seed 0 is a valid, fully usable stream.
"""

from __future__ import annotations

from fractions import Fraction

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_TWO53 = 1 << 53
_TWO54 = 1 << 54
_TWO64 = 1 << 64


class SplitMix64:
    """SplitMix64 stream; deterministic given the 64-bit seed."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        limit = (_TWO64 // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def unit53(self) -> Fraction:
        """Dyadic rational in [0, 1): a 53-bit numerator over 2^53."""
        return Fraction(self.next_u64() >> 11, _TWO53)

    def interior_unit(self) -> Fraction:
        """Dyadic rational strictly inside (0, 1)."""
        return Fraction(2 * (self.next_u64() >> 11) + 1, _TWO54)

    def shuffle(self, seq: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randbelow(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def split(self) -> "SplitMix64":
        """Child stream seeded with this stream's next output."""
        return SplitMix64(self.next_u64())
