"""Deterministic pseudo-randomness with bit-identical scalar and vector paths.

Every random choice in this package flows through the counter-based generator
below instead of platform randomness, so a given seed produces the same bits
on every machine, Python version, and worker count.

The generator is SplitMix64 run in counter mode: draw ``i`` of the stream for
``seed`` is ``mix64((seed + (i+1) * GOLDEN_GAMMA) mod 2**64)``.  Constants:

    GOLDEN_GAMMA = 0x9E3779B97F4A7C15   (2**64 / golden ratio, odd)
    MIX_MULT_1   = 0xBF58476D1CE4E4B9
    MIX_MULT_2   = 0x94D049BB133111EB

Counter mode (rather than a chained state) is what lets the numpy block
functions reproduce the scalar stream exactly; the equivalence is covered by
tests.  Derived quantities keep their documented bias bounds: coins use the
top bit (exact), trits use ``floor(3 * hi32 / 2**32)`` whose bias is below
2**-32 and therefore irrelevant for statistical sampling.
"""

from __future__ import annotations

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULT_1 = 0xBF58476D1CE4E4B9
MIX_MULT_2 = 0x94D049BB133111EB
_MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * MIX_MULT_1) & _MASK64
    x = ((x ^ (x >> 27)) * MIX_MULT_2) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed for sub-experiment `index`, decorrelated from the parent stream."""
    return mix64((mix64(seed) + index) & _MASK64)


class SplitMix64:
    """Scalar view of the counter stream for `seed`, starting at draw `counter`."""

    __slots__ = ("seed", "counter")

    def __init__(self, seed: int, counter: int = 0):
        self.seed = seed & _MASK64
        self.counter = counter

    def u64(self) -> int:
        self.counter += 1
        return mix64((self.seed + self.counter * GOLDEN_GAMMA) & _MASK64)

    def coin(self) -> int:
        """Fair bit: the top bit of the next draw."""
        return self.u64() >> 63

    def trit(self) -> int:
        """Near-uniform value in {0, 1, 2} (bias < 2**-32)."""
        return (3 * (self.u64() >> 32)) >> 32


def u64_block(seed: int, start: int, count: int) -> np.ndarray:
    """Draws `start` .. `start+count-1` of the stream, as a uint64 array.

    Bit-identical to `count` successive SplitMix64(seed, counter=start).u64()
    calls.
    """
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = idx * np.uint64(GOLDEN_GAMMA) + np.uint64(seed & _MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX_MULT_1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX_MULT_2)
    return z ^ (z >> np.uint64(31))


def trit_block(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized counterpart of SplitMix64.trit (uint8 array)."""
    v = u64_block(seed, start, count)
    return ((v >> np.uint64(32)) * np.uint64(3) >> np.uint64(32)).astype(np.uint8)
