"""Integer hash utilities for procedural generation.

Everything here is 64-bit integer arithmetic (mod 2**64) so level layouts,
palettes and background textures are bit-identical across platforms and
across the compiled / pure-Python render backends.
"""

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    x = (x + _GAMMA) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def mix2(a: int, b: int) -> int:
    return splitmix64((a & MASK64) ^ splitmix64(b & MASK64))


def mix3(a: int, b: int, c: int) -> int:
    return splitmix64(mix2(a, b) ^ splitmix64(c & MASK64))


class HashStream:
    """Deterministic stream of pseudo-random integers from a single seed."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _M1) & MASK64
        z = ((z ^ (z >> 27)) * _M2) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n). Modulo bias is irrelevant here."""
        return self.next64() % n

    def chance(self, num: int, den: int) -> bool:
        """True with probability num/den."""
        return self.next64() % den < num
