"""Prime-field scalar arithmetic and sampling.

Field elements are plain Python ints kept in canonical form [0, p).
All reductions are eager; there is no lazy representation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


@dataclass(frozen=True)
class Field:
    """Parameters of the prime field Z/pZ."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def sample(self, rng) -> int:
        """Uniform field element via rejection sampling from uniform bits.

        Draws p.bit_length() bits and rejects values >= p, so the output is
        exactly uniform (no modulo bias).
        """
        bits = self.p.bit_length()
        while True:
            x = rng.getrandbits(bits)
            if x < self.p:
                return x

    def sample_array(self, rng, shape) -> np.ndarray:
        """Uniform int64 array of field elements (rejection sampling)."""
        n = int(np.prod(shape, dtype=np.int64)) if shape else 1
        out = np.empty(n, dtype=np.int64)
        bits = self.p.bit_length()
        filled = 0
        while filled < n:
            draw = np.array(
                [rng.getrandbits(bits) for _ in range(n - filled)], dtype=np.int64
            )
            good = draw[draw < self.p]
            out[filled : filled + good.size] = good
            filled += good.size
        return out.reshape(shape)

    @property
    def elements(self) -> range:
        return range(self.p)
