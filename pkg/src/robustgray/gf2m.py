"""Arithmetic in GF(2^m) via log/antilog tables.

Field elements are plain ints in [0, 2^m); the bit pattern of an element
is the coefficient vector of a polynomial over GF(2), reduced modulo a
fixed primitive polynomial.  One canonical primitive polynomial is used
per width m (the lexicographically smallest, see PRIMITIVE_POLYS), so
the arithmetic is reproducible across builds.
"""

from __future__ import annotations

# Lexicographically smallest primitive polynomial per width, encoded as an
# int with bit i = coefficient of x^i (so 0b1011 = x^3 + x + 1).
PRIMITIVE_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class GF2m:
    """A field context GF(2^m), 2 <= m <= 16, with log/antilog tables.

    Immutable after construction; safe to share between threads/processes.
    """

    def __init__(self, m: int):
        if m not in PRIMITIVE_POLYS:
            raise ValueError(f"field width must be in [2, 16], got {m}")
        self.m = m
        self.order = 1 << m
        self.poly = PRIMITIVE_POLYS[m]
        size = self.order - 1
        exp = [0] * (2 * size)
        log = [0] * self.order
        x = 1
        for i in range(size):
            if i > 0 and x == 1:
                raise AssertionError(f"polynomial {self.poly:#x} is not primitive")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.order:
                x ^= self.poly
        if x != 1:
            raise AssertionError(f"polynomial {self.poly:#x} is not primitive")
        # doubled table spares a modular reduction in mul()
        for i in range(size, 2 * size):
            exp[i] = exp[i - size]
        self.exp = exp
        self.log = log

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add  # characteristic 2

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.exp[self.order - 1 - self.log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def alpha_pow(self, e: int) -> int:
        """Power of the generator alpha (the root x of the primitive poly)."""
        return self.exp[e % (self.order - 1)]

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, poly={self.poly:#x})"
