"""Arithmetic over GF(2^nu) via log/antilog tables.

Field elements are represented as integers in [0, 2^nu), where the bits are
the coefficients of the polynomial basis representation.  The zero element is
0 and has no discrete log.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Conventional primitive polynomials, one per extension degree.  The bitmask
# includes the leading x^nu term, e.g. 0b10011 = x^4 + x + 1.  Fixed so that
# encoded bit patterns are reproducible across runs.
PRIMITIVE_POLYS = {
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
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


@dataclass(frozen=True)
class FieldTables:
    """Log/antilog tables for GF(2^nu) generated by a primitive element alpha.

    antilog[i] = alpha^i for i in [0, 2^nu - 1); log[antilog[i]] = i.
    Immutable and safe to share across workers.
    """

    nu: int
    primitive_poly: int
    log: np.ndarray = field(repr=False)
    antilog: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        """Size of the multiplicative group, 2^nu - 1."""
        return (1 << self.nu) - 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.antilog[(self.log[a] + self.log[b]) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^nu)")
        return int(self.antilog[(-self.log[a]) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        return int(self.antilog[(self.log[a] * k) % self.order])


def build_field(nu: int) -> FieldTables:
    """Build log/antilog tables for GF(2^nu), 3 <= nu <= 16."""
    if nu not in PRIMITIVE_POLYS:
        raise ValueError(f"unsupported field extension degree nu={nu} (need 3..16)")
    poly = PRIMITIVE_POLYS[nu]
    size = 1 << nu
    order = size - 1
    antilog = np.zeros(order, dtype=np.int64)
    log = np.zeros(size, dtype=np.int64)
    x = 1
    for i in range(order):
        antilog[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= poly
    if x != 1:
        raise ValueError(f"polynomial {poly:#x} is not primitive for nu={nu}")
    return FieldTables(nu=nu, primitive_poly=poly, log=log, antilog=antilog)
