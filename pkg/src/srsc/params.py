"""Parameter set for sub-block rearranged staircase chains.

Conventions: blocks are indexed from 1.  Odd-indexed blocks have shape
(m1/q1) x m2 and their rows are constrained by component code 2; even-indexed
blocks have shape (m2/q2) x m1 and are constrained by component code 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def phi(x: int) -> int:
    """Parity selector: 2 for odd x, 1 for even x."""
    return (3 - (-1) ** x) // 2


@dataclass(frozen=True)
class SrscParams:
    m1: int
    m2: int
    q1: int
    q2: int
    w: int
    nu1: int
    nu2: int
    t1: int
    t2: int
    L: int = 0

    # --- derived component-code geometry ---

    @property
    def n1(self) -> int:
        return self.m1 + self.m1 * self.q2 // self.q1

    @property
    def n2(self) -> int:
        return self.m2 + self.m2 * self.q1 // self.q2

    @property
    def e1(self) -> int:
        return (1 << self.nu1) - 1 - self.n1

    @property
    def e2(self) -> int:
        return (1 << self.nu2) - 1 - self.n2

    @property
    def k1(self) -> int:
        return self.n1 - self.nu1 * self.t1

    @property
    def k2(self) -> int:
        return self.n2 - self.nu2 * self.t2

    # --- per-block-index helpers ---

    def m(self, i: int) -> int:
        """Number of columns of block i."""
        return self.m2 if i % 2 else self.m1

    def q(self, i: int) -> int:
        """Decomposition count matching block i's own columns."""
        return self.q2 if i % 2 else self.q1

    def t(self, i: int) -> int:
        return self.t2 if i % 2 else self.t1

    def n(self, i: int) -> int:
        return self.n2 if i % 2 else self.n1

    def rows(self, i: int) -> int:
        """Number of rows of block i."""
        return self.m1 // self.q1 if i % 2 else self.m2 // self.q2

    def cols(self, i: int) -> int:
        return self.m(i)

    def fresh_width(self, i: int) -> int:
        """Columns of new information per row of block i."""
        if i % 2:
            return self.k2 - (self.n2 - self.m2)
        return self.k1 - (self.n1 - self.m1)

    def block_shape(self, i: int) -> tuple[int, int]:
        return self.rows(i), self.cols(i)


def validate(p: SrscParams) -> list[str]:
    """Check all structural constraints; returns the list of violations
    (empty when the parameter set is valid)."""
    bad = []
    for name, v in (("m1", p.m1), ("m2", p.m2), ("q1", p.q1), ("q2", p.q2),
                    ("t1", p.t1), ("t2", p.t2)):
        if v < 1:
            bad.append(f"{name} must be >= 1 (got {v})")
    if p.w < 2:
        bad.append(f"w must be >= 2 (got {p.w})")
    if p.nu1 < 3 or p.nu2 < 3:
        bad.append("nu1 and nu2 must be >= 3")
    if bad:
        return bad
    if p.m1 % p.q1:
        bad.append(f"q1={p.q1} does not divide m1={p.m1}")
    if p.m2 % p.q2:
        bad.append(f"q2={p.q2} does not divide m2={p.m2}")
    if p.m1 % (p.w - 1):
        bad.append(f"w-1={p.w - 1} does not divide m1={p.m1}")
    if p.m2 % (p.w - 1):
        bad.append(f"w-1={p.w - 1} does not divide m2={p.m2}")
    if p.w > 2 and (p.m1 != p.m2 or p.q1 != p.q2):
        bad.append("w > 2 requires m1 = m2 and q1 = q2")
    if bad:
        return bad
    if p.n1 > (1 << p.nu1) - 1:
        bad.append(f"n1={p.n1} exceeds 2^nu1-1={(1 << p.nu1) - 1}")
    if p.n2 > (1 << p.nu2) - 1:
        bad.append(f"n2={p.n2} exceeds 2^nu2-1={(1 << p.nu2) - 1}")
    if p.k1 - (p.n1 - p.m1) < 0:
        bad.append("component code 1 leaves negative information width "
                   f"(k1={p.k1} < coupled width {p.n1 - p.m1})")
    if p.k2 - (p.n2 - p.m2) < 0:
        bad.append("component code 2 leaves negative information width "
                   f"(k2={p.k2} < coupled width {p.n2 - p.m2})")
    return bad


def rate(p: SrscParams, extra_parity: int = 0) -> Fraction:
    """Code rate, R = 1 - (nu1*t1/m1 + nu2*t2/m2)/2, as an exact rational.

    extra_parity counts additional parity bits appended to each component
    code (parity-extended BCH variants used by some benchmark codes)."""
    return 1 - Fraction(1, 2) * (
        Fraction(p.nu1 * p.t1 + extra_parity, p.m1)
        + Fraction(p.nu2 * p.t2 + extra_parity, p.m2)
    )


def rate_from_components(p: SrscParams) -> Fraction:
    """Equivalent rate expression via component message lengths; must agree
    with rate() exactly."""
    return Fraction(1, 2) * (
        Fraction(p.k1, p.m1) + Fraction(p.k2, p.m2)
        - Fraction(p.q2, p.q1) - Fraction(p.q1, p.q2)
    )
