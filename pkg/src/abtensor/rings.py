"""Coefficient rings: the integers and the residue rings Z/n.

Every categorical computation requires a finite coefficient ring (Z/n with
n >= 2); plain Z is permitted only inside quiver hom-group computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import RingMismatch


@dataclass(frozen=True)
class CoeffRing:
    """Either Z (modulus None) or Z/n for n >= 2.

    Elements are plain Python ints; over Z/n the canonical residue lies in
    [0, n).  All arithmetic is exact.
    """

    modulus: int | None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be >= 2")

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    def reduce(self, a: int) -> int:
        return a if self.modulus is None else a % self.modulus

    def name(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"

    def __repr__(self):
        return f"CoeffRing({self.name()})"


ZZ = CoeffRing(None)


def Zmod(n: int) -> CoeffRing:
    return CoeffRing(n)


def same_ring(a: CoeffRing, b: CoeffRing) -> CoeffRing:
    if a != b:
        raise RingMismatch(f"ring mismatch: {a.name()} vs {b.name()}")
    return a


def require_finite(ring: CoeffRing) -> CoeffRing:
    if not ring.is_finite:
        raise RingMismatch("operation requires a finite ring Z/n")
    return ring


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = x*a + y*b and g >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def unit_multiplier(a: int, n: int) -> int:
    """A unit u of Z/n with u*a == gcd(a, n) (mod n).

    Standard lemma: write a = g*a1 with g = gcd(a, n); then a1 is coprime to
    n/g and any lift of its inverse mod n/g along the progression
    u0 + (n/g)*t contains a unit mod n.
    """
    a %= n
    if a == 0:
        return 1
    g = gcd(a, n)
    a1 = a // g
    m1 = n // g
    if m1 == 1:
        return 1
    _, inv, _ = xgcd(a1 % m1, m1)
    u0 = inv % m1
    for t in range(g + 1):
        u = (u0 + m1 * t) % n
        if u and gcd(u, n) == 1:
            return u
    raise AssertionError(f"no unit multiplier for {a} mod {n}")
