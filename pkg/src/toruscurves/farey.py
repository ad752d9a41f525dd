"""Exact arithmetic on slopes of torus curves.

A slope is a reduced rational p/q, together with 1/0 for the vertical
class, and names a homotopy class of simple closed curve on the torus.
Two classes p/q and a/b cross exactly |p*b - q*a| times, which makes
the whole subject computable in unbounded integer arithmetic; nothing
in this module touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Slope",
    "UnimodularMap",
    "TurnSequence",
    "INFINITY",
    "ZERO",
    "ONE",
    "reduce",
    "parse_slope",
    "iota",
    "mediant",
    "is_farey_edge",
    "continuant",
    "apply_map",
    "slope_sort_key",
]


@dataclass(frozen=True, slots=True)
class Slope:
    """A reduced rational p/q with q >= 0; Slope(1, 0) is infinity.

    The sign lives on the numerator. Equality is plain field equality,
    which is the right notion because instances are always canonical.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError(f"denominator must be nonnegative, got {self.q}")
        if self.q == 0:
            if self.p != 1:
                raise ValueError("the infinite slope must be written 1/0")
        elif math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not reduced")

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


def reduce(p: int, q: int) -> Slope:
    """Canonical reduced slope for the pair (p, q).

    Any pair with q = 0 collapses to 1/0; the sign is carried by the
    numerator. The pair (0, 0) does not name a slope.
    """
    if p == 0 and q == 0:
        raise ValueError("(0, 0) is not a slope")
    if q == 0:
        return INFINITY
    if q < 0:
        p, q = -p, -q
    g = math.gcd(p, q)
    return Slope(p // g, q // g)


def parse_slope(text: str) -> Slope:
    """Parse the serialized form "p/q" (e.g. "1/0", "-3/2")."""
    num, sep, den = text.strip().partition("/")
    if not sep:
        raise ValueError(f"expected 'p/q', got {text!r}")
    return reduce(int(num), int(den))


def iota(s1: Slope, s2: Slope) -> int:
    """Intersection number |p1*q2 - q1*p2| of two slopes.

    Symmetric, and zero exactly when the slopes coincide.
    """
    return abs(s1.p * s2.q - s1.q * s2.p)


def mediant(s1: Slope, s2: Slope) -> Slope:
    """Farey mediant (p1+p2)/(q1+q2) of two distinct slopes.

    When the inputs span a Farey edge (iota = 1) the result completes a
    Farey triangle with both of them.
    """
    if s1 == s2:
        raise ValueError("mediant of equal slopes is undefined")
    return reduce(s1.p + s2.p, s1.q + s2.q)


def is_farey_edge(s1: Slope, s2: Slope) -> bool:
    """True when the two slopes intersect exactly once."""
    return iota(s1, s2) == 1


class TurnSequence(tuple):
    """Run lengths of the left-right turns along a dual-tree path.

    Entries are the maximal runs of same-direction turns; each must be
    a positive integer. The empty sequence stands for adjacent
    horoballs.
    """

    def __new__(cls, runs: Iterable[int] = ()) -> "TurnSequence":
        runs = tuple(int(r) for r in runs)
        if any(r < 1 for r in runs):
            raise ValueError(f"turn runs must be positive, got {runs}")
        return super().__new__(cls, runs)


def continuant(t: Sequence[int]) -> int:
    """Numerator K(l1,...,ls) of the continued fraction l1 + 1/(l2 + ...).

    Computed by K_i = l_i*K_{i-1} + K_{i-2} with K_0 = 1, K_{-1} = 0.
    The empty sequence gives 1, the crossing count of adjacent
    horoballs.
    """
    if not isinstance(t, TurnSequence):
        t = TurnSequence(t)
    prev, cur = 0, 1
    for run in t:
        prev, cur = cur, run * cur + prev
    return cur


@dataclass(frozen=True, slots=True)
class UnimodularMap:
    """Integer matrix (a b; c d) with det +-1 acting by z -> (az+b)/(cz+d)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.det not in (1, -1):
            raise ValueError(f"determinant must be +-1, got {self.det}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "UnimodularMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def taking_to_infinity(cls, s: Slope) -> "UnimodularMap":
        """A det-1 integer map sending the given slope to 1/0.

        Built from the extended Euclidean algorithm on (p, q).
        """
        if s.is_infinity:
            return cls.identity()
        # a*p + b*q = 1 is solvable since gcd(p, q) = 1
        a, b = _bezout(s.p, s.q)
        return cls(a, b, -s.q, s.p)

    def inverse(self) -> "UnimodularMap":
        det = self.det
        return UnimodularMap(self.d * det, -self.b * det, -self.c * det, self.a * det)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """Matrix product self * other (apply other first)."""
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def _bezout(p: int, q: int) -> tuple[int, int]:
    """Coefficients (a, b) with a*p + b*q = gcd(p, q)."""
    old_r, r = p, q
    old_a, a = 1, 0
    old_b, b = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_a, a = a, old_a - quo * a
        old_b, b = b, old_b - quo * b
    if old_r < 0:
        old_a, old_b = -old_a, -old_b
    return old_a, old_b


def apply_map(m: UnimodularMap, s: Slope) -> Slope:
    """Image of a slope under a unimodular map; preserves iota in pairs."""
    return reduce(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)


def slope_sort_key(s: Slope):
    """Sort key putting finite slopes in increasing order with 1/0 last.

    This is the circular order of the completed reals cut open at
    infinity, the natural boundary order for convex hulls of slopes.
    """
    if s.is_infinity:
        return (1, Fraction(0))
    return (0, Fraction(s.p, s.q))
