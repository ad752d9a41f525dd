"""Generators for four structured triangulation families.

chain(n) is the fan, achain(n) the zig-zag whose dual path alternates
turn direction, regular(r) the balanced trivalent ball of radius r
(n = 3 * 2^(r-1)), and farey(h) the hull of all fractions in [0, 1]
with denominator at most h together with 1/0 (n = 2 + sum of totients).

The alternating-chain values follow the Fibonacci recurrence; the index
convention is pinned numerically rather than assumed: with
F_1 = F_2 = 1, computation gives kappa(achain(n)) = F_{n-1}, every
horoball of achain(n) has height at least F_{floor(n/2) - 1}, and the
height of regular(r) at its widest horoball is F_{r+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .farey import INFINITY, Slope
from .numtheory import totient
from .triangulation import Triangulation, triangulation_from_slopes

__all__ = [
    "FamilySpec",
    "FAMILY_KINDS",
    "generate",
    "family_size",
    "farey_slopes",
    "chain",
    "achain",
    "regular",
    "farey_hull",
    "fibonacci",
    "TableRow",
    "table_row",
    "claimed_row",
]

FAMILY_KINDS = ("chain", "achain", "regular", "farey")


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its integer parameter (n, n, r or h)."""

    kind: str
    parameter: int

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        minimum = {"chain": 3, "achain": 3, "regular": 1, "farey": 2}[self.kind]
        if self.parameter < minimum:
            raise ValueError(f"{self.kind} needs parameter >= {minimum}")


def fibonacci(m: int) -> int:
    """Fibonacci numbers with F_1 = F_2 = 1 (F_0 = 0)."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def chain(n: int) -> Triangulation:
    """The fan at vertex 0: one horoball of maximal width."""
    return Triangulation.from_diagonals(n, ((0, j) for j in range(2, n - 1)))


def achain(n: int) -> Triangulation:
    """The zig-zag: the dual tree is a path switching direction each step."""
    diags = []
    lo, hi = 1, n - 1
    take_lo_next = True
    while len(diags) < n - 3:
        diags.append((lo, hi))
        if take_lo_next:
            lo += 1
        else:
            hi -= 1
        take_lo_next = not take_lo_next
    return Triangulation.from_diagonals(n, diags)


def regular(r: int) -> Triangulation:
    """Balanced triangulation whose dual tree is the radius-r trivalent ball."""
    n = 3 * 2 ** (r - 1)
    if r == 1:
        return Triangulation.from_diagonals(3, ())
    third = n // 3
    diags = [(0, third), (third, 2 * third), (0, 2 * third)]

    def bisect(a: int, b: int) -> None:
        if b - a < 2:
            return
        m = (a + b) // 2
        for chord in ((a, m), (m, b)):
            lo, hi = chord
            hi_mod = hi % n
            pair = (lo, hi_mod) if lo < hi_mod else (hi_mod, lo)
            if (pair[1] - pair[0]) >= 2 and not (pair[0] == 0 and pair[1] == n - 1):
                diags.append(pair)
        bisect(a, m)
        bisect(m, b)

    bisect(0, third)
    bisect(third, 2 * third)
    bisect(2 * third, n)
    return Triangulation.from_diagonals(n, set(diags))


def farey_slopes(h: int) -> list[Slope]:
    """All fractions in [0, 1] with denominator <= h, plus 1/0, in hull order."""
    fractions = sorted(
        {
            Slope(p, q)
            for q in range(1, h + 1)
            for p in range(0, q + 1)
            if gcd(p, q) == 1
        },
        key=lambda s: Fraction(s.p, s.q),
    )
    return fractions + [INFINITY]


def farey_hull(h: int) -> tuple[Triangulation, tuple[Slope, ...]]:
    """The triangulation induced on the order-h Farey fractions and 1/0."""
    return triangulation_from_slopes(farey_slopes(h))


def family_size(spec: FamilySpec) -> int:
    """Number of polygon vertices the family member will have."""
    if spec.kind in ("chain", "achain"):
        return spec.parameter
    if spec.kind == "regular":
        return 3 * 2 ** (spec.parameter - 1)
    return 2 + sum(totient(k) for k in range(1, spec.parameter + 1))


def generate(spec: FamilySpec) -> Triangulation:
    """Build the family member described by the spec."""
    if spec.kind == "chain":
        return chain(spec.parameter)
    if spec.kind == "achain":
        return achain(spec.parameter)
    if spec.kind == "regular":
        return regular(spec.parameter)
    return farey_hull(spec.parameter)[0]


@dataclass(frozen=True)
class TableRow:
    """Exact family statistics: kappa, the widest horoball, its height."""

    spec: FamilySpec
    n: int
    kappa: int
    max_width: int
    widest_vertex: int
    height_at_widest: int


def table_row(spec: FamilySpec) -> TableRow:
    from .ksystem import height, kappa, width

    t = generate(spec)
    widths = [width(t, v) for v in range(t.n)]
    max_width = max(widths)
    widest = widths.index(max_width)  # lowest vertex index on ties
    return TableRow(
        spec=spec,
        n=t.n,
        kappa=kappa(t),
        max_width=max_width,
        widest_vertex=widest,
        height_at_widest=height(t, widest),
    )


def claimed_row(spec: FamilySpec) -> dict[str, object]:
    """Closed-form values for the family, labeled exact or leading-order.

    The exact claims are kappa(farey(h)) = h^2 - 2h, max width h with
    height h - 1 there; the alternating chain and regular families carry
    exact Fibonacci forms under the pinned indexing; the chain's kappa
    is exact n - 2 while its traditional headline value is the
    leading-order n.
    """
    p = spec.parameter
    if spec.kind == "chain":
        return {
            "kappa": p - 2,
            "kappa_basis": "exact",
            "max_width": p - 2,
            "height_at_widest": 1,
        }
    if spec.kind == "achain":
        return {
            "kappa": fibonacci(p - 1),
            "kappa_basis": "exact (pinned index)",
            "max_width": 3,
            "height_at_widest": None,
        }
    if spec.kind == "regular":
        return {
            "kappa": fibonacci(2 * p),
            "kappa_basis": "exact (pinned index)",
            "max_width": 2 * p - 1,
            "height_at_widest": fibonacci(p + 1),
        }
    return {
        "kappa": p * p - 2 * p,
        "kappa_basis": "exact",
        "max_width": p,
        "height_at_widest": p - 1,
    }
