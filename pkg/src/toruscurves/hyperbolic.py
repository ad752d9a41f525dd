"""Upper half-plane geometry of the Ford circles.

The horoball packing assigns to the slope p/q the circle of Euclidean
radius 1/(2q^2) tangent to the real line at p/q, and to 1/0 the region
above the line y = 1. Distances between horoballs, from points to
horoballs, geodesic midpoints and the Farey triangles crossed by a
geodesic are all computed by first moving one end to infinity with an
integer determinant-one map, where every formula is elementary; the
only floating point is the final logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .farey import (
    INFINITY,
    ONE,
    ZERO,
    Slope,
    UnimodularMap,
    apply_map,
    iota,
    mediant,
)
from .triangulation import FareyLabelling, Triangulation

__all__ = [
    "Point",
    "Horocycle",
    "Geodesic",
    "COVERING_CONSTANT",
    "ford_circle",
    "horoball_distance",
    "point_horoball_distance",
    "covering_check",
    "geodesic_midpoint",
    "cutting_sequence",
    "geometric_horoball",
]

# the largest possible distance from a point of the plane to the packing,
# attained at the deepest points of the ideal triangles
COVERING_CONSTANT = math.log(2 / math.sqrt(3))


@dataclass(frozen=True)
class Point:
    """A point x + iy of the upper half-plane; coordinates may be exact."""

    x: Fraction | float
    y: Fraction | float

    def __post_init__(self) -> None:
        if not self.y > 0:
            raise ValueError(f"need y > 0, got {self.y}")


@dataclass(frozen=True)
class Horocycle:
    """The Ford circle of a slope; the one at 1/0 is the line y = 1."""

    base: Slope
    center: tuple[Fraction, Fraction] | None
    radius: Fraction | None

    @property
    def is_line(self) -> bool:
        return self.radius is None


@dataclass(frozen=True)
class Geodesic:
    """The geodesic with the two given distinct ideal endpoints."""

    a: Slope
    b: Slope

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("geodesic endpoints must be distinct")


def ford_circle(s: Slope) -> Horocycle:
    """Exact Ford circle of a slope: center (p/q, 1/(2q^2)), same radius."""
    if s.is_infinity:
        return Horocycle(s, None, None)
    r = Fraction(1, 2 * s.q * s.q)
    return Horocycle(s, (Fraction(s.p, s.q), r), r)


def _mobius_point(
    m: UnimodularMap, x: Fraction | float, y: Fraction | float
) -> tuple[Fraction | float, Fraction | float]:
    """Image of x + iy under a determinant-one integer map, exactly."""
    if m.det != 1:
        raise ValueError("orientation-reversing map applied to the upper half-plane")
    den = (m.c * x + m.d) ** 2 + (m.c * y) ** 2
    nx = (m.a * x + m.b) * (m.c * x + m.d) + m.a * m.c * y * y
    return nx / den, y / den


def horoball_distance(s1: Slope, s2: Slope) -> float:
    """Hyperbolic distance between the Ford circles of two distinct slopes.

    Computed geometrically: move s1 to infinity, then the distance is
    the vertical run from the line y = 1 down to the apex of the image
    circle, whose exact height is 1/b^2 for image slope a/b. Tangent
    circles (unit intersection) are at distance zero, and the value must
    always equal twice the logarithm of the intersection number.
    """
    if s1 == s2:
        raise ValueError("the two slopes coincide")
    m = UnimodularMap.taking_to_infinity(s1)
    img = apply_map(m, s2)
    apex = Fraction(1, img.q * img.q)
    return math.log(apex.denominator) - math.log(apex.numerator)


def point_horoball_distance(z: Point, s: Slope) -> float:
    """Distance from a point to the horoball of s (negative inside).

    After moving s to infinity the horoball is y >= 1 and the distance
    from height y is -log(y): zero on the boundary, penetration depth
    with a negative sign inside.
    """
    m = UnimodularMap.taking_to_infinity(s)
    _, y = _mobius_point(m, z.x, z.y)
    return -math.log(y)


# Horoballs that can be nearest to a point of the standard fundamental
# domain {|Re z| <= 1/2, |z| >= 1}; anything else is strictly farther.
_DOMAIN_CANDIDATES = (
    INFINITY,
    ZERO,
    ONE,
    Slope(-1, 1),
    Slope(1, 2),
    Slope(-1, 2),
)


def covering_check(samples: int) -> float:
    """Largest distance to the packing over a grid in the fundamental domain.

    Samples cell centers of a samples-by-samples grid over the strip
    between the unit circle and the line y = 1; the returned maximum of
    the pointwise minimum distance must stay below log(2/sqrt(3)), with
    the extreme approached at the corners 1/2*(+-1 + i*sqrt(3)).
    """
    if samples < 1:
        raise ValueError(f"need samples >= 1, got {samples}")
    worst = 0.0
    for i in range(samples):
        x = -0.5 + (i + 0.5) / samples
        floor = math.sqrt(1.0 - x * x)
        for j in range(samples):
            y = floor + (j + 0.5) * (1.0 - floor) / samples
            z = Point(x, y)
            dist = min(
                max(0.0, point_horoball_distance(z, s)) for s in _DOMAIN_CANDIDATES
            )
            if dist > worst:
                worst = dist
    return worst


def geodesic_midpoint(s1: Slope, s2: Slope) -> Point:
    """The point of the geodesic s1-s2 equidistant from both horoballs.

    With s1 at infinity the geodesic is vertical over the image a/b and
    the balance point sits at height 1/b; the result is carried back
    exactly, so both distances agree to floating precision only because
    of the final logarithms.
    """
    if s1 == s2:
        raise ValueError("the two slopes coincide")
    m = UnimodularMap.taking_to_infinity(s1)
    img = apply_map(m, s2)
    x, y = _mobius_point(
        m.inverse(), Fraction(img.p, img.q), Fraction(1, img.q)
    )
    return Point(x, y)


def cutting_sequence(
    g: Geodesic, bound: int = 100_000
) -> list[tuple[Slope, Slope, Slope]]:
    """The Farey triangles crossed by a geodesic, in order.

    One endpoint is moved to infinity; the crossed triangles are then
    the mediant-refinement walk from the integer interval around the
    other endpoint down to it. A geodesic lying on a tessellation edge
    (unit intersection number) reports the two triangles adjacent to
    that edge. Consecutive output triangles always share an edge. The
    walk stops after `bound` refinement steps if the terminal cusp has
    not been reached.
    """
    m = UnimodularMap.taking_to_infinity(g.a)
    img = apply_map(m, g.b)
    inv = m.inverse()
    out: list[tuple[Slope, Slope, Slope]] = []
    if img.q == 1:
        c = img.p
        out.append((Slope(c - 1, 1), img, INFINITY))
        out.append((img, Slope(c + 1, 1), INFINITY))
    else:
        target = Fraction(img.p, img.q)
        lo = Slope(img.p // img.q, 1)
        hi = Slope(img.p // img.q + 1, 1)
        out.append((lo, hi, INFINITY))
        for _ in range(bound):
            med = mediant(lo, hi)
            out.append((lo, med, hi))
            if med == img:
                break
            if Fraction(med.p, med.q) > target:
                hi = med
            else:
                lo = med
    return [
        (apply_map(inv, a), apply_map(inv, b), apply_map(inv, c))
        for a, b, c in out
    ]


def geometric_horoball(t: Triangulation, l: FareyLabelling) -> int:
    """A horoball of small relative height, found at the maximal geodesic.

    Takes a pair realizing the maximal intersection, walks the Farey
    triangles crossed by its geodesic (all of their vertices belong to
    the triangulation, by convexity of the hull), and returns the
    vertex whose horoball is nearest to the geodesic midpoint. That
    minimum distance never exceeds log(2/sqrt(3)), which caps the
    returned horoball's relative height at a multiple of sqrt(kappa).
    """
    labels = l.labels
    n = t.n
    best = -1
    pair = (0, 1)
    for u in range(n):
        for v in range(u + 1, n):
            cross = iota(labels[u], labels[v])
            if cross > best:
                best = cross
                pair = (u, v)
    s1, s2 = labels[pair[0]], labels[pair[1]]
    x = geodesic_midpoint(s1, s2)
    by_slope = {s: i for i, s in enumerate(labels)}
    candidates: dict[int, Slope] = {}
    for tri in cutting_sequence(Geodesic(s1, s2)):
        for s in tri:
            vert = by_slope.get(s)
            if vert is not None:
                candidates.setdefault(vert, s)
    chosen = min(
        candidates.items(), key=lambda item: (point_horoball_distance(x, item[1]), item[0])
    )
    return chosen[0]
