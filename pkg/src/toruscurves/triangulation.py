"""Triangulations of the labeled convex n-gon and their dual trees.

Vertices are 0..n-1 in counterclockwise order. A triangulation is the
set of its n-3 pairwise noncrossing diagonals; the plane dual tree (one
node per triangle, one leaf per boundary edge) is derived and cached.
Each polygon vertex determines a horoball region of the dual tree, the
maximal fan of triangles around it, and intersection numbers between
horoballs can be computed two independent ways: by the continuant of
the left-right turn sequence along the connecting dual path, or through
a Farey labelling propagated by mediants. The two must always agree,
which the test suites exploit heavily.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .farey import (
    INFINITY,
    ONE,
    ZERO,
    Slope,
    TurnSequence,
    continuant,
    iota,
    parse_slope,
    reduce,
    slope_sort_key,
)
from .numtheory import catalan

__all__ = [
    "Triangulation",
    "DualTree",
    "HoroballRef",
    "FareyLabelling",
    "MAX_ENUMERATION_N",
    "triangles",
    "dual_tree",
    "horoballs",
    "turn_sequence",
    "intersection_via_tree",
    "farey_labelling",
    "intersection_via_labels",
    "enumerate_triangulations",
    "flip",
    "apply_vertex_map",
    "dihedral_maps",
    "canonical_key",
    "triangulation_from_slopes",
    "random_triangulation",
]

MAX_ENUMERATION_N = 16


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of the convex n-gon, stored by its diagonal set."""

    n: int
    diagonals: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        n = self.n
        if n < 3:
            raise ValueError(f"need n >= 3, got {n}")
        diags = self.diagonals
        if len(diags) != n - 3:
            raise ValueError(f"expected {n - 3} diagonals, got {len(diags)}")
        for i, j in diags:
            if not (0 <= i < j <= n - 1):
                raise ValueError(f"bad diagonal {(i, j)}")
            if j - i == 1 or (i == 0 and j == n - 1):
                raise ValueError(f"{(i, j)} is a boundary edge, not a diagonal")
        sorted_diags = sorted(diags)
        for idx, (a, b) in enumerate(sorted_diags):
            for c, d in sorted_diags[idx + 1 :]:
                if a < c < b < d:
                    raise ValueError(f"diagonals {(a, b)} and {(c, d)} cross")

    @classmethod
    def from_diagonals(cls, n: int, diagonals) -> "Triangulation":
        return cls(n, frozenset(_pair(i, j) for i, j in diagonals))

    def is_edge(self, u: int, v: int) -> bool:
        """True when {u, v} is a boundary edge or a diagonal."""
        if u == v:
            return False
        a, b = _pair(u, v)
        if b - a == 1 or (a == 0 and b == self.n - 1):
            return True
        return (a, b) in self.diagonals

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "diagonals": sorted(self.diagonals)})

    @classmethod
    def from_json(cls, text: str) -> "Triangulation":
        data = json.loads(text)
        return cls.from_diagonals(int(data["n"]), data["diagonals"])

    def key(self) -> tuple[tuple[int, int], ...]:
        """Sorted diagonal tuple, the canonical comparison key."""
        return tuple(sorted(self.diagonals))


@lru_cache(maxsize=None)
def triangles(t: Triangulation) -> tuple[tuple[int, int, int], ...]:
    """The n-2 triangles as sorted triples, in lexicographic order."""
    n = t.n
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for v in range(n):
        adj[v].add((v + 1) % n)
        adj[(v + 1) % n].add(v)
    for i, j in t.diagonals:
        adj[i].add(j)
        adj[j].add(i)
    faces: list[tuple[int, int, int]] = []

    def rec(a: int, b: int) -> None:
        if b - a < 2:
            return
        apexes = [k for k in adj[a] & adj[b] if a < k < b]
        if len(apexes) != 1:
            raise AssertionError(f"chord {(a, b)} has apexes {apexes}")
        k = apexes[0]
        faces.append((a, k, b))
        rec(a, k)
        rec(k, b)

    rec(0, n - 1)
    return tuple(sorted(faces))


@lru_cache(maxsize=None)
def _side_map(t: Triangulation) -> dict[tuple[int, int], tuple[int, ...]]:
    """Side (sorted vertex pair) -> indices of the triangles using it."""
    out: dict[tuple[int, int], list[int]] = {}
    for idx, (a, b, c) in enumerate(triangles(t)):
        for side in ((a, b), (b, c), (a, c)):
            out.setdefault(side, []).append(idx)
    return {side: tuple(ids) for side, ids in out.items()}


@dataclass(frozen=True)
class DualTree:
    """Plane dual of a triangulation.

    rotations[i] lists the three sides of triangle i in counterclockwise
    order; neighbors[i] is aligned with it and holds the adjacent
    triangle index across each side, or None where the side is a
    boundary edge (a leaf of the tree).
    """

    triangulation: Triangulation
    rotations: tuple[tuple[tuple[int, int], tuple[int, int], tuple[int, int]], ...]
    neighbors: tuple[tuple[int | None, int | None, int | None], ...]

    @property
    def node_count(self) -> int:
        return len(self.rotations)

    def degree(self, i: int) -> int:
        return sum(1 for nb in self.neighbors[i] if nb is not None)


@lru_cache(maxsize=None)
def dual_tree(t: Triangulation) -> DualTree:
    tris = triangles(t)
    smap = _side_map(t)
    rotations = []
    neighbors = []
    for idx, (a, b, c) in enumerate(tris):
        # walking a -> b -> c -> a is counterclockwise for a < b < c
        sides = ((a, b), (b, c), (a, c))
        rotations.append(sides)
        row: list[int | None] = []
        for side in sides:
            ids = smap[side]
            row.append(None if len(ids) == 1 else ids[0] if ids[1] == idx else ids[1])
        neighbors.append(tuple(row))
    return DualTree(t, tuple(rotations), tuple(neighbors))


@dataclass(frozen=True)
class HoroballRef:
    """The horoball region of one polygon vertex.

    fan holds the indices of the incident triangles in counterclockwise
    order around the vertex; fan_vertices = (a_1, ..., a_{w+1}) are the
    opposite triangle corners in the same order, starting at vertex+1
    and ending at vertex-1; spine lists the dual-tree edges (shared
    diagonals) between consecutive fan triangles, so an ear has an
    empty spine.
    """

    vertex: int
    fan: tuple[int, ...]
    fan_vertices: tuple[int, ...]
    spine: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return len(self.fan)


@lru_cache(maxsize=None)
def horoballs(t: Triangulation) -> tuple[HoroballRef, ...]:
    """One horoball per polygon vertex, each a maximal fan of triangles."""
    n = t.n
    tris = triangles(t)
    smap = _side_map(t)
    out = []
    for v in range(n):
        fan: list[int] = []
        fan_vertices = [(v + 1) % n]
        side = _pair(v, (v + 1) % n)
        prev = -1
        while True:
            ids = [i for i in smap[side] if i != prev]
            cur = ids[0]
            fan.append(cur)
            third = next(x for x in tris[cur] if x not in side)
            fan_vertices.append(third)
            if third == (v - 1) % n:
                break
            prev = cur
            side = _pair(v, third)
        spine = tuple(_pair(v, w) for w in fan_vertices[1:-1])
        out.append(HoroballRef(v, tuple(fan), tuple(fan_vertices), spine))
    return tuple(out)


def _in_open_arc(x: int, a: int, b: int, n: int) -> bool:
    """True when x lies strictly between a and b walking counterclockwise."""
    return 0 < (x - a) % n < (b - a) % n


def _tree_path(t: Triangulation, start: int, goal: int) -> list[int]:
    tree = dual_tree(t)
    parent: dict[int, int] = {start: start}
    frontier = [start]
    while goal not in parent:
        nxt = []
        for node in frontier:
            for nb in tree.neighbors[node]:
                if nb is not None and nb not in parent:
                    parent[nb] = node
                    nxt.append(nb)
        frontier = nxt
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def turn_sequence(t: Triangulation, u: int, v: int) -> TurnSequence:
    """Run lengths of the turns along the dual path between two horoballs.

    Adjacent horoballs (vertices joined by an edge of the triangulation)
    give the empty sequence. Otherwise the path runs from the fan
    triangle of u facing v to the fan triangle of v facing u, and a turn
    direction is recorded at every triangle passed, including both end
    triangles; the virtual approach edge at the departure is the side
    shared with the next fan triangle of u (or the closing boundary
    side for the last fan triangle), and symmetrically at the arrival.
    The two possible choices at each end change the letters but never
    the continuant, which is the quantity of interest.
    """
    if u == v:
        raise ValueError("turn sequence between a horoball and itself is degenerate")
    if t.is_edge(u, v):
        return TurnSequence(())
    n = t.n
    tree = dual_tree(t)
    hb_u = horoballs(t)[u]
    hb_v = horoballs(t)[v]

    def facing(hb: HoroballRef, target: int) -> tuple[int, tuple[int, int]]:
        fv = hb.fan_vertices
        for j, tri in enumerate(hb.fan):
            if _in_open_arc(target, fv[j], fv[j + 1], n):
                return tri, _pair(hb.vertex, fv[j + 1])
        raise AssertionError("target vertex not found in any fan arc")

    t_dep, in_side = facing(hb_u, v)
    t_arr, out_side = facing(hb_v, u)
    # approach along the other extreme side of the arrival triangle
    arr_j = hb_v.fan.index(t_arr)
    out_side = _pair(v, hb_v.fan_vertices[arr_j])

    path = _tree_path(t, t_dep, t_arr)
    letters = []
    side_in = in_side
    for pos, node in enumerate(path):
        rot = tree.rotations[node]
        if pos + 1 < len(path):
            nxt = path[pos + 1]
            side_out = next(
                rot[k] for k in range(3) if tree.neighbors[node][k] == nxt
            )
        else:
            side_out = out_side
        i = rot.index(side_in)
        if rot[(i + 1) % 3] == side_out:
            letters.append("L")
        else:
            if rot[(i + 2) % 3] != side_out:
                raise AssertionError("outgoing side not on this triangle")
            letters.append("R")
        side_in = side_out
    runs = []
    for letter in letters:
        if runs and letter == runs[-1][0]:
            runs[-1][1] += 1
        else:
            runs.append([letter, 1])
    return TurnSequence(count for _, count in runs)


def intersection_via_tree(t: Triangulation, u: int, v: int) -> int:
    """Intersection number from the dual tree: continuant of the turn runs."""
    if u == v:
        return 0
    return continuant(turn_sequence(t, u, v))


@dataclass(frozen=True)
class FareyLabelling:
    """A map vertex -> slope with every triangle a Farey triple.

    Checked on construction: labels are pairwise distinct and the three
    labels of every triangle pairwise intersect once.
    """

    triangulation: Triangulation
    labels: tuple[Slope, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.triangulation.n:
            raise ValueError("one label per vertex required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        for a, b, c in triangles(self.triangulation):
            la, lb, lc = self.labels[a], self.labels[b], self.labels[c]
            if iota(la, lb) != 1 or iota(lb, lc) != 1 or iota(la, lc) != 1:
                raise ValueError(f"triangle {(a, b, c)} is not a Farey triple")

    def to_json(self) -> str:
        return json.dumps({"labels": [str(s) for s in self.labels]})

    @classmethod
    def from_json(cls, t: Triangulation, text: str) -> "FareyLabelling":
        data = json.loads(text)
        return cls(t, tuple(parse_slope(s) for s in data["labels"]))


def _farey_companion(x: Slope, y: Slope, exclude: Slope) -> Slope:
    """The Farey-triangle vertex over the edge (x, y) other than `exclude`.

    The two candidates are the componentwise sum and difference; exactly
    one of them is the already-used third vertex of the known triangle.
    """
    cand = reduce(x.p + y.p, x.q + y.q)
    if cand == exclude:
        cand = reduce(x.p - y.p, x.q - y.q)
    if cand == exclude:
        raise AssertionError("both mediant branches collide with the known label")
    return cand


def farey_labelling(
    t: Triangulation,
    base: int = 0,
    assignment: Mapping[int, Slope] | None = None,
) -> FareyLabelling:
    """Label all vertices with slopes by propagating mediants from a base.

    The base triangle (index into triangles(t)) receives the assignment,
    by default 1/0, 0/1, 1/1 on its sorted vertices; the assignment must
    be a Farey triple on exactly those three vertices. Crossing a dual
    edge labels the far triangle's third vertex with whichever mediant
    branch is not already present on the near side.
    """
    tris = triangles(t)
    if not 0 <= base < len(tris):
        raise ValueError(f"base triangle {base} out of range")
    verts = tris[base]
    if assignment is None:
        assignment = dict(zip(verts, (INFINITY, ZERO, ONE)))
    if set(assignment) != set(verts):
        raise ValueError("assignment must cover exactly the base triangle")
    vals = list(assignment.values())
    if len(set(vals)) != 3 or any(
        iota(a, b) != 1 for i, a in enumerate(vals) for b in vals[i + 1 :]
    ):
        raise ValueError("assignment is not a Farey triple")

    tree = dual_tree(t)
    labels: list[Slope | None] = [None] * t.n
    for vert, slope in assignment.items():
        labels[vert] = slope
    seen = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for node in frontier:
            for k, nb in enumerate(tree.neighbors[node]):
                if nb is None or nb in seen:
                    continue
                seen.add(nb)
                x, y = tree.rotations[node][k]
                third_near = next(w for w in tris[node] if w not in (x, y))
                third_far = next(w for w in tris[nb] if w not in (x, y))
                labels[third_far] = _farey_companion(
                    labels[x], labels[y], labels[third_near]
                )
                nxt.append(nb)
        frontier = nxt
    return FareyLabelling(t, tuple(labels))


def intersection_via_labels(l: FareyLabelling, u: int, v: int) -> int:
    """Intersection number read off a Farey labelling."""
    return iota(l.labels[u], l.labels[v])


def _diagonal_sets(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    def rec(a: int, b: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if b - a < 2:
            yield ()
            return
        for k in range(a + 1, b):
            extra = []
            if k - a >= 2:
                extra.append((a, k))
            if b - k >= 2:
                extra.append((k, b))
            for left in rec(a, k):
                for right in rec(k, b):
                    yield left + right + tuple(extra)

    for diags in rec(0, n - 1):
        yield frozenset(diags)


def dihedral_maps(n: int) -> list[tuple[int, ...]]:
    """The 2n vertex permutations of the dihedral group, as lookup tuples."""
    maps = []
    for t in range(n):
        maps.append(tuple((i + t) % n for i in range(n)))
    for c in range(n):
        maps.append(tuple((c - i) % n for i in range(n)))
    return maps


def apply_vertex_map(t: Triangulation, vmap: Sequence[int]) -> Triangulation:
    """Relabel the polygon vertices through the given permutation."""
    return Triangulation.from_diagonals(
        t.n, (_pair(vmap[i], vmap[j]) for i, j in t.diagonals)
    )


def canonical_key(t: Triangulation) -> tuple[tuple[int, int], ...]:
    """Least sorted-diagonal tuple over the dihedral orbit of t."""
    best = None
    for vmap in dihedral_maps(t.n):
        key = tuple(sorted(_pair(vmap[i], vmap[j]) for i, j in t.diagonals))
        if best is None or key < best:
            best = key
    return best


def enumerate_triangulations(
    n: int, modulo_symmetry: bool = False
) -> Iterator[Triangulation]:
    """Every triangulation of the n-gon exactly once.

    The stream is deterministic (recursion over the apex of the chord
    (0, n-1), apexes ascending). With modulo_symmetry the stream keeps
    one representative per dihedral orbit, the member whose sorted
    diagonal tuple is the least in its orbit.
    """
    if not 3 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"n must be within [3, {MAX_ENUMERATION_N}], got {n}")
    for diags in _diagonal_sets(n):
        t = Triangulation(n, diags)
        if modulo_symmetry and t.key() != canonical_key(t):
            continue
        yield t


def flip(t: Triangulation, d: tuple[int, int]) -> Triangulation:
    """Replace diagonal d by the opposite diagonal of its quadrilateral."""
    d = _pair(*d)
    if d not in t.diagonals:
        raise ValueError(f"{d} is not a diagonal of this triangulation")
    tris = [tri for tri in triangles(t) if d[0] in tri and d[1] in tri]
    apexes = [next(x for x in tri if x not in d) for tri in tris]
    new = _pair(*apexes)
    return Triangulation(t.n, (t.diagonals - {d}) | {new})


def triangulation_from_slopes(
    slopes: Sequence[Slope],
) -> tuple[Triangulation, tuple[Slope, ...]]:
    """The triangulation induced on a set of slopes by unit intersections.

    The slopes are placed on the polygon boundary in circular order
    (finite slopes ascending by value, 1/0 last); every pair
    intersecting once becomes an edge. The edge set must triangulate
    the polygon, which holds exactly when the slope set is saturated
    (e.g. the Farey-series families, or the output of a k-system
    closure).
    """
    ordered = tuple(sorted(set(slopes), key=slope_sort_key))
    n = len(ordered)
    diags = []
    for i in range(n):
        for j in range(i + 1, n):
            if j - i == 1 or (i == 0 and j == n - 1):
                if iota(ordered[i], ordered[j]) != 1:
                    raise ValueError(
                        f"consecutive slopes {ordered[i]}, {ordered[j]} do not span an edge"
                    )
                continue
            if iota(ordered[i], ordered[j]) == 1:
                diags.append((i, j))
    return Triangulation.from_diagonals(n, diags), ordered


def random_triangulation(n: int, rng) -> Triangulation:
    """Uniformly random triangulation (Catalan-weighted apex choices)."""
    diags: list[tuple[int, int]] = []

    def rec(a: int, b: int) -> None:
        if b - a < 2:
            return
        weights = [catalan(k - a - 1) * catalan(b - k - 1) for k in range(a + 1, b)]
        total = sum(weights)
        pick = rng.randrange(total)
        acc = 0
        for k, w in zip(range(a + 1, b), weights):
            acc += w
            if pick < acc:
                break
        if k - a >= 2:
            diags.append((a, k))
        if b - k >= 2:
            diags.append((k, b))
        rec(a, k)
        rec(k, b)

    rec(0, n - 1)
    return Triangulation.from_diagonals(n, diags)
