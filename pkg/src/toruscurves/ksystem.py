"""Max-intersection statistics of triangulations and k-system searches.

kappa(t) is the largest pairwise intersection number among the
horoballs of a triangulation; kappa_min(n) minimizes it over all
triangulations of the n-gon, and eta(k) is the dual quantity, the
largest n whose minimum stays at most k. The branch machinery slices a
triangulation along the fan of one horoball and produces the exact
counting data (per-height class sizes and extremal numerators) behind
the lower-bound estimates: an exact per-height counting inequality, a
closed form for the intersection of extremal branch horoballs, and a
convex combination over the coprime graph whose value certifies a lower
bound for kappa.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .farey import INFINITY, ONE, ZERO, Slope, iota, mediant, slope_sort_key
from .numtheory import coprime_count, gamma_graph, nextprime, totient
from .triangulation import (
    FareyLabelling,
    Triangulation,
    enumerate_triangulations,
    farey_labelling,
    horoballs,
    triangles,
    triangulation_from_slopes,
)

__all__ = [
    "kappa",
    "kappa_pair",
    "width",
    "height",
    "BranchProfile",
    "branch_profile",
    "AccountingReport",
    "accounting_check",
    "CrossIntersection",
    "cross_intersection",
    "ConvexEstimate",
    "convex_estimate",
    "SearchRecord",
    "ResultsCache",
    "CacheError",
    "FrontierExceeded",
    "DEFAULT_MAX_N",
    "growth_incumbent",
    "kappa_min",
    "eta",
    "saturate",
    "invert_bound",
    "agol_bound",
]

DEFAULT_MAX_N = 14


@lru_cache(maxsize=None)
def _default_labelling(t: Triangulation) -> FareyLabelling:
    return farey_labelling(t)


def kappa(t: Triangulation) -> int:
    """Maximum pairwise intersection number over the horoballs of t."""
    return kappa_pair(t)[0]


def kappa_pair(t: Triangulation) -> tuple[int, tuple[int, int]]:
    """kappa(t) together with the lexicographically first realizing pair."""
    labels = _default_labelling(t).labels
    best = -1
    arg = (0, 0)
    for u in range(t.n):
        for v in range(u + 1, t.n):
            cross = iota(labels[u], labels[v])
            if cross > best:
                best = cross
                arg = (u, v)
    return best, arg


def width(t: Triangulation, v: int) -> int:
    """Width of t relative to the horoball at v.

    This is the intersection number of the two horoballs flanking the
    extreme edges of the fan at v, which are the polygon neighbors
    v - 1 and v + 1; for an ear those are also the other two corners of
    its triangle. The value equals the number of triangles incident
    to v.
    """
    labels = _default_labelling(t).labels
    return iota(labels[(v - 1) % t.n], labels[(v + 1) % t.n])


def height(t: Triangulation, v: int) -> int:
    """Largest intersection number between v and any other horoball."""
    labels = _default_labelling(t).labels
    return max(iota(labels[v], labels[u]) for u in range(t.n) if u != v)


@dataclass(frozen=True)
class BranchProfile:
    """Branch decomposition of a triangulation along one horoball fan.

    The fan triangles p_1..p_w around `vertex` carry branches: branch j
    owns the polygon vertices from fan corner a_j counterclockwise up to
    but excluding a_{j+1}, which splits the n - 2 vertices other than
    `vertex` and its clockwise neighbor among the branches. Heights are
    intersection numbers with the central horoball. Numerators live in
    the branch-local frame in which the center is 1/0, a_j is 1/1 and
    a_{j+1} is 0/1, so a vertex at height k has a numerator in [1, k]
    coprime to k (the corner a_{j+1}, labeled 0/1, is owned by the next
    branch).
    """

    triangulation: Triangulation
    vertex: int
    fan_vertices: tuple[int, ...]
    branch_vertices: tuple[tuple[int, ...], ...]
    branch_heights: tuple[int, ...]
    vertex_heights: dict[int, int]
    # per branch: height -> tuple of (numerator, polygon vertex), sorted
    numerators: tuple[dict[int, tuple[tuple[int, int], ...]], ...]

    @property
    def w(self) -> int:
        return len(self.branch_vertices)

    @property
    def h(self) -> int:
        return max(self.branch_heights)

    def X(self, k: int) -> list[int]:
        """1-based indices of the branches of height at least k."""
        return [j + 1 for j, ht in enumerate(self.branch_heights) if ht >= k]

    def x(self, k: int) -> int:
        return len(self.X(k))

    def j_minus(self, k: int) -> int:
        return min(self.X(k))

    def j_plus(self, k: int) -> int:
        return max(self.X(k))

    def count_at_height(self, k: int) -> int:
        return sum(1 for ht in self.vertex_heights.values() if ht == k)

    def vertices_at(self, j: int, k: int) -> tuple[tuple[int, int], ...]:
        """(numerator, vertex) pairs of branch j (1-based) at height k."""
        return self.numerators[j - 1].get(k, ())

    def max_numerator(self, j: int, k: int) -> tuple[int, int] | None:
        pairs = self.vertices_at(j, k)
        return pairs[-1] if pairs else None

    def min_numerator(self, j: int, k: int) -> tuple[int, int] | None:
        pairs = self.vertices_at(j, k)
        return pairs[0] if pairs else None

    def ell(self, k: int) -> tuple[int, int] | None:
        """Max numerator at height k on the least-index branch of X(k)."""
        return self.max_numerator(self.j_minus(k), k)

    def r(self, k: int) -> tuple[int, int] | None:
        """Min numerator at height k on the largest-index branch of X(k)."""
        return self.min_numerator(self.j_plus(k), k)


def branch_profile(t: Triangulation, v: int) -> BranchProfile:
    """Branch decomposition of t relative to the horoball at v.

    Works uniformly for every vertex; an ear simply has a single branch
    owning everything except v and its clockwise neighbor.
    """
    n = t.n
    hb = horoballs(t)[v]
    labels = _default_labelling(t).labels
    fv = hb.fan_vertices

    branch_vertices = []
    for j in range(hb.width):
        owned = []
        x = fv[j]
        while x != fv[j + 1]:
            owned.append(x)
            x = (x + 1) % n
        branch_vertices.append(tuple(owned))
    total = sum(len(b) for b in branch_vertices)
    if total != n - 2:
        raise AssertionError(f"branches own {total} vertices, expected {n - 2}")

    vertex_heights = {
        u: iota(labels[v], labels[u]) for owned in branch_vertices for u in owned
    }
    branch_heights = tuple(
        max(vertex_heights[u] for u in owned) for owned in branch_vertices
    )

    tris = triangles(t)
    numerators = []
    for j, owned in enumerate(branch_vertices):
        base = hb.fan[j]
        assignment = {v: INFINITY, fv[j]: ONE, fv[j + 1]: ZERO}
        local = farey_labelling(t, base=base, assignment=assignment).labels
        per_height: dict[int, list[tuple[int, int]]] = {}
        for u in owned:
            num, den = local[u].p, local[u].q
            if den != vertex_heights[u]:
                raise AssertionError("local denominator disagrees with height")
            if not 0 <= num <= den:
                raise AssertionError("branch numerator escapes [0, 1]")
            if den >= 2 and (num < 1 or math.gcd(num, den) != 1):
                raise AssertionError("branch numerator not a reduced residue")
            per_height.setdefault(den, []).append((num, u))
        numerators.append(
            {k: tuple(sorted(pairs)) for k, pairs in per_height.items()}
        )

    return BranchProfile(
        triangulation=t,
        vertex=v,
        fan_vertices=fv,
        branch_vertices=tuple(branch_vertices),
        branch_heights=branch_heights,
        vertex_heights=vertex_heights,
        numerators=tuple(numerators),
    )


@dataclass(frozen=True)
class AccountingReport:
    """Exact evaluation of the per-height counting inequality.

    For each height k up to h the number of horoballs at height exactly
    k is at most phi(k)*x_k - (phi(k) - #[ell_k]_k) - #[r_k - 1]_k,
    where #[m]_s counts 1..m coprime to s. Summed over k the right side
    must reach n - 2, the total number of counted horoballs; `slack` is
    the surplus. When an extremal branch has no vertex at height
    exactly k the undefined term falls back to the tight sound bound
    (no allowance for a branch known to contribute nothing).
    """

    vertex: int
    n: int
    h: int
    terms: tuple[dict[str, int | None], ...]
    lhs: int
    rhs: int

    @property
    def slack(self) -> int:
        return self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return self.lhs >= self.rhs


def accounting_check(p: BranchProfile) -> AccountingReport:
    """Evaluate the exact counting inequality for one branch profile."""
    n = p.triangulation.n
    rows = []
    lhs = 0
    for k in range(1, p.h + 1):
        xk = p.x(k)
        phi = totient(k)
        ell = p.ell(k)
        rr = p.r(k)
        a_term = coprime_count(ell[0], k) if ell is not None else 0
        if rr is not None:
            b_term = coprime_count(rr[0] - 1, k)
        else:
            b_term = phi if xk >= 2 else 0
        term = phi * xk - (phi - a_term) - b_term
        count = p.count_at_height(k)
        rows.append(
            {
                "k": k,
                "x_k": xk,
                "phi": phi,
                "ell": ell[0] if ell else None,
                "r": rr[0] if rr else None,
                "term": term,
                "count": count,
            }
        )
        lhs += term
    return AccountingReport(
        vertex=p.vertex, n=n, h=p.h, terms=tuple(rows), lhs=lhs, rhs=n - 2
    )


@dataclass(frozen=True)
class CrossIntersection:
    """Closed-form versus direct intersection of extremal branch horoballs.

    formula = k*k'*|j'_+ - j_-| + k'*ell_k - k*r_k'; direct is the
    intersection number of the two named horoballs computed from a
    labelling. The closed form carries an implicit orientation: when
    the two extremal branches are distinct (j_k^- < j_{k'}^+, and the
    reverse order never occurs since every class contains the tallest
    branch) the two values agree outright, and when the branches
    coincide the true intersection is the absolute value of the signed
    form. The direct value is authoritative; the averaged inequality
    below is evaluated with it.
    """

    k: int
    kprime: int
    formula: int
    direct: int
    formula_swapped: int
    direct_swapped: int
    same_branch: bool
    same_branch_swapped: bool
    inequality_lhs: Fraction
    inequality_rhs: Fraction

    @property
    def agrees(self) -> bool:
        return self.formula == self.direct and self.formula_swapped == self.direct_swapped

    @property
    def agrees_up_to_orientation(self) -> bool:
        """The empirically pinned convention.

        Distinct extremal branches: literal agreement. Coinciding
        branches: agreement after taking the absolute value.
        """
        first = (
            self.direct == abs(self.formula)
            if self.same_branch
            else self.direct == self.formula
        )
        second = (
            self.direct_swapped == abs(self.formula_swapped)
            if self.same_branch_swapped
            else self.direct_swapped == self.formula_swapped
        )
        return first and second

    @property
    def inequality_holds(self) -> bool:
        return self.inequality_lhs >= self.inequality_rhs


def _pair_data(p: BranchProfile, k: int, kp: int) -> tuple[int, int, int, int]:
    """formula and direct values of I_{k,k'} for one ordered pair."""
    ell = p.ell(k)
    rr = p.r(kp)
    if ell is None or rr is None:
        raise ValueError(
            f"no vertex at exact height {k if ell is None else kp} "
            "in the extremal branch"
        )
    jm, jp = p.j_minus(k), p.j_plus(kp)
    formula = k * kp * abs(jp - jm) + kp * ell[0] - k * rr[0]
    labels = _default_labelling(p.triangulation).labels
    direct = iota(labels[ell[1]], labels[rr[1]])
    return formula, direct, ell[0], rr[0]


def cross_intersection(p: BranchProfile, k: int, kprime: int) -> CrossIntersection:
    """Evaluate I_{kk'} both ways, plus the averaged lower-bound inequality."""
    if not p.X(k) or not p.X(kprime):
        raise ValueError("empty height class")
    f1, d1, _, _ = _pair_data(p, k, kprime)
    f2, d2, _, _ = _pair_data(p, kprime, k)
    ell_k, r_k = p.ell(k), p.r(k)
    ell_kp, r_kp = p.ell(kprime), p.r(kprime)
    if None in (ell_k, r_k, ell_kp, r_kp):
        raise ValueError("empty exact-height class in an extremal branch")
    lhs = Fraction(d1 + d2, k * kprime)
    rhs = (
        p.x(k)
        + p.x(kprime)
        - 2
        + Fraction(ell_k[0] - r_k[0], k)
        + Fraction(ell_kp[0] - r_kp[0], kprime)
    )
    return CrossIntersection(
        k=k,
        kprime=kprime,
        formula=f1,
        direct=d1,
        formula_swapped=f2,
        direct_swapped=d2,
        same_branch=p.j_minus(k) == p.j_plus(kprime),
        same_branch_swapped=p.j_minus(kprime) == p.j_plus(k),
        inequality_lhs=lhs,
        inequality_rhs=rhs,
    )


@dataclass(frozen=True)
class ConvexEstimate:
    """Weighted average of extremal intersections over the coprime graph.

    The edge weights 2/(k*k') of the graph on {1..h} sum to 1, so the
    weighted average of the quantities (I_{kk'} + I_{k'k}) / 2 is at
    most some realized pairwise intersection number, and kappa is at
    least the ceiling of `value`. Edges whose extremal branches have no
    vertex at the exact heights contribute the trivial bound 0 and are
    listed in `skipped`; `defect` = n - value is the reported error
    term of the estimate.
    """

    vertex: int
    h: int
    value: Fraction
    weight_total: Fraction
    contributions: tuple[tuple[tuple[int, int], Fraction], ...]
    skipped: tuple[tuple[int, int], ...]
    n: int

    @property
    def certified_lower_bound(self) -> int:
        return math.ceil(self.value)

    @property
    def defect(self) -> Fraction:
        return self.n - self.value


def convex_estimate(p: BranchProfile) -> ConvexEstimate:
    """Exact rational evaluation of the convex-combination lower bound."""
    n = p.triangulation.n
    if p.h == 1:
        # single height class; the coprime graph degenerates, but the
        # extremal height-1 pair is a genuine intersection number and
        # certifies the bound on its own
        _, d1, _, _ = _pair_data(p, 1, 1)
        value = Fraction(d1)
        return ConvexEstimate(
            vertex=p.vertex,
            h=1,
            value=value,
            weight_total=Fraction(1),
            contributions=(((1, 1), value),),
            skipped=(),
            n=n,
        )
    graph = gamma_graph(p.h)
    total = Fraction(0)
    contribs = []
    skipped = []
    for k, kp in sorted(graph.edges):
        try:
            _, d1, _, _ = _pair_data(p, k, kp)
            _, d2, _, _ = _pair_data(p, kp, k)
        except ValueError:
            skipped.append((k, kp))
            continue
        share = Fraction(d1 + d2, k * kp)
        contribs.append(((k, kp), share))
        total += share
    return ConvexEstimate(
        vertex=p.vertex,
        h=p.h,
        value=total,
        weight_total=graph.weight_sum(),
        contributions=tuple(contribs),
        skipped=tuple(skipped),
        n=n,
    )


# ---------------------------------------------------------------------------
# searching the associahedron


@dataclass(frozen=True)
class SearchRecord:
    """Result of one kappa_min(n) computation."""

    n: int
    kappa_min: int
    witness: Triangulation
    enumerated: int
    elapsed: float
    mode: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "kappa_min": self.kappa_min,
                "witness": {
                    "n": self.witness.n,
                    "diagonals": sorted(self.witness.diagonals),
                },
                "enumerated": self.enumerated,
                "elapsed": self.elapsed,
                "mode": self.mode,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SearchRecord":
        data = json.loads(text)
        witness = Triangulation.from_diagonals(
            int(data["witness"]["n"]), data["witness"]["diagonals"]
        )
        return cls(
            n=int(data["n"]),
            kappa_min=int(data["kappa_min"]),
            witness=witness,
            enumerated=int(data["enumerated"]),
            elapsed=float(data["elapsed"]),
            mode=str(data["mode"]),
        )


class CacheError(RuntimeError):
    """A cached search record failed re-verification."""


class FrontierExceeded(RuntimeError):
    """The eta search ran past the configured enumeration frontier."""


class ResultsCache:
    """Append-only JSON-lines store of search records.

    Cached values are never trusted blindly: a hit re-verifies that the
    witness realizes the recorded value before it is returned.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def records(self) -> dict[int, SearchRecord]:
        out: dict[int, SearchRecord] = {}
        if not self.path.exists():
            return out
        for line in self.path.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            rec = SearchRecord.from_json(line)
            if rec.n in out and out[rec.n].kappa_min != rec.kappa_min:
                raise CacheError(f"conflicting cached values for n={rec.n}")
            out[rec.n] = rec
        return out

    def lookup(self, n: int) -> SearchRecord | None:
        return self.records().get(n)

    def append(self, record: SearchRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(record.to_json() + "\n")

    def verify(self, record: SearchRecord) -> None:
        if record.witness.n != record.n:
            raise CacheError(f"witness size {record.witness.n} != n {record.n}")
        value = kappa(record.witness)
        if value != record.kappa_min:
            raise CacheError(
                f"cached kappa_min({record.n}) = {record.kappa_min} "
                f"but the witness realizes {value}"
            )


def growth_incumbent(n: int) -> Triangulation:
    """An n-vertex triangulation with small kappa, grown by mediants.

    Starts from the triangle 1/0, 0/1, 1/1 and repeatedly inserts the
    mediant of the pair of circularly consecutive finite slopes with
    the smallest resulting denominator (ties to the smaller numerator).
    Whenever the count matches a full Farey series this reproduces the
    Farey-series member, and in between it extends it one fraction at a
    time, so it makes a tight initial upper bound for the search.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    finite = [ZERO, ONE]
    while len(finite) + 1 < n:
        best_med: Slope | None = None
        best_at = 0
        for i in range(len(finite) - 1):
            med = mediant(finite[i], finite[i + 1])
            if best_med is None or (med.q, med.p) < (best_med.q, best_med.p):
                best_med = med
                best_at = i
        finite.insert(best_at + 1, best_med)
    t, _ = triangulation_from_slopes(finite + [INFINITY])
    return t


def _bb_search(
    n: int,
    init_value: int,
    init_key: tuple[tuple[int, int], ...],
    shard_roots: Sequence[int] | None = None,
    shared_best=None,
) -> tuple[int, tuple[tuple[int, int], ...], int]:
    """Depth-first search over all triangulations with prefix pruning.

    Labels are propagated triangle by triangle while enumerating; any
    prefix whose realized pairwise intersection already exceeds the
    incumbent kills every triangulation sharing it. Returns the best
    value, the lexicographically least witness key among the ties, and
    the number of completed (fully labeled) triangulations.
    """
    p = [0] * n
    q = [0] * n
    p[0], q[0] = 1, 0
    p[n - 1], q[n - 1] = 0, 1
    assigned = [0, n - 1]
    diags: list[tuple[int, int]] = []
    best_value = init_value
    best_key = init_key
    completions = 0
    # segments: (a, b, other_p, other_q); the root's virtual companion is
    # -1/1 so the first apex receives 1/1
    root = (0, n - 1, -1, 1)

    def rec(segments: list, partial: int) -> None:
        nonlocal best_value, best_key, completions
        if shared_best is not None and shared_best.value < best_value:
            best_value = shared_best.value
            # a remotely found witness owns the value; keep ours only if
            # we later match or beat it
            best_key = None
        if not segments:
            completions += 1
            key = tuple(sorted(diags))
            if partial < best_value or (
                partial == best_value and (best_key is None or key < best_key)
            ):
                best_value, best_key = partial, key
                if shared_best is not None:
                    with shared_best.get_lock():
                        if partial < shared_best.value:
                            shared_best.value = partial
            return
        a, b, op, oq = segments.pop()
        apexes = (
            range(a + 1, b)
            if not (a == 0 and b == n - 1 and shard_roots is not None)
            else shard_roots
        )
        for k in apexes:
            sp, sq = p[a] + p[b], q[a] + q[b]
            if sq < 0 or (sq == 0 and sp < 0):
                sp, sq = -sp, -sq
            if sp == op and sq == oq:
                sp, sq = p[a] - p[b], q[a] - q[b]
                if sq < 0 or (sq == 0 and sp < 0):
                    sp, sq = -sp, -sq
            m = partial
            pruned = False
            for u in assigned:
                cross = abs(sp * q[u] - sq * p[u])
                if cross > m:
                    m = cross
                    if m > best_value:
                        pruned = True
                        break
            if pruned:
                continue
            p[k], q[k] = sp, sq
            assigned.append(k)
            pushed = 0
            added = 0
            if k - a >= 2:
                diags.append((a, k))
                added += 1
            if b - k >= 2:
                diags.append((k, b))
                added += 1
            if b - k >= 2:
                segments.append((k, b, p[a], q[a]))
                pushed += 1
            if k - a >= 2:
                segments.append((a, k, p[b], q[b]))
                pushed += 1
            rec(segments, m)
            for _ in range(pushed):
                segments.pop()
            for _ in range(added):
                diags.pop()
            assigned.pop()
        segments.append((a, b, op, oq))

    rec([root], 1)
    return best_value, best_key, completions


def _shard_worker(args):
    n, root, init_value, init_key = args
    return _bb_search(n, init_value, init_key, shard_roots=[root])


def _kappa_bounded(t: Triangulation, bound: int) -> int | None:
    """kappa(t), or None as soon as it provably exceeds the bound."""
    labels = _default_labelling(t).labels
    best = 0
    for u in range(t.n):
        for v in range(u + 1, t.n):
            cross = iota(labels[u], labels[v])
            if cross > best:
                best = cross
                if best > bound:
                    return None
    return best


def kappa_min(
    n: int,
    mode: str = "branch-and-bound",
    max_n: int = DEFAULT_MAX_N,
    cache: ResultsCache | None = None,
    force: bool = False,
    workers: int = 1,
) -> SearchRecord:
    """Exact minimum of kappa over all triangulations of the n-gon.

    Modes: "branch-and-bound" (default) explores the shared-prefix
    enumeration tree and prunes any partial labelling that exceeds the
    incumbent, which starts at the mediant-growth construction;
    "symmetry-reduced" walks one representative per dihedral orbit with
    per-triangulation early abort; "naive" evaluates every triangulation
    in full and serves as the oracle for the other two. All three agree;
    the witness is the lexicographically least minimizer seen by the
    mode. Past max_n (default 14) the search refuses to start, because
    the associahedron grows Catalan-fast; raise the limit knowingly.
    """
    if not 3 <= n <= max_n:
        raise ValueError(f"n must be within [3, {max_n}], got {n}")
    if cache is not None and not force:
        hit = cache.lookup(n)
        if hit is not None:
            cache.verify(hit)
            return hit

    start = time.perf_counter()
    incumbent = growth_incumbent(n)
    inc_value = kappa(incumbent)
    inc_key = incumbent.key()

    if mode == "branch-and-bound":
        if workers > 1 and n >= 6:
            value, key, completions = _bb_parallel(n, inc_value, inc_key, workers)
        else:
            value, key, completions = _bb_search(n, inc_value, inc_key)
    elif mode == "symmetry-reduced":
        value, key = inc_value, inc_key
        completions = 0
        for t in enumerate_triangulations(n, modulo_symmetry=True):
            completions += 1
            got = _kappa_bounded(t, value)
            if got is None:
                continue
            if got < value or (got == value and t.key() < key):
                value, key = got, t.key()
    elif mode == "naive":
        value, key = None, None
        completions = 0
        for t in enumerate_triangulations(n):
            completions += 1
            got = kappa(t)
            if value is None or got < value or (got == value and t.key() < key):
                value, key = got, t.key()
    else:
        raise ValueError(f"unknown mode {mode!r}")

    witness = Triangulation.from_diagonals(n, key)
    record = SearchRecord(
        n=n,
        kappa_min=value,
        witness=witness,
        enumerated=completions,
        elapsed=time.perf_counter() - start,
        mode=mode,
    )
    if kappa(record.witness) != record.kappa_min:
        raise AssertionError("witness does not realize the reported minimum")
    if cache is not None:
        known = cache.records()
        if n - 1 in known and record.kappa_min < known[n - 1].kappa_min:
            raise CacheError("kappa_min would decrease from n-1 to n")
        if n + 1 in known and record.kappa_min > known[n + 1].kappa_min:
            raise CacheError("kappa_min would decrease from n to n+1")
        cache.append(record)
    return record


def _bb_parallel(n, inc_value, inc_key, workers):
    import multiprocessing as mp

    roots = list(range(1, n - 1))
    with mp.Pool(processes=min(workers, len(roots))) as pool:
        results = pool.map(
            _shard_worker, [(n, r, inc_value, inc_key) for r in roots]
        )
    value, key = inc_value, inc_key
    completions = 0
    for v, k, c in results:
        completions += c
        if k is None:
            continue
        if v < value or (v == value and k < key):
            value, key = v, k
    return value, key, completions


def eta(
    k: int,
    max_n: int = DEFAULT_MAX_N,
    cache: ResultsCache | None = None,
) -> tuple[int, Triangulation | None]:
    """Largest n with kappa_min(n) <= k, plus a witness triangulation.

    A 0-system cannot hold two distinct curves, so eta(0) = 1 with no
    witness. Raises FrontierExceeded when every n up to max_n still
    satisfies the bound, since the true value then lies past the
    enumeration frontier.
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if k == 0:
        return 1, None
    last: SearchRecord | None = None
    for n in range(3, max_n + 1):
        rec = kappa_min(n, cache=cache)
        if rec.kappa_min <= k:
            last = rec
        else:
            return last.n, last.witness
    raise FrontierExceeded(
        f"kappa_min({max_n}) <= {k}; eta({k}) lies beyond the n <= {max_n} frontier"
    )


def saturate(slopes: Iterable[Slope], k: int) -> tuple[frozenset[Slope], Triangulation]:
    """Close a k-system under the vertices of crossed Farey triangles.

    Every Farey triangle met by a geodesic between members offers its
    vertices; a candidate joins the set when it keeps all pairwise
    intersections at most k (automatic for genuinely crossed triangles,
    checked anyway so that the edge-adjacent triangles of unit pairs are
    handled safely). The closure ends in a set whose induced complex
    triangulates a polygon; the result is inclusion-maximal, since every
    outward mediant over a hull edge was offered and rejected.
    """
    from .hyperbolic import Geodesic, cutting_sequence

    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    members = sorted(set(slopes), key=slope_sort_key)
    if len(members) < 2:
        raise ValueError("need at least two slopes")
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if iota(a, b) > k:
                raise ValueError(f"{a} and {b} intersect more than {k} times")

    current = list(members)
    current_set = set(current)
    pending = [
        (current[i], current[j])
        for i in range(len(current))
        for j in range(i + 1, len(current))
    ]
    while pending:
        a, b = pending.pop(0)
        for tri in cutting_sequence(Geodesic(a, b)):
            for cand in sorted(tri, key=lambda s: (s.q, abs(s.p), s.p)):
                if cand in current_set:
                    continue
                if all(iota(cand, m) <= k for m in current):
                    pending.extend((cand, m) for m in current)
                    current.append(cand)
                    current_set.add(cand)
    result = frozenset(current_set)
    t, _ = triangulation_from_slopes(sorted(result, key=slope_sort_key))
    return result, t


def invert_bound(k: int, c: float) -> int:
    """Largest integer n with n - c*sqrt(n)*ln(n) <= k, by monotone scan.

    The map n -> n - c*sqrt(n)*ln(n) eventually increases, so the scan
    walks upward from k (every n <= k qualifies trivially) and stops
    once the bound fails on the increasing tail.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if c < 0:
        raise ValueError(f"need c >= 0, got {c}")
    if c == 0:
        return k

    def g(n: int) -> float:
        return n - c * math.sqrt(n) * math.log(n)

    # past this point the increments of g are positive
    n0 = 3
    while 2 * math.sqrt(n0) <= c * (math.log(n0) + 2):
        n0 *= 2
    last = k
    n = k + 1
    while True:
        if g(n) <= k:
            last = n
        elif n > n0:
            return last
        n += 1


def agol_bound(k: int) -> int:
    """One more than the smallest prime greater than k."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return 1 + nextprime(k)
