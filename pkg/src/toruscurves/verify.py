"""Self-contained verification suites over randomized corpora.

Each check returns a VerifyResult; a suite is a list of them. The
random corpora are reproducible from the seed, and every numeric
assertion is either exact or carries the tolerance stated next to it.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .farey import (
    INFINITY,
    Slope,
    UnimodularMap,
    apply_map,
    continuant,
    iota,
    mediant,
    reduce,
)
from .hyperbolic import (
    COVERING_CONSTANT,
    Geodesic,
    covering_check,
    cutting_sequence,
    geodesic_midpoint,
    horoball_distance,
    point_horoball_distance,
)
from .ksystem import accounting_check, branch_profile, convex_estimate, cross_intersection, kappa
from .numtheory import coprime_count, ndivisors, totient, verify_gamma_range
from .triangulation import (
    enumerate_triangulations,
    farey_labelling,
    intersection_via_labels,
    intersection_via_tree,
    random_triangulation,
)

__all__ = ["VerifyResult", "SUITES", "run_suite"]


@dataclass(frozen=True)
class VerifyResult:
    name: str
    passed: bool
    detail: str


def _random_slope(rng: random.Random, max_q: int = 1000) -> Slope:
    while True:
        p = rng.randrange(-max_q, max_q + 1)
        q = rng.randrange(0, max_q + 1)
        if (p, q) != (0, 0):
            return reduce(p, q)


def _random_unimodular(rng: random.Random, steps: int = 12) -> UnimodularMap:
    m = UnimodularMap.identity()
    gens = [UnimodularMap(1, 1, 0, 1), UnimodularMap(1, -1, 0, 1), UnimodularMap(0, -1, 1, 0)]
    for _ in range(steps):
        m = m.compose(gens[rng.randrange(3)])
    return m


def suite_farey(seed: int = 0, trials: int = 2000) -> list[VerifyResult]:
    rng = random.Random(seed)
    out = []

    bad = 0
    for _ in range(trials):
        a, b = _random_slope(rng), _random_slope(rng)
        if iota(a, b) != iota(b, a) or (iota(a, b) == 0) != (a == b):
            bad += 1
    out.append(VerifyResult("iota symmetry and positivity", bad == 0, f"{trials} pairs"))

    bad = 0
    for _ in range(trials):
        a, b, m = _random_slope(rng), _random_slope(rng), _random_unimodular(rng)
        if iota(apply_map(m, a), apply_map(m, b)) != iota(a, b):
            bad += 1
    out.append(VerifyResult("unimodular invariance of iota", bad == 0, f"{trials} pairs"))

    bad = 0
    for _ in range(trials):
        a, b = _random_slope(rng), _random_slope(rng)
        if a == b:
            continue
        med = mediant(a, b)
        # the componentwise sum reduces by g = gcd(p1+p2, q1+q2), which
        # always divides iota(a, b); g = 1 on every Farey pair
        g = math.gcd(a.p + b.p, a.q + b.q)
        if iota(med, a) * g != iota(a, b) or iota(med, b) * g != iota(a, b):
            bad += 1
        if iota(a, b) == 1 and (iota(med, a) != 1 or iota(med, b) != 1):
            bad += 1
    out.append(VerifyResult("mediant identity", bad == 0, f"{trials} pairs"))

    bad = 0
    for _ in range(trials):
        runs = tuple(rng.randrange(1, 6) for _ in range(rng.randrange(0, 9)))
        if continuant(runs) != continuant(tuple(reversed(runs))):
            bad += 1
    out.append(VerifyResult("continuant reversal", bad == 0, f"{trials} sequences"))

    bad = 0
    for _ in range(trials):
        runs = tuple(rng.randrange(1, 5) for _ in range(rng.randrange(1, 8)))
        bigger = tuple(r + rng.randrange(0, 3) for r in runs) + tuple(
            rng.randrange(1, 5) for _ in range(rng.randrange(0, 3))
        )
        if continuant(bigger) < continuant(runs):
            bad += 1
    out.append(VerifyResult("continuant monotonicity", bad == 0, f"{trials} sequences"))
    return out


def suite_equivalence(seed: int = 0, random_count: int = 60) -> list[VerifyResult]:
    """Tree-path and labelling intersection numbers must agree everywhere."""
    rng = random.Random(seed)
    mismatches = 0
    pairs = 0
    for n in range(3, 9):
        for t in enumerate_triangulations(n):
            l = farey_labelling(t)
            for u, v in itertools.combinations(range(n), 2):
                pairs += 1
                if intersection_via_tree(t, u, v) != intersection_via_labels(l, u, v):
                    mismatches += 1
    for _ in range(random_count):
        n = rng.randrange(9, 13)
        t = random_triangulation(n, rng)
        l = farey_labelling(t)
        for u, v in itertools.combinations(range(n), 2):
            pairs += 1
            if intersection_via_tree(t, u, v) != intersection_via_labels(l, u, v):
                mismatches += 1
    return [
        VerifyResult(
            "tree vs labelling intersection numbers",
            mismatches == 0,
            f"{pairs} pairs, {mismatches} mismatches",
        )
    ]


def suite_accounting(seed: int = 0, random_count: int = 250) -> list[VerifyResult]:
    rng = random.Random(seed)
    profiles = []
    for n in range(3, 8):
        for t in enumerate_triangulations(n):
            for v in range(n):
                profiles.append(branch_profile(t, v))
    for _ in range(random_count):
        n = rng.randrange(8, 13)
        t = random_triangulation(n, rng)
        profiles.append(branch_profile(t, rng.randrange(n)))

    count_bad = sum(
        1
        for p in profiles
        if sum(p.count_at_height(k) for k in range(1, p.h + 1))
        != p.triangulation.n - 2
    )
    acct_bad = sum(1 for p in profiles if not accounting_check(p).ok)
    cert_bad = 0
    ineq_bad = 0
    orient_bad = 0
    checked = 0
    for p in profiles:
        est = convex_estimate(p)
        if est.weight_total != 1 or est.certified_lower_bound > kappa(p.triangulation):
            cert_bad += 1
        for k, kp in itertools.combinations(range(1, p.h + 1), 2):
            try:
                ci = cross_intersection(p, k, kp)
            except ValueError:
                continue
            checked += 1
            if not ci.inequality_holds:
                ineq_bad += 1
            if not ci.agrees_up_to_orientation:
                orient_bad += 1
    return [
        VerifyResult("height counts sum to n - 2", count_bad == 0, f"{len(profiles)} profiles"),
        VerifyResult("exact counting inequality", acct_bad == 0, f"{len(profiles)} profiles"),
        VerifyResult(
            "convex estimate certifies kappa", cert_bad == 0, f"{len(profiles)} profiles"
        ),
        VerifyResult(
            "averaged cross-intersection inequality", ineq_bad == 0, f"{checked} pairs"
        ),
        VerifyResult(
            "extremal intersection closed form (oriented)",
            orient_bad == 0,
            f"{checked} pairs",
        ),
    ]


def suite_hyperbolic(seed: int = 0, trials: int = 3000) -> list[VerifyResult]:
    rng = random.Random(seed)
    out = []
    bad = 0
    for _ in range(trials):
        a, b = _random_slope(rng), _random_slope(rng)
        if a == b:
            continue
        if abs(horoball_distance(a, b) - 2 * math.log(iota(a, b))) > 1e-9:
            bad += 1
    out.append(
        VerifyResult(
            "distance equals twice log of intersection (1e-9)",
            bad == 0,
            f"{trials} pairs",
        )
    )

    worst = covering_check(60)
    out.append(
        VerifyResult(
            "covering constant respected (1e-6)",
            worst <= COVERING_CONSTANT + 1e-6,
            f"max distance {worst:.6f} vs {COVERING_CONSTANT:.6f}",
        )
    )

    bad = 0
    for _ in range(500):
        a, b = _random_slope(rng, 60), _random_slope(rng, 60)
        if a == b:
            continue
        mid = geodesic_midpoint(a, b)
        if abs(point_horoball_distance(mid, a) - point_horoball_distance(mid, b)) > 1e-9:
            bad += 1
    out.append(VerifyResult("midpoint equidistance (1e-9)", bad == 0, "500 pairs"))

    bad = 0
    for _ in range(300):
        a, b = _random_slope(rng, 40), _random_slope(rng, 40)
        if a == b:
            continue
        tris = cutting_sequence(Geodesic(a, b))
        for t1, t2 in zip(tris, tris[1:]):
            if len(set(t1) & set(t2)) != 2:
                bad += 1
    out.append(VerifyResult("cutting sequence adjacency", bad == 0, "300 geodesics"))

    bad = 0
    for _ in range(300):
        a, b = _random_slope(rng, 40), _random_slope(rng, 40)
        if a == b:
            continue
        bound = iota(a, b)
        for tri in cutting_sequence(Geodesic(a, b)):
            for d in tri:
                if iota(d, a) > max(bound, 1) or iota(d, b) > max(bound, 1):
                    bad += 1
    out.append(
        VerifyResult(
            "crossed-triangle vertices stay within the pair's intersection",
            bad == 0,
            "300 geodesics",
        )
    )
    return out


def suite_gamma(h_max: int = 300) -> list[VerifyResult]:
    report = verify_gamma_range(h_max)
    results = [
        VerifyResult(
            f"coprime-graph invariants for h <= {h_max}",
            report.ok,
            f"{report.checked} graphs, rebuilt at {report.rebuilt}",
        )
    ]
    bad = 0
    trials = 0
    for m in range(0, 120):
        for s in range(1, 40):
            trials += 1
            direct = sum(1 for i in range(1, m + 1) if math.gcd(i, s) == 1)
            if coprime_count(m, s) != direct:
                bad += 1
            if abs(coprime_count(m, s) - m * totient(s) / s) > ndivisors(s):
                bad += 1
    results.append(
        VerifyResult("coprime counts vs enumeration and density", bad == 0, f"{trials} pairs")
    )
    return results


SUITES = {
    "farey": suite_farey,
    "equivalence": suite_equivalence,
    "accounting": suite_accounting,
    "hyperbolic": suite_hyperbolic,
    "gamma": suite_gamma,
}


def run_suite(name: str, seed: int = 0) -> list[VerifyResult]:
    """Run one suite by name, or all of them with name == "all"."""
    if name == "all":
        results = []
        for key in SUITES:
            results.extend(run_suite(key, seed))
        return results
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    fn = SUITES[name]
    if name == "gamma":
        return fn()
    return fn(seed=seed)
