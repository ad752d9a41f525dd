"""Acceptance suite: one test per criterion, each printing a verdict line.

Every tolerance is pinned here, not configured elsewhere. Runtime
budgets are asserted too; they are generous compared to the measured
costs, so a failure means a real regression rather than jitter.
Run with `pytest tests/test_acceptance.py -v -s` to see the verdict
lines as they appear.
"""

import itertools
import math
import random
import time

import pytest

from toruscurves.families import FamilySpec, achain, chain, farey_hull, generate, regular
from toruscurves.farey import INFINITY, iota, reduce
from toruscurves.hyperbolic import (
    COVERING_CONSTANT,
    covering_check,
    geometric_horoball,
    horoball_distance,
)
from toruscurves.ksystem import (
    accounting_check,
    agol_bound,
    branch_profile,
    cross_intersection,
    eta,
    height,
    invert_bound,
    kappa,
    kappa_min,
)
from toruscurves.numtheory import nextprime, verify_gamma_range
from toruscurves.triangulation import (
    enumerate_triangulations,
    farey_labelling,
    intersection_via_labels,
    intersection_via_tree,
    random_triangulation,
)

HEIGHT_CONSTANT = (2 / math.sqrt(3)) * (1 + math.sqrt(2)) ** 2  # about 6.73


def verdict(num: int, ok: bool, budget: float, elapsed: float, detail: str):
    flag = "PASS" if ok else "FAIL"
    print(f"[{flag}] criterion {num}: {detail} ({elapsed:.2f}s / budget {budget:.0f}s)")
    assert ok, detail
    assert elapsed < budget, f"criterion {num} overran: {elapsed:.1f}s >= {budget}s"


@pytest.fixture(scope="module")
def corpus_small():
    """Every triangulation with 3 <= n <= 9."""
    return {n: list(enumerate_triangulations(n)) for n in range(3, 10)}


@pytest.fixture(scope="module")
def corpus_random():
    """500 seeded random triangulations with 10 <= n <= 12."""
    rng = random.Random(2024)
    return [random_triangulation(rng.randrange(10, 13), rng) for _ in range(500)]


def test_criterion_01_farey_family_closed_form():
    start = time.perf_counter()
    bad = [
        (h, kappa(generate(FamilySpec("farey", h))))
        for h in range(3, 11)
        if kappa(generate(FamilySpec("farey", h))) != h * h - 2 * h
    ]
    verdict(
        1,
        not bad,
        10.0,
        time.perf_counter() - start,
        f"kappa(farey(h)) = h^2 - 2h for h = 3..10{'' if not bad else f', bad: {bad}'}",
    )


def test_criterion_02_fibonacci_families():
    start = time.perf_counter()
    values = {n: kappa(achain(n)) for n in range(5, 21)}
    recurrence_ok = all(values[n] == values[n - 1] + values[n - 2] for n in range(8, 21))
    regular_ok = all(kappa(regular(r)) == values[2 * r + 1] for r in range(2, 6))
    verdict(
        2,
        recurrence_ok and regular_ok,
        30.0,
        time.perf_counter() - start,
        "kappa(achain) follows the Fibonacci recurrence on n = 8..20 and "
        "kappa(regular(r)) = kappa(achain(2r+1)) for r = 2..5",
    )


def test_criterion_03_gamma_graphs_exact():
    start = time.perf_counter()
    report = verify_gamma_range(1000)
    verdict(
        3,
        report.ok and report.checked == 999,
        60.0,
        time.perf_counter() - start,
        "degree(k) = phi(k) and exact rational weight sum 1 for every h <= 1000"
        + ("" if report.ok else f"; failures: {report.failures[:3]}"),
    )


def test_criterion_04_hyperbolic_identities():
    start = time.perf_counter()
    rng = random.Random(99)
    worst = 0.0
    pairs = 0
    while pairs < 10_000:
        p1, q1 = rng.randrange(-1000, 1001), rng.randrange(0, 1001)
        p2, q2 = rng.randrange(-1000, 1001), rng.randrange(0, 1001)
        if (p1, q1) == (0, 0) or (p2, q2) == (0, 0):
            continue
        s1, s2 = reduce(p1, q1), reduce(p2, q2)
        if s1 == s2:
            continue
        worst = max(worst, abs(horoball_distance(s1, s2) - 2 * math.log(iota(s1, s2))))
        pairs += 1
    distance_ok = worst <= 1e-9
    cover = covering_check(100)
    cover_ok = cover <= COVERING_CONSTANT + 1e-6
    verdict(
        4,
        distance_ok and cover_ok,
        10.0,
        time.perf_counter() - start,
        f"max |distance - 2 ln iota| = {worst:.2e} <= 1e-9 on 10^4 pairs; "
        f"covering max {cover:.6f} <= log(2/sqrt(3)) + 1e-6 on a 100x100 grid",
    )


def test_criterion_05_dual_computation_equivalence(corpus_small, corpus_random):
    start = time.perf_counter()
    mismatches = 0
    pairs = 0
    for n, ts in corpus_small.items():
        for t in ts:
            lab = farey_labelling(t)
            for u, v in itertools.combinations(range(n), 2):
                pairs += 1
                if intersection_via_tree(t, u, v) != intersection_via_labels(lab, u, v):
                    mismatches += 1
    for t in corpus_random:
        lab = farey_labelling(t)
        for u, v in itertools.combinations(range(t.n), 2):
            pairs += 1
            if intersection_via_tree(t, u, v) != intersection_via_labels(lab, u, v):
                mismatches += 1
    verdict(
        5,
        mismatches == 0,
        120.0,
        time.perf_counter() - start,
        f"turn-sequence and labelling intersections agree on {pairs} pairs "
        f"(all n <= 9 plus 500 random n <= 12), {mismatches} mismatches",
    )


def test_criterion_06_exact_small_minima():
    start = time.perf_counter()
    records = {n: kappa_min(n) for n in range(3, 13)}
    small_ok = (records[3].kappa_min, records[4].kappa_min, records[5].kappa_min) == (1, 2, 3)
    naive_ok = all(
        kappa_min(n, mode="naive").kappa_min == records[n].kappa_min for n in range(3, 10)
    )
    seq = [records[n].kappa_min for n in range(3, 13)]
    monotone_ok = all(a <= b for a, b in zip(seq, seq[1:]))
    verdict(
        6,
        small_ok and naive_ok and monotone_ok,
        300.0,
        time.perf_counter() - start,
        f"kappa_T(3..12) = {seq}; matches naive enumeration for n <= 9; nondecreasing",
    )


def test_criterion_07_agol_consistency():
    start = time.perf_counter()
    frontier = 14
    top = kappa_min(frontier).kappa_min
    etas = {}
    for k in range(1, top):
        value, witness = eta(k, max_n=frontier)
        assert witness is not None and kappa(witness) <= k
        etas[k] = value
    agol_ok = all(etas[k] <= 1 + nextprime(k) for k in etas)
    excess = max(etas[k] - k for k in etas)
    verdict(
        7,
        agol_ok and excess <= 6,
        300.0,
        time.perf_counter() - start,
        f"eta(k) <= 1 + nextprime(k) for every k < kappa_T({frontier}) = {top}; "
        f"max(eta(k) - k) = {excess} (<= 6; larger would be a finding, not a bug)",
    )


def test_criterion_08_branch_accounting_exact(corpus_small, corpus_random):
    start = time.perf_counter()
    rng = random.Random(4096)
    profiles = [
        branch_profile(t, v)
        for n, ts in corpus_small.items()
        for t in ts
        for v in range(n)
    ]
    profiles += [branch_profile(t, rng.randrange(t.n)) for t in corpus_random]
    violations = sum(1 for p in profiles if not accounting_check(p).ok)
    carriers = sum(1 for p in profiles if accounting_check(p).slack == 0)
    formula_checked = 0
    formula_exact = 0
    formula_oriented = 0
    for p in profiles:
        for k, kp in itertools.combinations(range(1, p.h + 1), 2):
            try:
                ci = cross_intersection(p, k, kp)
            except ValueError:
                continue
            formula_checked += 1
            formula_exact += 1 if ci.agrees else 0
            formula_oriented += 1 if ci.agrees_up_to_orientation else 0
    # the closed form is exact across distinct extremal branches and off
    # only by orientation sign when the branches coincide; that refined
    # law must hold on every pair
    surfaced = (
        f"closed form literal on {formula_exact}/{formula_checked} pairs, "
        f"exact up to the pinned orientation law on {formula_oriented}/{formula_checked}"
    )
    verdict(
        8,
        violations == 0 and formula_oriented == formula_checked,
        300.0,
        time.perf_counter() - start,
        f"counting inequality holds on {len(profiles)} profiles "
        f"({violations} violations, tight on {carriers}); {surfaced}",
    )


def test_criterion_09_low_height_horoball(corpus_small):
    start = time.perf_counter()
    bad = 0
    checked = 0
    for n, ts in corpus_small.items():
        for t in ts:
            lab = farey_labelling(t)
            v = geometric_horoball(t, lab)
            checked += 1
            if height(t, v) > HEIGHT_CONSTANT * math.sqrt(kappa(t)):
                bad += 1
    family_members = (
        [chain(n) for n in (10, 20, 40)]
        + [achain(n) for n in (10, 14, 18)]
        + [regular(r) for r in (2, 3, 4, 5)]
        + [farey_hull(h)[0] for h in (4, 6, 8, 10)]
    )
    for t in family_members:
        lab = farey_labelling(t)
        v = geometric_horoball(t, lab)
        checked += 1
        if height(t, v) > HEIGHT_CONSTANT * math.sqrt(kappa(t)):
            bad += 1
    verdict(
        9,
        bad == 0,
        120.0,
        time.perf_counter() - start,
        f"returned horoball satisfies ht <= {HEIGHT_CONSTANT:.3f} * sqrt(kappa) "
        f"on {checked} inputs (full n <= 9 corpus and the four families)",
    )


def test_criterion_10_bound_inversion():
    start = time.perf_counter()
    ks = list(range(2, 1000)) + [10**3, 3 * 10**3, 10**4, 10**5, 5 * 10**5, 10**6]
    fitted = max((invert_bound(k, 1.0) - k) / (math.sqrt(k) * math.log(k)) for k in ks)
    holds = all(
        invert_bound(k, 1.0) <= k + fitted * math.sqrt(k) * math.log(k) for k in ks
    )
    verdict(
        10,
        holds and fitted <= 6.0,
        30.0,
        time.perf_counter() - start,
        f"F(k) <= k + D sqrt(k) ln(k) with the single fitted D = {fitted:.3f} "
        "over k <= 10^6 (C = 1)",
    )
