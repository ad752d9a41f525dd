"""Triangulations, dual trees, turn sequences and Farey labellings."""

import itertools
import random
from collections import Counter

import pytest

from toruscurves.farey import INFINITY, ONE, ZERO, Slope, continuant, iota
from toruscurves.numtheory import catalan
from toruscurves.triangulation import (
    FareyLabelling,
    Triangulation,
    apply_vertex_map,
    canonical_key,
    dihedral_maps,
    dual_tree,
    enumerate_triangulations,
    farey_labelling,
    flip,
    horoballs,
    intersection_via_labels,
    intersection_via_tree,
    random_triangulation,
    triangles,
    triangulation_from_slopes,
    turn_sequence,
)


def fan(n):
    return Triangulation.from_diagonals(n, ((0, j) for j in range(2, n - 1)))


def test_validation():
    with pytest.raises(ValueError):
        Triangulation.from_diagonals(5, [(0, 2)])  # wrong count
    with pytest.raises(ValueError):
        Triangulation.from_diagonals(5, [(0, 2), (1, 3)])  # crossing
    with pytest.raises(ValueError):
        Triangulation.from_diagonals(4, [(0, 3)])  # boundary edge


def test_dual_tree_examples():
    t3 = Triangulation.from_diagonals(3, ())
    assert dual_tree(t3).node_count == 1
    assert dual_tree(t3).degree(0) == 0

    t4 = Triangulation.from_diagonals(4, [(0, 2)])
    tree = dual_tree(t4)
    assert tree.node_count == 2
    assert tree.degree(0) == tree.degree(1) == 1

    # zig-zag hexagon: the dual tree is a path of four nodes
    zig = Triangulation.from_diagonals(6, [(1, 5), (2, 5), (2, 4)])
    tree = dual_tree(zig)
    degs = sorted(tree.degree(i) for i in range(tree.node_count))
    assert degs == [1, 1, 2, 2]


def test_triangle_count():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randrange(3, 13)
        t = random_triangulation(n, rng)
        assert len(triangles(t)) == n - 2


def test_turn_sequence_examples():
    t4 = Triangulation.from_diagonals(4, [(0, 2)])
    assert turn_sequence(t4, 1, 3) == (2,)
    t3 = Triangulation.from_diagonals(3, ())
    for u, v in itertools.permutations(range(3), 2):
        assert turn_sequence(t3, u, v) == ()
    with pytest.raises(ValueError):
        turn_sequence(t4, 2, 2)


def test_turn_sequence_alternating_chain():
    # the end-to-end path of the zig-zag picks up one turn per triangle:
    # n - 3 runs summing to n - 2, with continuant a Fibonacci number
    from toruscurves.families import achain, fibonacci

    for n in range(6, 13):
        t = achain(n)
        ears = [v for v in range(n) if horoballs(t)[v].width == 1]
        assert len(ears) == 2
        runs = turn_sequence(t, ears[0], ears[1])
        # one turn is recorded per triangle; with the path alternating,
        # runs never exceed 2 (a lone 2 can appear where the virtual
        # approach edge merges into the first or last run)
        assert sum(runs) == n - 2
        assert max(runs) <= 2
        assert continuant(runs) == fibonacci(n - 1)


def test_intersection_examples():
    t5 = fan(5)
    assert intersection_via_tree(t5, 1, 4) == 3
    assert intersection_via_tree(t5, 1, 1) == 0
    assert intersection_via_tree(t5, 1, 2) == 1  # adjacent horoballs


def test_labelling_examples():
    t3 = Triangulation.from_diagonals(3, ())
    assert farey_labelling(t3).labels == (INFINITY, ZERO, ONE)

    t4 = Triangulation.from_diagonals(4, [(0, 2)])
    lab = farey_labelling(t4)
    assert lab.labels[3] in (Slope(2, 1), Slope(1, 2))
    mirrored = farey_labelling(t4, assignment={0: ZERO, 1: INFINITY, 2: ONE})
    multiset = lambda l: sorted(
        iota(l.labels[u], l.labels[v]) for u, v in itertools.combinations(range(4), 2)
    )
    assert multiset(lab) == multiset(mirrored)


def test_labelling_rejects_bad_assignment():
    t4 = Triangulation.from_diagonals(4, [(0, 2)])
    with pytest.raises(ValueError):
        farey_labelling(t4, assignment={0: INFINITY, 1: ZERO, 2: Slope(2, 3)})
    with pytest.raises(ValueError):
        farey_labelling(t4, assignment={0: INFINITY, 1: ZERO, 3: ONE})


def test_labelling_triangle_consistency_checked():
    t4 = Triangulation.from_diagonals(4, [(0, 2)])
    with pytest.raises(ValueError):
        FareyLabelling(t4, (INFINITY, ZERO, ONE, Slope(5, 2)))


def test_tree_label_equivalence_exhaustive():
    for n in range(3, 9):
        for t in enumerate_triangulations(n):
            lab = farey_labelling(t)
            for u, v in itertools.combinations(range(n), 2):
                assert intersection_via_tree(t, u, v) == intersection_via_labels(
                    lab, u, v
                )


def test_turn_sequence_end_choices_do_not_change_continuant():
    # both extreme sides at the departure and the arrival triangles are
    # legitimate virtual approach edges; the runs differ, the value not
    rng = random.Random(5)
    from toruscurves.triangulation import _in_open_arc, _tree_path
    from toruscurves.triangulation import _pair, dual_tree as dt

    for _ in range(60):
        n = rng.randrange(5, 11)
        t = random_triangulation(n, rng)
        u, v = rng.sample(range(n), 2)
        if t.is_edge(u, v):
            continue
        expected = continuant(turn_sequence(t, u, v))
        tree = dt(t)
        hu, hv = horoballs(t)[u], horoballs(t)[v]

        def variants(hb, target):
            out = []
            for j, tri in enumerate(hb.fan):
                a, b = hb.fan_vertices[j], hb.fan_vertices[j + 1]
                if _in_open_arc(target, a, b, t.n):
                    out = [
                        (tri, _pair(hb.vertex, a)),
                        (tri, _pair(hb.vertex, b)),
                    ]
            return out

        for t_dep, in_side in variants(hu, v):
            for t_arr, out_side in variants(hv, u):
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
                    letters.append("L" if rot[(i + 1) % 3] == side_out else "R")
                    side_in = side_out
                runs = []
                for ch in letters:
                    if runs and runs[-1][0] == ch:
                        runs[-1][1] += 1
                    else:
                        runs.append([ch, 1])
                assert continuant([c for _, c in runs]) == expected


def test_labelling_invariance_over_bases():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randrange(4, 11)
        t = random_triangulation(n, rng)
        reference = None
        for base in range(0, n - 2, max(1, (n - 2) // 3)):
            lab = farey_labelling(t, base=base)
            ms = sorted(
                iota(lab.labels[u], lab.labels[v])
                for u, v in itertools.combinations(range(n), 2)
            )
            if reference is None:
                reference = ms
            assert ms == reference
        tree_ms = sorted(
            intersection_via_tree(t, u, v)
            for u, v in itertools.combinations(range(n), 2)
        )
        assert tree_ms == reference


def test_enumeration_counts():
    for n in range(3, 11):
        assert sum(1 for _ in enumerate_triangulations(n)) == catalan(n - 2)
    with pytest.raises(ValueError):
        list(enumerate_triangulations(2))
    with pytest.raises(ValueError):
        list(enumerate_triangulations(40))


def test_enumeration_modulo_symmetry_orbit_accounting():
    for n in range(3, 10):
        reps = list(enumerate_triangulations(n, modulo_symmetry=True))
        total = 0
        seen_keys = set()
        for t in reps:
            orbit = {
                apply_vertex_map(t, m).key() for m in dihedral_maps(n)
            }
            assert canonical_key(t) == t.key()
            assert not (orbit & seen_keys)
            seen_keys |= orbit
            total += len(orbit)
        assert total == catalan(n - 2)


def test_dihedral_invariance_of_intersection_multiset():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randrange(4, 11)
        t = random_triangulation(n, rng)
        lab = farey_labelling(t)
        ms = sorted(
            iota(lab.labels[u], lab.labels[v])
            for u, v in itertools.combinations(range(n), 2)
        )
        m = rng.choice(dihedral_maps(n))
        t2 = apply_vertex_map(t, m)
        lab2 = farey_labelling(t2)
        ms2 = sorted(
            iota(lab2.labels[u], lab2.labels[v])
            for u, v in itertools.combinations(range(n), 2)
        )
        assert ms == ms2


def test_flip():
    t4 = Triangulation.from_diagonals(4, [(0, 2)])
    assert flip(t4, (0, 2)).diagonals == frozenset({(1, 3)})
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randrange(4, 12)
        t = random_triangulation(n, rng)
        d = rng.choice(sorted(t.diagonals))
        t2 = flip(t, d)
        new = next(iter(t2.diagonals - t.diagonals))
        assert flip(t2, new) == t
    with pytest.raises(ValueError):
        flip(t4, (1, 3))


def test_horoballs_structure():
    t3 = Triangulation.from_diagonals(3, ())
    assert all(h.spine == () for h in horoballs(t3))

    t6 = fan(6)
    widths = [h.width for h in horoballs(t6)]
    assert widths[0] == 4 and len(horoballs(t6)[0].spine) == 3
    assert all(w >= 1 for w in widths)

    rng = random.Random(2)
    for _ in range(25):
        n = rng.randrange(3, 12)
        t = random_triangulation(n, rng)
        hbs = horoballs(t)
        assert len(hbs) == n
        assert sum(h.width for h in hbs) == 3 * (n - 2)  # each triangle lies in 3 fans
        for h in hbs:
            assert len(h.spine) == h.width - 1


def test_json_roundtrip():
    rng = random.Random(4)
    for _ in range(10):
        t = random_triangulation(rng.randrange(3, 12), rng)
        assert Triangulation.from_json(t.to_json()) == t
        lab = farey_labelling(t)
        assert FareyLabelling.from_json(t, lab.to_json()) == lab


def test_triangulation_from_slopes_round():
    slopes = [INFINITY, ZERO, ONE, Slope(1, 2)]
    t, ordered = triangulation_from_slopes(slopes)
    assert t.n == 4
    assert ordered == (ZERO, Slope(1, 2), ONE, INFINITY)


def test_random_triangulation_uniform():
    rng = random.Random(0)
    counts = Counter(random_triangulation(5, rng).key() for _ in range(5000))
    assert len(counts) == 5
    for key, c in counts.items():
        assert 800 < c < 1200, (key, c)
