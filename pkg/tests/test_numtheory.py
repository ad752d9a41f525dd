"""Arithmetic functions, coprime counts and the coprime graph."""

import math
from fractions import Fraction

import pytest

from toruscurves.numtheory import (
    catalan,
    coprime_count,
    gamma_graph,
    mobius,
    ndivisors,
    nextprime,
    partial_sums,
    squarefree_divisor_count,
    totient,
    verify_gamma_range,
)


def test_scalar_functions():
    assert totient(12) == 4
    assert ndivisors(12) == 6
    assert mobius(1) == 1
    assert mobius(4) == 0
    assert mobius(30) == -1
    assert squarefree_divisor_count(12) == 4
    assert nextprime(13) == 17
    assert nextprime(1) == 2
    assert nextprime(0) == 2


def test_coprime_count_examples():
    assert coprime_count(7, 1) == 7
    assert coprime_count(10, 6) == 3  # {1, 5, 7}
    assert coprime_count(0, 5) == 0


def test_coprime_count_against_enumeration():
    for m in range(0, 301, 7):
        for n in range(1, 301, 11):
            direct = sum(1 for i in range(1, m + 1) if math.gcd(i, n) == 1)
            assert coprime_count(m, n) == direct


def test_coprime_density_error_bounded_by_divisor_count():
    for m in range(1, 200, 3):
        for n in range(2, 60):
            err = abs(coprime_count(m, n) - Fraction(m * totient(n), n))
            assert err <= ndivisors(n)


def test_gamma_small():
    g2 = gamma_graph(2)
    assert g2.edges == frozenset({(1, 2)})
    assert g2.weight_sum() == 1

    g6 = gamma_graph(6)
    assert g6.edges == frozenset({(1, 6), (2, 5), (3, 4), (3, 5), (4, 5), (5, 6)})
    assert g6.weight_sum() == 1


def test_gamma_degrees_are_totients():
    g = gamma_graph(10)
    assert [g.degree(k) for k in range(1, 11)] == [totient(k) for k in range(1, 11)]


def test_gamma_range_incremental():
    report = verify_gamma_range(120, rebuild_stride=40)
    assert report.ok
    assert report.checked == 119
    assert 120 in report.rebuilt


def test_gamma_rejects_tiny():
    with pytest.raises(ValueError):
        gamma_graph(1)


def test_partial_sums_small():
    ps1 = partial_sums(1)
    assert (ps1.sum_phi, ps1.sum_d, ps1.sum_phi_over_k) == (1, 1, 1)
    ps6 = partial_sums(6)
    assert ps6.sum_phi == 12
    assert ps6.sum_d == 14
    assert ps6.sum_phi_over_k == Fraction(1) + Fraction(1, 2) + Fraction(2, 3) + Fraction(
        2, 4
    ) + Fraction(4, 5) + Fraction(2, 6)


def test_partial_sums_exact_matches_float_handoff():
    exact = partial_sums(2000).sum_phi_over_k
    assert isinstance(exact, Fraction)
    approx = partial_sums(2001).sum_phi_over_k
    assert isinstance(approx, float)
    assert abs(float(exact) - approx) < 1.0


def test_catalan():
    assert [catalan(m) for m in range(7)] == [1, 1, 2, 5, 14, 42, 132]
