"""Exact arithmetic functions and the coprime graph on {1, ..., h}.

Everything here is exact: scalar functions run on cached factorizations,
bulk tables are sieved with numpy, and the graph invariants are checked
in rational arithmetic. The graph Gamma_h joins k ~ k' exactly when
gcd(k, k') = 1 and k + k' > h; its degrees are the totients and its edge
weights 2/(k*k') always sum to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "factorize",
    "totient",
    "ndivisors",
    "mobius",
    "squarefree_divisor_count",
    "nextprime",
    "coprime_count",
    "phi_table",
    "GammaGraph",
    "gamma_graph",
    "verify_gamma_range",
    "PartialSums",
    "partial_sums",
    "catalan",
]


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, exponent), ...)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def totient(n: int) -> int:
    """Euler's phi, the count of 1 <= i <= n coprime to n."""
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def ndivisors(n: int) -> int:
    """Number of divisors d(n)."""
    result = 1
    for _, e in factorize(n):
        result *= e + 1
    return result


def mobius(n: int) -> int:
    """Mobius function: (-1)^(#prime factors) on squarefree n, else 0."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def squarefree_divisor_count(n: int) -> int:
    """Number of squarefree divisors, 2^(#distinct primes)."""
    return 1 << len(factorize(n))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return len(factorize(n)) == 1 and factorize(n)[0][1] == 1


def nextprime(k: int) -> int:
    """Smallest prime strictly greater than k."""
    n = max(k + 1, 2)
    while not _is_prime(n):
        n += 1
    return n


@lru_cache(maxsize=None)
def _mu_divisors(n: int) -> tuple[tuple[int, int], ...]:
    """Squarefree divisors of n with their Mobius values."""
    divs = [(1, 1)]
    for p, _ in factorize(n):
        divs += [(d * p, -mu) for d, mu in divs]
    return tuple(divs)


def coprime_count(m: int, n: int) -> int:
    """Exact count of 1 <= i <= m with gcd(i, n) = 1.

    Mobius inversion over the squarefree divisors of n, so the cost is
    2^(#distinct primes of n) regardless of m.
    """
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return sum(mu * (m // d) for d, mu in _mu_divisors(n))


@lru_cache(maxsize=8)
def phi_table(h: int) -> np.ndarray:
    """Array t with t[k] = totient(k) for 0 <= k <= h (t[0] = 0)."""
    phi = np.arange(h + 1, dtype=np.int64)
    for p in range(2, h + 1):
        if phi[p] == p:  # untouched so far, hence prime
            phi[p::p] -= phi[p::p] // p
    if h >= 0:
        phi[0] = 0
    return phi


@dataclass(frozen=True)
class GammaGraph:
    """The graph on {1..h} with k ~ k' iff gcd(k,k') = 1 and k + k' > h.

    Invariants checked on construction: the degree of k is totient(k)
    and the edge weights 2/(k*k') sum to exactly 1.
    """

    h: int
    edges: frozenset[tuple[int, int]] = field(repr=False)

    def degree(self, k: int) -> int:
        return sum(1 for a, b in self.edges if a == k or b == k)

    def weight_sum(self) -> Fraction:
        return sum((Fraction(2, a * b) for a, b in self.edges), Fraction(0))

    def neighbors(self, k: int) -> list[int]:
        out = [b if a == k else a for a, b in self.edges if k in (a, b)]
        return sorted(out)


def gamma_graph(h: int) -> GammaGraph:
    """Build Gamma_h and verify both of its defining invariants exactly."""
    if h < 2:
        raise ValueError(f"need h >= 2, got {h}")
    edges = frozenset(
        (k, kk)
        for k in range(1, h + 1)
        for kk in range(k + 1, h + 1)
        if k + kk > h and math.gcd(k, kk) == 1
    )
    graph = GammaGraph(h, edges)
    for k in range(1, h + 1):
        deg = coprime_count(h, k) - coprime_count(h - k, k)
        if deg != totient(k):
            raise AssertionError(f"Gamma_{h}: degree({k}) = {deg} != phi({k})")
    if graph.weight_sum() != 1:
        raise AssertionError(f"Gamma_{h}: edge weights sum to {graph.weight_sum()}")
    return graph


@dataclass
class GammaRangeReport:
    h_max: int
    checked: int = 0
    rebuilt: list[int] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_gamma_range(h_max: int, rebuild_stride: int = 100) -> GammaRangeReport:
    """Exact verification of the Gamma_h invariants for every h <= h_max.

    The degree of each vertex is compared against the totient via the
    coprime-count formula. The weight sum is maintained incrementally:
    passing from h to h+1 deletes the edges with k + k' = h + 1 and adds
    the edges at the new vertex, and each replacement satisfies the
    rational identity 2/(k*k') = 2/(k*(h+1)) + 2/(k'*(h+1)) exactly, so
    the running Fraction total is an exact evaluation of the sum at
    every h. On a stride the graph is also rebuilt from scratch and the
    incremental edge bookkeeping is cross-checked against it.
    """
    report = GammaRangeReport(h_max)
    if h_max < 2:
        return report
    # base graph at h = 2
    weight = Fraction(2, 1 * 2)
    edges = {(1, 2)}
    for h in range(2, h_max + 1):
        if h > 2:
            deleted = [
                (k, h - k)
                for k in range(1, (h + 1) // 2)
                if math.gcd(k, h - k) == 1
            ]
            added = [(k, h) for k in range(1, h) if math.gcd(k, h) == 1]
            for k, kk in deleted:
                lhs = Fraction(2, k * kk)
                rhs = Fraction(2, k * h) + Fraction(2, kk * h)
                if lhs != rhs:
                    report.failures.append(f"h={h}: replacement identity fails at {(k, kk)}")
                weight -= lhs
                edges.discard((k, kk))
            for e in added:
                weight += Fraction(2, e[0] * e[1])
                edges.add(e)
        if weight != 1:
            report.failures.append(f"h={h}: weight sum {weight} != 1")
        for k in range(1, h + 1):
            deg = coprime_count(h, k) - coprime_count(h - k, k)
            if deg != totient(k):
                report.failures.append(f"h={h}: degree({k}) = {deg} != phi({k})")
        if h % rebuild_stride == 0 or h == h_max:
            direct = gamma_graph(h)
            report.rebuilt.append(h)
            if direct.edges != frozenset(edges):
                report.failures.append(f"h={h}: incremental edge set diverges")
        report.checked += 1
    return report


@dataclass(frozen=True)
class PartialSums:
    """Partial sums of d(k), phi(k) and phi(k)/k up to h, with diagnostics."""

    h: int
    sum_phi: int
    sum_d: int
    sum_phi_over_k: Fraction | float
    ratio_dirichlet: float  # sum_d / (h ln h), tends to 1
    ratio_totient_density: float  # (sum phi(k)/k) / h, tends to 6/pi^2


# Exact rational accumulation of phi(k)/k is only reasonable while the
# common denominator lcm(1..h) stays small; beyond this limit the sum is
# returned as a float.
EXACT_PHI_OVER_K_LIMIT = 2000


def partial_sums(h: int) -> PartialSums:
    """Exact partial sums used by the counting estimates.

    sum_d is computed through the identity sum_{k<=h} d(k) =
    sum_{i<=h} floor(h/i), and sum_phi by a totient sieve, both exact
    integers. sum_{k<=h} phi(k)/k is an exact Fraction for
    h <= EXACT_PHI_OVER_K_LIMIT and an accumulated float beyond that.
    """
    if h < 1:
        raise ValueError(f"need h >= 1, got {h}")
    phi = phi_table(h)
    sum_phi = int(phi[1:].sum())
    idx = np.arange(1, h + 1, dtype=np.int64)
    sum_d = int((h // idx).sum())
    if h <= EXACT_PHI_OVER_K_LIMIT:
        sum_pok: Fraction | float = sum(
            (Fraction(int(phi[k]), k) for k in range(1, h + 1)), Fraction(0)
        )
        density = float(sum_pok) / h
    else:
        sum_pok = float((phi[1:] / idx).sum())
        density = sum_pok / h
    ratio_d = float(sum_d) / (h * math.log(h)) if h > 1 else 1.0
    return PartialSums(h, sum_phi, sum_d, sum_pok, ratio_d, density)


def catalan(m: int) -> int:
    """The m-th Catalan number C_m = binom(2m, m)/(m+1)."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    return math.comb(2 * m, m) // (m + 1)
