"""The order embedding ``f`` into ordinals below epsilon-zero.

``f(n)`` is the largest natural sum of ``omega ** beta_k`` over chains
``k_0 < ... < k_l = n`` whose elements other than ``n`` are numerically
below ``n``.  It splits as ``f(n) = omega ** beta_n # gamma(n)`` where
``gamma(n)`` is the best such chain sum ending strictly below ``n``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .derivation import DerivationTree
from .extraction import Extractor
from .ordinal import ONE, Ordinal, ZERO, natural_sum, omega_power, to_str
from .order import OrderSpec

__all__ = [
    "EmbeddingTable",
    "BruteForceLimitError",
    "f_dp",
    "f_bruteforce",
    "alpha1_bound",
    "verify_theorem",
    "lt_prime",
    "lex_precedes",
    "verify_extension",
    "TheoremReport",
    "ExtensionReport",
]

DEFAULT_BRUTEFORCE_LIMIT = 12


class BruteForceLimitError(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddingTable:
    n_max: int
    beta: tuple
    f: tuple
    gamma: tuple
    alpha0: Ordinal
    alpha1: Ordinal

    def rows(self):
        for n in range(self.n_max + 1):
            yield "\t".join([str(n), to_str(self.beta[n]), to_str(self.gamma[n]), to_str(self.f[n])])
        yield f"alpha0={to_str(self.alpha0)}"
        yield f"alpha1={to_str(self.alpha1)}"


def alpha1_bound(alpha0: Ordinal) -> Ordinal:
    return omega_power(natural_sum(alpha0, ONE))


def _topological(sub: np.ndarray) -> list:
    """Positions of ``sub`` (a relation matrix) in an order that repeatedly
    removes a minimal element, lowest position first."""
    indeg = sub.sum(axis=0).astype(int)
    heap = np.flatnonzero(indeg == 0).tolist()
    heapq.heapify(heap)
    out = []
    while heap:
        k = heapq.heappop(heap)
        out.append(k)
        for s in np.flatnonzero(sub[k]).tolist():
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, s)
    if len(out) != sub.shape[0]:
        raise ValueError("cycle in order restriction; topological sort failed")
    return out


def _gamma(mat: np.ndarray, n: int, powers: list) -> Ordinal:
    # Every chain element below n precedes n (transitivity), so the DP runs on
    # the predecessors of n that are numerically smaller.
    below = np.flatnonzero(mat[:n, n])
    if not below.size:
        return ZERO
    sub = mat[np.ix_(below, below)]
    g = [None] * len(below)
    for i in _topological(sub):
        best = ZERO
        for j in np.flatnonzero(sub[:, i]).tolist():
            if g[j] > best:
                best = g[j]
        g[i] = natural_sum(powers[below[i]], best)
    return max(g)


def f_dp(t: DerivationTree, o: OrderSpec, n_max: int, extractor: Optional[Extractor] = None) -> EmbeddingTable:
    ex = extractor if extractor is not None else Extractor(t, o)
    betas = [ex(n).beta for n in range(n_max + 1)]
    powers = [omega_power(b) for b in betas]
    mat = o.matrix(n_max + 1)
    gammas = [_gamma(mat, n, powers) for n in range(n_max + 1)]
    fs = [natural_sum(powers[n], gammas[n]) for n in range(n_max + 1)]
    return EmbeddingTable(n_max, tuple(betas), tuple(fs), tuple(gammas), t.alpha0, alpha1_bound(t.alpha0))


def f_bruteforce(
    t: DerivationTree,
    o: OrderSpec,
    n: int,
    limit: int = DEFAULT_BRUTEFORCE_LIMIT,
    extractor: Optional[Extractor] = None,
) -> Ordinal:
    """Maximum chain sum by enumerating every chain ending at ``n``.

    Relies on neither transitivity nor a topological order.
    """
    if n > limit:
        raise BruteForceLimitError(f"n={n} exceeds the brute-force limit {limit}")
    ex = extractor if extractor is not None else Extractor(t, o)
    powers = [omega_power(ex(k).beta) for k in range(n + 1)]
    best = ZERO

    def walk(top: int, visited: frozenset, total: Ordinal):
        nonlocal best
        if total > best:
            best = total
        for j in range(n):
            if o(j, top):
                if j in visited:
                    raise AssertionError(f"chain revisits {j}; order is not strict")
                walk(j, visited | {j}, natural_sum(total, powers[j]))

    walk(n, frozenset({n}), powers[n])
    return best


# Theorem sweep ---------------------------------------------------------------


@dataclass
class TheoremReport:
    n_max: int
    alpha1: Ordinal
    pairs_checked: int = 0
    violations: list = field(default_factory=list)
    # whether every f(n) also stayed strictly below omega ** alpha0
    strict_omega_alpha0_held: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        for kind, n, m in self.violations:
            yield f"VIOLATION theorem {kind} {n} {m}"
        held = "held" if self.strict_omega_alpha0_held else "failed"
        yield f"theorem pairs={self.pairs_checked} violations={len(self.violations)} alpha1={to_str(self.alpha1)}"
        yield f"bound f<w^alpha0 {held}"


def verify_theorem(
    t: DerivationTree, o: OrderSpec, n_max: int, table: Optional[EmbeddingTable] = None
) -> TheoremReport:
    tab = table if table is not None else f_dp(t, o, n_max)
    report = TheoremReport(n_max, tab.alpha1)
    weak = omega_power(tab.alpha0)
    report.strict_omega_alpha0_held = all(v < weak for v in tab.f[: n_max + 1])
    mat = o.matrix(n_max + 1)
    for n, m in zip(*np.nonzero(mat)):
        n, m = int(n), int(m)
        report.pairs_checked += 1
        if not tab.f[n] < tab.f[m]:
            report.violations.append(("f-not-increasing", n, m))
        if not tab.f[m] < tab.alpha1:
            report.violations.append(("f-not-below-alpha1", n, m))
    return report


# Linear extension -------------------------------------------------------------


def lt_prime(tab: EmbeddingTable, n: int, m: int) -> bool:
    if not (0 <= n <= tab.n_max and 0 <= m <= tab.n_max):
        raise IndexError(f"({n}, {m}) outside 0..{tab.n_max}")
    fn, fm = tab.f[n], tab.f[m]
    return fn < fm or (fn == fm and n < m)


def lex_precedes(tab: EmbeddingTable, n: int, m: int) -> bool:
    """Lexicographic comparison of ``(f(n), n)`` and ``(f(m), m)``, coded apart from lt_prime."""
    return (tab.f[n]._key, n) < (tab.f[m]._key, m)


@dataclass
class ExtensionReport:
    n_max: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        for kind, *w in self.violations:
            yield f"VIOLATION extension {kind} {' '.join(map(str, w))}"
        yield f"extension n_max={self.n_max} violations={len(self.violations)}"


def verify_extension(tab: EmbeddingTable, o: OrderSpec, n_max: int) -> ExtensionReport:
    """Totality, strictness, extension of the order, and agreement with the lexicographic embedding."""
    size = n_max + 1
    report = ExtensionReport(n_max)
    lt = np.zeros((size, size), dtype=bool)
    lex = np.zeros((size, size), dtype=bool)
    for n in range(size):
        for m in range(size):
            lt[n, m] = lt_prime(tab, n, m)
            lex[n, m] = lex_precedes(tab, n, m)
    for n in np.flatnonzero(np.diagonal(lt)):
        report.violations.append(("irreflexivity", int(n)))
    off = ~np.eye(size, dtype=bool)
    both = lt & lt.T & off
    neither = ~lt & ~lt.T & off
    for n, m in zip(*np.nonzero(np.triu(both | neither, 1))):
        report.violations.append(("totality", int(n), int(m)))
    # every triple n, k, m: lt[n,k] & lt[k,m] -> lt[n,m]
    via = lt.astype(np.float32) @ lt.astype(np.float32)
    for n, m in zip(*np.nonzero((via > 0) & ~lt)):
        k = int(np.flatnonzero(lt[n] & lt[:, m])[0])
        report.violations.append(("transitivity", int(n), k, int(m)))
    rel = o.matrix(size)
    for n, m in zip(*np.nonzero(rel & ~lt)):
        report.violations.append(("not-extending", int(n), int(m)))
    keys = {(tab.f[n], n) for n in range(size)}
    if len(keys) != size:
        report.violations.append(("not-injective",))
    for n, m in zip(*np.nonzero(lt != lex)):
        report.violations.append(("lex-disagreement", int(n), int(m)))
    return report
