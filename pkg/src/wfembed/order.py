"""Decidable strict partial orders on an initial segment of the naturals.

An :class:`OrderSpec` is a decision function ``relates(m, n)`` (``m`` precedes
``n``) together with a finite ``domain_bound``; numbers at or above the bound
are isolated.  Orders may carry an ordinal rank function strictly monotone
along the order, which is what synthesis turns into a derivation witness.
"""
from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from .ordinal import OMEGA, ONE, Ordinal, OrdinalSyntaxError, ZERO, omega_power, parse

__all__ = [
    "OrderSpec",
    "CycleError",
    "MissingRankError",
    "OrderFileError",
    "Violation",
    "ValidationReport",
    "from_edges",
    "validate",
    "builtin",
    "rank_of",
    "load_order_file",
    "cantor_pair",
    "cantor_unpair",
    "BUILTINS",
]


class CycleError(ValueError):
    pass


class MissingRankError(ValueError):
    pass


class OrderFileError(ValueError):
    pass


@dataclass(frozen=True)
class OrderSpec:
    relates: Callable[[int, int], bool]
    domain_bound: int
    rank: Optional[Callable[[int], Ordinal]] = None
    rank_bound: Optional[Ordinal] = None
    name: str = "order"
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __call__(self, m: int, n: int) -> bool:
        """``m`` precedes ``n``; anything outside the domain is unrelated."""
        if m < 0 or n < 0 or m >= self.domain_bound or n >= self.domain_bound:
            return False
        return bool(self.relates(m, n))

    def matrix(self, size: int) -> np.ndarray:
        """Boolean relation matrix ``M[m, n] = m precedes n`` over ``{0..size-1}``.

        Cached per order; callers must not mutate the result.
        """
        cached = self._cache.get("matrix")
        if cached is None or cached.shape[0] < size:
            inner = min(size, self.domain_bound)
            mat = np.zeros((size, size), dtype=bool)
            rel = self.relates
            for m in range(inner):
                row = mat[m]
                for n in range(inner):
                    if rel(m, n):
                        row[n] = True
            mat.flags.writeable = False
            self._cache["matrix"] = cached = mat
        return cached[:size, :size]

    def predecessors(self, n: int, below: Optional[int] = None) -> list:
        """All ``m`` (ascending) with ``m`` preceding ``n``, optionally restricted to ``m < below``."""
        if n < 0 or n >= self.domain_bound:
            return []
        hi = self.domain_bound if below is None else min(below, self.domain_bound)
        col = self.matrix(self.domain_bound)[:hi, n]
        return np.flatnonzero(col).tolist()

    def rank_at(self, n: int) -> Ordinal:
        return rank_of(self, n)

    @property
    def has_rank(self) -> bool:
        return self.rank is not None


def rank_of(o: OrderSpec, n: int) -> Ordinal:
    if o.rank is None:
        raise MissingRankError(f"order {o.name!r} has no rank function")
    if n >= o.domain_bound:
        return ZERO
    ranks = o._cache.setdefault("ranks", {})
    r = ranks.get(n)
    if r is None:
        r = ranks[n] = o.rank(n)
    return r


# Construction -----------------------------------------------------------


def _closure(edges: Iterable[tuple], size: int) -> np.ndarray:
    reach = np.zeros((size, size), dtype=bool)
    for a, b in edges:
        reach[a, b] = True
    # Warshall
    for k in range(size):
        reach |= np.outer(reach[:, k], reach[k, :])
    return reach


def _matrix_order(reach: np.ndarray, name: str, rank=None, rank_bound=None) -> OrderSpec:
    size = reach.shape[0]
    frozen = reach.copy()
    frozen.flags.writeable = False

    def relates(m, n):
        return bool(frozen[m, n])

    o = OrderSpec(relates, size, rank, rank_bound, name)
    o._cache["matrix"] = frozen
    return o


def from_edges(edges: Iterable[tuple], name: str = "edges") -> OrderSpec:
    """Transitive closure of ``edges`` (pairs ``(a, b)`` meaning a precedes b)."""
    edges = [(int(a), int(b)) for a, b in edges]
    for a, b in edges:
        if a < 0 or b < 0:
            raise ValueError(f"negative vertex in edge ({a}, {b})")
    size = 1 + max((max(a, b) for a, b in edges), default=-1)
    reach = _closure(edges, size)
    loops = np.flatnonzero(np.diagonal(reach))
    if loops.size:
        raise CycleError(f"edges form a cycle through {int(loops[0])}")
    return _matrix_order(reach, name)


def longest_chain_ranks(o: OrderSpec) -> list:
    """``rank[i]`` = number of elements in a longest chain strictly below ``i``."""
    size = o.domain_bound
    mat = o.matrix(size)
    ranks = [None] * size
    indeg = mat.sum(axis=0).astype(int)
    ready = [i for i in range(size) if indeg[i] == 0]
    for i in ready:
        ranks[i] = 0
    done = 0
    while ready:
        i = ready.pop()
        done += 1
        for j in np.flatnonzero(mat[i]):
            ranks[j] = max(ranks[j] or 0, ranks[i] + 1)
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(int(j))
    if done != size:
        raise CycleError("order contains a cycle")
    return ranks


def with_rank(o: OrderSpec, ranks: dict, rank_bound: Optional[Ordinal]) -> OrderSpec:
    table = dict(ranks)
    ranked = dataclasses.replace(o, rank=lambda n: table.get(n, ZERO), rank_bound=rank_bound)
    if "matrix" in o._cache:
        ranked._cache["matrix"] = o._cache["matrix"]
    return ranked


# Built-in orders --------------------------------------------------------


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(n: int) -> tuple:
    s = (isqrt(8 * n + 1) - 1) // 2
    b = n - s * (s + 1) // 2
    return s - b, b


def _prime_factor_count(x: int) -> int:
    count, p = 0, 2
    while p * p <= x:
        while x % p == 0:
            x //= p
            count += 1
        p += 1
    return count + (1 if x > 1 else 0)


def _reverse_initial(k):
    k = int(k)
    if k < 0:
        raise ValueError("reverse-initial needs k >= 0")
    return OrderSpec(
        relates=lambda i, j: j < i <= k,
        domain_bound=k + 1,
        rank=lambda i: Ordinal.from_int(k - i),
        rank_bound=Ordinal.from_int(k + 1),
        name=f"reverse-initial,{k}",
    )


def _divisibility(n):
    n = int(n)
    if n < 1:
        raise ValueError("divisibility needs N >= 1")
    return OrderSpec(
        relates=lambda a, b: a != b and (b + 1) % (a + 1) == 0,
        domain_bound=n,
        rank=lambda a: Ordinal.from_int(_prime_factor_count(a + 1)),
        rank_bound=OMEGA,
        name=f"divisibility,{n}",
    )


def _lex_pairs(n):
    n = int(n)
    if n < 1:
        raise ValueError("lex-pairs needs N >= 1")

    def relates(x, y):
        a, b = cantor_unpair(x)
        c, d = cantor_unpair(y)
        return a < c or (a == c and b < d)

    def rank(x):
        a, b = cantor_unpair(x)
        return Ordinal([(t, c) for t, c in ((ONE, a), (ZERO, b)) if c])

    return OrderSpec(relates, n, rank, omega_power(2), f"lex-pairs,{n}")


def _finite_subsets(w):
    w = int(w)
    if not 0 <= w <= 20:
        raise ValueError("finite-subsets needs 0 <= w <= 20")
    return OrderSpec(
        relates=lambda x, y: x != y and x & y == x,
        domain_bound=1 << w,
        rank=lambda x: Ordinal.from_int(bin(x).count("1")),
        rank_bound=OMEGA,
        name=f"finite-subsets,{w}",
    )


def random_dag_edges(size: int, seed: int, p: float) -> list:
    rng = random.Random(seed)
    return [(i, j) for i in range(size) for j in range(i) if rng.random() < p]


def _random_dag(size, seed, p):
    size, seed, p = int(size), int(seed), float(p)
    if size < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("random-dag needs size >= 1 and 0 <= p <= 1")
    name = f"random-dag,{size},{seed},{p:g}"
    reach = _closure(random_dag_edges(size, seed, p), size)
    o = _matrix_order(reach, name)
    ranks = {i: Ordinal.from_int(r) for i, r in enumerate(longest_chain_ranks(o))}
    return _matrix_order(reach, name, lambda i: ranks[i], Ordinal.from_int(size + 1))


BUILTINS = {
    "reverse-initial": _reverse_initial,
    "divisibility": _divisibility,
    "lex-pairs": _lex_pairs,
    "finite-subsets": _finite_subsets,
    "random-dag": _random_dag,
}


def builtin(name: str, *params) -> OrderSpec:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin order {name!r}; choose from {', '.join(BUILTINS)}") from None
    try:
        return factory(*params)
    except TypeError as exc:
        raise ValueError(f"invalid parameters for {name}: {params!r}") from exc


# Validation -------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple

    def __str__(self):
        return f"{self.kind} {' '.join(map(str, self.witness))}"


@dataclass
class ValidationReport:
    n_max: int
    violations: list = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        for v in self.violations:
            yield f"VIOLATION {v}"
        yield f"n_max={self.n_max} related_pairs={self.pairs_checked} violations={len(self.violations)}"


def validate(o: OrderSpec, n_max: int) -> ValidationReport:
    """Irreflexivity, transitivity and (if present) rank monotonicity on ``{0..n_max}``."""
    size = n_max + 1
    # evaluated fresh: a cached matrix would hide a tampered decision function
    mat = np.zeros((size, size), dtype=bool)
    for m in range(min(size, o.domain_bound)):
        for n in range(min(size, o.domain_bound)):
            mat[m, n] = o(m, n)
    report = ValidationReport(n_max, pairs_checked=int(mat.sum()))
    for n in np.flatnonzero(np.diagonal(mat)):
        report.violations.append(Violation("irreflexivity", (int(n),)))
    # (M @ M)[n, k] > 0 iff some m has n < m < k
    via = mat.astype(np.float32) @ mat.astype(np.float32)
    missing = (via > 0) & ~mat
    for n, k in zip(*np.nonzero(missing)):
        m = int(np.flatnonzero(mat[n] & mat[:, k])[0])
        report.violations.append(Violation("transitivity", (int(n), m, int(k))))
    if o.rank is not None:
        ranks = [rank_of(o, n) for n in range(size)]
        for m, n in zip(*np.nonzero(mat)):
            if not ranks[m] < ranks[n]:
                report.violations.append(Violation("rank-monotonicity", (int(m), int(n))))
        if o.rank_bound is not None:
            for n in range(min(size, o.domain_bound)):
                if not ranks[n] < o.rank_bound:
                    report.violations.append(Violation("rank-bound", (n,)))
    return report


# Order files ------------------------------------------------------------


def load_order_file(path, derive_ranks: bool = False) -> OrderSpec:
    """Read the line-oriented order format.

    ``derive_ranks`` assigns longest-chain ranks (bound ``size + 1``) when the
    file declares none.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OrderFileError(f"{path}: {exc.strerror or exc}") from exc

    edges, ranks, bound = [], {}, None
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path}:{lineno}"
        if not header_seen:
            if line != "order":
                raise OrderFileError(f"{where}: expected header 'order'")
            header_seen = True
            continue
        word, _, rest = line.partition(" ")
        try:
            if word == "edge":
                a, b = rest.split()
                edges.append((_natural(a), _natural(b)))
            elif word == "rank":
                n, ord_text = rest.split(" ", 1)
                ranks[_natural(n)] = parse(ord_text.strip())
            elif word == "rankbound":
                bound = parse(rest.strip())
            else:
                raise OrderFileError(f"{where}: unknown directive {word!r}")
        except OrdinalSyntaxError as exc:
            raise OrderFileError(f"{where}: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, OrderFileError):
                raise
            raise OrderFileError(f"{where}: malformed {word} line") from exc
    if not header_seen:
        raise OrderFileError(f"{path}: empty order file")

    size = 1 + max([max(a, b) for a, b in edges] + list(ranks), default=-1)
    reach = _closure(edges, size)
    loops = np.flatnonzero(np.diagonal(reach))
    if loops.size:
        raise CycleError(f"{path}: edges form a cycle through {int(loops[0])}")
    o = _matrix_order(reach, path.name)
    if ranks:
        return with_rank(o, ranks, bound)
    if derive_ranks:
        derived = {i: Ordinal.from_int(r) for i, r in enumerate(longest_chain_ranks(o))}
        return with_rank(o, derived, bound if bound is not None else Ordinal.from_int(size + 1))
    if bound is not None:
        bounded = dataclasses.replace(o, rank_bound=bound)
        bounded._cache["matrix"] = o._cache["matrix"]
        return bounded
    return o


def _natural(s: str) -> int:
    if not s.isdigit():
        raise ValueError(s)
    return int(s)
