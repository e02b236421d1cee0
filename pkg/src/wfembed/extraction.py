"""Extraction of a node, ordinal and sequent for every number.

For each ``m`` (by induction on ``m``):

* no ``n < m`` with ``m`` preceding ``n``: the node is the root ``<m>``;
* otherwise pick ``n0 < m`` with ``m`` preceding ``n0`` whose ordinal is
  minimal (least such ``n0`` among ties) and step from ``n0``'s node to its
  premise: the one for ``m`` under prg, the only one under Rep.

Every record satisfies: each member ``n`` of its sequent equals ``m`` or is
preceded by ``m``.  Consequently ``m`` preceding ``n < m`` forces a strictly
smaller ordinal for ``m``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .derivation import Address, DerivationTree, RuleTag, format_address, node
from .ordinal import Ordinal, to_str
from .order import OrderSpec

__all__ = [
    "Case",
    "ExtractionRecord",
    "ExtractionFault",
    "InvariantError",
    "Extractor",
    "extract",
    "verify_lemma1",
    "Lemma1Report",
]


class Case(str, enum.Enum):
    CASE1 = "Case1"
    CASE21 = "Case21"
    CASE22 = "Case22"

    def __str__(self):
        return self.value


class InvariantError(AssertionError):
    """An extracted record broke the sequent-minimality or coherence invariant."""


class ExtractionFault(RuntimeError):
    """The witness tree is not a valid derivation along the walked edge."""

    def __init__(self, m: int, address: Address, condition: str):
        super().__init__(f"extracting {m}: {condition} at {format_address(address)}")
        self.m = m
        self.address = address
        self.condition = condition


@dataclass(frozen=True)
class ExtractionRecord:
    m: int
    sigma: Address
    beta: Ordinal
    gamma_set: frozenset
    case_tag: Case
    n0: Optional[int] = None

    def row(self) -> str:
        n0 = "-" if self.n0 is None else str(self.n0)
        gamma = ",".join(map(str, sorted(self.gamma_set)))
        return "\t".join([str(self.m), str(self.case_tag), n0, format_address(self.sigma), to_str(self.beta), gamma])


class Extractor:
    """Memoized extraction over one (tree, order) pair; records are computed in order of ``m``."""

    def __init__(self, t: DerivationTree, o: Optional[OrderSpec] = None, check_invariant: bool = True):
        self.tree = t
        self.order = o if o is not None else t.order
        self.check_invariant = check_invariant
        self.records: list = []
        # node data for each sigma_m, kept for the descent from it
        self._data: list = []

    def __call__(self, m: int) -> ExtractionRecord:
        while len(self.records) <= m:
            self._extend()
        return self.records[m]

    def _fault(self, m, address, condition):
        raise ExtractionFault(m, address, condition)

    def _extend(self):
        m = len(self.records)
        t, o = self.tree, self.order
        above = [n for n in range(m) if o(m, n)]
        if not above:
            sigma = (m,)
            data = node(t, sigma)
            if data is None:
                self._fault(m, sigma, "root absent")
            if data.seq != frozenset({m}) or data.ord != t.alpha0 or data.crk != 0:
                self._fault(m, sigma, "root-convention")
            record = ExtractionRecord(m, sigma, data.ord, data.seq, Case.CASE1)
        else:
            n0 = min(above, key=lambda n: (self.records[n].beta._key, n))
            parent = self.records[n0]
            pdata = self._data[n0]
            if pdata.rul == RuleTag.PRG:
                n1 = pdata.num
                if n1 is None or n1 not in pdata.seq:
                    self._fault(m, parent.sigma, "main-formula-absent")
                if not o(m, n1):
                    self._fault(m, parent.sigma, f"m does not precede num={n1}")
                sigma = parent.sigma + (m,)
                expected = parent.gamma_set | {m}
                case = Case.CASE21
            elif pdata.rul == RuleTag.REP:
                sigma = parent.sigma + (0,)
                expected = parent.gamma_set
                case = Case.CASE22
            else:
                self._fault(m, parent.sigma, f"unsupported rule {pdata.rul}")
            data = node(t, sigma)
            if data is None:
                self._fault(m, sigma, "premise-absent")
            if data.seq != expected:
                self._fault(m, sigma, "premise-sequent-mismatch")
            if not data.ord < pdata.ord:
                self._fault(m, sigma, "premise-ordinal-not-smaller")
            if data.crk != pdata.crk:
                self._fault(m, sigma, "cut-rank-mismatch")
            record = ExtractionRecord(m, sigma, data.ord, data.seq, case, n0)
        if self.check_invariant:
            for n in record.gamma_set:
                if n != m and not o(m, n):
                    raise InvariantError(f"sequent of {m} at {format_address(sigma)} contains {n}, which {m} does not precede")
            if record.beta != data.ord or record.gamma_set != data.seq:
                raise InvariantError(f"record for {m} disagrees with node {format_address(sigma)}")
        self.records.append(record)
        self._data.append(data)

    def table(self, n_max: int) -> list:
        return [self(m) for m in range(n_max + 1)]


def extract(t: DerivationTree, o: OrderSpec, m: int) -> ExtractionRecord:
    return Extractor(t, o)(m)


@dataclass
class Lemma1Report:
    n_max: int
    pairs_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        for m, n in self.violations:
            yield f"VIOLATION lemma1 {m} {n}"
        yield f"lemma1 pairs={self.pairs_checked} violations={len(self.violations)}"


def verify_lemma1(t: DerivationTree, o: OrderSpec, n_max: int, extractor: Optional[Extractor] = None) -> Lemma1Report:
    """Check that ``m`` preceding ``n < m`` implies ``beta_m < beta_n`` for all ``m <= n_max``."""
    ex = extractor if extractor is not None else Extractor(t, o)
    report = Lemma1Report(n_max)
    for m in range(n_max + 1):
        bm = ex(m).beta
        for n in range(m):
            if o(m, n):
                report.pairs_checked += 1
                if not bm < ex(n).beta:
                    report.violations.append((m, n))
    return report
