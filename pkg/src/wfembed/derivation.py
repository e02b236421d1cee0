"""Lazy infinitary derivation trees over the fragment {prg, Rep}.

A tree is a pure function from addresses (tuples of naturals) to node data
``(seq, ord, rul, crk, num)``, or ``None`` when the address is not in the
tree.  Sequents are frozensets of naturals; ``n`` in a sequent stands for the
formula ``E(n)``.

Premise addressing: the premise of a prg node for ``m`` (with ``m`` preceding
``num``) sits at ``address + (m,)``; the single premise of a Rep node sits at
``address + (0,)``.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional, Tuple, Union

from .ordinal import Ordinal, to_str
from .order import OrderSpec

__all__ = [
    "Address",
    "RuleTag",
    "NodeData",
    "DerivationTree",
    "CheckViolation",
    "CheckResult",
    "CheckReport",
    "node",
    "check_node",
    "check_truncated",
    "with_override",
    "format_address",
]

Address = Tuple[int, ...]
Sequent = frozenset


class RuleTag(str, enum.Enum):
    PRG = "prg"
    REP = "Rep"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class NodeData:
    seq: frozenset
    ord: Ordinal
    rul: Union[RuleTag, str]
    crk: int = 0
    num: Optional[int] = None

    def __str__(self):
        members = ",".join(map(str, sorted(self.seq)))
        tail = f", num={self.num}" if self.num is not None else ""
        return f"({{{members}}}, {to_str(self.ord)}, {self.rul}, {self.crk}{tail})"


@dataclass(frozen=True)
class DerivationTree:
    order: OrderSpec
    alpha0: Ordinal
    lookup: Callable[[Address], Optional[NodeData]]
    name: str = "tree"


def node(t: DerivationTree, a: Iterable[int]) -> Optional[NodeData]:
    a = tuple(a)
    if not a:
        # the root's data is arbitrary and never read
        return None
    return t.lookup(a)


def with_override(t: DerivationTree, address: Iterable[int], data: Optional[NodeData]) -> DerivationTree:
    """Copy of ``t`` whose node at ``address`` is replaced by ``data`` (``None`` removes it)."""
    address = tuple(address)
    base = t.lookup

    def lookup(a):
        return data if a == address else base(a)

    return replace(t, lookup=lookup, name=f"{t.name}+override")


def mutate(t: DerivationTree, address: Iterable[int], **changes) -> DerivationTree:
    """Copy of ``t`` with selected NodeData fields at ``address`` replaced."""
    address = tuple(address)
    current = node(t, address)
    if current is None:
        raise KeyError(f"no node at {format_address(address)}")
    return with_override(t, address, replace(current, **changes))


def format_address(a: Iterable[int]) -> str:
    a = tuple(a)
    return "/".join(map(str, a)) if a else "<>"


# Checking -----------------------------------------------------------------


@dataclass(frozen=True)
class CheckViolation:
    address: Address
    condition: str
    witness: Optional[int] = None

    def __str__(self):
        w = "" if self.witness is None else f" {self.witness}"
        return f"VIOLATION {format_address(self.address)} {self.condition}{w}"


@dataclass
class CheckResult:
    violations: list = field(default_factory=list)
    skipped: int = 0
    # premise addresses that exist and may be descended into
    children: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_premise(a, parent, child_addr, child, expected_seq, witness, result):
    if child is None:
        result.violations.append(CheckViolation(a, "premise-absent", witness))
        return
    result.children.append(child_addr)
    if child.seq != expected_seq:
        result.violations.append(CheckViolation(a, "premise-sequent-mismatch", witness))
    if not child.ord < parent.ord:
        result.violations.append(CheckViolation(a, "premise-ordinal-not-smaller", witness))
    if child.crk != parent.crk:
        result.violations.append(CheckViolation(a, "cut-rank-mismatch", witness))


def check_node(t: DerivationTree, a: Iterable[int], premise_cap: int) -> CheckResult:
    """Local correctness of the inference at ``a``.

    prg premises ``m > premise_cap`` are not inspected; those that exist are
    counted in ``skipped``.
    """
    a = tuple(a)
    result = CheckResult()
    here = node(t, a)
    if here is None:
        result.violations.append(CheckViolation(a, "node-absent"))
        return result
    if here.crk != 0:
        result.violations.append(CheckViolation(a, "nonzero-cut-rank"))
    rul = here.rul
    if rul == RuleTag.REP:
        child_addr = a + (0,)
        _check_premise(a, here, child_addr, node(t, child_addr), here.seq, None, result)
    elif rul == RuleTag.PRG:
        n = here.num
        if n is None:
            result.violations.append(CheckViolation(a, "num-missing"))
            return result
        if n not in here.seq:
            result.violations.append(CheckViolation(a, "main-formula-absent", n))
        o = t.order
        for m in o.predecessors(n):
            if m > premise_cap:
                result.skipped += 1
                continue
            child_addr = a + (m,)
            _check_premise(a, here, child_addr, node(t, child_addr), here.seq | {m}, m, result)
    else:
        result.violations.append(CheckViolation(a, "unknown-rule"))
    return result


@dataclass
class CheckReport:
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    # nodes left unexplored because the node budget ran out
    budget_exhausted: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        for v in self.violations:
            yield str(v)
        yield f"checked={self.checked} violations={len(self.violations)} skipped={self.skipped}"


def check_truncated(
    t: DerivationTree,
    roots: Iterable[int],
    depth: int,
    premise_cap: int,
    node_budget: Optional[int] = None,
) -> CheckReport:
    """Breadth-first local-correctness check below each root ``<n>``.

    Nodes with address length up to ``depth`` are checked (the root ``<n>``
    has length 1).  Premises at the depth frontier are inspected by their
    parent but not expanded further.  With ``node_budget`` set, exploration
    stops after that many checked nodes; every address still queued is then
    counted as skipped.
    """
    report = CheckReport()
    queue = deque()
    for n in sorted(set(roots)):
        root = (n,)
        data = node(t, root)
        if data is None or data.seq != frozenset({n}) or data.ord != t.alpha0 or data.crk != 0:
            report.violations.append(CheckViolation(root, "root-convention", n))
        if data is not None:
            queue.append(root)
    while queue:
        if node_budget is not None and report.checked >= node_budget:
            report.budget_exhausted = True
            report.skipped += len(queue)
            break
        a = queue.popleft()
        res = check_node(t, a, premise_cap)
        report.checked += 1
        report.skipped += res.skipped
        report.violations.extend(res.violations)
        if len(a) < depth:
            queue.extend(res.children)
    return report
