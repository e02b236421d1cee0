"""Derivation witnesses built from rank functions.

Given an order with a rank function strictly monotone along the order and a
bound ``alpha0`` above every rank, :func:`synth_tree` yields a tree deriving
``E(n)`` at ``alpha0`` for every ``n``:

* ``<n>``: ``({n}, alpha0, Rep)``
* ``<n, 0>``: ``({n}, rank(n), prg, num=n)``
* below a prg node with sequent ``G`` and main index ``k``, the premise for
  ``m`` preceding ``k`` is ``(G + {m}, rank(m'), prg, num=m')`` where ``m'``
  is the minimum-rank member of ``G + {m}`` (ties go to the smaller number).
"""
from __future__ import annotations

from .derivation import Address, DerivationTree, NodeData, RuleTag
from .ordinal import ONE, Ordinal, natural_sum
from .order import MissingRankError, OrderSpec, rank_of

__all__ = ["SynthesisError", "synth_tree", "synth_tree_with_reps"]


class SynthesisError(ValueError):
    pass


def _check_ranked(o: OrderSpec) -> None:
    if o.rank is None:
        raise MissingRankError(f"order {o.name!r} has no rank function")
    if o.rank_bound is None:
        raise SynthesisError(f"order {o.name!r} has no rank bound")
    for n in range(o.domain_bound):
        if not rank_of(o, n) < o.rank_bound:
            raise SynthesisError(f"rank bound {o.rank_bound} does not dominate rank({n}) = {rank_of(o, n)}")


def _walk_prg(o: OrderSpec, seq: frozenset, num: int, rest: Address):
    """Follow prg premises ``rest`` from a prg node; None if the path leaves the tree."""
    num_rank = rank_of(o, num)
    for m in rest:
        if not o(m, num):
            return None
        seq = seq | {m}
        r = rank_of(o, m)
        if r < num_rank or (r == num_rank and m < num):
            num, num_rank = m, r
    return NodeData(seq, num_rank, RuleTag.PRG, 0, num)


def synth_tree(o: OrderSpec) -> DerivationTree:
    _check_ranked(o)
    alpha0 = o.rank_bound

    def lookup(a: Address):
        if not a:
            return None
        n = a[0]
        if len(a) == 1:
            return NodeData(frozenset({n}), alpha0, RuleTag.REP, 0)
        if a[1] != 0:
            return None
        return _walk_prg(o, frozenset({n}), n, a[2:])

    return DerivationTree(o, alpha0, lookup, name=f"synth({o.name})")


def synth_tree_with_reps(o: OrderSpec) -> DerivationTree:
    """Variant with a second Rep below each root: ``<n>`` at ``alpha0 # 1``,
    ``<n, 0>`` at ``rank(n) + 1``, and the prg part starting at ``<n, 0, 0>``.
    """
    _check_ranked(o)
    # rank(n) + 1 must stay below the root ordinal
    alpha0 = natural_sum(o.rank_bound, ONE)

    def lookup(a: Address):
        if not a:
            return None
        n = a[0]
        seq = frozenset({n})
        if len(a) == 1:
            return NodeData(seq, alpha0, RuleTag.REP, 0)
        if a[1] != 0:
            return None
        if len(a) == 2:
            return NodeData(seq, natural_sum(rank_of(o, n), ONE), RuleTag.REP, 0)
        if a[2] != 0:
            return None
        return _walk_prg(o, seq, n, a[3:])

    return DerivationTree(o, alpha0, lookup, name=f"synth-rep({o.name})")
