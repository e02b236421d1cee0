"""Batch front end: ``wfembed COMMAND [options]``.

Exit status is 0 when every check passes, 1 when a report lists violations,
and 2 on faults (invalid witness trees, bad files, usage errors).
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .derivation import check_truncated, mutate, node
from .embedding import BruteForceLimitError, f_bruteforce, f_dp, lt_prime, verify_extension, verify_theorem
from .extraction import ExtractionFault, Extractor, InvariantError, verify_lemma1
from .ordinal import Ordinal, to_str
from .order import BUILTINS, CycleError, MissingRankError, OrderFileError, builtin, load_order_file, validate
from .synthesis import SynthesisError, synth_tree, synth_tree_with_reps

log = logging.getLogger("wfembed")

COMMANDS = ("validate", "synth-check", "extract", "embed", "extend", "verify")
MUTATIONS = ("raise-ordinal", "drop-num", "change-premise-seq", "break-root", "bad-rule")

EXIT_OK, EXIT_VIOLATIONS, EXIT_FAULT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    builtin: Optional[str] = None
    order_file: Optional[Path] = None
    n_max: Optional[int] = None
    depth: int = 20
    premise_cap: Optional[int] = None
    bruteforce_limit: int = 12
    output_path: Optional[Path] = None
    seed: Optional[int] = None
    derive_ranks: bool = False
    rep_variant: bool = False
    node_budget: Optional[int] = None
    mutations: list = field(default_factory=list)


class UsageError(ValueError):
    pass


def _load_order(cfg: RunConfig):
    if (cfg.builtin is None) == (cfg.order_file is None):
        raise UsageError("give exactly one of --builtin or --order-file")
    if cfg.order_file is not None:
        return load_order_file(cfg.order_file, derive_ranks=cfg.derive_ranks)
    name, *params = cfg.builtin.split(",")
    if name == "random-dag" and cfg.seed is not None:
        # --seed fills or overrides the seed parameter
        if len(params) == 3:
            params[1] = str(cfg.seed)
        elif len(params) == 2:
            params = [params[0], str(cfg.seed), params[1]]
    try:
        return builtin(name, *params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_address(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split("/") if p != "")
    except ValueError:
        raise UsageError(f"bad address {text!r}") from None


def _apply_mutation(t, spec: str):
    kind, _, where = spec.partition("@")
    if kind not in MUTATIONS or not where:
        raise UsageError(f"bad mutation {spec!r}; use KIND@ADDRESS with KIND in {', '.join(MUTATIONS)}")
    a = _parse_address(where)
    data = node(t, a)
    if data is None:
        raise UsageError(f"mutation target {where} is not in the tree")
    if kind == "raise-ordinal":
        parent = node(t, a[:-1]) if len(a) > 1 else None
        if parent is None:
            raise UsageError("raise-ordinal needs a non-root address")
        return mutate(t, a, ord=parent.ord)
    if kind == "drop-num":
        if data.num is None:
            raise UsageError("drop-num needs a prg node")
        return mutate(t, a, seq=data.seq - {data.num})
    if kind == "change-premise-seq":
        return mutate(t, a, seq=data.seq | {max(data.seq) + 1})
    if kind == "break-root":
        return mutate(t, a, ord=Ordinal.from_int(0) if data.ord else Ordinal.from_int(1))
    return mutate(t, a, rul="cut")


def _tree(cfg, o):
    t = synth_tree_with_reps(o) if cfg.rep_variant else synth_tree(o)
    for spec in cfg.mutations:
        t = _apply_mutation(t, spec)
    return t


def run(cfg: RunConfig) -> tuple:
    """Execute one command; returns ``(exit_status, report_text)``."""
    if cfg.command not in COMMANDS:
        raise UsageError(f"unknown command {cfg.command!r}")
    o = _load_order(cfg)
    n_max = cfg.n_max if cfg.n_max is not None else max(o.domain_bound - 1, 0)
    if n_max < 0:
        raise UsageError("--n-max must be >= 0")
    if cfg.depth < 1:
        raise UsageError("--depth must be >= 1")
    cap = cfg.premise_cap if cfg.premise_cap is not None else o.domain_bound
    if cap < n_max:
        log.warning("premise cap %d is below n-max %d; premises above the cap are skipped", cap, n_max)

    out = [f"# order {o.name} n_max={n_max}"]
    bad = False

    vrep = validate(o, n_max)
    if cfg.command == "validate":
        out.extend(vrep.lines())
        return (EXIT_OK if vrep.ok else EXIT_VIOLATIONS), "\n".join(out) + "\n"
    if not vrep.ok:
        out.extend(vrep.lines())
        out.append("order failed validation; nothing further checked")
        return EXIT_VIOLATIONS, "\n".join(out) + "\n"

    t = _tree(cfg, o)

    if cfg.command == "synth-check":
        rep = check_truncated(t, range(n_max + 1), cfg.depth, cap, node_budget=cfg.node_budget)
        out.extend(rep.lines())
        if rep.budget_exhausted:
            out.append(f"node budget {cfg.node_budget} exhausted; unexplored addresses counted as skipped")
        return (EXIT_OK if rep.ok else EXIT_VIOLATIONS), "\n".join(out) + "\n"

    ex = Extractor(t, o)
    if cfg.command in ("extract", "verify"):
        out.append("# extraction: m case n0 address beta gamma")
        out.extend(ex(m).row() for m in range(n_max + 1))
        lem = verify_lemma1(t, o, n_max, ex)
        out.extend(lem.lines())
        bad |= not lem.ok
        if cfg.command == "extract":
            return (EXIT_VIOLATIONS if bad else EXIT_OK), "\n".join(out) + "\n"

    tab = f_dp(t, o, n_max, ex)
    if cfg.command in ("embed", "verify"):
        out.append("# embedding: n beta gamma f")
        if cfg.command == "verify":
            out.extend(f"beta({n})={to_str(tab.beta[n])} gamma({n})={to_str(tab.gamma[n])} f({n})={to_str(tab.f[n])}"
                       for n in range(n_max + 1))
            out.append(f"alpha0={to_str(tab.alpha0)}")
            out.append(f"alpha1={to_str(tab.alpha1)}")
        else:
            out.extend(tab.rows())
        limit = min(cfg.bruteforce_limit, n_max)
        mismatches = [n for n in range(limit + 1) if f_bruteforce(t, o, n, cfg.bruteforce_limit, ex) != tab.f[n]]
        for n in mismatches:
            out.append(f"VIOLATION oracle f_dp({n}) != f_bruteforce({n})")
        out.append(f"oracle checked=0..{limit} mismatches={len(mismatches)}")
        bad |= bool(mismatches)
        thm = verify_theorem(t, o, n_max, tab)
        out.extend(thm.lines())
        bad |= not thm.ok

    if cfg.command in ("extend", "verify"):
        if cfg.command == "extend":
            out.append("# linear extension: consecutive pairs n m")
            ranked = sorted(range(n_max + 1), key=lambda n: (tab.f[n]._key, n))
            for a, b in zip(ranked, ranked[1:]):
                assert lt_prime(tab, a, b)
                out.append(f"{a}\t{b}")
        ext = verify_extension(tab, o, n_max)
        out.extend(ext.lines())
        bad |= not ext.ok

    out.append("status=" + ("violations" if bad else "ok"))
    return (EXIT_VIOLATIONS if bad else EXIT_OK), "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wfembed", description="Synthesize, extract and verify ordinal embeddings of well-founded orders.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME,P1,P2...",
                     help=f"built-in order: {', '.join(BUILTINS)}")
    src.add_argument("--order-file", type=Path, metavar="PATH")
    p.add_argument("--n-max", type=int, metavar="N", help="last number examined (default: domain bound - 1)")
    p.add_argument("--depth", type=int, default=20, metavar="D", help="max address length for synth-check")
    p.add_argument("--premise-cap", type=int, metavar="M", help="largest prg premise index inspected (default: domain bound)")
    p.add_argument("--bruteforce-limit", type=int, default=12, metavar="B")
    p.add_argument("--seed", type=int, metavar="S", help="seed for random-dag")
    p.add_argument("--out", type=Path, dest="output_path", metavar="PATH")
    p.add_argument("--derive-ranks", action="store_true",
                   help="use longest-chain ranks for order files without rank lines")
    p.add_argument("--rep-variant", action="store_true",
                   help="synthesize with an extra Rep step below every root")
    p.add_argument("--node-budget", type=int, metavar="K",
                   help="stop synth-check after this many nodes (rest reported as skipped)")
    p.add_argument("--mutate", action="append", default=[], dest="mutations", metavar="KIND@ADDRESS",
                   help=f"inject a fault into the synthesized tree; KIND in {', '.join(MUTATIONS)}")
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        status, text = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wfembed: error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except (OrderFileError, CycleError, MissingRankError, SynthesisError) as exc:
        print(f"wfembed: error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except (ExtractionFault, InvariantError, BruteForceLimitError) as exc:
        print(f"wfembed: fault: {exc}", file=sys.stderr)
        return EXIT_FAULT
    if cfg.output_path is not None:
        cfg.output_path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
