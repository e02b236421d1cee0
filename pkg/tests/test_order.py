import dataclasses

import pytest

from wfembed.ordinal import OMEGA, Ordinal, parse
from wfembed.order import (
    CycleError,
    MissingRankError,
    OrderFileError,
    builtin,
    cantor_pair,
    cantor_unpair,
    from_edges,
    load_order_file,
    random_dag_edges,
    rank_of,
    validate,
    with_rank,
)


def test_from_edges_closure():
    o = from_edges({(0, 1), (1, 2)})
    assert o(0, 2)
    assert not o(2, 0)
    assert o.domain_bound == 3
    assert o.rank is None


def test_from_edges_empty():
    o = from_edges(set())
    assert o.domain_bound == 0
    assert not o(0, 0)
    assert validate(o, 5).ok


def test_from_edges_cycle():
    with pytest.raises(CycleError):
        from_edges({(0, 1), (1, 0)})


def test_validate_divisibility_exhaustive():
    report = validate(builtin("divisibility", 100), 100)
    assert report.ok
    # independent count of proper-divisor pairs among 1..100
    expected = sum(1 for a in range(1, 101) for b in range(1, 101) if a != b and b % a == 0)
    assert report.pairs_checked == expected


def test_validate_rank_monotonicity_violation():
    o = with_rank(from_edges({(0, 1)}), {0: Ordinal.from_int(1), 1: Ordinal.from_int(0)}, None)
    report = validate(o, 1)
    assert [(v.kind, v.witness) for v in report.violations] == [("rank-monotonicity", (0, 1))]


def test_validate_transitivity_violation():
    o = from_edges({(0, 1), (1, 2)})
    tampered = dataclasses.replace(o, relates=lambda m, n: (m, n) in {(0, 1), (1, 2)})
    report = validate(tampered, 2)
    assert [(v.kind, v.witness) for v in report.violations] == [("transitivity", (0, 1, 2))]


def test_validate_irreflexivity_and_rank_bound():
    o = dataclasses.replace(
        from_edges({(0, 1)}), relates=lambda m, n: m == n == 1 or (m, n) == (0, 1)
    )
    assert ("irreflexivity", (1,)) in [(v.kind, v.witness) for v in validate(o, 1).violations]
    ranked = with_rank(from_edges({(0, 1)}), {0: Ordinal.from_int(0), 1: OMEGA}, OMEGA)
    assert [(v.kind, v.witness) for v in validate(ranked, 1).violations] == [("rank-bound", (1,))]


def test_divisibility_examples():
    o = builtin("divisibility", 12)
    assert o(1, 5)
    assert not o(3, 5)
    assert rank_of(o, 0) == 0
    # 12 = 2 * 2 * 3
    assert rank_of(o, 11) == 3


def _factor_count(x):
    # independent oracle: count prime divisors via a sieve of primes
    primes = [p for p in range(2, x + 1) if all(p % q for q in range(2, p))]
    count = 0
    for p in primes:
        while x % p == 0:
            x //= p
            count += 1
    return count


def test_divisibility_rank_matches_factor_oracle():
    o = builtin("divisibility", 200)
    for n in range(200):
        assert rank_of(o, n) == _factor_count(n + 1)


def test_reverse_initial_example():
    o = builtin("reverse-initial", 2)
    assert o(2, 0)
    assert rank_of(o, 0) == 2
    assert o.rank_bound == 3
    assert o.domain_bound == 3


def test_lex_pairs_rank():
    o = builtin("lex-pairs", 100)
    n = cantor_pair(2, 5)
    assert rank_of(o, n) == parse("w*2 + 5")
    assert o.rank_bound == parse("w^2")


def test_finite_subsets():
    o = builtin("finite-subsets", 3)
    assert o.domain_bound == 8
    assert o(0b001, 0b011)
    assert not o(0b011, 0b011)
    assert not o(0b010, 0b101)
    assert rank_of(o, 0b111) == 3


def test_cantor_pairing_round_trip():
    for a in range(101):
        for b in range(101):
            assert cantor_unpair(cantor_pair(a, b)) == (a, b)


def test_random_dag_reproducible():
    a = builtin("random-dag", 30, 7, 0.3)
    b = builtin("random-dag", 30, 7, 0.3)
    assert (a.matrix(30) == b.matrix(30)).all()
    assert [rank_of(a, i) for i in range(30)] == [rank_of(b, i) for i in range(30)]
    assert random_dag_edges(30, 7, 0.3) == random_dag_edges(30, 7, 0.3)


def test_random_dag_orientation_and_ranks():
    o = builtin("random-dag", 25, 3, 0.4)
    mat = o.matrix(25)
    assert not mat.diagonal().any()
    for i in range(25):
        for j in range(25):
            if mat[i, j]:
                assert j < i
    # longest chain strictly below each element, by brute force over chains
    def longest(i):
        return max((1 + longest(j) for j in range(25) if mat[j, i]), default=0)

    for i in range(25):
        assert rank_of(o, i) == longest(i)
    assert o.rank_bound == 26


@pytest.mark.parametrize(
    "args", [("reverse-initial", 40), ("divisibility", 120), ("lex-pairs", 120), ("finite-subsets", 6), ("random-dag", 40, 1, 0.3)]
)
def test_builtins_validate(args):
    o = builtin(*args)
    assert validate(o, o.domain_bound + 2).ok


def test_builtin_errors():
    with pytest.raises(ValueError):
        builtin("nope", 3)
    with pytest.raises(ValueError):
        builtin("divisibility", 0)
    with pytest.raises(ValueError):
        builtin("random-dag", 5)


def test_rank_of_missing_and_out_of_domain():
    with pytest.raises(MissingRankError):
        rank_of(from_edges({(0, 1)}), 0)
    assert rank_of(builtin("divisibility", 10), 500) == 0


def test_order_file(tmp_path):
    path = tmp_path / "o.txt"
    path.write_text(
        "order\n# chain\nedge 0 1\nedge 1 2  # trailing comment\n"
        "rank 0 0\nrank 1 w\nrank 2 w + 1\nrankbound w^2\n"
    )
    o = load_order_file(path)
    assert o(0, 2)
    assert rank_of(o, 2) == parse("w + 1")
    assert o.rank_bound == parse("w^2")
    assert validate(o, 3).ok


def test_order_file_derived_ranks(tmp_path):
    path = tmp_path / "o.txt"
    path.write_text("order\nedge 2 0\nedge 0 1\n")
    o = load_order_file(path, derive_ranks=True)
    assert [rank_of(o, i) for i in range(3)] == [1, 2, 0]
    assert o.rank_bound == 4


@pytest.mark.parametrize(
    "body, fragment",
    [
        ("edge 0 1\n", "header"),
        ("order\nedge 0\n", ":2"),
        ("order\nedge 0 1\nedge 1 0\n", "cycle"),
        ("order\nrank 0 w^\n", ":2"),
        ("order\nfrob 1\n", "unknown directive"),
    ],
)
def test_order_file_errors(tmp_path, body, fragment):
    path = tmp_path / "bad.txt"
    path.write_text(body)
    with pytest.raises((OrderFileError, CycleError)) as info:
        load_order_file(path)
    assert fragment in str(info.value)


def test_order_file_missing(tmp_path):
    with pytest.raises(OrderFileError) as info:
        load_order_file(tmp_path / "absent.txt")
    assert "absent.txt" in str(info.value)
