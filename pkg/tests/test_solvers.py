import random
from fractions import Fraction

import pytest

from conftest import add_weights, scale_weights
from maxkop import (
    GuardExceededError,
    OrderedPartition,
    WeightedTournament,
    basic_cycle,
    borda_score,
    decide,
    partition_score,
    solve,
    solve_2op,
    solve_acyclic_dp,
    solve_bruteforce,
)
from maxkop import solvers
from maxkop.selftest import random_acyclic_tournament, random_tournament


def levels_key(t, p):
    level = p.level_of()
    return tuple(level[v] for v in t.vertices)


def witness_set(t, res):
    return {levels_key(t, w) for w in res.witnesses}


def test_bruteforce_three_cycle(three_cycle):
    res = solve_bruteforce(three_cycle, 3, all_ties=True)
    assert res.optimum == 1
    assert not res.truncated
    # the three cyclic linear orders tie
    assert witness_set(three_cycle, res) == {(0, 1, 2), (2, 0, 1), (1, 2, 0)}
    assert res.witnesses[0].blocks == (
        frozenset({"a"}),
        frozenset({"b"}),
        frozenset({"c"}),
    )


def test_bruteforce_zero_weights_all_tie():
    t = WeightedTournament.zeros(("a", "b"))
    res = solve_bruteforce(t, 2, all_ties=True)
    assert res.optimum == 0
    assert witness_set(t, res) == {(0, 0), (0, 1), (1, 0)}


def test_bruteforce_single_arc():
    t = WeightedTournament(("a", "b"), {("a", "b"): 4})
    res = solve_bruteforce(t, 2)
    assert res.optimum == 4
    assert res.witnesses == (OrderedPartition.from_blocks([["a"], ["b"]]),)


def test_bruteforce_guard():
    t = WeightedTournament.zeros(tuple("abcdefgh"))
    with pytest.raises(GuardExceededError, match="6561.*100"):
        solve_bruteforce(t, 3, guard=100)


def test_bruteforce_exact_k():
    t = WeightedTournament(("a", "b", "c"), {("a", "b"): 2, ("a", "c"): 3, ("b", "c"): 1})
    relaxed = solve_bruteforce(t, 3, all_ties=True)
    exact = solve_bruteforce(t, 3, all_ties=True, exact_k=True)
    assert exact.optimum == relaxed.optimum == 6
    assert all(len(w.blocks) == 3 for w in exact.witnesses)
    with pytest.raises(ValueError):
        solve_bruteforce(t, 4, exact_k=True)


def test_bruteforce_single_vertex():
    t = WeightedTournament(("a",), {})
    res = solve_bruteforce(t, 3, all_ties=True)
    assert res.optimum == 0
    assert res.witnesses == (OrderedPartition.from_blocks([["a"]]),)


def test_bruteforce_witness_cap_truncation():
    t = WeightedTournament.zeros(tuple("abcd"))
    res = solve_bruteforce(t, 3, all_ties=True, witness_cap=5)
    assert res.truncated
    assert len(res.witnesses) == 5
    full = solve_bruteforce(t, 3, all_ties=True)
    assert not full.truncated
    # every ordered partition of 4 vertices into at most 3 blocks ties at 0
    assert len(full.witnesses) == 1 + 14 + 36


def test_python_walk_matches_compiled():
    rng = random.Random(31)
    for _ in range(15):
        t = random_tournament(rng, rng.randint(2, 5))
        k = rng.randint(1, 4)
        fast = solve_bruteforce(t, k, all_ties=True)
        slow_weights = {
            pair: w * Fraction(1, 2**70) for pair, w in t.weights.items()
        }
        slow_t = WeightedTournament(t.vertices, slow_weights)
        slow = solve_bruteforce(slow_t, k, all_ties=True)
        assert slow.optimum == fast.optimum * Fraction(1, 2**70)
        assert witness_set(t, fast) == witness_set(slow_t, slow)


def test_python_walk_flag_forced(monkeypatch, three_cycle):
    monkeypatch.setattr(solvers, "_HAVE_NUMBA", False)
    res = solve_bruteforce(three_cycle, 3, all_ties=True)
    assert res.optimum == 1
    assert witness_set(three_cycle, res) == {(0, 1, 2), (2, 0, 1), (1, 2, 0)}


def test_dp_requires_acyclic(three_cycle):
    with pytest.raises(ValueError, match="cyclic"):
        solve_acyclic_dp(three_cycle, 2)


def test_dp_example_potentials_310():
    t = WeightedTournament(("a", "b", "c"), {("a", "b"): 2, ("a", "c"): 3, ("b", "c"): 1})
    res = solve_acyclic_dp(t, 2, all_ties=True)
    bf = solve_bruteforce(t, 2, all_ties=True)
    assert res.optimum == bf.optimum == 5
    assert witness_set(t, res) == witness_set(t, bf) == {(0, 1, 1)}


def test_dp_zero_weights():
    t = WeightedTournament.zeros(("a", "b", "c"))
    res = solve_acyclic_dp(t, 2, all_ties=True)
    assert res.optimum == 0
    assert witness_set(t, res) == witness_set(t, solve_bruteforce(t, 2, all_ties=True))


def test_dp_example_four_vertices():
    # potentials 2, 1, 0, -3
    verts = ("a", "b", "c", "d")
    pot = {"a": 2, "b": 1, "c": 0, "d": -3}
    t = WeightedTournament(
        verts,
        {(x, y): pot[x] - pot[y] for i, x in enumerate(verts) for y in verts[i + 1 :]},
    )
    dp = solve_acyclic_dp(t, 3)
    bf = solve_bruteforce(t, 3)
    assert dp.optimum == bf.optimum


def test_dp_matches_bruteforce_witness_sets():
    rng = random.Random(32)
    for _ in range(40):
        t = random_acyclic_tournament(rng, rng.randint(1, 6), -3, 3)
        for k in (1, 2, 3, 4):
            if k > t.m:
                continue
            dp = solve_acyclic_dp(t, k, all_ties=True)
            bf = solve_bruteforce(t, k, all_ties=True)
            assert dp.optimum == bf.optimum
            assert witness_set(t, dp) == witness_set(t, bf)
            exact_dp = solve_acyclic_dp(t, k, all_ties=True, exact_k=True)
            exact_bf = solve_bruteforce(t, k, all_ties=True, exact_k=True)
            assert exact_dp.optimum == exact_bf.optimum
            assert witness_set(t, exact_dp) == witness_set(t, exact_bf)


def test_dp_canonical_single_witness_matches_bruteforce():
    rng = random.Random(33)
    for _ in range(30):
        t = random_acyclic_tournament(rng, rng.randint(2, 6), -2, 2)
        k = rng.randint(1, 4)
        dp = solve_acyclic_dp(t, k)
        bf = solve_bruteforce(t, k)
        assert levels_key(t, dp.witnesses[0]) == levels_key(t, bf.witnesses[0])


def test_dp_witness_cap_truncation():
    t = WeightedTournament.zeros(tuple("abcd"))
    res = solve_acyclic_dp(t, 3, all_ties=True, witness_cap=5)
    assert res.truncated
    assert len(res.witnesses) == 5
    full = solve_acyclic_dp(t, 3, all_ties=True)
    assert not full.truncated
    assert len(full.witnesses) == 1 + 14 + 36


def test_2op_three_cycle(three_cycle):
    res = solve_2op(three_cycle, all_ties=True)
    assert res.optimum == 0
    bf = solve_bruteforce(three_cycle, 2, all_ties=True)
    assert bf.optimum == 0
    assert witness_set(three_cycle, res) == witness_set(three_cycle, bf)


def test_2op_single_arc():
    t = WeightedTournament(("a", "b"), {("a", "b"): 4})
    res = solve_2op(t)
    assert res.optimum == 4
    assert res.witnesses[0].blocks == (frozenset({"a"}), frozenset({"b"}))


def test_2op_needs_two_vertices():
    with pytest.raises(ValueError):
        solve_2op(WeightedTournament(("a",), {}))


def test_2op_oracle_equivalence_random():
    rng = random.Random(34)
    for _ in range(40):
        t = random_tournament(rng, rng.randint(2, 6))
        assert solve_2op(t).optimum == solve_bruteforce(t, 2).optimum


def test_2op_witnesses_score_the_optimum_on_the_original():
    rng = random.Random(35)
    for _ in range(20):
        t = random_tournament(rng, rng.randint(2, 6))
        res = solve_2op(t, all_ties=True)
        for w in res.witnesses:
            assert partition_score(t, w) == res.optimum


def test_decide_examples(three_cycle):
    assert decide(three_cycle, 3, Fraction(1))
    assert not decide(three_cycle, 2, Fraction(1))
    assert decide(three_cycle, 2, Fraction(-(10**9)))


def test_solve_dispatch_agrees_with_bruteforce():
    rng = random.Random(36)
    for _ in range(25):
        t = random_tournament(rng, rng.randint(1, 5), -3, 3)
        for k in (1, 2, 3):
            got = solve(t, k, all_ties=True)
            want = solve_bruteforce(t, k, all_ties=True)
            assert got.optimum == want.optimum
            assert witness_set(t, got) == witness_set(t, want)


def test_witnesses_canonically_sorted_and_deduplicated():
    rng = random.Random(37)
    for _ in range(15):
        t = random_tournament(rng, rng.randint(2, 5), -1, 1)
        res = solve_bruteforce(t, 3, all_ties=True)
        keys = [levels_key(t, w) for w in res.witnesses]
        assert keys == sorted(set(keys))


def test_every_witness_scores_the_optimum():
    rng = random.Random(38)
    for _ in range(15):
        t = random_tournament(rng, rng.randint(2, 5))
        res = solve_bruteforce(t, 3, all_ties=True)
        for w in res.witnesses:
            assert partition_score(t, w) == res.optimum


def test_optimum_nondecreasing_in_k():
    rng = random.Random(39)
    for _ in range(15):
        t = random_tournament(rng, rng.randint(2, 5))
        opts = [solve_bruteforce(t, k).optimum for k in range(1, t.m + 2)]
        assert all(a <= b for a, b in zip(opts, opts[1:]))


def test_monotone_swap_never_decreases_score():
    rng = random.Random(40)
    for _ in range(25):
        t = random_acyclic_tournament(rng, rng.randint(2, 6))
        gamma = {x: borda_score(t, x) / t.m for x in t.vertices}
        verts = list(t.vertices)
        rng.shuffle(verts)
        cut = rng.randint(1, t.m - 1) if t.m > 1 else 1
        blocks = [verts[:cut], verts[cut:]] if cut < t.m else [verts]
        p = OrderedPartition.from_blocks(blocks)
        level = p.level_of()
        for x in t.vertices:
            for y in t.vertices:
                if gamma[x] > gamma[y] and level[x] > level[y]:
                    swapped = [set(b) for b in p.blocks]
                    swapped[level[x]].discard(x)
                    swapped[level[x]].add(y)
                    swapped[level[y]].discard(y)
                    swapped[level[y]].add(x)
                    q = OrderedPartition.from_blocks(swapped)
                    assert partition_score(t, q) >= partition_score(t, p)


def test_two_partitions_blind_to_cycles():
    rng = random.Random(41)
    for _ in range(15):
        m = rng.randint(3, 6)
        t = WeightedTournament.zeros(tuple(sorted({f"v{i}" for i in range(m)})))
        combo = WeightedTournament.zeros(t.vertices)
        for _ in range(rng.randint(1, 3)):
            verts = list(t.vertices)
            rng.shuffle(verts)
            r = rng.randint(3, m)
            combo = add_weights(
                combo, scale_weights(basic_cycle(t, verts[:r]), Fraction(rng.randint(-3, 3)))
            )
        for mask in range(1, (1 << m) - 1):
            top = [v for i, v in enumerate(t.vertices) if mask >> i & 1]
            bot = [v for i, v in enumerate(t.vertices) if not mask >> i & 1]
            p = OrderedPartition.from_blocks([top, bot])
            assert partition_score(combo, p) == 0
