"""Acceptance suite: one test per criterion, exact equalities, timed budgets.

Each test prints a PASS line with its elapsed time (visible under `pytest -s`).
"""

import random
import time
from fractions import Fraction
from itertools import combinations, product

from maxkop import (
    CutInstance,
    OrderedPartition,
    WeightedTournament,
    borda_score,
    build_fg,
    build_hg,
    cocycle_component,
    cut_score,
    decompose,
    induce_tournament,
    inner_product,
    is_qualitatively_transitive,
    is_quantitatively_transitive,
    lift_bipartition_fg,
    named_rule,
    partition_score,
    project_fg_partition,
    realize_weights,
    round_nearest,
    solve_2op,
    solve_acyclic_dp,
    solve_bruteforce,
    solve_cut_bruteforce,
)
from maxkop.profiles import LINEAR, UNIVALENT, Profile, WeakOrder, jk_kemeny
from maxkop.selftest import (
    random_acyclic_tournament,
    random_profile,
    random_tournament,
    vertex_names,
)


def _finish(num: int, label: str, start: float, budget: float) -> None:
    elapsed = time.perf_counter() - start
    print(f"[criterion {num:2d}] PASS {elapsed:8.3f}s (budget {budget:g}s) {label}")
    assert elapsed < budget, f"criterion {num} took {elapsed:.3f}s, budget {budget}s"


def test_criterion_01_figure_one_score():
    t = WeightedTournament(
        ("a", "b", "c", "d", "e", "f", "g"),
        {
            ("a", "c"): 3,
            ("a", "e"): 4,
            ("d", "f"): 5,
            ("g", "b"): 1,
            ("g", "d"): 3,
            ("c", "b"): 4,
            ("a", "b"): 2,
            ("f", "e"): 7,
        },
    )
    p = OrderedPartition.from_blocks([["a", "b"], ["c", "d"], ["e", "f", "g"]])
    best = float("inf")
    for _ in range(10):
        start = time.perf_counter()
        score = partition_score(t, p)
        best = min(best, time.perf_counter() - start)
        assert score == 4
    print(f"[criterion  1] PASS {best:8.6f}s (budget 0.001s) figure-one tripartition scores 4")
    assert best < 0.001


def test_criterion_02_decomposition_invariants():
    start = time.perf_counter()
    rng = random.Random(1002)
    for _ in range(500):
        t = random_tournament(rng, rng.randint(2, 8), -9, 9)
        d = decompose(t)
        for pair in t.stored_pairs():
            assert d.cycle.weights[pair] + d.cocycle.weights[pair] == t.weights[pair]
        assert inner_product(d.cycle, d.cocycle) == 0
        assert is_quantitatively_transitive(d.cocycle)
    _finish(2, "500 random decompositions reconstruct, orthogonal, transitive", start, 5.0)


def test_criterion_03_two_partition_score_projection():
    start = time.perf_counter()
    rng = random.Random(1003)
    for _ in range(200):
        m = rng.randint(2, 6)
        t = random_tournament(rng, m, -9, 9)
        co = cocycle_component(t)
        verts = t.vertices
        for mask in range(1, (1 << m) - 1):
            top = [verts[i] for i in range(m) if mask >> i & 1]
            bottom = [verts[i] for i in range(m) if not mask >> i & 1]
            p = OrderedPartition.from_blocks([top, bottom])
            assert partition_score(t, p) == partition_score(co, p)
    _finish(3, "200 tournaments: every 2-partition scores its acyclic part", start, 10.0)


def test_criterion_04_acyclic_dp_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(1004)
    for _ in range(200):
        m = rng.randint(2, 7)
        t = random_acyclic_tournament(rng, m, -9, 9)
        gamma = {x: borda_score(t, x) / m for x in t.vertices}
        for k in (2, 3, 4):
            dp = solve_acyclic_dp(t, k)
            bf = solve_bruteforce(t, k, all_ties=True)
            assert dp.optimum == bf.optimum
            found_monotone = False
            for w in bf.witnesses:
                level = w.level_of()
                if all(
                    level[x] <= level[y]
                    for x, y in product(t.vertices, repeat=2)
                    if gamma[x] > gamma[y]
                ):
                    found_monotone = True
                    break
            assert found_monotone
    _finish(4, "200 acyclic instances, k in 2..4: DP = brute force, monotone witness", start, 60.0)


def test_criterion_05_two_level_solver_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(1005)
    for _ in range(200):
        t = random_tournament(rng, rng.randint(2, 6), -9, 9)
        assert solve_2op(t).optimum == solve_bruteforce(t, 2).optimum
    _finish(5, "200 general instances: 2-level solver = brute force", start, 10.0)


def _all_unit_graphs(max_n: int):
    for n in range(1, max_n + 1):
        verts = vertex_names(n)
        pairs = list(combinations(verts, 2))
        for picks in range(1 << len(pairs)):
            edges = {pairs[i]: 1 for i in range(len(pairs)) if picks >> i & 1}
            yield CutInstance(verts, edges)


def test_criterion_06_tricut_identity():
    start = time.perf_counter()
    for g in _all_unit_graphs(4):
        cut, _ = solve_cut_bruteforce(g, 3)
        gm = build_hg(g)
        kop = solve_bruteforce(gm.tournament, 3).optimum
        assert kop == cut, (g.edge_weights, cut, kop)
    rng = random.Random(1006)
    for _ in range(100):
        n = rng.randint(2, 4)
        g = CutInstance(
            vertex_names(n),
            {
                pair: rng.randint(0, 3)
                for pair in combinations(vertex_names(n), 2)
            },
        )
        cut, _ = solve_cut_bruteforce(g, 3)
        gm = build_hg(g)
        kop = solve_bruteforce(gm.tournament, 3).optimum
        assert kop == cut, (g.edge_weights, cut, kop)
    _finish(6, "tricut = 3-level optimum on 75 unit + 100 weighted graphs", start, 120.0)


def test_criterion_07_four_cycle_exhaustion():
    start = time.perf_counter()
    for w in (1, 2):
        g = CutInstance(("a", "b"), {("a", "b"): w})
        gm = build_hg(g)
        names = ("a", "b", gm.direction[("a", "b")], gm.direction[("b", "a")])
        for la, lb in product(range(3), repeat=2):
            seen = set()
            for ld1, ld2 in product(range(3), repeat=2):
                blocks = [set(), set(), set()]
                for name, lv in zip(names, (la, lb, ld1, ld2)):
                    blocks[lv].add(name)
                p = OrderedPartition.from_blocks([b for b in blocks if b])
                contrib = partition_score(gm.tournament, p)
                assert contrib in (0, w, -w)
                seen.add(contrib)
            if la == lb:
                assert seen == {0}
            else:
                assert seen == {0, w, -w}
    _finish(7, "all 81 placements x weights 1,2: contributions in {0, w, -w}", start, 1.0)


def test_criterion_08_club_identity():
    start = time.perf_counter()
    from maxkop import add_club_vertex

    def check(g: CutInstance) -> None:
        gstar, sigma = add_club_vertex(g)
        tri, _ = solve_cut_bruteforce(gstar, 3)
        cut, _ = solve_cut_bruteforce(g, 2)
        assert tri == g.n * sigma + cut

    for g in _all_unit_graphs(4):
        check(g)
    rng = random.Random(1008)
    for _ in range(100):
        n = rng.randint(2, 4)
        verts = vertex_names(n)
        check(
            CutInstance(
                verts, {pair: rng.randint(0, 3) for pair in combinations(verts, 2)}
            )
        )
    _finish(8, "club augmentation: tricut = n*sigma + max cut, 75 unit + 100 weighted", start, 30.0)


def test_criterion_09_transitive_gadget():
    start = time.perf_counter()
    edge = CutInstance(("a", "b"), {("a", "b"): 1})
    gm = build_fg(edge)
    t = gm.tournament
    assert t.m == 10
    assert is_qualitatively_transitive(t)
    pair_count = t.m * (t.m - 1) // 2
    tiny_arcs = pair_count - 3 * 2 - 4
    assert tiny_arcs * gm.tiny_weight < Fraction(1, 2)

    res = solve_bruteforce(t, 3)  # full walk over 3^10 level assignments
    assert round_nearest(res.optimum) == 3 * 2 * 2 + 1 == 13
    parts = project_fg_partition(gm, res.witnesses[0])
    assert cut_score(edge, parts) == 1

    k3 = CutInstance(("a", "b", "c"), {("a", "b"): 1, ("a", "c"): 1, ("b", "c"): 1})
    gm3 = build_fg(k3)
    assert is_qualitatively_transitive(gm3.tournament)
    maxcut, witnesses = solve_cut_bruteforce(k3, 2)
    expected = 3 * 3 * 4 + maxcut
    assert expected == 38  # 3nC plus the maximal bipartition cut of 2
    for parts in witnesses:
        lifted = lift_bipartition_fg(gm3, parts)
        assert round_nearest(partition_score(gm3.tournament, lifted)) == expected
    _finish(9, "chain gadget: brute optimum 13, projection, transitivity, lift identity", start, 120.0)


def _approval_scores(p: Profile) -> dict[str, int]:
    return {
        a: sum(n for order, n in p.ballots if a in order.classes[0])
        for a in p.alternatives
    }


def _winners(orders) -> set[str]:
    return {next(iter(o.classes[0])) for o in orders}


def test_criterion_10_rule_coherence():
    start = time.perf_counter()
    rng = random.Random(1010)

    def small_profile(shape) -> Profile:
        # at most 7 ballots, each of multiplicity one
        m = rng.randint(2, 5)
        alts = vertex_names(m)
        entries = []
        for _ in range(rng.randint(1, 7)):
            one = random_profile(rng, m, 1, shape)
            entries.append((one.ballots[0][0], 1))
        return Profile(alts, tuple(entries))

    for _ in range(50):
        p = small_profile(2)
        scores = _approval_scores(p)
        best = max(scores.values())
        assert _winners(jk_kemeny(p, 2, UNIVALENT)) == {
            a for a, s in scores.items() if s == best
        }
    for _ in range(50):
        p = small_profile(UNIVALENT)
        tallies = _approval_scores(p)  # top classes are singletons
        best = max(tallies.values())
        assert _winners(jk_kemeny(p, UNIVALENT, UNIVALENT)) == {
            a for a, s in tallies.items() if s == best
        }
    linear_checked = 0
    acyclic_checked = 0
    for i in range(100):
        if i % 2 == 0:
            p = small_profile(LINEAR)
        else:
            # a ballot plus its reversal: the induced weights vanish, which
            # guarantees a purely acyclic instance with every order tied
            m = rng.randint(2, 4)
            alts = vertex_names(m)
            fwd = list(alts)
            rng.shuffle(fwd)
            order = WeakOrder.from_classes([[a] for a in fwd])
            rev = WeakOrder.from_classes([[a] for a in reversed(fwd)])
            p = Profile(alts, ((order, 1), (rev, 1)))
        t = induce_tournament(p)
        scores = {a: borda_score(t, a) for a in p.alternatives}
        best = max(scores.values())
        assert _winners(jk_kemeny(p, LINEAR, UNIVALENT)) == {
            a for a, s in scores.items() if s == best
        }
        linear_checked += 1
        from maxkop import cycle_component

        if all(w == 0 for w in cycle_component(t).weights.values()):
            kemeny = named_rule(p, "kemeny_ranking")
            borda = named_rule(p, "borda_ranking")
            assert {o.classes for o in kemeny} == {o.classes for o in borda}
            acyclic_checked += 1
    assert linear_checked == 100
    assert acyclic_checked >= 50
    _finish(10, f"200 profiles: rule coherence ({acyclic_checked} acyclic cross-checks)", start, 60.0)


def test_criterion_11_realization_roundtrip():
    start = time.perf_counter()
    rng = random.Random(1011)
    for _ in range(100):
        w = random_tournament(rng, rng.randint(3, 6), -9, 9)
        induced = induce_tournament(realize_weights(w))
        for pair in w.stored_pairs():
            assert induced.weights[pair] == 2 * w.weights[pair]
    _finish(11, "100 integer tournaments: induced realization equals twice the weights", start, 5.0)
