"""Exact solvers for maximal ordered-partition scores.

Three routes are provided:

* ``solve_bruteforce`` enumerates every ordered partition into at most (or
  exactly) k nonempty blocks, by walking level assignments in lexicographic
  order.  It is the oracle the faster routes are tested against.  Weights are
  scaled to integers (exactly, via the denominator lcm) and the walk runs in
  a compiled kernel when the scaled magnitudes fit in int64; otherwise an
  identical pure-Python walk with unbounded integers takes over.
* ``solve_acyclic_dp`` handles weights with no cyclic part.  Some optimal
  partition is then monotone in the scaled Borda scores, so a dynamic
  program over divider positions in the sorted score sequence finds the
  optimum with O(k m^2) score arithmetic.
* ``solve_2op`` replaces the weights by their acyclic component, which leaves
  every 2-partition score unchanged, and runs the dynamic program with k=2.

Results carry every optimal partition (up to a cap, flagged by ``truncated``)
or just the canonically least one; witnesses are deduplicated and sorted by
their level vector in vertex-list order, so results do not depend on
evaluation schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .decomposition import cocycle_component, cycle_component
from .tournament import OrderedPartition, WeightedTournament, borda_score, weight

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

DEFAULT_GUARD = 10**8
DEFAULT_WITNESS_CAP = 10_000
_INT64_SAFE = 2**62


class GuardExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured guard."""


@dataclass(frozen=True)
class SolveResult:
    """Optimal score plus the partitions achieving it.

    ``witnesses`` is canonically ordered; ``truncated`` marks that further
    tied witnesses were dropped at the cap.
    """

    optimum: Fraction
    witnesses: tuple[OrderedPartition, ...]
    truncated: bool = False


def _levels_key(t: WeightedTournament, p: OrderedPartition) -> tuple[int, ...]:
    level = p.level_of()
    return tuple(level[v] for v in t.vertices)


def _partition_from_levels(vertices: tuple[str, ...], levels) -> OrderedPartition:
    blocks: list[list[str]] = [[] for _ in range(max(levels) + 1)]
    for v, lv in zip(vertices, levels):
        blocks[lv].append(v)
    return OrderedPartition.from_blocks(blocks)


def _scaled_int_weights(t: WeightedTournament) -> tuple[list[list[int]], int]:
    """Full antisymmetric integer matrix W and the scale such that W = scale * w."""
    scale = 1
    for w in t.weights.values():
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    m = t.m
    mat = [[0] * m for _ in range(m)]
    for (x, y), w in t.weights.items():
        i, j = t.index(x), t.index(y)
        v = int(w * scale)
        mat[i][j] = v
        mat[j][i] = -v
    return mat, scale


if _HAVE_NUMBA:

    @njit(cache=True)
    def _walk_levels_int64(w, k, exact_k, collect_all, cap):  # pragma: no cover - compiled
        m = w.shape[0]
        levels = np.zeros(m, np.int64)
        mask = np.zeros(m + 1, np.int64)  # bitmask of levels used by the prefix
        psc = np.zeros(m + 1, np.int64)
        dtab = np.zeros((m, k), np.int64)
        buck = np.zeros(k, np.int64)
        full = (np.int64(1) << k) - 1
        best = np.int64(-(2**62))
        nopt = np.int64(0)
        kept = 0
        wit = np.zeros((cap, m), np.int64)
        first = np.zeros(m, np.int64)
        pos = 0
        levels[0] = 0
        while pos >= 0:
            lam = levels[pos]
            if lam > k - 1:
                pos -= 1
                if pos >= 0:
                    levels[pos] += 1
                continue
            sc = psc[pos] + dtab[pos, lam]
            if pos == m - 1:
                used = mask[pos] | (np.int64(1) << lam)
                # block labels must form a gap-free prefix starting at 0
                ok = (used & (used + 1)) == 0
                if ok and exact_k:
                    ok = used == full
                if ok:
                    if sc > best:
                        best = sc
                        nopt = 1
                        for t in range(m):
                            first[t] = levels[t]
                        kept = 0
                        if collect_all:
                            for t in range(m):
                                wit[0, t] = levels[t]
                            kept = 1
                    elif sc == best:
                        nopt += 1
                        if collect_all and kept < cap:
                            for t in range(m):
                                wit[kept, t] = levels[t]
                            kept += 1
                levels[pos] += 1
            else:
                nxt = pos + 1
                mask[nxt] = mask[pos] | (np.int64(1) << lam)
                psc[nxt] = sc
                for c in range(k):
                    buck[c] = 0
                for j in range(nxt):
                    buck[levels[j]] += w[j, nxt]
                tot = np.int64(0)
                for c in range(k):
                    tot += buck[c]
                run = np.int64(0)
                for lamb in range(k):
                    dtab[nxt, lamb] = run - (tot - run - buck[lamb])
                    run += buck[lamb]
                pos = nxt
                levels[pos] = 0
        return best, nopt, kept, first, wit


def _walk_levels_python(w, k, exact_k, collect_all, cap):
    """Pure-Python twin of the compiled walk; identical visit order."""
    m = len(w)
    levels = [0] * m
    mask = [0] * (m + 1)
    psc = [0] * (m + 1)
    dtab = [[0] * k for _ in range(m)]
    buck = [0] * k
    full = (1 << k) - 1
    best = None
    nopt = 0
    kept = 0
    wit: list[tuple[int, ...]] = []
    first: tuple[int, ...] | None = None
    pos = 0
    levels[0] = 0
    while pos >= 0:
        lam = levels[pos]
        if lam > k - 1:
            pos -= 1
            if pos >= 0:
                levels[pos] += 1
            continue
        sc = psc[pos] + dtab[pos][lam]
        if pos == m - 1:
            used = mask[pos] | (1 << lam)
            ok = (used & (used + 1)) == 0
            if ok and exact_k:
                ok = used == full
            if ok:
                if best is None or sc > best:
                    best = sc
                    nopt = 1
                    first = tuple(levels)
                    wit = [first] if collect_all else []
                    kept = len(wit)
                elif sc == best:
                    nopt += 1
                    if collect_all and kept < cap:
                        wit.append(tuple(levels))
                        kept += 1
            levels[pos] += 1
        else:
            nxt = pos + 1
            mask[nxt] = mask[pos] | (1 << lam)
            psc[nxt] = sc
            for c in range(k):
                buck[c] = 0
            for j in range(nxt):
                buck[levels[j]] += w[j][nxt]
            tot = sum(buck)
            run = 0
            row = dtab[nxt]
            for lamb in range(k):
                row[lamb] = run - (tot - run - buck[lamb])
                run += buck[lamb]
            pos = nxt
            levels[pos] = 0
    return best, nopt, kept, first, wit


def solve_bruteforce(
    t: WeightedTournament,
    k: int,
    *,
    all_ties: bool = False,
    exact_k: bool = False,
    guard: int = DEFAULT_GUARD,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> SolveResult:
    """Exhaustive search over ordered partitions into at most k nonempty blocks.

    With ``exact_k`` only partitions using exactly k blocks count.  With
    ``all_ties`` every maximizer is returned (up to ``witness_cap``, then
    ``truncated`` is set); otherwise only the canonically least one.
    Raises GuardExceededError when the level-assignment count k^m exceeds
    ``guard``.
    """
    m = t.m
    if k < 1:
        raise ValueError("k must be at least 1")
    if witness_cap < 1:
        raise ValueError("witness_cap must be at least 1")
    if exact_k and k > m:
        raise ValueError(f"cannot split {m} vertices into {k} nonempty blocks")
    kk = k if exact_k else min(k, m)
    count = kk**m
    if count > guard:
        raise GuardExceededError(
            f"enumerating {count} level assignments exceeds the guard of {guard}"
        )

    mat, scale = _scaled_int_weights(t)
    total_abs = sum(abs(v) for row in mat for v in row) // 2
    cap = witness_cap if all_ties else 1
    if _HAVE_NUMBA and total_abs < _INT64_SAFE:
        w = np.array(mat, dtype=np.int64)
        best, nopt, kept, first, wit = _walk_levels_int64(w, kk, exact_k, all_ties, cap)
        first_levels = tuple(int(v) for v in first)
        kept_levels = [tuple(int(v) for v in wit[r]) for r in range(kept)]
    else:
        best, nopt, kept, first_levels, kept_levels = _walk_levels_python(
            mat, kk, exact_k, all_ties, cap
        )
        if best is None:  # pragma: no cover - at least one partition always exists
            raise RuntimeError("enumeration produced no partitions")

    optimum = Fraction(int(best), scale)
    if all_ties:
        witnesses = tuple(_partition_from_levels(t.vertices, lv) for lv in kept_levels)
        truncated = int(nopt) > kept
    else:
        witnesses = (_partition_from_levels(t.vertices, first_levels),)
        truncated = False
    return SolveResult(optimum=optimum, witnesses=witnesses, truncated=truncated)


def _gamma_order(t: WeightedTournament) -> tuple[list[str], list[Fraction]]:
    """Vertices sorted by scaled Borda score, descending, ties by list order."""
    gamma = {x: borda_score(t, x) / t.m for x in t.vertices}
    order = sorted(t.vertices, key=lambda v: (-gamma[v], t.index(v)))
    return order, [gamma[v] for v in order]


def _expand_value_pattern(
    sorted_vertices: list[str],
    values: list[Fraction],
    cuts: list[int],
    index: dict[str, int],
    sink: list[tuple[int, ...]],
    cap: int,
) -> bool:
    """Emit level vectors of all partitions matching a monotone cut pattern.

    A cut pattern fixes how many sorted positions land in each block; vertices
    with equal values may trade places across blocks without changing the
    score, so each maximal equal-value run is redistributed in every way
    consistent with the block counts.  Returns True when the cap stopped the
    expansion early.
    """
    bounds = [0] + cuts + [len(sorted_vertices)]
    level_of_pos = [0] * len(sorted_vertices)
    for b in range(len(bounds) - 1):
        for pos in range(bounds[b], bounds[b + 1]):
            level_of_pos[pos] = b

    # maximal runs of equal values
    groups: list[tuple[int, int]] = []
    start = 0
    for pos in range(1, len(values) + 1):
        if pos == len(values) or values[pos] != values[start]:
            groups.append((start, pos))
            start = pos
    # per group: vertices in vertex-list order and the multiset of levels to hand out
    group_specs: list[tuple[list[str], list[int]]] = []
    for lo, hi in groups:
        verts = sorted(sorted_vertices[lo:hi], key=lambda v: index[v])
        group_specs.append((verts, level_of_pos[lo:hi]))

    assignment: dict[str, int] = {}

    def assign_group(g: int) -> bool:
        if g == len(group_specs):
            lv = [0] * len(sorted_vertices)
            for v, b in assignment.items():
                lv[index[v]] = b
            sink.append(tuple(lv))
            return len(sink) >= cap
        verts, slots = group_specs[g]
        distinct = sorted(set(slots))
        counts = {b: slots.count(b) for b in distinct}

        def place(remaining: tuple[str, ...], bi: int) -> bool:
            if bi == len(distinct):
                return assign_group(g + 1)
            b = distinct[bi]
            need = counts[b]
            if bi == len(distinct) - 1:
                for v in remaining:
                    assignment[v] = b
                return assign_group(g + 1)
            for chosen in combinations(remaining, need):
                for v in chosen:
                    assignment[v] = b
                rest = tuple(v for v in remaining if v not in chosen)
                if place(rest, bi + 1):
                    return True
            return False

        return place(tuple(verts), 0)

    return assign_group(0)


def solve_acyclic_dp(
    t: WeightedTournament,
    k: int,
    *,
    all_ties: bool = False,
    exact_k: bool = False,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> SolveResult:
    """Divider dynamic program for purely acyclic weights.

    Requires the cyclic component of the weights to be zero (callers holding
    general weights must decompose first).  Every maximizer then agrees with
    a monotone partition of the sorted scaled-Borda sequence up to trades
    between equal scores, so the search runs over divider positions and the
    tied trades are expanded afterwards.
    """
    m = t.m
    if k < 1:
        raise ValueError("k must be at least 1")
    if witness_cap < 1:
        raise ValueError("witness_cap must be at least 1")
    if exact_k and k > m:
        raise ValueError(f"cannot split {m} vertices into {k} nonempty blocks")
    if any(w != 0 for w in cycle_component(t).weights.values()):
        raise ValueError(
            "weights have a nonzero cyclic component; this solver needs purely "
            "acyclic input (decompose first)"
        )

    order, values = _gamma_order(t)
    index = {v: t.index(v) for v in t.vertices}
    kk = k if exact_k else min(k, m)

    # mat[i][j]: weight from sorted position i to sorted position j
    mat = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                mat[i][j] = weight(t, order[i], order[j])

    # cross[c][i]: flow from positions [0, c) into positions [c, i)
    zero = Fraction(0)
    cross = [[zero] * (m + 1) for _ in range(m + 1)]
    colsum = [zero] * m
    for c in range(m + 1):
        acc = zero
        row = cross[c]
        for i in range(c + 1, m + 1):
            acc += colsum[i - 1]
            row[i] = acc
        if c < m:
            for y in range(m):
                colsum[y] += mat[c][y]

    NEG = None
    best: list[list[Fraction | None]] = [[NEG] * (m + 1) for _ in range(kk + 1)]
    best[0][0] = zero
    for j in range(1, kk + 1):
        for i in range(j, m + 1):
            b = NEG
            for c in range(j - 1, i):
                prev = best[j - 1][c]
                if prev is None:
                    continue
                val = prev + cross[c][i]
                if b is None or val > b:
                    b = val
            best[j][i] = b

    if exact_k:
        final = [(kk, best[kk][m])]
    else:
        final = [(j, best[j][m]) for j in range(1, kk + 1) if best[j][m] is not None]
    optimum = max(v for _, v in final)  # type: ignore[type-var]
    top_js = [j for j, v in final if v == optimum]

    # backtrack every optimal divider placement
    patterns: list[list[int]] = []

    def backtrack(j: int, i: int, tail: list[int]) -> None:
        if j == 0:
            patterns.append(list(reversed(tail)))
            return
        for c in range(j - 1, i):
            prev = best[j - 1][c]
            if prev is not None and prev + cross[c][i] == best[j][i]:
                backtrack(j - 1, c, tail + [c] if j > 1 else tail)

    for j in top_js:
        backtrack(j, m, [])
    patterns.sort()

    if all_ties:
        level_vecs: list[tuple[int, ...]] = []
        truncated = False
        for cuts in patterns:
            if _expand_value_pattern(order, values, cuts, index, level_vecs, witness_cap + 1):
                truncated = True
                break
        unique = sorted(set(level_vecs))[:witness_cap]
        truncated = truncated or len(set(level_vecs)) > witness_cap
        witnesses = tuple(_partition_from_levels(t.vertices, lv) for lv in unique)
    else:
        reps = []
        for cuts in patterns:
            bounds = [0] + cuts + [m]
            lv = [0] * m
            for b in range(len(bounds) - 1):
                for pos in range(bounds[b], bounds[b + 1]):
                    lv[index[order[pos]]] = b
            reps.append(tuple(lv))
        witnesses = (_partition_from_levels(t.vertices, min(reps)),)
        truncated = False
    return SolveResult(optimum=optimum, witnesses=witnesses, truncated=truncated)


def solve_2op(
    t: WeightedTournament,
    *,
    all_ties: bool = False,
    exact_k: bool = False,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> SolveResult:
    """Polynomial max-2OP: project onto the acyclic part, then split it.

    Cyclic weights are invisible to 2-partitions (every cycle crosses a
    2-partition as often downward as upward), so optimizing the acyclic
    component alone is exact for the original weights.
    """
    if t.m < 2:
        raise ValueError("max-2OP needs at least two vertices")
    return solve_acyclic_dp(
        cocycle_component(t), 2, all_ties=all_ties, exact_k=exact_k, witness_cap=witness_cap
    )


def solve(
    t: WeightedTournament,
    k: int,
    *,
    all_ties: bool = False,
    exact_k: bool = False,
    guard: int = DEFAULT_GUARD,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> SolveResult:
    """Dispatch to the cheapest exact route for the given instance.

    2-partitions go through the acyclic projection, purely acyclic weights
    through the divider dynamic program, everything else through exhaustive
    search.
    """
    if k == 2 and t.m >= 2:
        return solve_2op(t, all_ties=all_ties, exact_k=exact_k, witness_cap=witness_cap)
    if all(w == 0 for w in cycle_component(t).weights.values()):
        return solve_acyclic_dp(
            t, k, all_ties=all_ties, exact_k=exact_k, witness_cap=witness_cap
        )
    return solve_bruteforce(
        t, k, all_ties=all_ties, exact_k=exact_k, guard=guard, witness_cap=witness_cap
    )


def decide(
    t: WeightedTournament,
    k: int,
    threshold: Fraction,
    *,
    guard: int = DEFAULT_GUARD,
) -> bool:
    """True iff some ordered partition into at most k blocks scores >= threshold."""
    res = solve(t, k, all_ties=False, guard=guard)
    return res.optimum >= threshold
