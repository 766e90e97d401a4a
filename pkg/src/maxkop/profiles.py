"""Weak-order ballots, their induced tournaments, and ordered-partition voting rules.

A profile of weak orders induces a weighted tournament whose arc weights are
net majorities.  The family of rules implemented here aggregates j-chotomous
ballots into the k-chotomous weak order(s) of maximal partition score on that
tournament; familiar rules (approval, plurality, Borda, mean rule, Borda mean
rule, Kemeny) appear at particular (j, k) choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping

from .solvers import DEFAULT_GUARD, DEFAULT_WITNESS_CAP, solve
from .tournament import OrderedPartition, WeightedTournament, borda_score

#: Level spec meaning "as many classes as alternatives" (linear orders).
LINEAR = "linear"
#: Level spec meaning dichotomous with a singleton top class.
UNIVALENT = "univalent"

LevelSpec = int | str

NAMED_RULES = (
    "approval_ranking",
    "approval_winner",
    "plurality_ranking",
    "plurality_winner",
    "borda_ranking",
    "borda_winner",
    "kemeny_ranking",
)


@dataclass(frozen=True)
class WeakOrder:
    """Disjoint nonempty indifference classes, best first."""

    classes: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        classes = tuple(frozenset(c) for c in self.classes)
        if not classes:
            raise ValueError("a weak order needs at least one class")
        total = 0
        for c in classes:
            if not c:
                raise ValueError("classes must be nonempty")
            total += len(c)
        union = frozenset().union(*classes)
        if len(union) != total:
            raise ValueError("classes must be pairwise disjoint")
        object.__setattr__(self, "classes", classes)

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[str]]) -> "WeakOrder":
        return cls(tuple(frozenset(c) for c in classes))

    def rank_of(self) -> dict[str, int]:
        return {a: i for i, c in enumerate(self.classes) for a in c}

    def members(self) -> frozenset[str]:
        return frozenset().union(*self.classes)


@dataclass(frozen=True)
class Profile:
    """Multiset of weak-order ballots over a common alternative set."""

    alternatives: tuple[str, ...]
    ballots: tuple[tuple[WeakOrder, int], ...]

    def __post_init__(self) -> None:
        alternatives = tuple(self.alternatives)
        if len(set(alternatives)) != len(alternatives):
            raise ValueError("alternatives must be distinct")
        ballots = []
        for entry in self.ballots:
            if isinstance(entry, WeakOrder):
                order, count = entry, 1
            else:
                order, count = entry
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"ballot multiplicity must be a positive integer, got {count!r}")
            if order.members() != frozenset(alternatives):
                raise ValueError(
                    f"ballot {_render_order(order)!r} does not cover the alternatives exactly"
                )
            ballots.append((order, count))
        if not ballots:
            raise ValueError("a profile needs at least one ballot")
        object.__setattr__(self, "alternatives", alternatives)
        object.__setattr__(self, "ballots", tuple(ballots))

    @property
    def voter_count(self) -> int:
        return sum(n for _, n in self.ballots)


@dataclass(frozen=True)
class AggregateResult:
    """Winning weak orders plus the score they achieve on the induced tournament."""

    orders: tuple[WeakOrder, ...]
    optimum: Fraction
    truncated: bool = False


def _render_order(order: WeakOrder) -> str:
    return " | ".join(" ".join(sorted(c)) for c in order.classes)


def induce_tournament(p: Profile) -> WeightedTournament:
    """Net-majority tournament: arc (x, y) weighs supporters of x minus of y."""
    if len(p.alternatives) < 2:
        raise ValueError("inducing a tournament needs at least two alternatives")
    weights: dict[tuple[str, str], int] = {}
    ranks = [(order.rank_of(), count) for order, count in p.ballots]
    for i, x in enumerate(p.alternatives):
        for y in p.alternatives[i + 1 :]:
            net = 0
            for rank, count in ranks:
                rx, ry = rank[x], rank[y]
                if rx < ry:
                    net += count
                elif rx > ry:
                    net -= count
            weights[(x, y)] = net
    return WeightedTournament(p.alternatives, weights)


def _spec_description(spec: LevelSpec, m: int) -> str:
    if spec == LINEAR:
        return "a linear order"
    if spec == UNIVALENT:
        return "univalent dichotomous (two classes, singleton top)"
    return f"a weak order with at most {spec} classes"


def _conforms(order: WeakOrder, spec: LevelSpec, m: int) -> bool:
    # a fixed integer bounds the class count; fully indifferent ballots are
    # admitted as degenerate cases (the mean rule's all-approved ballot)
    if spec == LINEAR:
        return len(order.classes) == m
    if spec == UNIVALENT:
        return len(order.classes) == 2 and len(order.classes[0]) == 1
    if isinstance(spec, int) and spec >= 1:
        return len(order.classes) <= spec
    raise ValueError(f"invalid level spec {spec!r}")


def validate_ballots(p: Profile, j: LevelSpec) -> None:
    m = len(p.alternatives)
    for i, (order, _) in enumerate(p.ballots):
        if not _conforms(order, j, m):
            raise ValueError(
                f"ballot {i} ({_render_order(order)!r}) is not "
                f"{_spec_description(j, m)}"
            )


def _order_from_partition(part: OrderedPartition) -> WeakOrder:
    return WeakOrder(part.blocks)


def aggregate(
    p: Profile,
    j: LevelSpec,
    k: LevelSpec,
    *,
    exact_k: bool = False,
    coerce: bool = False,
    guard: int = DEFAULT_GUARD,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> AggregateResult:
    """Aggregate j-chotomous ballots into the optimal k-chotomous weak order(s).

    ``coerce`` skips ballot validation; ``exact_k`` insists on exactly k
    classes in the output when k is a fixed integer (a linear-order k always
    has exactly one class per alternative, and a univalent k is enumerated
    over singleton-top 2-partitions directly).
    """
    if not coerce:
        validate_ballots(p, j)
    t = induce_tournament(p)
    m = t.m

    if k == UNIVALENT:
        # the score of a singleton-top 2-partition is exactly the Borda score
        # of its winner, so only the m such partitions need scoring
        scores = {x: borda_score(t, x) for x in t.vertices}
        top = max(scores.values())
        orders = tuple(
            WeakOrder((frozenset({x}), frozenset(v for v in t.vertices if v != x)))
            for x in t.vertices
            if scores[x] == top
        )
        return AggregateResult(orders=orders, optimum=top, truncated=False)

    if k == LINEAR:
        kk, exact = m, True
    elif isinstance(k, int) and k >= 1:
        kk, exact = k, exact_k
    else:
        raise ValueError(f"invalid level spec {k!r}")

    res = solve(t, kk, all_ties=True, exact_k=exact, guard=guard, witness_cap=witness_cap)
    orders = tuple(_order_from_partition(w) for w in res.witnesses)
    return AggregateResult(orders=orders, optimum=res.optimum, truncated=res.truncated)


def jk_kemeny(
    p: Profile,
    j: LevelSpec,
    k: LevelSpec,
    *,
    exact_k: bool = False,
    coerce: bool = False,
    guard: int = DEFAULT_GUARD,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> list[WeakOrder]:
    return list(
        aggregate(
            p, j, k, exact_k=exact_k, coerce=coerce, guard=guard, witness_cap=witness_cap
        ).orders
    )


def mean_rule(p: Profile, **kwargs) -> list[WeakOrder]:
    """Dichotomous ballots to the optimal 2-partition(s): above-mean over below-mean."""
    return jk_kemeny(p, 2, 2, **kwargs)


def borda_mean_rule(p: Profile, **kwargs) -> list[WeakOrder]:
    """Linear ballots to the optimal 2-partition(s), driven by Borda scores."""
    return jk_kemeny(p, LINEAR, 2, **kwargs)


def _borda_ranking(p: Profile, witness_cap: int) -> AggregateResult:
    """All linear orders consistent with sorting by Borda score, best first."""
    t = induce_tournament(p)
    scores = {x: borda_score(t, x) for x in t.vertices}
    groups: list[list[str]] = []
    for x in sorted(t.vertices, key=lambda v: (-scores[v], t.index(v))):
        if groups and scores[groups[-1][0]] == scores[x]:
            groups[-1].append(x)
        else:
            groups.append([x])
    orders: list[WeakOrder] = []
    truncated = False

    def emit(i: int, prefix: list[frozenset[str]]) -> bool:
        nonlocal truncated
        if i == len(groups):
            orders.append(WeakOrder(tuple(prefix)))
            if len(orders) >= witness_cap:
                return True
            return False
        for perm in permutations(sorted(groups[i])):
            if emit(i + 1, prefix + [frozenset({a}) for a in perm]):
                return True
        return False

    truncated = emit(0, [])
    # the score every best linear order achieves
    best = orders[0]
    rank = best.rank_of()
    optimum = Fraction(0)
    for (x, y), w in t.weights.items():
        if rank[x] < rank[y]:
            optimum += w
        elif rank[x] > rank[y]:
            optimum -= w
    return AggregateResult(orders=tuple(orders), optimum=optimum, truncated=truncated)


def named_rule(
    p: Profile,
    rule: str,
    *,
    coerce: bool = False,
    guard: int = DEFAULT_GUARD,
    witness_cap: int = DEFAULT_WITNESS_CAP,
) -> list[WeakOrder]:
    """Classic rules as (j, k) choices of the aggregation family.

    approval uses dichotomous ballots, plurality univalent ones, and the
    Borda/Kemeny rules linear ones.  ``borda_ranking`` sorts by Borda score
    directly (the family yields Borda winners, not a full Borda ranking).
    """
    pairs: Mapping[str, tuple[LevelSpec, LevelSpec]] = {
        "approval_ranking": (2, LINEAR),
        "approval_winner": (2, UNIVALENT),
        "plurality_ranking": (UNIVALENT, LINEAR),
        "plurality_winner": (UNIVALENT, UNIVALENT),
        "borda_winner": (LINEAR, UNIVALENT),
        "kemeny_ranking": (LINEAR, LINEAR),
    }
    if rule == "borda_ranking":
        if not coerce:
            validate_ballots(p, LINEAR)
        return list(_borda_ranking(p, witness_cap).orders)
    if rule not in pairs:
        raise ValueError(f"unknown rule {rule!r}; choose one of {', '.join(NAMED_RULES)}")
    j, k = pairs[rule]
    return jk_kemeny(p, j, k, coerce=coerce, guard=guard, witness_cap=witness_cap)


def realize_weights(w: WeightedTournament) -> Profile:
    """Build a profile of trichotomous ballots inducing exactly twice the weights.

    Each arc of weight c contributes |c| copies of a two-ballot pattern that
    adds 2 to that arc and nothing anywhere else.  All-zero weights yield one
    ballot and its reversal, which cancel.  Requires integer weights and at
    least three vertices (the pattern needs a nonempty third class).
    """
    if w.m < 3:
        raise ValueError("realizing weights needs at least three vertices")
    for pair, value in w.weights.items():
        if value.denominator != 1:
            raise ValueError(f"weights must be integers, got {value} on {pair}")
    ballots: list[tuple[WeakOrder, int]] = []
    verts = frozenset(w.vertices)
    for (x, y), value in sorted(
        w.weights.items(), key=lambda kv: (w.index(kv[0][0]), w.index(kv[0][1]))
    ):
        c = int(value)
        if c == 0:
            continue
        hi, lo = (x, y) if c > 0 else (y, x)
        rest = verts - {hi, lo}
        count = abs(c)
        ballots.append((WeakOrder((frozenset({hi}), frozenset({lo}), rest)), count))
        ballots.append((WeakOrder((rest, frozenset({hi}), frozenset({lo}))), count))
    if not ballots:
        v1, v2 = w.vertices[0], w.vertices[1]
        rest = verts - {v1, v2}
        ballots.append((WeakOrder((frozenset({v1}), frozenset({v2}), rest)), 1))
        ballots.append((WeakOrder((rest, frozenset({v2}), frozenset({v1}))), 1))
    return Profile(w.vertices, tuple(ballots))
