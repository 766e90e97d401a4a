"""Orthogonal split of tournament weights into cyclic and acyclic parts.

Every weight vector decomposes uniquely as the sum of a component spanned by
basic cycles and a component spanned by basic cocycles; the two subspaces are
orthogonal complements under the arc-wise inner product.  The acyclic
(cocycle) component has the closed form of scaled Borda-score differences,
so no linear system is solved here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tournament import WeightedTournament, borda_score, weight


@dataclass(frozen=True)
class Decomposition:
    """The cyclic and acyclic parts of a tournament's weights.

    Arc by arc, cycle.weights + cocycle.weights reproduce the source weights;
    the two parts have inner product exactly zero, and the cocycle part is
    quantitatively transitive.
    """

    cycle: WeightedTournament
    cocycle: WeightedTournament


def cocycle_component(t: WeightedTournament) -> WeightedTournament:
    """Projection onto the cocycle subspace: arc (x, y) gets (b(x) - b(y)) / m.

    b is the Borda score and m the vertex count.
    """
    m = t.m
    beta = {x: borda_score(t, x) for x in t.vertices}
    weights = {(x, y): (beta[x] - beta[y]) / m for x, y in t.stored_pairs()}
    return WeightedTournament(t.vertices, weights)


def cycle_component(t: WeightedTournament) -> WeightedTournament:
    """Complement of the cocycle component: the source weights minus it."""
    co = cocycle_component(t)
    weights = {pair: t.weights[pair] - co.weights[pair] for pair in t.stored_pairs()}
    return WeightedTournament(t.vertices, weights)


def decompose(t: WeightedTournament) -> Decomposition:
    co = cocycle_component(t)
    cyc = WeightedTournament(
        t.vertices,
        {pair: t.weights[pair] - co.weights[pair] for pair in t.stored_pairs()},
    )
    return Decomposition(cycle=cyc, cocycle=co)


def inner_product(t1: WeightedTournament, t2: WeightedTournament) -> Fraction:
    """Arc-wise inner product of two weight vectors on the same tournament."""
    if t1.vertices != t2.vertices:
        raise ValueError("inner product needs identical vertex lists")
    total = Fraction(0)
    for pair, w in t1.weights.items():
        total += w * t2.weights[pair]
    return total


def norm_squared(t: WeightedTournament) -> Fraction:
    return inner_product(t, t)


def basic_cycle(t: WeightedTournament, cycle: tuple[str, ...] | list[str]) -> WeightedTournament:
    """Unit flow around a vertex cycle: +1 along each consecutive arc, 0 elsewhere.

    Arcs stored against the sense of the cycle carry -1 instead, so the flow
    reads as +1 under the reversal convention.
    """
    cycle = tuple(cycle)
    if len(cycle) < 3:
        raise ValueError("a cycle needs at least three vertices")
    if len(set(cycle)) != len(cycle):
        raise ValueError("cycle vertices must be distinct")
    for v in cycle:
        t.index(v)
    weights: dict[tuple[str, str], Fraction] = {}
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        weights[(a, b)] = Fraction(1)
    return WeightedTournament(t.vertices, weights)


def basic_cocycle(t: WeightedTournament, a: str) -> WeightedTournament:
    """Unit source at a: +1 on every arc out of a, 0 on arcs not touching a."""
    t.index(a)
    weights = {(a, x): Fraction(1) for x in t.vertices if x != a}
    return WeightedTournament(t.vertices, weights)


def is_purely_acyclic(t: WeightedTournament) -> bool:
    """True iff the cyclic component is exactly zero on every arc."""
    return all(w == 0 for w in cycle_component(t).weights.values())


def is_purely_cyclic(t: WeightedTournament) -> bool:
    """True iff the acyclic component is exactly zero on every arc."""
    return all(w == 0 for w in cocycle_component(t).weights.values())
