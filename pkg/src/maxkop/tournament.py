"""Weighted tournaments, ordered vertex partitions, and their scores.

A weighted tournament links every vertex pair by a single arc carrying an
exact rational weight.  One arc is stored per pair, oriented by vertex-list
order; reading the reverse arc negates the stored weight, so the weight
function is antisymmetric by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping

_RESERVED_CHARS = set(">|")


def _validate_name(name: object) -> str:
    if not isinstance(name, str) or not name:
        raise ValueError(f"vertex name must be a nonempty string, got {name!r}")
    if any(c.isspace() for c in name) or _RESERVED_CHARS & set(name):
        raise ValueError(f"vertex name {name!r} may not contain whitespace, '>' or '|'")
    return name


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"weights must be exact rationals, got float {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class WeightedTournament:
    """Complete directed graph with antisymmetric rational arc weights.

    `weights` may be keyed by either orientation of a pair; entries are
    normalized to the vertex-list orientation and missing pairs default to
    weight zero.  Values are immutable after construction.
    """

    vertices: tuple[str, ...]
    weights: Mapping[tuple[str, str], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        if not vertices:
            raise ValueError("a tournament needs at least one vertex")
        for v in vertices:
            _validate_name(v)
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("vertex names must be distinct")

        normalized: dict[tuple[str, str], Fraction] = {
            pair: Fraction(0) for pair in combinations(vertices, 2)
        }
        seen: set[tuple[str, str]] = set()
        for (x, y), value in dict(self.weights).items():
            if x not in index or y not in index:
                raise ValueError(f"unknown vertex in weight key ({x!r}, {y!r})")
            if x == y:
                raise ValueError(f"self-pair ({x!r}, {x!r}) is not an arc")
            key = (x, y) if index[x] < index[y] else (y, x)
            if key in seen:
                raise ValueError(f"duplicate weight for pair {{{x!r}, {y!r}}}")
            seen.add(key)
            w = _as_fraction(value)
            normalized[key] = w if key == (x, y) else -w

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "weights", normalized)
        object.__setattr__(self, "_index", index)

    @property
    def m(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"unknown vertex {v!r}") from None

    def stored_pairs(self) -> Iterable[tuple[str, str]]:
        """All stored arcs (x, y) with x earlier in the vertex list."""
        return combinations(self.vertices, 2)

    @classmethod
    def zeros(cls, vertices: Iterable[str]) -> "WeightedTournament":
        return cls(tuple(vertices), {})


@dataclass(frozen=True)
class OrderedPartition:
    """Disjoint nonempty vertex blocks, ordered top (first) to bottom (last)."""

    blocks: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        blocks = tuple(frozenset(b) for b in self.blocks)
        if not blocks:
            raise ValueError("an ordered partition needs at least one block")
        total = 0
        for b in blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            total += len(b)
        union = frozenset().union(*blocks)
        if len(union) != total:
            raise ValueError("blocks must be pairwise disjoint")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[str]]) -> "OrderedPartition":
        return cls(tuple(frozenset(b) for b in blocks))

    def level_of(self) -> dict[str, int]:
        """Map each member to the index of its block (0 is the top block)."""
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def members(self) -> frozenset[str]:
        return frozenset().union(*self.blocks)

    def reversed(self) -> "OrderedPartition":
        return OrderedPartition(tuple(reversed(self.blocks)))


def weight(t: WeightedTournament, x: str, y: str) -> Fraction:
    """Arc weight from x to y, negating the stored value when (y, x) is stored."""
    i, j = t.index(x), t.index(y)
    if i == j:
        raise ValueError(f"no arc from {x!r} to itself")
    if i < j:
        return t.weights[(x, y)]
    return -t.weights[(y, x)]


def partition_score(t: WeightedTournament, p: OrderedPartition) -> Fraction:
    """Sum of weights on arcs pointing from a higher block to a lower one.

    Arcs inside a block contribute nothing; arcs pointing upward subtract
    their weight (equivalently, their reversal is added).
    """
    level = p.level_of()
    if set(level) != set(t.vertices):
        raise ValueError("partition must cover exactly the tournament's vertices")
    total = Fraction(0)
    for (x, y), w in t.weights.items():
        lx, ly = level[x], level[y]
        if lx < ly:
            total += w
        elif lx > ly:
            total -= w
    return total


def borda_score(t: WeightedTournament, x: str) -> Fraction:
    """Sum of x's outgoing weights over all other vertices."""
    t.index(x)
    total = Fraction(0)
    for y in t.vertices:
        if y != x:
            total += weight(t, x, y)
    return total


def is_quantitatively_transitive(t: WeightedTournament) -> bool:
    """True iff weight(x,y) + weight(y,z) == weight(x,z) for all distinct triples.

    By antisymmetry one orientation per unordered triple suffices.
    """
    for x, y, z in combinations(t.vertices, 3):
        if weight(t, x, y) + weight(t, y, z) != weight(t, x, z):
            return False
    return True


def is_qualitatively_transitive(t: WeightedTournament) -> bool:
    """True iff strictly positive weights chain: w(x,y)>0 and w(y,z)>0 imply w(x,z)>0."""
    for x, y, z in permutations(t.vertices, 3):
        if weight(t, x, y) > 0 and weight(t, y, z) > 0 and not weight(t, x, z) > 0:
            return False
    return True


def difference_generator(t: WeightedTournament) -> dict[str, Fraction] | None:
    """Vertex potentials generating the weights by differences, if they exist.

    Returns the scaled Borda map (score divided by the vertex count) when it
    satisfies weight(x,y) == g(x) - g(y) for every pair, and None otherwise.
    Presence of a generator is exactly pure acyclicity of the weights.
    """
    m = t.m
    g = {x: borda_score(t, x) / m for x in t.vertices}
    for (x, y), w in t.weights.items():
        if w != g[x] - g[y]:
            return None
    return g
