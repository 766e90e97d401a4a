from fractions import Fraction

import pytest

from maxkop import OrderedPartition, WeightedTournament


@pytest.fixture
def three_cycle() -> WeightedTournament:
    """Unit weights around a -> b -> c -> a."""
    return WeightedTournament(("a", "b", "c"), {("a", "b"): 1, ("b", "c"): 1, ("c", "a"): 1})


@pytest.fixture
def figure_one() -> tuple[WeightedTournament, OrderedPartition]:
    """Seven vertices, three levels: down arcs weigh 3+4+5, up arcs 1+3+4.

    Sideways arcs carry arbitrary nonzero weights to confirm they are ignored.
    """
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
    return t, p


def assert_same_weights(t1: WeightedTournament, t2: WeightedTournament) -> None:
    assert t1.vertices == t2.vertices
    assert t1.weights == t2.weights


def scale_weights(t: WeightedTournament, c: Fraction) -> WeightedTournament:
    return WeightedTournament(t.vertices, {k: v * c for k, v in t.weights.items()})


def add_weights(t1: WeightedTournament, t2: WeightedTournament) -> WeightedTournament:
    assert t1.vertices == t2.vertices
    return WeightedTournament(
        t1.vertices, {k: t1.weights[k] + t2.weights[k] for k in t1.weights}
    )
