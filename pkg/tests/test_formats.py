import random
from fractions import Fraction

import pytest

from maxkop import CutInstance, OrderedPartition, Profile, WeakOrder, WeightedTournament
from maxkop.formats import (
    ParseError,
    format_graph,
    format_partition,
    format_profile,
    format_tournament,
    parse_graph,
    parse_partition,
    parse_profile,
    parse_tournament,
)
from maxkop.selftest import random_graph, random_tournament


def test_tournament_roundtrip():
    t = WeightedTournament(
        ("a", "b", "c"), {("a", "b"): Fraction(5), ("b", "c"): Fraction(-1, 2)}
    )
    assert parse_tournament(format_tournament(t)) == t


def test_tournament_roundtrip_random():
    rng = random.Random(71)
    for _ in range(10):
        t = random_tournament(rng, rng.randint(1, 7))
        assert parse_tournament(format_tournament(t)) == t


def test_tournament_parse_accepts_reversed_arcs_and_missing_pairs():
    text = "tournament 3\na\nb\nc\nc a 2\n"
    t = parse_tournament(text)
    assert t.weights[("a", "c")] == -2
    assert t.weights[("a", "b")] == 0


def test_tournament_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        parse_tournament("tournament 2\na\nb\na b one\n", "x.txt")
    assert "x.txt:4" in str(err.value)
    assert "rational" in str(err.value)

    with pytest.raises(ParseError, match="header"):
        parse_tournament("whatever 2\na\nb\n")
    with pytest.raises(ParseError, match="duplicate"):
        parse_tournament("tournament 2\na\nb\na b 1\nb a 2\n")
    with pytest.raises(ParseError, match="arc line"):
        parse_tournament("tournament 2\na\nb\na b\n")
    with pytest.raises(ParseError, match="name lines"):
        parse_tournament("tournament 3\na\nb\n")


def test_partition_roundtrip():
    p = OrderedPartition.from_blocks([["a", "b"], ["c"], ["d", "e"]])
    line = format_partition(p, ("a", "b", "c", "d", "e"))
    assert line == "a b > c > d e"
    assert parse_partition(line) == p


def test_partition_parse_errors():
    with pytest.raises(ParseError):
        parse_partition("a b > > c")
    with pytest.raises(ParseError):
        parse_partition("a > a")
    with pytest.raises(ParseError):
        parse_partition("a > b\nc > d")


def test_profile_roundtrip():
    p = Profile(
        ("a", "b", "c"),
        (
            (WeakOrder.from_classes([["a", "b"], ["c"]]), 2),
            (WeakOrder.from_classes([["c"], ["a"], ["b"]]), 1),
        ),
    )
    text = format_profile(p)
    assert "× 2" in text
    assert parse_profile(text) == p


def test_profile_parse_ascii_multiplicity():
    text = "profile 2\na\nb\na | b * 3\n"
    p = parse_profile(text)
    assert p.ballots[0][1] == 3


def test_profile_parse_errors():
    with pytest.raises(ParseError, match="multiplicity"):
        parse_profile("profile 2\na\nb\na | b × 0\n")
    with pytest.raises(ParseError):
        parse_profile("profile 2\na\nb\na | a\n")
    with pytest.raises(ParseError):
        parse_profile("profile 2\na\nb\na\n")  # ballot misses b


def test_graph_roundtrip():
    g = CutInstance(("a", "b", "c"), {("a", "b"): 2, ("b", "c"): 0})
    text = format_graph(g)
    assert "b c" not in text  # zero edges elided
    assert parse_graph(text) == CutInstance(("a", "b", "c"), {("a", "b"): 2})


def test_graph_roundtrip_random():
    rng = random.Random(72)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 6))
        parsed = parse_graph(format_graph(g))
        assert parsed.vertices == g.vertices
        for x, y in g.edge_weights:
            assert parsed.edge_weight(x, y) == g.edge_weight(x, y)


def test_graph_parse_errors():
    with pytest.raises(ParseError, match="integer"):
        parse_graph("graph 2\na\nb\na b 1/2\n")
    with pytest.raises(ParseError, match="duplicate"):
        parse_graph("graph 2\na\nb\na b 1\nb a 1\n")
    with pytest.raises(ParseError):
        parse_graph("graph 2\na\nb\na b -1\n")
