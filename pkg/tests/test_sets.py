import pytest
from hypothesis import given
from hypothesis import strategies as st

from radolab.sets import VertexSet, format_runs, load_vertex_set, parse_notation, parse_runs, save_vertex_set


def test_invariants():
    with pytest.raises(ValueError):
        VertexSet((3, 2), 5)
    with pytest.raises(ValueError):
        VertexSet((0, 1), 5)
    with pytest.raises(ValueError):
        VertexSet((1, 9), 5)
    vs = VertexSet((1, 4, 9), 10)
    assert len(vs) == 3 and 4 in vs and 5 not in vs


def test_count_upto_and_restrict():
    vs = VertexSet.from_iterable([2, 4, 6, 8, 10])
    assert vs.count_upto(5) == 2
    assert vs.count_upto(10) == 5
    assert vs.restrict(4, 8).elements == (4, 6, 8)
    assert vs.minus([4, 8]).elements == (2, 6, 10)


def test_runs_notation():
    vs = VertexSet.from_iterable([1, 2, 3, 4, 7, 9, 10, 11, 12])
    assert format_runs(vs) == "1-4,7,9-12"
    assert parse_runs("1-4,7,9-12").elements == vs.elements


@given(st.sets(st.integers(1, 200), max_size=40))
def test_runs_roundtrip(xs):
    vs = VertexSet.from_iterable(xs)
    assert parse_runs(format_runs(vs), vs.prefix_bound).elements == vs.elements


def test_parse_notation_keywords():
    assert parse_notation("all", 5).elements == (1, 2, 3, 4, 5)
    assert parse_notation("even", 10).elements == (2, 4, 6, 8, 10)
    assert parse_notation("odd", 7).elements == (1, 3, 5, 7)
    assert parse_notation("ap:3,7", 31).elements == (3, 10, 17, 24, 31)
    assert parse_notation("1-512", None).prefix_bound == 512
    with pytest.raises(ValueError):
        parse_notation("even", None)
    with pytest.raises(ValueError):
        parse_notation("5-2", None)
    with pytest.raises(ValueError):
        parse_notation("abc", 10)


def test_file_roundtrip(tmp_path):
    vs = VertexSet.from_iterable([3, 4, 5, 9])
    p = tmp_path / "set.txt"
    save_vertex_set(vs, str(p))
    assert load_vertex_set(str(p)).elements == vs.elements
    q = tmp_path / "lines.txt"
    q.write_text("# comment\n5\n2\n11\n")
    assert load_vertex_set(str(q)).elements == (2, 5, 11)
    assert parse_notation("file:" + str(p), None).elements == vs.elements
