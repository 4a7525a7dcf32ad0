"""Diagram parsing, validation, and class decomposition against hand-checked
examples plus a brute-force reachability oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bratteli.diagram import (
    Diagram,
    decompose,
    heights,
    load_diagram,
    make_diagram,
    parse_diagram,
)
from bratteli.errors import DiagramValidationError
from bratteli.exactmath import Polynomial, compare_real


def P(*coeffs):
    return Polynomial(coeffs)


# The running three-vertex example: two exchanged vertices feeding a third.
EX1 = [[1, 1, 0], [1, 2, 0], [0, 1, 3]]


def test_parse_roundtrip():
    d = parse_diagram('{"name": "ex1", "incidence": [[1,1,0],[1,2,0],[0,1,3]]}')
    assert d.name == "ex1"
    assert d.incidence == ((1, 1, 0), (1, 2, 0), (0, 1, 3))
    assert d.size == 3
    again = parse_diagram(d.to_json())
    assert again == d


def test_adjacency_is_transpose():
    d = make_diagram(EX1)
    assert d.adjacency == ((1, 1, 0), (1, 2, 1), (0, 0, 3))


@pytest.mark.parametrize(
    "text,msg",
    [
        ("[1,2]", "top-level value must be an object"),
        ("{\"incidence\": [[1,1],[1,1]], \"extra\": 1}", "unexpected key 'extra'"),
        ("{}", "missing required key 'incidence'"),
        ("{\"name\": 3, \"incidence\": [[1]]}", "'name' must be a string"),
        ("{\"incidence\": []}", "'incidence' must be a non-empty list of rows"),
        ("{\"incidence\": [[1,1], 2]}", "row 2 is not a list"),
        (
            "{\"incidence\": [[1,1],[1,1,1]]}",
            "matrix is not square: row 2 has 3 entries, expected 2",
        ),
        ("{\"incidence\": [[1,true],[1,1]]}", "entry (1,2) is not an integer"),
        ("{\"incidence\": [[1,1.5],[1,1]]}", "entry (1,2) is not an integer"),
        ("{\"incidence\": [[1,-1],[1,1]]}", "entry (1,2) is negative"),
        (
            "{\"incidence\": [[0,0],[1,1]]}",
            "zero row 1: vertex 1 has no incoming edges",
        ),
        (
            "{\"incidence\": [[1,0],[1,0]]}",
            "zero column 2: vertex 2 has no outgoing edges",
        ),
    ],
)
def test_validation_messages(text, msg):
    with pytest.raises(DiagramValidationError) as exc:
        parse_diagram(text)
    assert str(exc.value) == msg


def test_invalid_json_reported():
    with pytest.raises(DiagramValidationError) as exc:
        parse_diagram("{nope")
    assert str(exc.value).startswith("invalid JSON:")


def test_load_diagram(tmp_path):
    path = tmp_path / "d.json"
    path.write_text('{"incidence": [[2]]}')
    assert load_diagram(path) == Diagram(((2,),), None)


def test_heights_ex1():
    d = make_diagram(EX1)
    assert heights(d, 1) == (1, 1, 1)
    assert heights(d, 2) == (2, 3, 4)
    assert heights(d, 3) == (5, 8, 15)
    fib = [0, 1]
    while len(fib) < 32:
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 7):
        h = heights(d, n)
        assert h[0] == fib[2 * n - 1]
        assert h[1] == fib[2 * n]


def test_decompose_ex1():
    dec = decompose(make_diagram(EX1))
    assert len(dec.classes) == 2
    c0, c1 = dec.classes
    assert c0.vertices == (0, 1)
    assert c0.label == "{1,2}"
    assert c0.is_minimal and c0.is_final and c0.is_distinguished
    assert not c0.is_initial
    assert c0.minpoly == P(1, -3, 1)
    assert abs(c0.perron.approx() - 2.618033988750) < 1e-9
    assert c1.vertices == (2,)
    assert c1.minpoly == P(-3, 1)
    assert c1.perron.as_fraction() == 3
    assert c1.is_initial and c1.is_distinguished
    assert not c1.is_minimal and not c1.is_final
    assert dec.accesses(1, 0) and not dec.accesses(0, 1)
    assert dec.support(0) == (0, 1)
    assert dec.support(1) == (0, 1, 2)
    assert dec.vertex_class == (0, 0, 1)
    assert dec.vertex_order == (0, 1, 2)
    assert [c.label for c in dec.distinguished()] == ["{1,2}", "{3}"]
    assert [c.label for c in dec.minimal()] == ["{1,2}"]


def test_decompose_family_member():
    # one slow vertex feeding a symmetric pair: Perron roots 2 and N+1
    N = 4
    d = make_diagram([[2, 0, 0], [1, N, 1], [1, 1, N]])
    dec = decompose(d)
    assert [c.vertices for c in dec.classes] == [(0,), (1, 2)]
    assert dec.classes[0].perron.as_fraction() == 2
    assert dec.classes[1].perron.as_fraction() == N + 1
    assert dec.classes[1].minpoly == P(-(N + 1), 1)
    assert all(c.is_distinguished for c in dec.classes)
    assert dec.classes[0].is_minimal and not dec.classes[1].is_minimal


def test_decompose_dominated_class_not_distinguished():
    dec = decompose(make_diagram([[3, 0], [1, 2]]))
    assert dec.classes[0].vertices == (0,)
    assert dec.classes[0].perron.as_fraction() == 3
    assert dec.classes[1].perron.as_fraction() == 2
    assert dec.classes[0].is_distinguished
    assert not dec.classes[1].is_distinguished
    assert dec.distinguished() == (dec.classes[0],)


def test_zero_singleton_class_allowed():
    # vertex 3 sits between two loops and forms a class with an all-zero block
    dec = decompose(make_diagram([[1, 0, 1], [0, 1, 0], [0, 1, 0]]))
    assert [c.vertices for c in dec.classes] == [(1,), (2,), (0,)]
    assert [str(c.perron.as_fraction()) for c in dec.classes] == ["1", "0", "1"]
    assert [c.is_distinguished for c in dec.classes] == [True, False, False]
    assert [c.is_minimal for c in dec.classes] == [True, False, False]
    assert [c.is_initial for c in dec.classes] == [False, False, True]


def test_topological_tie_break_smallest_vertex():
    # two independent loops: both minimal, ordered by their smallest vertex
    dec = decompose(make_diagram([[1, 0, 0], [0, 1, 0], [1, 1, 2]]))
    assert [c.vertices for c in dec.classes] == [(0,), (1,), (2,)]
    assert [c.is_minimal for c in dec.classes] == [True, True, False]


def _reach(adj, src):
    seen = {src}
    todo = [src]
    while todo:
        u = todo.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


@st.composite
def diagrams(draw, max_n=5, max_entry=3):
    n = draw(st.integers(2, max_n))
    rows = [[draw(st.integers(0, max_entry)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        if not any(rows[i]):
            rows[i][draw(st.integers(0, n - 1))] = 1
    for j in range(n):
        if not any(rows[i][j] for i in range(n)):
            rows[draw(st.integers(0, n - 1))][j] = 1
    return make_diagram(rows)


@settings(max_examples=40, deadline=None)
@given(diagrams())
def test_decomposition_matches_reachability(d):
    n = d.size
    A = d.adjacency
    adj = [[j for j in range(n) if A[i][j]] for i in range(n)]
    reach = [_reach(adj, u) for u in range(n)]
    dec = decompose(d)
    for u in range(n):
        for v in range(n):
            same = v in reach[u] and u in reach[v]
            assert same == (dec.vertex_class[u] == dec.vertex_class[v])
            # path u -> v means the class of v accesses the class of u
            assert (v in reach[u]) == dec.accesses(dec.vertex_class[v], dec.vertex_class[u])


@settings(max_examples=40, deadline=None)
@given(diagrams())
def test_decomposition_invariants(d):
    dec = decompose(d)
    F = d.incidence
    pos = {}
    for p, c in enumerate(dec.classes):
        assert c.is_final == c.is_minimal
        assert c.index == p
        for v in c.vertices:
            pos[v] = p
    assert sorted(dec.vertex_order) == list(range(d.size))
    # permuted incidence matrix is block lower triangular
    for v in range(d.size):
        for w in range(d.size):
            if F[v][w]:
                assert pos[w] <= pos[v]
    # minimal classes have spectral radius >= 1; all leading classes come first
    one = Fraction(1)
    for c in dec.classes:
        if c.is_minimal:
            assert c.perron.is_rational or c.perron.lo >= 0
            from bratteli.exactmath import RealAlgebraic

            assert compare_real(c.perron, RealAlgebraic.from_rational(one)) >= 0
    # distinguished flag agrees with pairwise exact comparisons
    for a in dec.classes:
        expect = all(
            compare_real(a.perron, dec.classes[b].perron) > 0
            for b in dec.below[a.index]
            if b != a.index
        )
        assert a.is_distinguished == expect
