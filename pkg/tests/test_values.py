"""Value lattices, membership orbits, enumeration, and group comparison."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from bratteli.diagram import decompose, make_diagram
from bratteli.errors import EnumerationBudgetError, ValueExprError
from bratteli.measure import build_measure, ergodic_measures
from bratteli.values import (
    LatticeGroup,
    enumerate_level_values,
    group_equal,
    member_value,
    rational_group_invariant,
    value_lattice,
)

from test_diagram import EX1, diagrams


@pytest.fixture(scope="module")
def ex1():
    dec = decompose(make_diagram(EX1))
    return build_measure(dec, 0), build_measure(dec, 1)


def test_value_lattice_shapes(ex1):
    mu1, mu2 = ex1
    H1 = value_lattice(mu1)
    # x = (3 - l, l - 2) spans the full ring of integers: Z + Z*lambda
    assert H1.den == 1
    assert H1.rows == ((1, 0), (0, 1))
    H2 = value_lattice(mu2)
    assert H2.den == 4
    assert H2.rows == ((1,),)


def test_lattice_contains_and_coords(ex1):
    mu1, _ = ex1
    H = value_lattice(mu1)
    lam = mu1.lam
    assert H.contains(lam - 2)
    assert H.coords(lam**2) == (-1, 3)  # l^2 = -1 + 3l
    assert not H.contains(mu1.field.rational(Fraction(1, 2)))
    assert H.rational_coords(mu1.field.rational(Fraction(1, 2))) == (Fraction(1, 2), 0)


def test_index_of_sublattice(ex1):
    mu1, _ = ex1
    H = value_lattice(mu1)
    sub = LatticeGroup.from_elements(
        mu1.field, [mu1.field.rational(3), mu1.lam * 3]
    )
    assert H.index_of_sublattice(sub) == 9


def test_member_oracles_irrational(ex1):
    mu1, _ = ex1
    lam = mu1.lam
    r = member_value(mu1, lam - 2)
    assert r.member and r.exponent == 0 and r.reason == "integral-orbit"
    r = member_value(mu1, mu1.field.one())
    assert r.member and r.exponent == 0
    r = member_value(mu1, Fraction(1, 2))
    assert not r.member and r.reason == "orbit-cycled"
    assert r.visited == 3  # (1/2,0) -> (0,1/2) -> (1/2,1/2) -> cycle
    r = member_value(mu1, Fraction(1, 3))
    assert not r.member
    r = member_value(mu1, 2)
    assert not r.member and r.reason == "outside-range"
    r = member_value(mu1, lam - 3)  # negative number
    assert not r.member and r.reason == "outside-range"


def test_member_value_parses_expression_strings(ex1):
    # Strings go through the same grammar the CLI uses, so lambda terms
    # work at the library boundary too (and bad input raises our error,
    # not a bare ValueError out of fractions).
    mu1, mu2 = ex1
    r = member_value(mu1, "3 - l")
    assert r.member and r.coords == (3, -1)
    assert member_value(mu1, "l - 2").member
    assert not member_value(mu2, "1/5").member
    with pytest.raises(ValueExprError):
        member_value(mu1, "3 - q")
    with pytest.raises(ValueExprError):
        member_value(mu2, "1/")


def test_member_oracles_rational(ex1):
    _, mu2 = ex1
    r = member_value(mu2, Fraction(1, 3))
    assert r.member and r.exponent == 1
    assert r.coords == (4,)  # 3 * (1/3) = 4 * (1/4)
    r = member_value(mu2, Fraction(1, 5))
    assert not r.member and r.reason == "orbit-cycled"
    assert member_value(mu2, Fraction(3, 4)).exponent == 0
    assert member_value(mu2, Fraction(7, 36)).member  # 7/(4*9), exponent 2
    assert member_value(mu2, Fraction(7, 36)).exponent == 2
    assert not member_value(mu2, Fraction(1, 8)).member


def test_enumerate_level_values(ex1):
    mu1, mu2 = ex1
    s1 = enumerate_level_values(mu2, 1)
    assert [e.as_fraction() for e in s1] == [
        Fraction(0),
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(3, 4),
        Fraction(1),
    ]
    s2 = enumerate_level_values(mu2, 2)
    assert [e.as_fraction() for e in s2] == [Fraction(k, 12) for k in range(13)]

    t1 = enumerate_level_values(mu1, 1)
    lam = mu1.lam
    assert list(t1) == [
        mu1.field.zero(),
        3 - lam,
        lam - 2,
        mu1.field.one(),
    ]


def test_enumerate_budget():
    dec = decompose(make_diagram(EX1))
    mu2 = build_measure(dec, 1)
    with pytest.raises(EnumerationBudgetError) as exc:
        enumerate_level_values(mu2, 12)
    assert exc.value.product > exc.value.budget == 10**6
    # a generous budget at a modest level is fine
    assert len(enumerate_level_values(mu2, 3, budget=10**5)) > 13


def test_levels_nested(ex1):
    # S_n is increasing in n, closed under complement, and divides by lambda
    for mu in ex1:
        sets = {n: set(enumerate_level_values(mu, n)) for n in (1, 2, 3, 4)}
        one = mu.field.one()
        for n in (1, 2, 3):
            assert sets[n] <= sets[n + 1]
            assert {v / mu.lam for v in sets[n]} <= sets[n + 1]
        for n in (1, 2, 3, 4):
            assert all((one - v) in sets[n] for v in sets[n])


def test_rational_invariant(ex1):
    _, mu2 = ex1
    assert rational_group_invariant(mu2) == ((3,), 4)


def test_group_equal_rational_same_and_different(ex1):
    _, mu2 = ex1
    # lambda = 9 with x = (1/4, 3/4): same primes {3}, same stripped q = 4
    d = make_diagram([[0, 3], [3, 8]])
    nu = ergodic_measures(d)[0]
    assert nu.lam_int() == 9
    res = group_equal(mu2, nu)
    assert res.equal and res.case == "rational"
    # single vertex, lambda = 3, q = 1: different group
    single = ergodic_measures(make_diagram([[3]]))[0]
    res = group_equal(mu2, single)
    assert not res.equal
    assert res.detail["invariant_1"] == {"primes": [3], "q": 4}
    assert res.detail["invariant_2"] == {"primes": [3], "q": 1}


def test_group_equal_mixed(ex1):
    mu1, mu2 = ex1
    res = group_equal(mu1, mu2)
    assert not res.equal and res.case == "mixed"


def test_group_equal_same_root(ex1):
    mu1, _ = ex1
    # same Perron root, same lattice Z + Z*lambda, via a different matrix
    d = make_diagram([[2, 1], [1, 1]])
    nu = ergodic_measures(d)[0]
    assert nu.field.minpoly == mu1.field.minpoly
    res = group_equal(mu1, nu)
    assert res.equal and res.case == "same-root"
    # and the three-vertex diagram whose x-coordinates span the same lattice
    d3 = make_diagram([[2, 0, 0], [1, 1, 1], [0, 1, 2]])
    nu3 = ergodic_measures(d3)[1]
    res = group_equal(mu1, nu3)
    assert res.equal and res.case == "same-root"


def test_group_equal_power_match(ex1):
    mu1, _ = ex1
    # adjacency [[4,3,1],[1,2,2],[0,3,5]] has Perron root lambda^2 and the
    # same eigenvector lattice, so the value groups coincide
    F = [[4, 1, 0], [3, 2, 3], [1, 2, 5]]
    nu = ergodic_measures(make_diagram(F))[0]
    assert nu.field.minpoly.to_string() == "t^2 - 7*t + 1"
    res = group_equal(mu1, nu)
    assert res.equal and res.case == "power-match"
    assert res.detail["power"] == 2
    res_flip = group_equal(nu, mu1)
    assert res_flip.equal and res_flip.detail["flipped"]


def test_group_equal_incommensurable(ex1):
    mu1, _ = ex1
    # Perron root 1 + sqrt2 is not a power of the golden ratio squared
    nu = ergodic_measures(make_diagram([[1, 1], [2, 1]]))[0]
    assert nu.field.minpoly.to_string() == "t^2 - 2*t - 1"
    res = group_equal(mu1, nu)
    assert not res.equal and res.case == "power-scan"


@settings(max_examples=15, deadline=None)
@given(diagrams(max_n=3, max_entry=2))
def test_enumerated_values_pass_membership(d):
    # the finite oracle and the orbit test must agree on every level value
    for mu in ergodic_measures(d):
        for v in enumerate_level_values(mu, 2, budget=10**4):
            res = member_value(mu, v)
            assert res.member, (d, v)
