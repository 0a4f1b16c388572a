"""Reflection cosets: closure, reflections, lattices, classes, degrees, order polynomials."""
from __future__ import annotations

from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esplit.arith import Cyclotomic, SubspaceCF
from esplit.refl import (
    CARTAN,
    GroupTooLargeError,
    ReflectionCoset,
    generate_group,
    load_coset_config,
)

from cases import coset

ALL_TYPES = sorted(CARTAN)
KNOWN_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "G2": 12}
KNOWN_REFLECTIONS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "G2": 6}
KNOWN_DEGREES = {"A1": (2,), "A2": (2, 3), "A3": (2, 3, 4), "B2": (2, 4), "B3": (2, 4, 6), "G2": (2, 6)}


def degs(c):
    return sorted((d, str(e)) for d, e in c.degrees)


def test_closure_examples():
    assert len(generate_group([((-1,),)])) == 2
    assert coset("A2").order == 6
    assert coset("B2").order == 8


def test_closure_cap():
    with pytest.raises(GroupTooLargeError, match="group too large or infinite"):
        generate_group([((1, 1), (0, 1))], cap=50)


@pytest.mark.parametrize("t", ALL_TYPES)
def test_orders_and_reflections(t):
    c = coset(t)
    assert c.order == KNOWN_ORDERS[t]
    assert c.n_reflections == KNOWN_REFLECTIONS[t]
    assert sorted(c.untwisted_degrees) == list(KNOWN_DEGREES[t])
    # Shephard-Todd identities: prod d_i = |W|, sum (d_i - 1) = N
    assert prod(c.untwisted_degrees) == c.order
    assert sum(d - 1 for d in c.untwisted_degrees) == c.n_reflections


def test_intersection_lattice_examples():
    assert len(coset("A1").intersection_lattice) == 2
    assert len(coset("A2").intersection_lattice) == 5
    assert len(ReflectionCoset.trivial(0).intersection_lattice) == 1


def test_pointwise_stabilizer_examples():
    c = coset("A2")
    assert c.pointwise_stabilizer(SubspaceCF.zero(2)) == tuple(range(6))
    assert c.pointwise_stabilizer(SubspaceCF.whole(2)) == (c.identity,)
    s = c.reflections[0]
    assert set(c.pointwise_stabilizer(c.fixed_space(s))) == {c.identity, s}


@pytest.mark.parametrize("t", ALL_TYPES)
def test_parabolics_are_reflection_subgroups(t):
    """Steinberg: a pointwise stabiliser is generated by the reflections it contains."""
    c = coset(t)
    refl = set(c.reflections)
    for U, P in c.parabolic_registry:
        assert set(c.generated_by([p for p in P if p in refl])) == set(P)


def test_conjugacy_classes_s3():
    c = coset("A2")
    sizes = sorted(len(k) for k in c.conjugacy_classes())
    assert sizes == [1, 2, 3]
    assert c.centralizer(c.identity) == tuple(range(6))
    three_cycle = next(i for i in range(6) if i != c.identity and c.mul(c.mul(i, i), i) == c.identity)
    assert len(c.centralizer(three_cycle)) == 3


def test_degrees_examples():
    assert degs(ReflectionCoset.trivial(2)) == [(1, "1"), (1, "1")]
    assert degs(coset("A1")) == [(2, "1")]
    assert degs(coset("A2", "graph")) == [(2, "1"), (3, "-1")]


@pytest.mark.parametrize("t,tw", [(t, "id") for t in ALL_TYPES] + [("A2", "graph"), ("A3", "graph")])
def test_twisted_degree_identities(t, tw):
    """The twisted degrees are the untwisted ones, each eps_i a root of unity."""
    c = coset(t, tw)
    assert sorted(d for d, _ in c.degrees) == sorted(c.untwisted_degrees)
    for _, eps in c.degrees:
        assert eps.root_of_unity_index() is not None


@pytest.mark.parametrize("t,tw", [("A1", "id"), ("A2", "id"), ("A2", "graph"), ("B2", "id"), ("G2", "id")])
def test_order_polynomial_counts_rational_points(t, tw):
    """|G|(x) at x=1 vanishes and the polynomial has degree dim G = 2N + r."""
    c = coset(t, tw)
    p = c.order_polynomial()
    assert p.degree == 2 * c.n_reflections + c.rank
    assert p.evaluate(Cyclotomic.rational(1)) == 0


def test_order_polynomial_examples():
    assert str(coset("A1").order_polynomial()) == "x(x^2-1)"
    assert str(coset("A2").order_polynomial()) == "x^3(x^2-1)(x^3-1)"
    assert str(ReflectionCoset.trivial(2).order_polynomial()) == "(x-1)(x-1)"
    # |SL_3(2)| = 168 and |SU_3(2)| = 216 / gcd stuff: x^3(x^2-1)(x^3+1) at 2 = 8*3*9
    assert coset("A2").order_polynomial().evaluate(Cyclotomic.rational(2)) == 168
    assert coset("A2", "graph").order_polynomial().evaluate(Cyclotomic.rational(2)) == 216


def test_load_coset_config():
    c = load_coset_config({"cartan_type": "B2"})
    assert c.order == 8
    c = load_coset_config({"generators": [[[-1]]], "twist": "minus"})
    assert c.order == 2 and c.phi == ((-1,),)
    with pytest.raises(ValueError):
        load_coset_config({"rank": 1})


def test_bad_twist_rejected():
    with pytest.raises(ValueError):
        ReflectionCoset.from_type("B2", "graph")
    with pytest.raises(ValueError, match="normalise"):
        ReflectionCoset([((-1, 0), (0, 1))], ((0, 1), (-1, 0)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(ALL_TYPES), st.data())
def test_group_axioms(t, data):
    c = coset(t)
    a, b, x = (data.draw(st.integers(0, c.order - 1)) for _ in range(3))
    assert c.mul(c.mul(a, b), x) == c.mul(a, c.mul(b, x))
    assert c.mul(a, c.inv(a)) == c.identity
    assert c.coset_conj(c.identity, a) == a
