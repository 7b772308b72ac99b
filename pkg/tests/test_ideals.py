import pytest
from hypothesis import given, strategies as st

from diffpoly import IdealError, derivation_from_pairs, inner_derivation, zero_derivation
from diffpoly.ideals import (
    check_ideal,
    enumerate_ideals,
    enumerate_maximal_ideals,
    ideal_closure,
    ideal_power_chain,
    jacobson_radical,
    maximal_field_ideals,
    nilradical,
    quotient_ring,
    unit_ideal,
)
from diffpoly.rings import gf, make_ring, matrix, polymod, product, triangular, zmod
from oracles import brute_ideals, brute_jacobson, maximal_among

TINY = [
    ("zmod", 4),
    ("zmod", 6),
    ("zmod", 8),
    ("zmod", 9),
    ("gf", 4),
    ("triangular", 2, ("gf", 2)),
    ("product", ("gf", 2), ("gf", 3)),
    ("polymod", ("gf", 2), ("0", "0", "1")),
]


@pytest.mark.parametrize("recipe", TINY, ids=str)
@pytest.mark.parametrize("side", ["left", "right", "two-sided"])
def test_ideal_enumeration_matches_subset_search(recipe, side):
    R = make_ring(recipe)
    got = {I.elements for I in enumerate_ideals(R, side)}
    assert got == set(brute_ideals(R, side))


@pytest.mark.parametrize("recipe", TINY, ids=str)
def test_maximal_ideals_match_subset_search(recipe):
    R = make_ring(recipe)
    got = {I.elements for I in enumerate_maximal_ideals(R)}
    assert got == set(maximal_among(brute_ideals(R), R.order))


@pytest.mark.parametrize("recipe", TINY, ids=str)
def test_jacobson_radical_matches_maximal_left_ideals(recipe):
    R = make_ring(recipe)
    assert jacobson_radical(R).elements == brute_jacobson(R)


@pytest.mark.parametrize("n,rad", [(2, 2), (4, 2), (8, 2), (9, 3), (12, 6), (25, 5)])
def test_jacobson_of_zmod_is_multiples_of_radical(n, rad):
    R = zmod(n)
    J = jacobson_radical(R)
    assert {int(R.label(a)) for a in J.elements} == set(range(0, n, rad))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_triangular_radical_is_strictly_upper(q):
    U = triangular(gf(q), 2)
    J = jacobson_radical(U)
    assert len(J) == q
    assert all(U.label(a).startswith("[0,") and U.label(a).endswith(";0,0]") for a in J.elements)


def test_full_matrix_ring_is_simple():
    M = matrix(gf(2), 2)
    assert len(enumerate_ideals(M)) == 2
    assert [I.is_zero for I in enumerate_maximal_ideals(M)] == [True]
    assert jacobson_radical(M).is_zero
    assert ideal_closure(M, [M.element("e12")]).is_unit


def test_triangular_left_ideals_with_gf5():
    U = triangular(gf(5), 2)
    assert len(enumerate_ideals(U, "left")) == 10


@pytest.mark.parametrize("recipe", TINY + [("triangular", 2, ("gf", 3))], ids=str)
def test_nilradical_equals_radical_and_is_nilpotent(recipe):
    R = make_ring(recipe)
    J = jacobson_radical(R)
    assert nilradical(R) == J
    assert ideal_power_chain(J)[-1].is_zero


@given(st.sampled_from(TINY), st.data())
def test_closure_is_smallest_ideal(recipe, data):
    R = make_ring(recipe)
    gens = data.draw(st.lists(st.integers(0, R.order - 1), max_size=3))
    I = ideal_closure(R, gens)
    assert check_ideal(I)
    assert set(gens) <= I.elements
    for K in brute_ideals(R):
        if set(gens) <= K:
            assert I.elements <= K


@given(st.sampled_from(TINY), st.data())
def test_quotient_projection_is_a_ring_morphism(recipe, data):
    R = make_ring(recipe)
    ideals = [I for I in enumerate_ideals(R) if not I.is_unit]
    I = data.draw(st.sampled_from(ideals))
    Q = quotient_ring(R, I)
    assert Q.ring.order * len(I) == R.order
    a, b = data.draw(st.integers(0, R.order - 1)), data.draw(st.integers(0, R.order - 1))
    assert Q(R.add(a, b)) == Q.ring.add(Q(a), Q(b))
    assert Q(R.mul(a, b)) == Q.ring.mul(Q(a), Q(b))
    assert (Q(a) == Q.ring.zero) == (a in I)


def test_field_ideals_respect_the_derivation():
    U = triangular(gf(2), 2)
    both = maximal_field_ideals(U, inner_derivation(U, U.element("e12")))
    assert len(both) == 2 and all(len(I) == 4 for I in both)
    M = matrix(gf(2), 2)
    assert maximal_field_ideals(M, zero_derivation(M)) == []
    D = polymod(gf(2), ["0", "0", "1"])
    shift = derivation_from_pairs(D, [(D.element("t"), D.one)])
    assert maximal_field_ideals(D, shift) == []
    assert len(maximal_field_ideals(D, zero_derivation(D))) == 1


def test_quotient_by_unit_ideal_is_refused():
    with pytest.raises(IdealError):
        quotient_ring(zmod(4), unit_ideal(zmod(4)))


def test_product_has_two_maximal_ideals():
    P = product(gf(2), gf(3))
    assert sorted(len(I) for I in enumerate_maximal_ideals(P)) == [2, 3]
