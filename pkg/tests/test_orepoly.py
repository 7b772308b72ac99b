import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diffpoly import DiffPolyError, IdealError
from diffpoly.corpus import instance
from diffpoly.derivation import inner_derivation, zero_derivation
from diffpoly.ideals import enumerate_maximal_ideals, maximal_field_ideals
from diffpoly.orepoly import (
    FieldPoly,
    OreRing,
    PhiMap,
    PolySpan,
    irreducible_monics,
    monic_division,
    poly_gcd,
    quotient_field,
)
from diffpoly.rings import gf, triangular, zmod
from oracles import necklace, shift_mul

NONTRIVIAL = ["ut2_gf2_inner_e12", "ut2_gf2_inner_e11", "ut2_gf3_inner_e12", "m2_gf2_inner_e12", "dual2_shift"]


def ore(name):
    return instance(name).ore_ring()


def polys(S, dmax=2):
    return st.lists(st.integers(0, S.base.order - 1), min_size=0, max_size=dmax + 1).map(S)


def test_commutation_rule():
    for name in NONTRIVIAL:
        S = ore(name)
        for a in range(S.base.order):
            lhs = S.x * S.const(a)
            rhs = S.monomial(a, 1) + S.const(S.delta(a))
            assert lhs == rhs


def test_product_printing_example():
    S = ore("ut2_gf2_inner_e12")
    assert str(S.x * S.const(S.base.element("e11"))) == "e11*x + e12"
    D = ore("dual2_shift")
    assert str(D.x * D.const(D.base.element("t"))) == "t*x + 1"


def test_square_in_characteristic_two_skips_middle_term():
    # x^2 a = a x^2 + 2 d(a) x + d^2(a), and 2 = 0
    S = ore("ut2_gf2_inner_e12")
    for a in range(S.base.order):
        assert (S.x ** 2) * S.const(a) == S.monomial(a, 2) + S.const(S.delta.iterate(2)[a])


def test_binomial_expansion_over_zmod4():
    S = OreRing(zero_derivation(zmod(4)))
    one_plus_x = S.one + S.x
    assert str(one_plus_x ** 2) == "x^2 + 2x + 1"


def test_matches_shift_oracle_exhaustively_on_dual_numbers():
    S = ore("dual2_shift")
    R = S.base
    P = list(S.all_polys(2))
    for f, g in itertools.product(P, P):
        assert (f * g).coeffs == shift_mul(R, S.delta, f.coeffs, g.coeffs)


@pytest.mark.parametrize("name", NONTRIVIAL)
@given(data=st.data())
def test_matches_shift_oracle(name, data):
    S = ore(name)
    f, g = data.draw(polys(S, 3)), data.draw(polys(S, 3))
    assert (f * g).coeffs == shift_mul(S.base, S.delta, f.coeffs, g.coeffs)


@pytest.mark.parametrize("name", NONTRIVIAL)
@given(data=st.data())
def test_ring_laws(name, data):
    S = ore(name)
    f, g, h = (data.draw(polys(S, 2)) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    assert S.one * f == f == f * S.one
    assert f - f == S.zero


def test_degree_and_lead():
    S = ore("ut2_gf2_inner_e12")
    assert S.zero.degree == -1 and S.zero.lead is None
    f = S([0, 0, S.base.element("e12")])
    assert f.degree == 2 and S.base.short_label(f.lead) == "e12"
    # leading coefficients multiply in the top degree
    g = S([S.base.element("e11"), S.base.one])
    assert (f * g).degree == 3 and (f * g).lead == S.base.mul(f.lead, g.lead)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_irreducible_counts_match_necklace_formula(q):
    F = gf(q)
    dmax = 4 if q <= 3 else 3
    found = irreducible_monics(F, dmax)
    counts = [sum(1 for p in found if p.degree == n) for n in range(1, dmax + 1)]
    assert counts == [necklace(q, n) for n in range(1, dmax + 1)]


def test_gf2_irreducibles_in_order():
    F = gf(2)
    assert [str(p) for p in irreducible_monics(F, 3)] == [
        "x", "x + 1", "x^2 + x + 1", "x^3 + x + 1", "x^3 + x^2 + 1",
    ]


def test_division_example():
    F = gf(2)
    f = FieldPoly.of(F, ["1", "1", "0", "1"])
    p = FieldPoly.of(F, ["1", "1", "1"])
    q, r = monic_division(f, p)
    assert str(q) == "x + 1" and str(r) == "x"


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_division_identity(q, data):
    F = gf(q)
    coeffs = data.draw(st.lists(st.integers(0, q - 1), max_size=6))
    low = data.draw(st.lists(st.integers(0, q - 1), max_size=3))
    f = FieldPoly(F, tuple(coeffs)).monic() if coeffs and coeffs[-1] else FieldPoly(F, ())
    p = FieldPoly(F, tuple(low) + (F.one,))
    quo, rem = monic_division(f, p)
    assert quo * p + rem == f and rem.degree < p.degree


def test_gcd_of_shared_factor():
    F = gf(3)
    a = FieldPoly.of(F, ["1", "1"])  # x + 1
    b = FieldPoly.of(F, ["2", "1"])  # x + 2
    c = FieldPoly.of(F, ["0", "1"])  # x
    assert poly_gcd([a * b, a * c]) == a
    assert poly_gcd([b, c]).degree == 0


def test_quotient_field_orders_and_reducible_witness():
    F = gf(2)
    K = quotient_field(F, FieldPoly.of(F, ["1", "1", "1"]))
    assert K.order == 4 and K.is_field()
    with pytest.raises(DiffPolyError, match="reducible"):
        quotient_field(F, FieldPoly.of(F, ["1", "0", "1"]))


def test_projection_is_a_morphism_and_kernel_law():
    S = ore("ut2_gf2_inner_e12")
    rng = np.random.default_rng(3)
    for I in maximal_field_ideals(S.base, S.delta):
        phi = PhiMap(S, I)
        for _ in range(200):
            f, g = S.random_poly(rng, 3), S.random_poly(rng, 3)
            assert phi(f * g) == phi(f) * phi(g)
            assert phi(f + g) == phi(f) + phi(g)
            assert phi(f).is_zero() == all(c in I for c in f.coeffs)


def test_projection_lift_is_a_preimage_with_unit_lead():
    S = ore("ut2_gf2_inner_e12")
    I = maximal_field_ideals(S.base, S.delta)[0]
    phi = PhiMap(S, I)
    for p in irreducible_monics(phi.field, 3):
        lift = phi.lift(p)
        assert phi(lift) == p and lift.lead == S.base.one


def test_projection_refuses_ineligible_ideal():
    S = ore("dual2_shift")
    (I,) = enumerate_maximal_ideals(S.base)
    with pytest.raises(IdealError, match="d\\(R\\)"):
        PhiMap(S, I)


@given(st.data())
def test_polyspan_matches_brute_force_closure(data):
    R = zmod(4)
    vectors = data.draw(st.lists(st.tuples(*[st.integers(0, 3)] * 3), max_size=4))
    span = PolySpan(R, 2)
    for v in vectors:
        span.insert(v)
    closure = {(0, 0, 0)}
    frontier = list(closure)
    while frontier:
        u = frontier.pop()
        for v in vectors:
            w = tuple((a + b) % 4 for a, b in zip(u, v))
            if w not in closure:
                closure.add(w)
                frontier.append(w)
    assert span.size == len(closure)
    for u in itertools.product(range(4), repeat=3):
        assert (u in span) == (u in closure)


def test_inner_derivation_ring_has_noncommuting_x():
    U = triangular(gf(2), 2)
    S = OreRing(inner_derivation(U, U.element("e12")))
    a = S.const(U.element("e22"))
    assert S.x * a != a * S.x
