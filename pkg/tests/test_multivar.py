import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diffpoly import BoundExceeded
from diffpoly.analyzer import SEVERAL_VARIABLES, quasi_duo
from diffpoly.corpus import CORPUS
from diffpoly.derivation import inner_derivation, zero_derivation
from diffpoly.multivar import (
    MContext,
    corner_closure_report,
    corner_split,
    from_orepoly,
    m_mul,
    multivar_quasi_duo,
    support,
    to_orepoly,
)
from diffpoly.orepoly import OreRing
from diffpoly.rings import gf, triangular, zmod


def ut2():
    return triangular(gf(2), 2)


def ctx_inner():
    U = ut2()
    return MContext(U, [zero_derivation(U), inner_derivation(U, U.element("e12"))])


def ctx_free():
    U = ut2()
    return MContext(U, [zero_derivation(U), zero_derivation(U)])


def mpolys(ctx, degree=2, terms=4):
    word = st.lists(st.integers(0, ctx.m - 1), max_size=degree).map(tuple)
    coef = st.integers(0, ctx.ring.order - 1)
    return st.dictionaries(word, coef, max_size=terms).map(ctx)


def test_free_case_concatenates():
    c = ctx_free()
    a = c.ring.element("e11")
    assert c.var(1) * c.monomial(a, (0,)) == c.monomial(a, (1, 0))


def test_single_rule_application():
    c = ctx_inner()
    U = c.ring
    p = c.var(1) * c.monomial(U.element("e11"), (0,))
    assert p.terms == {(1, 0): U.element("e11"), (0,): U.element("e12")}
    assert support(p) == {(1, 0), (0,)}
    assert str(p) == "e11*x2x1 + e12*x1"


def test_support_and_zero():
    c = ctx_free()
    assert support(c.zero) == set()
    f = c({(): 1, (0,): 2, (1, 0): 4})
    assert support(f) == {(), (0,), (1, 0)}


@pytest.mark.parametrize("make", [ctx_inner, ctx_free])
@given(data=st.data())
def test_associative_and_distributive(make, data):
    c = make()
    f, g, h = (data.draw(mpolys(c)) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h


def test_associativity_exhaustive_on_tiny_context():
    # order 4, two letters, monomials up to degree 2: the product is additive in each
    # argument, so monomial triples cover every triple of polynomials
    R = zmod(4)
    c = MContext(R, [zero_derivation(R), zero_derivation(R)])
    mons = [c.monomial(a, w) for w in c.words(2) for a in range(1, 4)]
    for f, g, h in itertools.product(mons, repeat=3):
        assert (f * g) * h == f * (g * h)


def test_degree_filtration():
    c = ctx_inner()
    rng = np.random.default_rng(11)
    for _ in range(200):
        f, g = c.random_poly(rng, 2), c.random_poly(rng, 2)
        p = f * g
        if not f.is_zero() and not g.is_zero():
            assert p.degree <= f.degree + g.degree


def test_one_variable_agrees_with_ore_polynomials():
    for inst in CORPUS:
        R, d = inst.build()
        if R.order > 4:
            continue
        S, c = OreRing(d), MContext(R, [d])
        P = list(S.all_polys(2))
        for f, g in itertools.product(P, P):
            assert to_orepoly(m_mul(from_orepoly(f, c), from_orepoly(g, c)), S) == f * g


def test_corner_split_example():
    c = ctx_free()
    U = c.ring
    a, b, e = U.element("e11"), U.element("e12"), U.element("e22")
    f = c({(): a, (0,): b, (1, 0): e})
    split = corner_split(f, [0])
    assert split.f_J == c({(): a, (0,): b})
    assert split.f_C == c({(1, 0): e})
    assert corner_split(c({(0, 0): a}), [0]).f_C.is_zero()


@given(data=st.data())
def test_corner_split_is_additive_and_disjoint(data):
    c = ctx_inner()
    f, g = data.draw(mpolys(c, 3, 6)), data.draw(mpolys(c, 3, 6))
    J = data.draw(st.sampled_from([[0], [1], [0, 1], []]))
    sf, sg, sfg = corner_split(f, J), corner_split(g, J), corner_split(f + g, J)
    assert sf.f_J + sf.f_C == f
    assert not support(sf.f_J) & support(sf.f_C)
    assert sfg.f_J == sf.f_J + sg.f_J and sfg.f_C == sf.f_C + sg.f_C


@pytest.mark.parametrize("J", [[0], [1], [0, 1]])
def test_free_corner_closure_passes(J):
    r = corner_closure_report(ctx_free(), J, 3)
    assert r.left and r.right


def test_free_corner_closure_at_degree_four():
    r = corner_closure_report(ctx_free(), [0], 4)
    assert r.left and r.right


def test_corner_closure_finds_derivation_correction():
    r = corner_closure_report(ctx_inner(), [0], 3)
    assert r.left
    assert not r.right
    assert r.right.witness == ("x2", "e11*x1", "e11*x2x1 + e12*x1", "e12*x1")


def test_literal_convention_puts_constants_in_both_parts():
    r = corner_closure_report(ctx_free(), [0], 2, literal=True)
    # constants count as members of C, and a constant times x1 lands in the corner
    assert not r.left and not r.right


def test_whole_alphabet_corner_is_vacuous():
    r = corner_closure_report(ctx_inner(), [0, 1], 3)
    assert r.left and r.right and r.products == 0


def test_corner_degree_cap():
    with pytest.raises(BoundExceeded):
        corner_closure_report(ctx_free(), [0], 5)


def test_several_letters_are_never_quasi_duo():
    v = multivar_quasi_duo(ctx_free())
    assert not v.quasi_duo and v.witness_kind == SEVERAL_VARIABLES
    F = gf(2)
    assert not multivar_quasi_duo(MContext(F, [zero_derivation(F)] * 2)).quasi_duo
    U = ut2()
    assert not multivar_quasi_duo(MContext(U, [inner_derivation(U, U.element("e12"))] * 3)).quasi_duo


def test_one_letter_delegates():
    F = gf(5)
    assert multivar_quasi_duo(MContext(F, [zero_derivation(F)])).quasi_duo
    for inst in CORPUS:
        R, d = inst.build()
        assert multivar_quasi_duo(MContext(R, [d])).quasi_duo == quasi_duo(R, d).quasi_duo
