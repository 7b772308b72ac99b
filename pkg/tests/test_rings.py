import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diffpoly import BoundExceeded, DiffPolyError, RingAxiomError
from diffpoly.rings import (
    LabelError,
    gf,
    make_ring,
    matrix,
    polymod,
    product,
    quotient,
    table_ring,
    triangular,
    zmod,
)
from oracles import gf4_bits

SMALL_RECIPES = [
    ("zmod", 6),
    ("gf", 4),
    ("gf", 9),
    ("triangular", 2, ("gf", 2)),
    ("triangular", 2, ("gf", 3)),
    ("matrix", 2, ("gf", 2)),
    ("product", ("gf", 2), ("zmod", 4)),
    ("polymod", ("gf", 2), ("0", "0", "1")),
    ("quotient", ("zmod", 8), ("4",)),
]


def parse_matrix(label):
    rows = label.strip("[]").split(";")
    return np.array([[int(v) for v in r.split(",")] for r in rows])


@pytest.mark.parametrize("n", [2, 4, 6, 9, 12])
def test_zmod_tables_are_modular_arithmetic(n):
    R = zmod(n)
    for a, b in itertools.product(range(n), repeat=2):
        x, y = R.element(str(a)), R.element(str(b))
        assert R.label(R.add(x, y)) == str((a + b) % n)
        assert R.label(R.mul(x, y)) == str((a * b) % n)


def test_gf4_matches_carryless_model():
    F = gf(4)
    add, mul = gf4_bits()
    code = {"0": 0, "1": 1, "g": 2, "g+1": 3}
    for a, b in itertools.product(range(4), repeat=2):
        ca, cb = code[F.label(a)], code[F.label(b)]
        assert code[F.label(F.add(a, b))] == add[ca, cb]
        assert code[F.label(F.mul(a, b))] == mul[ca, cb]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_gf_is_a_field_with_cyclic_unit_group(q):
    F = gf(q)
    assert F.order == q and F.is_field()
    orders = []
    for a in range(q):
        if a == F.zero:
            continue
        k, p = 1, a
        while p != F.one:
            p, k = F.mul(p, a), k + 1
        orders.append(k)
    assert max(orders) == q - 1


def test_gf_rejects_non_prime_power():
    with pytest.raises(DiffPolyError, match="prime power"):
        gf(6)


def test_matrix_ring_multiplies_like_matrices_mod_2():
    M = matrix(gf(2), 2)
    assert M.order == 16
    for a, b in itertools.product(range(16), repeat=2):
        want = parse_matrix(M.label(a)) @ parse_matrix(M.label(b)) % 2
        assert (parse_matrix(M.label(M.mul(a, b))) == want).all()


def test_triangular_labels_and_aliases():
    U = triangular(gf(2), 2)
    assert U.order == 8
    e11, e12, e22 = (U.element(s) for s in ("e11", "e12", "e22"))
    assert U.label(e12) == "[0,1;0,0]"
    assert U.add(e11, e22) == U.one
    assert U.mul(e11, e12) == e12 and U.mul(e12, e11) == U.zero
    assert U.short_label(e12) == "e12"


def test_commutativity_witness_is_first_pair():
    U = triangular(gf(2), 2)
    check = U.is_commutative()
    assert not check
    a, b = check.witness
    assert (U.short_label(a), U.short_label(b)) == ("e11", "e12")
    assert zmod(4).is_commutative()


def test_product_is_componentwise():
    P = product(gf(2), gf(3))
    assert P.order == 6 and P.is_commutative()
    a, b = P.element("(1,2)"), P.element("(1,1)")
    assert P.label(P.mul(a, b)) == "(1,2)"
    assert P.label(P.add(a, b)) == "(0,0)"
    assert not P.is_field()


def test_dual_numbers():
    D = polymod(gf(2), ["0", "0", "1"])
    t = D.element("t")
    assert D.mul(t, t) == D.zero
    assert D.labels == ["0", "1", "t", "t+1"]


def test_quotient_of_zmod8_by_4_is_zmod4_shaped():
    Q = quotient(zmod(8), ["4"])
    assert Q.order == 4 and Q.characteristic == 4


def test_raw_index_and_unknown_labels():
    U = triangular(gf(2), 2)
    assert U.element("@3") == 3
    with pytest.raises(LabelError):
        U.element("e33")


def test_order_cap_is_enforced_with_flag_hint():
    with pytest.raises(BoundExceeded, match="--order-cap"):
        make_ring(("matrix", 3, ("gf", 4)))


def test_bad_tables_raise_axiom_error():
    with pytest.raises(RingAxiomError):
        table_ring([[0, 1], [1, 0]], [[0, 0], [0, 0]])
    # Z/3 with 2*2 changed to 2: identity survives, distributivity does not
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[a * b % 3 for b in range(3)] for a in range(3)]
    mul[2][2] = 2
    with pytest.raises(RingAxiomError):
        table_ring(add, mul)


@given(st.sampled_from(SMALL_RECIPES), st.data())
def test_labels_round_trip(recipe, data):
    R = make_ring(recipe)
    a = data.draw(st.integers(0, R.order - 1))
    assert R.element(R.label(a)) == a
    assert R.element(R.short_label(a)) == a


@given(st.sampled_from(SMALL_RECIPES), st.data())
def test_ring_axioms_on_samples(recipe, data):
    R = make_ring(recipe)
    a, b, c = (data.draw(st.integers(0, R.order - 1)) for _ in range(3))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.add(a, b), c) == R.add(R.mul(a, c), R.mul(b, c))
    assert R.add(a, R.negate(a)) == R.zero
    assert R.mul(R.one, a) == a == R.mul(a, R.one)


def test_spanning_coefficients_generate_additively():
    for recipe in SMALL_RECIPES:
        R = make_ring(recipe)
        gens = R.spanning_coefficients
        assert gens[0] == R.one
        span = {R.zero}
        frontier = [R.zero]
        while frontier:
            a = frontier.pop()
            for g in gens:
                s = R.add(a, g)
                if s not in span:
                    span.add(s)
                    frontier.append(s)
        assert len(span) == R.order
