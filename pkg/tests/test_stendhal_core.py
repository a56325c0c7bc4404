import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from artifact.qring import LaurentScalar
from artifact.relations import relations_hold_in_tilde
from artifact.stendhal_core import (CYCLOTOMIC, TILDE, AlgebraHandle, CutoffError, Diagram,
                                    Element, StendhalTriple, add_black_left, add_black_right,
                                    add_red_right, basis, block_dimension, cartan,
                                    central_element, compose, cyclotomic_reduce, equal,
                                    graded_dimension, gl3_worked_product, idempotent, reduce,
                                    triple, triples_of, weight_to_blacks)


# ---- oracle values: the worked blocks

@pytest.mark.parametrize("weight, graded", [
    ((2, 0), {0: 1}),
    ((1, 1), {0: 2, 1: 2, 2: 1}),
    ((0, 2), {-2: 1, -1: 2, 0: 3, 1: 2, 2: 1}),
])
def test_gl2_blocks(weight, graded):
    h = AlgebraHandle(2, (1, 1), CYCLOTOMIC)
    assert block_dimension(h, weight) == LaurentScalar(graded)


def test_gl3_block_is_19_dimensional():
    h = AlgebraHandle(3, (1, 2), CYCLOTOMIC)
    g = block_dimension(h, (1, 1, 1))
    assert g.total() == 19
    assert g == LaurentScalar({0: 6, 1: 8, 2: 5})


def test_gl3_worked_product():
    prod, expected = gl3_worked_product()
    assert equal(prod, expected)
    (d, c), = prod.terms.items()
    assert c == 1 and d.word == (("dot", 3),)


def test_top_idempotent_block_is_one_dimensional():
    h = AlgebraHandle(2, (1, 1), CYCLOTOMIC)
    e = triple("w1", "w1")
    assert graded_dimension(h, e, e) == LaurentScalar({0: 1})


# ---- small facts

def test_cartan_matrix():
    assert cartan(1, 1) == 2
    assert cartan(1, 2) == cartan(2, 1) == -1
    assert cartan(1, 3) == 0


def test_degrees_of_generators():
    assert Diagram(triple(1, 1), (("x", 0),)).degree == -2
    assert Diagram(triple(1, 2), (("x", 0),)).degree == 1
    assert Diagram(triple(1, 3), (("x", 0),)).degree == 0
    assert Diagram(triple(1), (("dot", 0),)).degree == 2
    assert Diagram(triple("w1", 1), (("x", 0),)).degree == 1
    assert Diagram(triple("w2", 1), (("x", 0),)).degree == 0


def test_violated_and_json():
    assert triple(1, "w1").violated()
    assert not triple("w1", 1).violated()
    t = triple("w1", 2, 1, "w2")
    assert StendhalTriple.from_json(t.to_json()) == t
    d = Diagram(t, (("x", 1), ("dot", 2)))
    assert Diagram.from_json(d.to_json()) == d


def test_weight_to_blacks():
    assert weight_to_blacks(2, (1, 1), (2, 0)) == {}
    assert weight_to_blacks(2, (1, 1), (1, 1)) == {1: 1}
    assert weight_to_blacks(3, (1, 2), (1, 1, 1)) == {1: 1, 2: 1}
    with pytest.raises(ValueError):
        weight_to_blacks(2, (1, 1), (3, -1))


def test_bad_handle():
    with pytest.raises(ValueError):
        AlgebraHandle(2, (3,))
    with pytest.raises(ValueError):
        graded_dimension(AlgebraHandle(2, (1,), TILDE), triple("w1"), triple("w1"))


def test_cutoff_is_reported():
    with pytest.raises(CutoffError) as exc:
        block_dimension(AlgebraHandle(3, (1, 2), CYCLOTOMIC, cutoff=0), (1, 1, 1))
    assert exc.value.degree == 0


# ---- strand additions

def test_add_red_right_of_empty():
    d = add_red_right(idempotent(triple()), 1)
    assert d.bottom == triple("w1") and d.word == ()


def test_add_black_right_preserves_degree():
    d = Diagram(triple("w1", 1, 2), (("x", 1), ("dot", 1)))
    assert add_black_right(d, 1).degree == d.degree


def test_add_black_left_dies_in_the_quotient():
    h = AlgebraHandle(2, (1,), CYCLOTOMIC)
    d = add_black_left(idempotent(triple("w1", 1)), 1)
    assert d.bottom.violated()
    assert cyclotomic_reduce(h, Element.of(d)).is_zero()


# ---- center

def test_center_trivial_cases():
    t = triple("w1", 1)
    assert equal(central_element([t], 0, 1)[t], Element.of(idempotent(t)))
    assert equal(central_element([t], 3, 1)[t], Element.of(Diagram(t, (("dot", 1),) * 3)))


def test_center_commutes_in_tilde():
    idems = triples_of((1, 1), {1: 1})
    h = central_element(idems, 1, 1)
    for b, t in itertools.product(idems, repeat=2):
        for d in basis(b, t, 4):
            x = Element.of(d)
            assert equal(h[t] * x, x * h[b])


# ---- relations and reduction

def test_relation_consistency_small_contexts():
    for m in (1, 2, 3):
        for bl in itertools.product((1, 2), repeat=m):
            for reds in ((1,), (2,), (1, 2)):
                for kap in itertools.combinations_with_replacement(range(m + 1), len(reds)):
                    assert relations_hold_in_tilde(StendhalTriple(bl, reds, kap))


def test_nilhecke_relations():
    t = triple(1, 1)
    X, y0, y1 = ("x", 0), ("dot", 0), ("dot", 1)
    e = Element.of(idempotent(t))
    lhs = Element.of(Diagram(t, (X, y0))) - Element.of(Diagram(t, (y1, X)))
    assert equal(lhs, e)
    assert equal(Element.of(Diagram(t, (X, X))), Element.zero(t, t))


def _word(bottom, draw):
    n = len(bottom.seq)
    ev = st.one_of(st.tuples(st.just("x"), st.integers(0, max(n - 2, 0))),
                   st.tuples(st.just("dot"), st.integers(0, n - 1)))
    return draw(st.lists(ev, max_size=4))


bottoms = st.sampled_from([triple("w1", 1, 2), triple(1, "w1", 1), triple("w2", 1, 1),
                           triple("w1", 2, "w1", 1)])


def _diagram(bottom, word):
    try:
        return Diagram(bottom, tuple(word))
    except ValueError:
        return None


@given(bottoms, st.data())
def test_degree_is_additive(bottom, data):
    a = _diagram(bottom, _word(bottom, data.draw))
    assume(a is not None)
    b = _diagram(a.top, _word(a.top, data.draw))
    assume(b is not None)
    c = compose(b, a)
    assert c.degree == a.degree + b.degree


@given(bottoms, st.data())
def test_flip_is_an_antiautomorphism(bottom, data):
    a = _diagram(bottom, _word(bottom, data.draw))
    assume(a is not None)
    b = _diagram(a.top, _word(a.top, data.draw))
    assume(b is not None)
    x, y = Element.of(a), Element.of(b)
    assert equal((y * x).flip(), x.flip() * y.flip())
    assert a.flip().degree == a.degree
    # reduction commutes with reflection
    assert equal(reduce(x).flip(), reduce(x.flip()))
