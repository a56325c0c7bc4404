import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.stendhal_core import Element, equal, idempotent
from artifact.tableaux_cellular import (CellularBasisElement, RectTableau, box_triple,
                                        cellular_diagram, content_word, enumerate_standard,
                                        from_content_word, hook_count, matrix_unit_check,
                                        row_tableau, row_word, sign_table, simple_module,
                                        tableau_diagram, w_S)

shapes = st.tuples(st.integers(1, 3), st.integers(1, 3))


# ---- oracle values

def test_counts():
    assert [len(enumerate_standard(a, b)) for a, b in [(1, 1), (2, 2), (2, 3), (3, 3)]] == [1, 2, 5, 42]
    assert len(enumerate_standard(1, 4)) == 1


def test_two_by_two_has_two_tableaux():
    S, T = enumerate_standard(2, 2)
    assert S == row_tableau(2, 2)
    assert S.to_json() == [[1, 2], [3, 4]] and T.to_json() == [[1, 3], [2, 4]]
    assert content_word(S) == (2, 3, 1, 2)
    assert content_word(T) == (2, 1, 3, 2)


def test_row_tableau_and_w():
    R = row_tableau(2, 3)
    assert R.to_json() == [[1, 2, 3], [4, 5, 6]]
    assert w_S(R) == tuple(range(1, 7))
    for S in enumerate_standard(2, 3):
        assert w_S(S) == row_word(S)


def test_bad_fillings():
    with pytest.raises(ValueError):
        RectTableau(2, 2, ((1, 2),))
    assert not RectTableau(2, 2, ((1, 3), (4, 2))).is_standard()
    with pytest.raises(ValueError):
        enumerate_standard(0, 2)


def test_two_by_two_matrix_units():
    tabs = enumerate_standard(2, 2)
    L = simple_module(2, 2)
    for S in tabs:
        for T in tabs:
            C = Element.of(cellular_diagram(S, T))
            for U in tabs:
                assert L.act(C, {U: 1}) == ({S: 1} if U == T else {})


def test_dot_kills_the_simple_module():
    L = simple_module(2, 2)
    for T in L.tableaux:
        e = L.idempotent_of(T)
        from artifact.stendhal_core import Diagram
        assert L.act(Element.of(Diagram(e, (("dot", 2),))), {T: 1}) == {}


def test_cellular_multiplication_rule():
    S, T = enumerate_standard(2, 2)
    assert CellularBasisElement(S, S) * CellularBasisElement(S, T) == CellularBasisElement(S, T)
    assert CellularBasisElement(T, S) * CellularBasisElement(S, T) == CellularBasisElement(T, T)
    assert CellularBasisElement(S, S) * CellularBasisElement(T, T) is None


# ---- properties over all rectangles up to 3 x 3

@given(shapes)
def test_hook_formula(shape):
    assert len(enumerate_standard(*shape)) == hook_count(*shape)


@given(shapes, st.data())
def test_content_word_determines_tableau(shape, data):
    tabs = enumerate_standard(*shape)
    S = data.draw(st.sampled_from(tabs))
    assert S.is_standard()
    assert from_content_word(*shape, content_word(S)) == S


@given(shapes, st.data())
def test_tableau_diagrams_have_degree_zero(shape, data):
    tabs = enumerate_standard(*shape)
    S = data.draw(st.sampled_from(tabs))
    T = data.draw(st.sampled_from(tabs))
    D = tableau_diagram(S)
    assert D.degree == 0
    assert D.bottom == box_triple(*shape, content_word(row_tableau(*shape)))
    assert D.top == box_triple(*shape, content_word(S))
    assert cellular_diagram(S, T).degree == 0


@given(shapes)
def test_sign_table_squares_to_the_row_idempotent(shape):
    a, b = shape
    R = row_tableau(a, b)
    eR = Element.of(idempotent(box_triple(a, b, content_word(R))))
    signs = sign_table(a, b)
    assert set(signs) == set(enumerate_standard(a, b))
    for T, s in signs.items():
        D = Element.of(tableau_diagram(T))
        assert equal(D.flip() * D, eR.scale(s))


@pytest.mark.parametrize("a, b", [(1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (1, 3)])
def test_matrix_units_and_relations(a, b):
    assert matrix_unit_check(a, b)
    assert simple_module(a, b).check_relations()
