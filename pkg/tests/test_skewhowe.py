from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.qring import ONE, LaurentScalar
from artifact.skewhowe import (apply_word, block_basis, check_divided_powers,
                               check_EF_relation, check_serre, gl_n_E, gl_n_F,
                               highest_weight_vector, pvecs, rung_operator, vadd,
                               vector_from_json, vector_to_json, verify_commuting_actions,
                               vscale)

QI = LaurentScalar({-1: 1})


# ---- oracle values

def test_block_dimensions():
    assert len(block_basis(3, (2, 1))) == 9
    assert len(block_basis(2, (2, 2))) == 1
    assert sum(len(block_basis(3, pv)) for pv in pvecs(2, 3, 3)) == comb(6, 3)


def test_highest_weight_vector_two_strands():
    assert highest_weight_vector(1, 1, 2) == {((1,), (2,)): -QI, ((2,), (1,)): ONE}


def test_highest_weight_vector_is_killed_by_E():
    for a, b, n in [(1, 2, 3), (2, 1, 3), (2, 2, 4), (1, 1, 4)]:
        v = highest_weight_vector(a, b, n)
        assert v[(tuple(range(b + 1, a + b + 1)), tuple(range(1, b + 1)))] == ONE
        assert all(not gl_n_E(j, n)(v) for j in range(1, n))


def test_highest_weight_vector_bad_input():
    with pytest.raises(ValueError):
        highest_weight_vector(2, 2, 3)


def test_divided_split_of_top_vector():
    v = rung_operator("F", 1, 2, 2)({((1, 2), ()): ONE})
    assert v == {((), (1, 2)): ONE}
    assert rung_operator("E", 1, 2, 2)(v) == {((1, 2), ()): ONE}


def test_rung_index_checked():
    with pytest.raises(ValueError):
        rung_operator("F", 2, 1, 2)
    with pytest.raises(ValueError):
        gl_n_F(3, 3)


# ---- relations

@pytest.mark.parametrize("ell, n, p", [(2, 2, 2), (2, 3, 3), (3, 2, 3), (3, 3, 4), (4, 2, 4)])
def test_commuting_actions(ell, n, p):
    report = verify_commuting_actions(ell, n, p)
    assert report.ok and report.dimension == comb(ell * n, p)
    assert report.failures == []


@pytest.mark.parametrize("pvec", [(2, 1, 0), (1, 1, 1), (0, 2, 2), (3, 0, 1)])
def test_gl_l_relations(pvec):
    n = 3
    for i in (1, 2):
        assert check_EF_relation(i, 3, n, pvec)
        for kind in "EF":
            assert check_divided_powers(kind, i, 2, 3, n, pvec)
            assert check_divided_powers(kind, i, 3, 3, n, pvec)
    for kind in "EF":
        assert check_serre(kind, 1, 2, 3, n, pvec)
        assert check_serre(kind, 2, 1, 3, n, pvec)


def test_json_round_trip():
    v = highest_weight_vector(1, 2, 3)
    assert vector_from_json(vector_to_json(v)) == v


def test_apply_word_reads_right_to_left():
    v = {((1,), ()): ONE}
    assert apply_word([("E", 1, 1), ("F", 1, 1)], v) == {((1,), ()): ONE}
    assert apply_word([("F", 1, 1), ("E", 1, 1)], v) == {}


# ---- invariants

@st.composite
def block_vectors(draw):
    n = draw(st.integers(1, 3))
    ell = draw(st.integers(2, 3))
    pvec = tuple(draw(st.lists(st.integers(0, n), min_size=ell, max_size=ell)))
    tags = block_basis(n, pvec)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(tags), max_size=len(tags)))
    v = {t: LaurentScalar({k % 3 - 1: c}) for k, (t, c) in enumerate(zip(tags, coeffs)) if c}
    return ell, n, v


@given(block_vectors(), block_vectors())
def test_rungs_are_linear(a, b):
    ell, n, v = a
    _, _, w = b
    if b[0] != ell or b[1] != n:
        w = {}
    for kind in "EF":
        X = rung_operator(kind, 1, 1, ell)
        two = LaurentScalar({0: 2})
        assert X(vadd(v, w)) == vadd(X(v), X(w))
        assert X(vscale(v, two)) == vscale(X(v), two)


@given(block_vectors())
def test_rungs_commute_with_gl_n(a):
    ell, n, v = a
    for j in range(1, n):
        for Y in (gl_n_E(j, n), gl_n_F(j, n)):
            for kind in "EF":
                X = rung_operator(kind, ell - 1, 1, ell)
                assert X(Y(v)) == Y(X(v))
