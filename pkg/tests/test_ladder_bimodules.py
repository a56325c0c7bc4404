import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.ladder_bimodules import (Ladder, Rung, adjunction_shifts, associativity_iso,
                                       bigon_decompose, bimodule_basis, count_shuffles,
                                       divided_power_decomposition, eta, graded_multiplicity,
                                       k0_class, ladder_class, ladder_gg_check,
                                       projective_class, rung_image, sigma, simple_class,
                                       transpose_check, tree_fiber_dim, tree_sequence)
from artifact.qring import ONE, GradedShift, LaurentScalar, qfact, qint
from artifact.skewhowe import block_basis, highest_weight_vector, rung_operator
from artifact.stendhal_core import triple


# ---- oracle values

@pytest.mark.parametrize("c", range(1, 6))
def test_thin_bigon_shifts(c):
    shifts = bigon_decompose(c - 1, 1) if c > 1 else bigon_decompose(0, 1)
    assert [s.homological for s in shifts] == list(range(c - 1, -c, -2))
    assert all(s == GradedShift.tate(s.homological) for s in shifts)
    assert graded_multiplicity(shifts) == qint(c)
    assert bigon_decompose(1, c - 1) == shifts if c > 1 else True


def test_one_one_bigon_is_quantum_two():
    assert graded_multiplicity(bigon_decompose(1, 1)) == LaurentScalar({1: 1, -1: 1})


def test_thick_bigon_is_refused():
    with pytest.raises(ValueError):
        bigon_decompose(2, 2)
    with pytest.raises(ValueError):
        bigon_decompose(-1, 2)


@pytest.mark.parametrize("c", range(1, 6))
def test_divided_powers(c):
    assert graded_multiplicity(divided_power_decomposition(c)) == qfact(c)


def test_ladder_class_of_tate_twist():
    assert ladder_class(GradedShift.tate(3)) == LaurentScalar({3: 1})
    with pytest.raises(ValueError):
        ladder_class(GradedShift(1, 1))


def test_eta_and_sigma():
    assert eta(2, 3) == -6
    # +1 exactly when m lies in [min(a,b), max(a,b)) or m >= a + b
    for a in range(1, 4):
        for b in range(1, 4):
            for m in range(1, 6):
                inside = min(a, b) <= m < max(a, b) or m >= a + b
                assert sigma(m, a, b) == (1 if inside else -1)


def test_adjunction_shifts():
    s = adjunction_shifts((2, 1))
    assert s["pi"] == 0
    assert s["Y_left"] == GradedShift.tate(-1) and s["Ystar_left"] == GradedShift.tate(1)
    assert s["F_left"] == -s["F_right"]


def test_identity_ladder_is_identity():
    L = Ladder(2, 3, (2, 1))
    for t, v in L.matrix().items():
        assert v == {t: ONE}


def test_ladder_validation_and_json():
    L = Ladder(2, 2, (2, 0), (Rung("F", 1, 1),))
    assert L.top == (1, 1)
    assert Ladder.from_json(L.to_json()) == L
    with pytest.raises(ValueError):
        Ladder(2, 2, (0, 0), (Rung("F", 1, 1),))
    with pytest.raises(ValueError):
        Ladder(2, 2, (2,))


def test_bigon_ladder_is_quantum_two_times_identity():
    L = Ladder(2, 2, (2, 0), (Rung("F", 1, 1), Rung("E", 1, 1)))
    for t, v in L.matrix().items():
        assert v == {t: qint(2)}


# ---- K_0 classes

def test_simple_class_is_highest_weight_vector():
    for a, b, n in [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 1, 3)]:
        assert simple_class(a, b, n) == highest_weight_vector(a, b, n)


def test_projective_class_of_a_red():
    assert projective_class(triple("w2"), 3) == {((1, 2),): ONE}


def test_k0_class_equals_rung_for_a_single_red():
    for a, b, n in [(1, 1, 2), (1, 2, 3), (2, 1, 3)]:
        assert k0_class(a, b, triple(f"w{a + b}"), n) == rung_image(a, b, triple(f"w{a + b}"), n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ladder_gg(n):
    count, bad = ladder_gg_check(n, max_extra=2)
    assert count > 0 and bad == []


@pytest.mark.parametrize("a, b, n", [(1, 1, 2), (1, 2, 3), (2, 1, 3), (1, 1, 3)])
def test_merge_is_shifted_transpose_of_split(a, b, n):
    assert transpose_check(a, b, n)


def test_split_rung_on_top_vector():
    # F^(1) on v_{12} (x) v_empty, n = 2
    v = rung_operator("F", 1, 1, 2, 2)({((1, 2), ()): ONE})
    assert v == {((1,), (2,)): LaurentScalar({-1: -1}), ((2,), (1,)): ONE}


# ---- bimodule bases

def test_bimodule_basis_counts():
    assert len(bimodule_basis(2, 2, triple("w4"))) == 2
    bottom = triple("w2", 1)
    for top, want in [(triple("w1", 1, "w1", 1), 1), (triple("w1", 1, 1, "w1"), 2),
                      (triple("w1", "w1", 1, 1), 0)]:
        basis = bimodule_basis(1, 1, bottom, top, max_degree=6)
        distinct = {(x.perm, x.tableau, x.shuffle) for x in basis}
        assert len(distinct) == count_shuffles(1, 1, bottom, top) == want


def test_bimodule_basis_with_two_reds():
    bottom = triple(2, "w3")
    for top in [triple(2, "w1", 1, 2, "w2"), triple("w1", 2, 1, 2, "w2")]:
        basis = bimodule_basis(1, 2, bottom, top, max_degree=12)
        distinct = {(x.perm, x.tableau, x.shuffle) for x in basis}
        assert len(distinct) == count_shuffles(1, 2, bottom, top) == 1


# ---- associativity

def test_associativity_example():
    a = associativity_iso(2, 1, 2)
    assert a.image_top == tree_sequence(2, 1, 2, 1)
    assert a.outer_tableau.is_standard()
    assert tree_fiber_dim(2, 1, 2, 1, tree_sequence(2, 1, 2, 1)) == 1
    assert tree_fiber_dim(2, 1, 2, 2, tree_sequence(2, 1, 2, 2)) == 1


@given(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2))
def test_tree_idempotents_have_one_dimensional_fibers(c1, c2, c3):
    for which in (1, 2):
        assert tree_fiber_dim(c1, c2, c3, which, tree_sequence(c1, c2, c3, which)) == 1


@given(st.integers(1, 3), st.data())
def test_ladder_of_rungs_stays_in_range(n, data):
    ell = data.draw(st.integers(2, 3))
    bottom = tuple(data.draw(st.lists(st.integers(0, n), min_size=ell, max_size=ell)))
    tags = block_basis(n, bottom)
    if not tags:
        return
    L = Ladder(ell, n, bottom)
    assert len(L.matrix()) == len(tags)
