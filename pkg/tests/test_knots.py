from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.acceptance import knot_oracle_cases
from artifact.knots import (Cap, Crossing, Cup, InvariantValue, TangleDiagram, TangleError,
                            UnsupportedFeature, evaluate, grading_offset, hopf_link,
                            plat_closure, reidemeister2_check, reidemeister3_check, trefoil,
                            twist_exponent, unknot, weighted_writhe, xi, xi_prime)
from artifact.qring import ONE, LaurentScalar, qbinom

Q, QI = LaurentScalar({1: 1}), LaurentScalar({-1: 1})


# ---- diagram helpers used for symmetry checks

def widths(L):
    return [len(lab) for lab in L.labels()]


def reflect(L):
    """Reflection in a vertical line (crossing signs kept)."""
    W, n, out = widths(L), L.n, []
    for k, s in enumerate(L.slices):
        w = W[k]
        if isinstance(s, Cup):
            out.append(Cup(w - s.pos, n - s.color))
        elif isinstance(s, Cap):
            out.append(Cap(w - 2 - s.pos, n - s.color))
        else:
            out.append(Crossing(w - 2 - s.pos, s.sign, tuple(reversed(s.colors))))
    return TangleDiagram(n, out, L.framing)


def rotate(L):
    """Rotation by a half turn in the plane."""
    W, labs, n, out = widths(L), L.labels(), L.n, []
    for k in reversed(range(len(L.slices))):
        s, w = L.slices[k], W[k + 1]
        if isinstance(s, Cup):
            out.append(Cap(w - 2 - s.pos, s.color))
        elif isinstance(s, Cap):
            out.append(Cup(W[k] - 2 - s.pos, s.color))
        else:
            x, y = labs[k + 1][s.pos], labs[k + 1][s.pos + 1]
            out.append(Crossing(w - 2 - s.pos, s.sign, (n - y, n - x)))
    return TangleDiagram(n, out, L.framing)


def mirror(L):
    return TangleDiagram(L.n, [Crossing(s.pos, -s.sign, s.colors) if isinstance(s, Crossing)
                               else s for s in L.slices], L.framing)


def symmetry_cases():
    cases = []
    for n in (2, 3, 4):
        for a in range(1, n):
            cases += [trefoil(n, 1, a), trefoil(n, -1, a)]
            for b in range(1, n):
                cases.append(hopf_link(n, 1, (a, b)))
                cases.append(hopf_link(n, -1, (a, b)))
    return cases


# ---- oracle values

@pytest.mark.parametrize("n", range(1, 6))
def test_unknot_is_quantum_binomial(n):
    for p in range(n + 1):
        v = evaluate(unknot(n, p))
        assert v == InvariantValue(qbinom(n, p), Fraction(0))


def test_empty_link_is_one():
    assert evaluate(TangleDiagram(3, [])) == InvariantValue(ONE)


@pytest.mark.parametrize("name, framing, got, want",
                         [pytest.param(*c, id=f"{c[0]}-{c[1]}") for c in knot_oracle_cases()])
def test_against_kauffman_bracket(name, framing, got, want):
    assert got == want


def test_grading_constants():
    assert xi(1, 1, 2) == Fraction(1, 2)
    assert xi(1, 2, 3) == Fraction(1, 3)
    assert xi_prime(1, 2, 3) == Fraction(2, 3)
    with pytest.raises(ValueError):
        xi(0, 1, 2)


@given(st.integers(2, 8), st.data())
def test_xi_pair_sums_to_min(n, data):
    a = data.draw(st.integers(1, n))
    b = data.draw(st.integers(1, n))
    assert xi(a, b, n) + xi_prime(a, b, n) == min(a, b)
    assert xi(a, b, n) == xi(b, a, n)


def test_weighted_writhe_single_crossing():
    L = TangleDiagram(2, [Crossing(0, 1, (1, 1))], bottom=(1, 1))
    assert weighted_writhe(L) == Fraction(1, 2)
    assert grading_offset(L) == Fraction(1, 2)


def test_crossing_switch_moves_offset_by_twice_xi():
    for n in (2, 3, 4):
        for a in range(1, n):
            L = trefoil(n, 1, a)
            M = mirror(L)
            assert grading_offset(L) - grading_offset(M) == 6 * xi(a, a, n)


# ---- invariance

@pytest.mark.parametrize("ell, n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_reidemeister_moves(ell, n):
    assert reidemeister2_check(ell, n) == []
    assert reidemeister3_check(ell, n) == []


def test_reidemeister_one_via_framing():
    """A curl changes the blackboard framing by one, compensated by theta."""
    for n in (2, 3, 4):
        for a in range(1, n):
            curl = plat_closure(n, [(1, 1)], (a, a))
            bw = curl.self_writhes()
            plain = evaluate(unknot(n, a))
            v = evaluate(TangleDiagram(n, curl.slices, (0,)))
            assert v == plain
            raw = evaluate(curl)
            shift = sum(bw) * twist_exponent(a, n)
            assert raw == InvariantValue(plain.poly, shift)


def test_framing_change_multiplies_by_theta():
    for n in (2, 3):
        L = trefoil(n)
        w = L.self_writhes()
        v0 = evaluate(TangleDiagram(n, L.slices, tuple(w)))
        v1 = evaluate(TangleDiagram(n, L.slices, tuple(x + 1 for x in w)))
        assert v1 == v0 * InvariantValue(ONE, twist_exponent(1, n))


def test_twist_on_the_fundamental_at_two():
    assert twist_exponent(1, 2) == Fraction(-3, 2)


@pytest.mark.parametrize("L", symmetry_cases(), ids=lambda L: f"n{L.n}")
def test_planar_symmetries(L):
    v = evaluate(L)
    assert evaluate(reflect(L)) == v
    assert evaluate(rotate(L)) == v
    assert evaluate(mirror(L)) == InvariantValue(v.poly.bar(), -v.offset)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_homfly_skein(n):
    """q^{-n} H(L+) - q^{n} H(L-) = (q^{-1} - q) H(L0) with writhe-normalized H."""
    def H(L, lk):
        comps = L.components()[2]
        v = evaluate(TangleDiagram(n, L.slices, (0,) * len(comps)))
        return InvariantValue(v.poly, v.offset - 2 * lk * twist_exponent(1, n))
    plus = H(plat_closure(n, [(1, 1)] * 3), 0)
    minus = H(plat_closure(n, [(1, 1)] * 2 + [(1, -1)]), 0)
    zero = H(plat_closure(n, [(1, 1)] * 2), 1)
    assert plus.offset == minus.offset == zero.offset == 0
    assert plus.poly.shift(-n) - minus.poly.shift(n) == (QI - Q) * zero.poly


# ---- errors and serialization

def test_tangle_error_locates_slice():
    with pytest.raises(TangleError) as e:
        TangleDiagram(2, [Cup(0, 1), Cap(0, 2)])
    assert e.value.slice_index == 1
    with pytest.raises(TangleError) as e:
        TangleDiagram(2, [Cup(0, 1), Crossing(0, 1, (2, 2))])
    assert e.value.slice_index == 1
    with pytest.raises(TangleError):
        TangleDiagram(2, [Cup(0, 3)])


def test_unsupported_inputs():
    with pytest.raises(UnsupportedFeature):
        evaluate(TangleDiagram(2, [Cup(0, 1)]))
    L = TangleDiagram(2, [Cup(0, 1), Cup(0, 2), Crossing(1, 1, (2, 1)),
                          Crossing(1, -1, (1, 2)), Cap(0, 2), Cap(0, 1)])
    with pytest.raises(UnsupportedFeature):
        evaluate(L)
    with pytest.raises(ValueError):
        Crossing(0, 2, (1, 1))


def test_json_round_trip():
    L = hopf_link(3, -1, (1, 2), framing=(1, 0))
    M = TangleDiagram.from_json(L.to_json())
    assert M == L and evaluate(M) == evaluate(L)
    with pytest.raises(ValueError):
        TangleDiagram.from_json({"n": 2, "slices": [{"bend": [0, 1]}]})


def test_framing_length_checked():
    L = hopf_link(2, framing=(0,))
    with pytest.raises(ValueError):
        evaluate(L)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=6), st.integers(-4, 4))
def test_invariant_value_normalizes_offset(off, k):
    v = InvariantValue(LaurentScalar({k: 1}), off)
    assert 0 <= v.offset < 1
    assert v == InvariantValue(LaurentScalar({k + 1: 1}), off - 1)
