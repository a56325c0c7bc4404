"""The algebra A_c = End(+_S P_S) over T~^{(w_1, w_{c-1})} and the Koszul
resolution of L_{1,c-1}.

All elements of A_c are concrete elements of T~ (see stendhal_core).  A
morphism P_S -> P_S' is drawn as a diagram with bottom P_S and top P_S', and
products compose like functions: ``multiply_A(a, b)`` is "b, then a".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .stendhal_core import (BLACK, RED, Diagram, Element, PolyRep, StendhalTriple,
                            action_vector, basis_keys, equal, idempotent,
                            matchings, nf_diagram)

LEFT_RED, RIGHT_RED = "LEFT_RED", "RIGHT_RED"


@dataclass(frozen=True)
class SubsetIdempotent:
    c: int
    S: frozenset

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))
        if not self.S < frozenset(range(1, self.c + 1)):
            raise ValueError(f"{sorted(self.S)} is not a proper subset of [1,{self.c}]")

    @property
    def triple(self):
        return P(self.c, self.S)

    def __repr__(self):
        return "P{" + ",".join(map(str, sorted(self.S))) + "}"


def base_seq(c):
    """(w_1, 1, 2, ..., c-1, w_{c-1}) at positions 0..c."""
    return ((RED, 1),) + tuple((BLACK, j) for j in range(1, c)) + ((RED, c - 1),)


def _check(c, S):
    S = frozenset(S)
    if not S < frozenset(range(1, c + 1)):
        raise ValueError(f"{sorted(S)} is not a proper subset of [1,{c}]")
    return S


def w_S(c, S):
    """The permutation of positions 0..c reversing [m, k] for each maximal run [m+1, k] in S."""
    w = list(range(c + 1))
    k = 1
    while k <= c:
        if k in S:
            m = k - 1
            while k + 1 <= c and k + 1 in S:
                k += 1
            w[m:k + 1] = reversed(w[m:k + 1])
        k += 1
    return tuple(w)


@lru_cache(maxsize=None)
def P(c, S):
    S = _check(c, S)
    base = base_seq(c)
    return StendhalTriple.from_seq([base[j] for j in w_S(c, S)])


def all_subsets(c):
    full = range(1, c + 1)
    out = []
    for r in range(c):
        out.extend(frozenset(x) for x in itertools.combinations(full, r))
    return out


@lru_cache(maxsize=None)
def minimal_diagram(bottom, top):
    """The unique dotless minimal-crossing diagram between two P's."""
    ms = matchings(bottom, top)
    if len(ms) != 1:
        raise ValueError("expected a unique matching")
    return nf_diagram(bottom, ms[0], (0,) * len(bottom.blacks))


def D(c, S, k):
    S = _check(c, S)
    T = _check(c, S ^ {k})
    return minimal_diagram(P(c, S), P(c, T))


def generator_x(c, S, k):
    S = frozenset(S)
    if not 1 <= k <= c:
        raise ValueError("k must lie in [1, c]")
    T = S ^ {k}
    if T == frozenset(range(1, c + 1)):
        raise ValueError("S with k added is all of [1,c]: no such projective")
    sign = -1 if (k == c and k in S) else 1
    return Element.of(D(c, S, k), sign)


def generator_x_prime(c, S, k):
    S = frozenset(S)
    sign = (-1) ** len([j for j in S if j < k])
    return generator_x(c, S, k).scale(sign)


def e(c, S):
    return Element.of(idempotent(P(c, S)))


def multiply_A(a, b):
    """a after b."""
    return a * b


def dot_on_label(c, S, label):
    """The idempotent of P_S with one dot on the black strand labelled `label`."""
    t = P(c, S)
    pos = [p for p, x in enumerate(t.seq) if x == (BLACK, label)]
    if not pos:
        return Element.zero(t, t)
    return Element.of(Diagram(t, (("dot", pos[0]),)))


def hom_dimension(c, S, T, d):
    """dim of the degree-d part of Hom(P_S, P_T), by brute force in T~."""
    return len(basis_keys(P(c, S), P(c, T), d))


def predicted_hom_dimension(c, S, T, d):
    """Free over c-1 polynomial variables on a generator of degree #(S^T)."""
    r = d - len(frozenset(S) ^ frozenset(T))
    if r < 0 or r % 2:
        return 0
    from math import comb
    return comb(r // 2 + c - 2, c - 2) if c >= 2 else (1 if r == 0 else 0)


def paths_span_rank(c, S, T, length):
    """Rank of the span of all length-`length` products of x's from S to T."""
    vecs = []
    for ks in itertools.product(range(1, c + 1), repeat=length):
        cur = frozenset(S)
        el = e(c, S)
        ok = True
        for k in ks:
            nxt = cur ^ {k}
            if nxt == frozenset(range(1, c + 1)):
                ok = False
                break
            el = generator_x(c, cur, k) * el
            cur = nxt
        if ok and cur == frozenset(T):
            vecs.append(action_vector(el))
    from . import linalg
    keys = {}
    rows = []
    for v in vecs:
        rows.append({keys.setdefault(k, len(keys)): x for k, x in v.items()})
    return linalg.sparse_rank(rows, len(keys))


# ---------------------------------------------------------------- wall paths

@dataclass(frozen=True)
class WallPathElement:
    c: int
    source: frozenset
    target: frozenset
    degree: int
    paths: tuple  # ((k_1, ..., k_m), coefficient) pairs

    def __repr__(self):
        return f"b_{self.degree}({sorted(self.source)}->{sorted(self.target)}, {len(self.paths)} paths)"


def wall_paths(c, S, T, m):
    """Sequences k_1..k_m with S_p = S_{p-1} ^ {k_p} proper, from S to T."""
    full = frozenset(range(1, c + 1))
    out = []

    def go(cur, ks):
        if len(ks) == m:
            if cur == T:
                out.append(tuple(ks))
            return
        for k in range(1, c + 1):
            nxt = cur ^ {k}
            if nxt != full:
                go(nxt, ks + [k])

    go(frozenset(S), [])
    return out


def wall_path_basis(c, S, T):
    S, T = frozenset(S), frozenset(T)
    out = []
    base = len(S ^ T)
    for p in range(c - len(S | T)):
        m = base + 2 * p
        paths = tuple((ks, 1) for ks in wall_paths(c, S, T, m))
        out.append(WallPathElement(c, S, T, m, paths))
    return out


# ---------------------------------------------------------------- resolution

@dataclass
class GradedComplexOverA:
    c: int
    terms: dict      # k -> list of subsets S (the summand P_S(-k) of Q_{-k})
    differential: dict  # (k, S, T) -> Element, component P_S in Q_{-k} -> P_T in Q_{-k+1}

    def shape(self):
        return {-k: [tuple(sorted(S)) for S in v] for k, v in self.terms.items()}

    def component(self, k, S, T):
        return self.differential.get((k, frozenset(S), frozenset(T)))

    def square_is_zero(self):
        for k, srcs in self.terms.items():
            if k - 2 not in self.terms:
                continue
            for S in srcs:
                for U in self.terms[k - 2]:
                    tot = None
                    for T in self.terms[k - 1]:
                        a = self.component(k, S, T)
                        b = self.component(k - 1, T, U)
                        if a is None or b is None:
                            continue
                        prod = b * a
                        tot = prod if tot is None else tot + prod
                    if tot is not None and not equal(tot, Element.zero(tot.bottom, tot.top)):
                        return False
        return True

    def euler_terms(self):
        """[(sign, internal shift, S)] for the alternating sum."""
        out = []
        for k, srcs in sorted(self.terms.items()):
            for S in srcs:
                out.append(((-1) ** k, -k, S))
        return out


def resolution_terms(c):
    terms = {}
    for k in range(0, 2 * c - 1):
        terms[k] = [S for S in all_subsets(c)
                    if len(S) % 2 == k % 2 and len(S) <= k <= 2 * c - 2 - len(S)]
    return terms


def koszul_resolution(c):
    if c < 1:
        raise ValueError("c must be positive")
    terms = resolution_terms(c)
    diff = {}
    for k, srcs in terms.items():
        if k == 0:
            continue
        tgt = set(terms[k - 1])
        for S in srcs:
            for j in range(1, c + 1):
                T = S ^ {j}
                if T in tgt:
                    diff[(k, S, T)] = generator_x_prime(c, S, j)
    return GradedComplexOverA(c, terms, diff)


# ---------------------------------------------------------------- deformation

def _deform_index(direction):
    if direction == LEFT_RED:
        return 0
    if direction == RIGHT_RED:
        return 1
    raise ValueError(f"unknown direction {direction}")


def deformed_square(c, direction):
    """(d~)^2 / h as a chain map Q_{-j} -> Q_{-j+2}.

    Returns {(j, S, T): coefficient of the minimal diagram} where every
    component is checked to be that scalar times the undeformed minimal
    diagram P_S -> P_T."""
    if c < 2:
        raise ValueError("c must be at least 2")
    rep = PolyRep(deform=_deform_index(direction))
    Q = koszul_resolution(c)
    out = {}
    for j, srcs in Q.terms.items():
        if j - 2 not in Q.terms:
            continue
        for S in srcs:
            for U in Q.terms[j - 2]:
                tot = None
                for T in Q.terms[j - 1]:
                    a = Q.component(j, S, T)
                    b = Q.component(j - 1, T, U)
                    if a is None or b is None:
                        continue
                    prod = b * a
                    tot = prod if tot is None else tot + prod
                if tot is None:
                    continue
                coeff = _divide_by_h(tot, rep)
                if coeff:
                    out[(j, S, U)] = coeff
    return out


def _divide_by_h(x, rep):
    """x acts as h * y in the deformed representation; return y as a scalar
    multiple of the minimal diagram (raising if it is not of that form)."""
    vec = action_vector(x, rep)
    hvec = {}
    for (ti, e_), v in vec.items():
        if e_[-1] == 0:
            raise ValueError("deformed square has a nonzero undeformed part")
        hvec[(ti, e_[:-1])] = v
    if not hvec:
        return 0
    m = minimal_diagram(x.bottom, x.top)
    ref = action_vector(Element.of(m))
    ratio = None
    for k, v in ref.items():
        r = hvec.get(k, 0)
        from fractions import Fraction
        q = Fraction(r, v)
        if ratio is None:
            ratio = q
        elif q != ratio:
            raise ValueError("square/h is not a multiple of the minimal diagram")
    if set(hvec) - set(ref):
        raise ValueError("square/h is not a multiple of the minimal diagram")
    return int(ratio) if ratio.denominator == 1 else ratio


def deformed_square_is_chain_map(c, direction):
    """The map y = d~^2/h commutes with the undeformed differential."""
    Y = deformed_square(c, direction)
    Q = koszul_resolution(c)
    for j, srcs in Q.terms.items():
        # compare d o y and y o d from Q_{-j} to Q_{-j+3}
        if j - 3 not in Q.terms:
            continue
        for S in srcs:
            for V in Q.terms[j - 3]:
                lhs = None
                rhs = None
                for U in Q.terms[j - 2]:
                    y = Y.get((j, S, U))
                    dd = Q.component(j - 2, U, V)
                    if y and dd is not None:
                        t = dd * Element.of(minimal_diagram(P(c, S), P(c, U)), y)
                        lhs = t if lhs is None else lhs + t
                for T in Q.terms[j - 1]:
                    dd = Q.component(j, S, T)
                    y = Y.get((j - 1, T, V))
                    if y and dd is not None:
                        t = Element.of(minimal_diagram(P(c, T), P(c, V)), y) * dd
                        rhs = t if rhs is None else rhs + t
                if lhs is None and rhs is None:
                    continue
                z = (lhs if lhs is not None else rhs.scale(0)) - (rhs if rhs is not None else lhs.scale(0))
                if not equal(z, Element.zero(z.bottom, z.top)):
                    return False
    return True


def expected_square_pattern(c, direction):
    """Identity on P_S whenever P_S sits in both Q_{-j} and Q_{-j+2}
    (negated for the right red), zero elsewhere."""
    sign = 1 if direction == LEFT_RED else -1
    Q = resolution_terms(c)
    out = {}
    for j in Q:
        if j - 2 in Q:
            for S in Q[j]:
                if S in Q[j - 2]:
                    out[(j, S, S)] = sign
    return out


def iterate_square(c, direction, times=None):
    """The (c-1)-fold composite Q_{-(2c-2)} -> Q_0 of the deformed square,
    tracked on P_empty summands: returns the scalar on P_empty."""
    if times is None:
        times = c - 1
    Y = deformed_square(c, direction)
    empty = frozenset()
    # state: {S: coefficient} living in Q_{-j}
    j = 2 * c - 2
    state = {empty: 1}
    for _ in range(times):
        new = {}
        for S, v in state.items():
            for (jj, S1, U), y in Y.items():
                if jj == j and S1 == S:
                    # composite of minimal diagrams is minimal only for S == U
                    new[U] = new.get(U, 0) + v * y
        state = {S: v for S, v in new.items() if v}
        j -= 2
    return j, state


def bubble_pairing(c, q_exp, side="a"):
    """epsilon o (y^q x 1) o iota on the tensor square of the resolution.

    iota sends 1 to sum_m X_{2m} (x) X_{2c-2-2m} over the P_empty generators;
    epsilon is normalized by epsilon(X_0 (x) X_0) = 1 and vanishes on the
    other generator pairs for degree reasons.  side "a" uses the left-red
    deformation acting on the first factor (a = 1); side "b" the right-red
    deformation acting on the second factor (b = 1)."""
    if not 0 <= q_exp <= c - 1:
        raise ValueError("exponent out of range")
    direction = LEFT_RED if side == "a" else RIGHT_RED
    Y = deformed_square(c, direction)
    empty = frozenset()

    def y_on_generator(j):
        # scalar of y: X_j -> X_{j-2} on P_empty summands
        return Y.get((j, empty, empty), 0)

    total = 0
    for m in range(c):
        left, right = 2 * m, 2 * c - 2 - 2 * m
        coeff = 1
        moving = left if side == "a" else right
        for _ in range(q_exp):
            if moving < 2:
                coeff = 0
                break
            coeff *= y_on_generator(moving)
            moving -= 2
        if side == "a":
            left = moving
        else:
            right = moving
        if coeff and left == 0 and right == 0:
            total += coeff
    return total
