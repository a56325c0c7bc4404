"""Ladders, the trivalent bimodules W_Y and W_Y*, and their classes in K_0.

A single trivalent vertex Y splits a red strand w_c into w_a, w_b (c = a + b);
over the vertex sits a box holding an element of L_{a,b}.  In the fixed-width
rung model used by ``skewhowe`` this is the rung F_i^{(b)} from an upright of
weight c to an empty neighbour.

Two K_0 conventions meet here.  For modules, [M(n)] = q^n [M] and
[M[1]] = -[M].  Ladder bimodules, however, carry Tate twists <k> = [k](-k)
that play the role of the 2-category's grading shift (k), and so
decategorify to the plain monomial q^k.  This is the choice under which a
bigon of thickness c is [c] times the identity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

from . import skewhowe as shw
from .qring import ONE, ZERO, GradedShift, LaurentScalar
from .stendhal_core import (BLACK, CYCLOTOMIC, RED, AlgebraHandle, StendhalTriple,
                            graded_dimension, matchings, perm_degree, triples_of,
                            weight_to_blacks, _compositions)
from .subset_algebra import koszul_resolution, w_S
from .tableaux_cellular import (RectTableau, SimpleModule, content_word,
                                enumerate_standard, row_tableau)


# ------------------------------------------------------------------ ladders

@dataclass(frozen=True)
class Rung:
    kind: str   # "F" moves labels from upright i to i+1, "E" back
    i: int
    c: int

    def to_json(self):
        return {"kind": self.kind, "i": self.i, "c": self.c}


@dataclass(frozen=True)
class Ladder:
    """A ladder with `ell` uprights; rungs are listed bottom to top."""

    ell: int
    n: int
    bottom: tuple
    rungs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bottom", tuple(self.bottom))
        object.__setattr__(self, "rungs", tuple(
            r if isinstance(r, Rung) else Rung(*r) for r in self.rungs))
        if len(self.bottom) != self.ell:
            raise ValueError(f"bottom has {len(self.bottom)} entries, expected {self.ell}")
        for k, w in enumerate(self.weights()):
            if any(not 0 <= x <= self.n for x in w):
                raise ValueError(f"weight {w} after {k} rungs leaves [0, {self.n}]")

    def weights(self):
        w = list(self.bottom)
        out = [tuple(w)]
        for r in self.rungs:
            if r.kind not in ("F", "E") or not 1 <= r.i < self.ell or r.c < 0:
                raise ValueError(f"bad rung {r}")
            s = r.c if r.kind == "F" else -r.c
            w[r.i - 1] -= s
            w[r.i] += s
            out.append(tuple(w))
        return out

    @property
    def top(self):
        return self.weights()[-1]

    def act(self, v):
        """The ladder on a wedge vector of weight `bottom`."""
        for r in self.rungs:
            v = shw.rung_operator(r.kind, r.i, r.c, self.ell)(v)
        return v

    def matrix(self):
        tags = shw.block_basis(self.n, self.bottom)
        return {t: self.act({t: ONE}) for t in tags}

    def to_json(self):
        return {"ell": self.ell, "n": self.n, "bottom": list(self.bottom),
                "rungs": [r.to_json() for r in self.rungs]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["ell"]), int(obj["n"]), tuple(obj["bottom"]),
                   tuple(Rung(r["kind"], int(r["i"]), int(r["c"])) for r in obj.get("rungs", [])))


def eta(a, b):
    """The grading shift attached to Y* (reflection of Y)."""
    return -a * b


def sigma(m, a, b):
    """Scalar for pushing a black strand labelled m through the box of L_{a,b}."""
    c = a + b
    if a <= m < b or b <= m < a or m >= c:
        return 1
    return -1


# ------------------------------------------------------------ quadruple basis

@dataclass(frozen=True)
class Quadruple:
    perm: tuple        # top position of each extra strand, in bottom order
    dots: tuple
    tableau: RectTableau
    shuffle: tuple     # top positions taken by the box strands
    degree: int
    top: StendhalTriple = field(compare=False)

    def to_json(self):
        return {"perm": list(self.perm), "dots": list(self.dots),
                "tableau": self.tableau.to_json(), "shuffle": list(self.shuffle),
                "degree": self.degree, "top": self.top.to_json()}


def _expand(bottom, red_index, a, b, word):
    """Replace the red_index-th red of bottom (w_{a+b}) by (w_a, word, w_b)."""
    seq, k = [], 0
    where = None
    for s in bottom.seq:
        if s[0] == RED:
            if k == red_index:
                if s[1] != a + b:
                    raise ValueError(f"red {red_index} is w_{s[1]}, not w_{a + b}")
                where = len(seq)
                seq.append((RED, a))
                seq.extend((BLACK, x) for x in word)
                seq.append((RED, b))
                k += 1
                continue
            k += 1
        seq.append(s)
    if where is None:
        raise ValueError(f"bottom has no red number {red_index}")
    return StendhalTriple.from_seq(seq), where


def _all_tops(expanded):
    """Every triple with the same reds (in order) and the same black multiset."""
    seq = expanded.seq
    blacks = sorted(l for k, l in seq if k == BLACK)
    reds = [l for k, l in seq if k == RED]
    m = len(blacks)
    out = set()
    for bl in set(itertools.permutations(blacks)):
        for kappa in itertools.combinations_with_replacement(range(m + 1), len(reds)):
            out.add(StendhalTriple(bl, tuple(reds), kappa))
    return sorted(out, key=lambda t: t.seq)


def bimodule_basis(a, b, bottom, top=None, max_degree=0, red_index=0):
    """Quadruple basis of e_top W_Y e_bottom in degrees <= max_degree.

    Y splits the `red_index`-th red strand of `bottom` (which must be w_{a+b}).
    Each basis vector is the box vector of a tableau S, box strands rising
    without crossings to the segment between the new reds, the extra strands
    traced along a permutation and shuffled in, dots at the bottom."""
    if a < 0 or b < 0:
        raise ValueError("a, b must be non-negative")
    tabs = enumerate_standard(a, b) if a and b else (None,)
    out = []
    for S in tabs:
        word = content_word(S) if S is not None else ()
        exp, where = _expand(bottom, red_index, a, b, word)
        box = list(range(where + 1, where + 1 + len(word)))
        extra = [p for p, s in enumerate(exp.seq) if s[0] == BLACK and p not in box]
        tops = [top] if top is not None else _all_tops(exp)
        for tp in tops:
            for w in matchings(exp, tp):
                # box strands stay in order between their two reds
                lo, hi = w[where], w[where + len(word) + 1]
                img = [w[p] for p in box]
                if img != sorted(img) or any(not lo < x < hi for x in img):
                    continue
                d0 = perm_degree(exp, w)
                if d0 > max_degree:
                    continue
                for r in range(0, (max_degree - d0) // 2 + 1):
                    for dots in _compositions(r, len(extra)):
                        out.append(Quadruple(tuple(w[p] for p in extra), dots,
                                             S, tuple(img), d0 + 2 * r, tp))
    return sorted(out, key=lambda x: (x.degree, x.top.seq, x.perm, x.dots, x.shuffle))


def count_shuffles(a, b, bottom, top, red_index=0):
    """Brute-force count of dot-free quadruples: tableaux S, placements of the
    box word into `top` between the new reds, and label-preserving
    assignments of the extra strands to the remaining slots."""
    tseq = top.seq
    tabs = enumerate_standard(a, b) if a and b else (None,)
    reds_t = [p for p, s in enumerate(tseq) if s[0] == RED]
    lo, hi = reds_t[red_index], reds_t[red_index + 1]
    inside = [p for p in range(lo + 1, hi)]
    extra_labels = sorted(l for k, l in bottom.seq if k == BLACK)
    total = 0
    for S in tabs:
        word = content_word(S) if S is not None else ()
        for pos in itertools.combinations(inside, len(word)):
            if tuple(tseq[p][1] for p in pos) != word:
                continue
            rest = sorted(l for p, (k, l) in enumerate(tseq) if k == BLACK and p not in pos)
            if rest != extra_labels:
                continue
            # permutations of the extra strands onto the remaining slots
            slots = [p for p, (k, l) in enumerate(tseq) if k == BLACK and p not in pos]
            src = [l for k, l in bottom.seq if k == BLACK]
            for perm in itertools.permutations(range(len(src))):
                if all(src[perm[j]] == tseq[slots[j]][1] for j in range(len(src))):
                    total += 1
    return total


# ------------------------------------------------------------------- K_0

def projective_class(t, n):
    """[P_t] for the cyclotomic algebra, read left to right: a red w_p appends
    the top vector of wedge^p, a black strand i acts by F_i (right induction)."""
    v = {(): ONE}
    for kind, lab in t.seq:
        if kind == RED:
            top = shw.top_vector(lab)
            v = {tag + (top,): c for tag, c in v.items()}
        else:
            if not 1 <= lab < n:
                raise ValueError(f"black label {lab} outside [1, {n - 1}]")
            v = shw.gl_n_F(lab, n)(v)
    return v


_Q = sympy.Symbol("q")


def _to_sym(x):
    return sum((v * _Q ** e for e, v in x.items()), sympy.Integer(0))


def _from_sym(expr):
    expr = sympy.expand(sympy.cancel(expr))
    out = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, rest = term.as_coeff_Mul()
        if rest == 1:
            e = 0
        else:
            base, e = rest.as_base_exp()
            if base != _Q or not e.is_integer:
                raise ValueError(f"{expr} is not a Laurent polynomial")
            e = int(e)
        if not coeff.is_integer:
            raise ValueError(f"{expr} has non-integral coefficients")
        out[e] = out.get(e, 0) + int(coeff)
    return LaurentScalar(out)


def _omega(n, c):
    return tuple(1 if j < c else 0 for j in range(n))


@lru_cache(maxsize=None)
def simple_class(a, b, n):
    """[L_{a,b}] in wedge^a (x) wedge^b, computed from the algebra.

    Solves <[P_e], [L]> = grdim e L for every idempotent e of the cyclotomic
    block (lam = (w_a, w_b), weight w_c); the Euler form on projectives is
    grdim e T f with q inverted.  [L] is then sum_f x_f [P_f]."""
    c = a + b
    if a < 0 or b < 0 or c > n:
        raise ValueError(f"need 0 <= a, b and a + b <= n (a={a}, b={b}, n={n})")
    lam = (a, b)
    mult = weight_to_blacks(n, lam, _omega(n, c))
    idems = triples_of(lam, mult)
    if a and b:
        L = SimpleModule(a, b)
        counts = {e: sum(1 for T in L.tableaux if L.idempotent_of(T) == e) for e in idems}
    else:
        counts = {e: 1 for e in idems}
    h = AlgebraHandle(n, lam, CYCLOTOMIC)
    G = sympy.Matrix([[_to_sym(graded_dimension(h, e, f)).subs(_Q, 1 / _Q) for f in idems]
                      for e in idems])
    rhs = sympy.Matrix([counts[e] for e in idems])
    xs = sympy.symbols(f"x0:{len(idems)}")
    sols = list(sympy.linsolve((G, rhs), *xs))
    if not sols:
        raise RuntimeError("no class solves the Euler form equations")
    sol = [s.subs({x: 0 for x in xs}) for s in sols[0]]
    vec = {}
    for e, x in zip(idems, sol):
        if x == 0:
            continue
        for tag, cc in projective_class(e, n).items():
            vec[tag] = vec.get(tag, 0) + x * _to_sym(cc)
    out = {}
    for tag, expr in vec.items():
        s = _from_sym(expr)
        if s:
            out[tag] = s
    return out


def _insert_empty(tag, pos):
    return tag[:pos] + ((),) + tag[pos:]


def k0_class(a, b, bottom, n, red_index=0):
    """Class of W_Y (x) P_bottom: the red w_c at `red_index` contributes [L_{a,b}]
    (two wedge factors) in place of its top vector; everything else is read as
    in projective_class.  Returns a wedge vector with one more factor."""
    L = simple_class(a, b, n)
    v = {(): ONE}
    k = 0
    for kind, lab in bottom.seq:
        if kind == RED:
            if k == red_index:
                if lab != a + b:
                    raise ValueError(f"red {red_index} is w_{lab}, not w_{a + b}")
                v = shw.vclean({tag + lt: c * lc for tag, c in v.items()
                                for lt, lc in L.items()})
            else:
                top = shw.top_vector(lab)
                v = {tag + (top,): c for tag, c in v.items()}
            k += 1
        else:
            v = shw.gl_n_F(lab, n)(v)
    return v


def rung_image(a, b, bottom, n, red_index=0):
    """F^{(b)} on [P_bottom] with an empty upright inserted after the split red."""
    v = projective_class(bottom, n)
    pos = red_index + 1
    v = {_insert_empty(t, pos): c for t, c in v.items()}
    ell = len(bottom.reds) + 1
    return shw.rung_operator("F", pos, b, ell)(v)


def ladder_gg_contexts(n, max_extra=2, max_ell=3, max_c=3):
    """(a, b, bottom, red_index) for every single-vertex ladder in range."""
    out = []
    for c in range(1, min(max_c, n) + 1):
        for a in range(0, c + 1):
            b = c - a
            for others in range(0, max_ell - 1):
                for other_w in itertools.product(range(0, n + 1), repeat=others):
                    for side in ((0, 1) if others else (0,)):
                        reds = (c,) + other_w if side == 0 else other_w + (c,)
                        ri = 0 if side == 0 else len(other_w)
                        for m in range(0, max_extra + 1):
                            for labels in itertools.product(range(1, n), repeat=m):
                                for kappa in itertools.combinations_with_replacement(
                                        range(m + 1), len(reds)):
                                    t = StendhalTriple(labels, reds, kappa)
                                    if t.violated():
                                        continue
                                    out.append((a, b, t, ri))
    return out


def ladder_gg_check(n, max_extra=2):
    """Compare k0_class with the rung operator on every context; returns
    (number checked, list of failures)."""
    bad = []
    ctx = ladder_gg_contexts(n, max_extra)
    for a, b, t, ri in ctx:
        if k0_class(a, b, t, n, ri) != rung_image(a, b, t, n, ri):
            bad.append((a, b, t, ri))
    return len(ctx), bad


# -------------------------------------------------------- bigons, powers

def bigon_decompose(a, b):
    """W of the bigon Y*Y with sides a, b as shifted copies of the identity.

    Only thin bigons (a or b equal to 1) are decomposed here: the left
    resolution of W_Y is the Koszul resolution over the subset algebra A_c,
    tensoring with Y* kills every P_S with S nonempty (e_{w_S} L = 0), and the
    surviving P_empty summands sit at Tate twists <k> shifted by eta(a, b)."""
    c = a + b
    if a < 0 or b < 0:
        raise ValueError("bigon sides must be non-negative")
    if a == 0 or b == 0:
        return [GradedShift()]
    if min(a, b) != 1:
        raise ValueError(f"bigon ({a}, {b}) has no thin side; decompose it with "
                         "associativity and thin bigons instead")
    Q = koszul_resolution(c)
    if c >= 2:
        L = SimpleModule(1, c - 1)
        words = {L.idempotent_of(T) for T in L.tableaux}
    out = []
    for k, subsets in sorted(Q.terms.items()):
        for S in subsets:
            if S:
                if c >= 2 and w_S(c, S) in words:
                    raise RuntimeError(f"P_{sorted(S)} survives the bigon contraction")
                continue
            out.append(GradedShift.tate(k) + GradedShift.tate(eta(a, b)))
    return sorted(out, key=lambda s: -s.homological)


def ladder_class(shift):
    """Decategorified ladder shift: <k> -> q^k."""
    if shift.internal != -shift.homological:
        raise ValueError(f"{shift} is not a Tate twist")
    return LaurentScalar({shift.homological: 1})


def graded_multiplicity(shifts):
    return sum((ladder_class(s) for s in shifts), ZERO)


def divided_power_decomposition(c):
    """Shifts of the copies of F^{(c)} inside F^c, by peeling one thin strand at
    a time: F^{(k-1)} F = F^{(k)} (x) (thin bigon of thickness k)."""
    shifts = [GradedShift()]
    for k in range(2, c + 1):
        bigon = bigon_decompose(k - 1, 1)
        shifts = [s + t for s in shifts for t in bigon]
    return sorted(shifts, key=lambda s: -s.homological)


def adjunction_shifts(p):
    """Grading shifts of the adjoints of dF_i with bottom weights (p_i, p_{i+1})."""
    pi, pj = p
    pi_ = pi - pj - 1
    return {"pi": pi_,
            "F_left": GradedShift.tate(-pi_), "F_right": GradedShift.tate(pi_),
            "Y_left": GradedShift.tate(1 - pi), "Y_right": GradedShift.tate(pi - 1),
            "Ystar_left": GradedShift.tate(pj), "Ystar_right": GradedShift.tate(-pj)}


def transpose_check(a, b, n):
    """The merge rung E^{(b)} is q^{-eta} times the transpose of the split rung
    F^{(b)} between the (c, 0) and (a, b) blocks, in the standard wedge basis."""
    c = a + b
    F = shw.rung_operator("F", 1, b, 2)
    E = shw.rung_operator("E", 1, b, 2)
    src = [(J, ()) for J in shw.wedge_basis(n, c)]
    tgt = shw.block_basis(n, (a, b))
    for s in src:
        Fs = F.on_tag(s)
        for t in tgt:
            if E.on_tag(t).get(s, ZERO) != Fs.get(t, ZERO).shift(-eta(a, b)):
                return False
    return True


# ---------------------------------------------------------- associativity

def tree_sequence(c1, c2, c3, which):
    """The idempotents i_1 (left split first) and i_2 (right split first) on
    whose weight spaces the two tree modules are one dimensional."""
    def rows(first, length, count):
        # count runs first..first+length-1, each starting one lower
        out = []
        for r in range(count):
            out.extend(range(first - r, first - r + length))
        return out

    if which == 1:
        mid = rows(c1, c2, c1)
        right = rows(c1 + c2, c3, c1 + c2)
    elif which == 2:
        mid = rows(c1, c2 + c3, c1)
        right = rows(c2, c3, c2)
    else:
        raise ValueError("which must be 1 or 2")
    seq = [(RED, c1)] + [(BLACK, x) for x in mid] + [(RED, c2)] + \
          [(BLACK, x) for x in right] + [(RED, c3)]
    return StendhalTriple.from_seq(seq)


def _fiber_dim(outer, inner, top, inner_red):
    """dim e_top (W_inner (x) L_outer) on the no-extra-strand fiber.

    outer = (A, B): the first split, with box L_{A,B}; inner = (x, y) splits
    the red `inner_red` (0 = left, 1 = right) of the outer top.  Uses the
    right-projective decomposition of W_inner: a sum over inner tableaux and
    placements of their content word between the inner reds."""
    A, B = outer
    x, y = inner
    tseq = top.seq
    reds = [p for p, s in enumerate(tseq) if s[0] == RED]
    # inner reds sit at indices inner_red, inner_red + 1 among the three reds
    lo, hi = reds[inner_red], reds[inner_red + 1]
    inner_tabs = enumerate_standard(x, y) if x and y else (None,)
    outer_tabs = enumerate_standard(A, B) if A and B else (None,)
    outer_words = {content_word(S) if S else () for S in outer_tabs}
    blacks = [p for p, s in enumerate(tseq) if s[0] == BLACK]
    total = 0
    for S in inner_tabs:
        word = content_word(S) if S else ()
        for pos in itertools.combinations(range(lo + 1, hi), len(word)):
            if tuple(tseq[p][1] for p in pos) != word:
                continue
            rest = tuple(tseq[p][1] for p in blacks if p not in pos)
            # the remaining strands come from the outer box; in the fiber they
            # must all lie in the outer segment, i.e. to the right of the
            # first red when inner_red = 0 and left of the last otherwise
            if inner_red == 0:
                ok = all(p > reds[0] for p in blacks if p not in pos)
            else:
                ok = all(p < reds[2] for p in blacks if p not in pos)
            if ok and rest in outer_words:
                total += 1
    return total


def tree_fiber_dim(c1, c2, c3, which, top):
    if which == 1:
        return _fiber_dim((c1 + c2, c3), (c1, c2), top, 0)
    return _fiber_dim((c1, c2 + c3), (c2, c3), top, 1)


def associator_tableau(c1, c2, c3):
    """The c1 x (c2+c3) tableau filling the first c2 boxes of every row in
    order, then the last c3."""
    rows = []
    for i in range(1, c1 + 1):
        row = []
        for j in range(1, c2 + c3 + 1):
            if j <= c2:
                row.append(j + c2 * (i - 1))
            else:
                row.append(j + (c1 - 1) * c2 + c3 * (i - 1))
        rows.append(tuple(row))
    return RectTableau(c1, c2 + c3, tuple(rows))


@dataclass
class AssociatorImage:
    source_top: StendhalTriple
    outer_tableau: RectTableau
    inner_tableau: object
    moved: int
    image_top: StendhalTriple
    degree: int

    def to_json(self):
        return {"top": self.source_top.to_json(),
                "outer_tableau": self.outer_tableau.to_json(),
                "inner_tableau": self.inner_tableau.to_json() if self.inner_tableau else None,
                "moved": self.moved, "image_top": self.image_top.to_json(),
                "degree": self.degree}


def associativity_iso(c1, c2, c3):
    """Image of the straight-line generator of tree 1 at i_1 in tree 2.

    Tree 2 carries the box vector of associator_tableau on the big Y, the
    straight-line vector on the small one, and the rightmost c1*c3 strands of
    the big box are pulled across w_{c2} into the small Y."""
    i1 = tree_sequence(c1, c2, c3, 1)
    v = associator_tableau(c1, c2, c3) if c1 and (c2 + c3) else None
    big = content_word(v) if v is not None else ()
    small_t = row_tableau(c2, c3) if c2 and c3 else None
    small = content_word(small_t) if small_t is not None else ()
    k = c1 * c3
    keep, moved = big[:len(big) - k], big[len(big) - k:]
    seq = [(RED, c1)] + [(BLACK, x) for x in keep] + [(RED, c2)] + \
          [(BLACK, x) for x in moved] + [(BLACK, x) for x in small] + [(RED, c3)]
    image_top = StendhalTriple.from_seq(seq)
    # degree: the moved strands cross w_{c2}; none of them cross each other
    deg = sum(1 for x in moved if x == c2)
    if v is not None and not v.is_standard():
        raise RuntimeError("associator tableau is not standard")
    return AssociatorImage(i1, v, small_t, k, image_top, deg)
