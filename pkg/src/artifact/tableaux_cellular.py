"""Standard tableaux on a x b rectangles, the cellular basis C_{S,T}, and L_{a,b}.

Tableaux are drawn French style: box (i, j) sits in row i (counted from the
bottom) and column j.  The reading order runs along the bottom row, then the
next row up.  The content of box (i, j) is a + j - i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .stendhal_core import (BLACK, RED, Diagram, Element, StendhalTriple,
                            equal, idempotent, reduced_word)


@dataclass(frozen=True)
class RectTableau:
    a: int
    b: int
    filling: tuple  # filling[i][j] for row i (bottom = 0), column j

    def __post_init__(self):
        object.__setattr__(self, "filling", tuple(tuple(r) for r in self.filling))
        if len(self.filling) != self.a or any(len(r) != self.b for r in self.filling):
            raise ValueError("filling does not match the rectangle")

    def entry(self, i, j):
        return self.filling[i][j]

    def box_of(self, k):
        return _box_index(self)[k]

    def is_standard(self):
        vals = sorted(v for r in self.filling for v in r)
        if vals != list(range(1, self.a * self.b + 1)):
            return False
        for i in range(self.a):
            for j in range(self.b):
                if j + 1 < self.b and self.filling[i][j] > self.filling[i][j + 1]:
                    return False
                if i + 1 < self.a and self.filling[i][j] > self.filling[i + 1][j]:
                    return False
        return True

    def to_json(self):
        return [list(r) for r in self.filling]


@lru_cache(maxsize=None)
def _box_index(t):
    out = {}
    for i, r in enumerate(t.filling):
        for j, v in enumerate(r):
            out[v] = (i, j)
    return out


def row_tableau(a, b):
    """R: box (i, j) (1-based) holds (i-1) b + j."""
    return RectTableau(a, b, tuple(tuple(i * b + j + 1 for j in range(b)) for i in range(a)))


@lru_cache(maxsize=None)
def enumerate_standard(a, b):
    """All standard tableaux of the a x b rectangle, ordered by row word."""
    if a < 1 or b < 1:
        raise ValueError("rectangle sides must be positive")
    out = []
    fill = [[0] * b for _ in range(a)]
    heights = [0] * b  # number of filled boxes in each column

    def place(k):
        if k > a * b:
            out.append(RectTableau(a, b, tuple(tuple(r) for r in fill)))
            return
        for j in range(b):
            i = heights[j]
            if i < a and (j == 0 or heights[j - 1] > i):
                fill[i][j] = k
                heights[j] += 1
                place(k + 1)
                heights[j] -= 1
                fill[i][j] = 0

    place(1)
    out.sort(key=row_word)
    return tuple(out)


def hook_count(a, b):
    """Number of standard tableaux from the hook length formula."""
    from math import factorial
    num = factorial(a * b)
    den = 1
    for i in range(a):
        for j in range(b):
            den *= (a - i - 1) + (b - j - 1) + 1
    return num // den


def content(t, k):
    i, j = t.box_of(k)
    return t.a + (j + 1) - (i + 1)


def content_word(t):
    return tuple(content(t, k) for k in range(1, t.a * t.b + 1))


def row_word(t):
    return tuple(v for r in t.filling for v in r)


def from_content_word(a, b, word):
    """The unique standard tableau with the given content word, if any."""
    for t in enumerate_standard(a, b):
        if content_word(t) == tuple(word):
            return t
    return None


def w_S(t):
    """w_S as a map box-number-in-R -> entry of S (1-based)."""
    return tuple(row_word(t))


def box_triple(a, b, word):
    """(w_a, word..., w_b): the idempotent with reds at the far ends."""
    seq = [(RED, a)] + [(BLACK, c) for c in word] + [(RED, b)]
    return StendhalTriple.from_seq(seq)


def tableau_diagram(t):
    """D_S: from the content word of R (bottom) to that of S (top), degree 0."""
    a, b = t.a, t.b
    R = row_tableau(a, b)
    # the strand of the box with R-entry r (bottom position r) ends at position S(box)
    w = [0]
    for i in range(a):
        for j in range(b):
            w.append(t.entry(i, j))
    w.append(a * b + 1)
    word = tuple(("x", k) for k in reduced_word(tuple(w)))
    return Diagram(box_triple(a, b, content_word(R)), word)


def cellular_diagram(S, T, c=None):
    """C_{S,T}: bottom reads content(T), middle content(R), top content(S)."""
    if (S.a, S.b) != (T.a, T.b):
        raise ValueError("tableaux of different shapes")
    if c is not None and c != S.a + S.b:
        raise ValueError("c must equal a + b")
    up = tableau_diagram(S)
    down = tableau_diagram(T).flip()
    return Diagram(down.bottom, down.word + up.word)


@dataclass(frozen=True)
class CellularBasisElement:
    S: RectTableau
    T: RectTableau

    def diagram(self):
        return cellular_diagram(self.S, self.T)

    def __mul__(self, other):
        if self.T != other.S:
            return None
        return CellularBasisElement(self.S, other.T)


def sign_table(a, b):
    """sigma_T with flip(D_T) D_T = sigma_T e_R in T~, computed."""
    R = row_tableau(a, b)
    eR = Element.of(idempotent(box_triple(a, b, content_word(R))))
    out = {}
    for T in enumerate_standard(a, b):
        D = tableau_diagram(T)
        x = Element.of(D).flip() * Element.of(D)
        if equal(x, eR):
            out[T] = 1
        elif equal(x, -eR):
            out[T] = -1
        else:
            raise RuntimeError(f"flip(D_T) D_T is not +-e_R for {T}")
    return out


# ---------------------------------------------------------------- L_{a,b}

class SimpleModule:
    """L_{a,b}: basis v_T = C_{T,R}, T standard.

    Nonzero-degree diagrams act by zero (in particular dots and every
    crossing of a black with a red), idempotents not of the form
    (w_a, blacks, w_b) act by zero, and a crossing of two blacks with
    distant labels sends v_T to v_{s_k T}."""

    def __init__(self, a, b):
        self.a, self.b = a, b
        self.tableaux = enumerate_standard(a, b)
        self.index = {content_word(t): t for t in self.tableaux}

    @property
    def dim(self):
        return len(self.tableaux)

    def basis(self):
        return list(self.tableaux)

    def idempotent_of(self, T):
        return box_triple(self.a, self.b, content_word(T))

    def _state(self, triple):
        s = triple.seq
        if len(s) < 2 or s[0] != (RED, self.a) or s[-1] != (RED, self.b):
            return None
        if any(k == RED for k, _ in s[1:-1]):
            return None
        return tuple(l for _, l in s[1:-1])

    def act_diagram(self, d, T):
        """d . v_T as (coeff, tableau) or None."""
        if d.bottom != self.idempotent_of(T):
            return None
        word = list(content_word(T))
        for ev, k in d.word:
            if ev == "dot":
                return None
            # positions shift by one for the left red
            if k == 0 or k == len(word):
                return None  # a black crossing a red
            i, j = word[k - 1], word[k]
            if abs(i - j) <= 1:
                return None
            word[k - 1], word[k] = j, i
            if tuple(word) not in self.index:
                return None
        t = self.index.get(tuple(word))
        if t is None:
            return None
        return 1, t

    def act(self, x, vec):
        """x . vec for vec a dict {tableau: coeff}."""
        out = {}
        for d, c in x.terms.items():
            for T, v in vec.items():
                r = self.act_diagram(d, T)
                if r is not None:
                    s, U = r
                    out[U] = out.get(U, 0) + c * v * s
        return {U: v for U, v in out.items() if v}

    def check_relations(self):
        """Every local relation instance of T~ acts by zero on L."""
        from .relations import local_relations
        for T in self.tableaux:
            e = self.idempotent_of(T)
            for rel in local_relations(e):
                if self.act(rel, {T: 1}):
                    return False
        return True


def simple_module(a, b):
    return SimpleModule(a, b)


def matrix_unit_check(a, b):
    """C_{S,T} acts on L_{a,b} as the matrix unit E_{S,T}; returns True."""
    L = SimpleModule(a, b)
    tabs = L.tableaux
    for S in tabs:
        for T in tabs:
            C = Element.of(cellular_diagram(S, T))
            for U in tabs:
                got = L.act(C, {U: 1})
                want = {S: 1} if U == T else {}
                if got != want:
                    return False
    return True
