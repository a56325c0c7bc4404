"""Finite graded complexes over Q, chain maps, homotopy solving, the c = 2
bigon square, the nilHecke/braid checks and Rickard complexes.

Complexes are cohomological: the differential raises the homological degree
by one and preserves the internal degree.  A complex is stored as a list of
cells ``(label, hom, internal)`` and a sparse differential; every piece of
fixed internal degree (a *slice*) is finite, and all linear algebra is done
slice by slice with exact rationals.

The bigon square is realized as Hom_A(Q, Q) for the Koszul resolution Q of
the c = 2 subset algebra, which the pairing identifies with the tensor
square Q^r (x)_A Q: the canonical element is the identity map and A (x) A is
the map sending the generator D to A.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from . import linalg
from .qring import LaurentScalar
from .skewhowe import rung_operator, vadd
from .stendhal_core import (CutoffError, Element, basis_keys, coordinates, equal,
                            idempotent, nf_diagram)
from .subset_algebra import (LEFT_RED, RIGHT_RED, P, deformed_square,
                             koszul_resolution, minimal_diagram)

__all__ = [
    "CutoffError", "GradedComplex", "ChainMap", "homotopy_between",
    "solve_modulo_boundaries", "BigonSquare", "bigon_square", "nilhecke_check",
    "NilHeckeReport", "polynomial_model", "BraidReport", "nilhecke_braid_check",
    "two_strand_comparison", "RickardComplex", "rickard_complex",
]

WITNESS_MARGIN = 4


def _clean(row):
    return {k: v for k, v in row.items() if v}


# ---------------------------------------------------------------- complexes

class GradedComplex:
    """cells: list of (label, hom, internal); d: {src index: {dst index: coeff}}.

    ``generator_top`` is the top internal degree of the generators the complex
    was built from; ``truncation`` is the largest internal degree kept (None
    when the complex is complete)."""

    def __init__(self, cells, d, name="", generator_top=None, truncation=None):
        self.cells = [(lab, int(h), int(i)) for lab, h, i in cells]
        self.index = {lab: j for j, (lab, _, _) in enumerate(self.cells)}
        if len(self.index) != len(self.cells):
            raise ValueError("duplicate cell labels")
        self.d = {j: _clean({k: Fraction(v) for k, v in row.items()})
                  for j, row in d.items()}
        self.d = {j: r for j, r in self.d.items() if r}
        self.name = name
        degs = [i for _, _, i in self.cells]
        self.generator_top = max(degs, default=0) if generator_top is None else generator_top
        self.truncation = truncation
        self._slices = {}
        for j, (_, h, i) in enumerate(self.cells):
            self._slices.setdefault(i, []).append(j)
        self._check()

    def __len__(self):
        return len(self.cells)

    def _check(self):
        for j, row in self.d.items():
            _, h, i = self.cells[j]
            for k in row:
                _, h2, i2 = self.cells[k]
                if h2 != h + 1 or i2 != i:
                    raise ValueError(f"differential is not homogeneous at {self.cells[j][0]}")
        if not self.square_is_zero():
            raise ValueError("differential does not square to zero")

    def square_is_zero(self):
        for j in self.d:
            if self.apply_d(self.apply_d({j: Fraction(1)})):
                return False
        return True

    def hom(self, j):
        return self.cells[j][1]

    def internal(self, j):
        return self.cells[j][2]

    def internal_degrees(self):
        return sorted(self._slices)

    def slice(self, internal, hom=None):
        idx = self._slices.get(internal, [])
        if hom is None:
            return list(idx)
        return [j for j in idx if self.cells[j][1] == hom]

    def apply_d(self, vec):
        out = {}
        for j, c in vec.items():
            for k, v in self.d.get(j, {}).items():
                out[k] = out.get(k, 0) + c * v
        return _clean(out)

    def vector(self, mapping):
        """{label: coeff} -> {index: coeff}."""
        return _clean({self.index[lab]: Fraction(c) for lab, c in mapping.items()})

    def labels(self, vec):
        return {self.cells[j][0]: c for j, c in sorted(vec.items())}

    def homology_dimensions(self, max_internal=None):
        """{(hom, internal): dim H} over the stored slices."""
        out = {}
        for i in self.internal_degrees():
            if max_internal is not None and i > max_internal:
                continue
            homs = sorted({self.cells[j][1] for j in self._slices[i]})
            for h in homs:
                here = self.slice(i, h)
                ranks = []
                for src in (here, self.slice(i, h - 1)):
                    tgt = self.slice(i, src and self.cells[src[0]][1] + 1)
                    tpos = {k: n for n, k in enumerate(tgt)}
                    rows = [{tpos[k]: v for k, v in self.d.get(j, {}).items()} for j in src]
                    ranks.append(linalg.sparse_rank(rows, len(tgt)) if rows and tgt else 0)
                dim = len(here) - ranks[0] - ranks[1]
                if dim:
                    out[(h, i)] = dim
        return out


@dataclass
class ChainMap:
    """entries: {source index: {target index: coeff}}; bidegree (hom, internal)."""

    source: GradedComplex
    target: GradedComplex
    bidegree: tuple
    entries: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.entries = {j: _clean({k: Fraction(v) for k, v in r.items()})
                        for j, r in self.entries.items()}
        self.entries = {j: r for j, r in self.entries.items() if r}
        h, i = self.bidegree
        for j, row in self.entries.items():
            for k in row:
                if (self.target.hom(k) != self.source.hom(j) + h
                        or self.target.internal(k) != self.source.internal(j) + i):
                    raise ValueError(f"{self.name}: entry of the wrong bidegree")

    @classmethod
    def identity(cls, C):
        return cls(C, C, (0, 0), {j: {j: 1} for j in range(len(C))}, "id")

    @classmethod
    def zero(cls, S, T, bidegree):
        return cls(S, T, tuple(bidegree), {}, "0")

    def __call__(self, vec):
        out = {}
        for j, c in vec.items():
            for k, v in self.entries.get(j, {}).items():
                out[k] = out.get(k, 0) + c * v
        return _clean(out)

    def _same(self, other):
        if (self.source is not other.source or self.target is not other.target
                or tuple(self.bidegree) != tuple(other.bidegree)):
            raise ValueError("chain maps with different source/target/bidegree")

    def __add__(self, other):
        self._same(other)
        ent = {j: dict(r) for j, r in self.entries.items()}
        for j, r in other.entries.items():
            row = ent.setdefault(j, {})
            for k, v in r.items():
                row[k] = row.get(k, 0) + v
        return ChainMap(self.source, self.target, self.bidegree, ent,
                        f"({self.name}+{other.name})")

    def scale(self, s):
        return ChainMap(self.source, self.target, self.bidegree,
                        {j: {k: v * s for k, v in r.items()} for j, r in self.entries.items()},
                        f"{s}*{self.name}")

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        """self after other."""
        if other.target is not self.source:
            raise ValueError("maps do not compose")
        ent = {j: self(r) for j, r in other.entries.items()}
        bideg = tuple(a + b for a, b in zip(self.bidegree, other.bidegree))
        return ChainMap(other.source, self.target, bideg, ent, f"{self.name}.{other.name}")

    def is_zero(self):
        return not self.entries

    def is_chain_map(self):
        """d f = (-1)^h f d."""
        sign = -1 if self.bidegree[0] % 2 else 1
        for j in range(len(self.source)):
            lhs = self.target.apply_d(self({j: Fraction(1)}))
            rhs = self(self.source.apply_d({j: Fraction(1)}))
            if _clean({k: lhs.get(k, 0) - sign * rhs.get(k, 0) for k in set(lhs) | set(rhs)}):
                return False
        return True

    def dense_on_slice(self, internal):
        return {self.source.cells[j][0]: self.target.labels(self.entries.get(j, {}))
                for j in self.source.slice(internal)}


def witness_bound(*complexes):
    """D = top generator degree + 4."""
    return max(C.generator_top for C in complexes) + WITNESS_MARGIN


def homotopy_between(f, g, max_degree=None):
    """A map h of bidegree (deg f - 1, int f) with f - g = d h + (-1)^{deg f} h d
    on every source slice of internal degree <= D, or None if none exists
    there.  D defaults to the witness bound; a complex truncated below D
    raises CutoffError."""
    f._same(g)
    S, T = f.source, f.target
    D = witness_bound(S, T) if max_degree is None else max_degree
    for C in (S, T):
        if C.truncation is not None and C.truncation < D:
            raise CutoffError(D, f"complex {C.name!r} (truncated at {C.truncation})")
    fh, fi = f.bidegree
    sign = -1 if fh % 2 else 1
    diff = f - g
    entries = {}
    for delta in S.internal_degrees():
        if delta > D:
            continue
        src = S.slice(delta)
        # unknowns: h(x -> y) for x in the slice, y in T with the right bidegree
        unknowns = []
        for x in src:
            for y in T.slice(delta + fi, S.hom(x) + fh - 1):
                unknowns.append((x, y))
        pos = {u: n for n, u in enumerate(unknowns)}
        eqs = {}
        for x in src:
            # d_T h(x): for each unknown (x, y), add d_T(y)
            for y in T.slice(delta + fi, S.hom(x) + fh - 1):
                for z, v in T.d.get(y, {}).items():
                    eqs.setdefault((x, z), {})
                    eqs[(x, z)][pos[(x, y)]] = eqs[(x, z)].get(pos[(x, y)], 0) + v
            # sign * h(d_S x)
            for x2, v in S.d.get(x, {}).items():
                for y in T.slice(delta + fi, S.hom(x2) + fh - 1):
                    eqs.setdefault((x, y), {})
                    p = pos.get((x2, y))
                    if p is None:
                        continue
                    eqs[(x, y)][p] = eqs[(x, y)].get(p, 0) + sign * v
        rhs = {}
        for x in src:
            for z, v in diff.entries.get(x, {}).items():
                rhs[(x, z)] = v
                eqs.setdefault((x, z), {})
        sol = _solve(eqs, rhs, len(unknowns))
        if sol is None:
            return None
        for (x, y), v in zip(unknowns, sol):
            if v:
                entries.setdefault(x, {})[y] = v
    return ChainMap(S, T, (fh - 1, fi), entries, f"h[{f.name} ~ {g.name}]")


def _solve(eqs, rhs, n):
    keys = sorted(eqs, key=repr)
    if not keys:
        return [Fraction(0)] * n
    m = flint.fmpq_mat(len(keys), n + 1)
    for r, k in enumerate(keys):
        for c, v in eqs[k].items():
            if v:
                m[r, c] = linalg._q(v)
        if rhs.get(k):
            m[r, n] = linalg._q(rhs[k])
    red, piv = linalg._rref_mat(m)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def check_homotopy(f, g, h):
    """f - g == d h + (-1)^{deg f} h d exactly on the slices h was solved on."""
    sign = -1 if f.bidegree[0] % 2 else 1
    D = witness_bound(f.source, f.target)
    for delta in f.source.internal_degrees():
        if delta > D:
            continue
        for x in f.source.slice(delta):
            e = {x: Fraction(1)}
            a = f.target.apply_d(h(e))
            b = h(f.source.apply_d(e))
            lhs = _clean({k: a.get(k, 0) + sign * b.get(k, 0) for k in set(a) | set(b)})
            fx, gx = f(e), g(e)
            rhs = _clean({k: fx.get(k, 0) - gx.get(k, 0) for k in set(fx) | set(gx)})
            if lhs != rhs:
                return False
    return True


def solve_modulo_boundaries(C, vec, refs):
    """Coefficients s with vec - sum s_r refs_r a boundary, or None."""
    if not vec and not any(refs):
        return [Fraction(0)] * len(refs)
    support = set(vec)
    for r in refs:
        support |= set(r)
    degs = {(C.hom(j), C.internal(j)) for j in support}
    if len(degs) != 1:
        raise ValueError("vectors are not homogeneous")
    h, i = degs.pop()
    pre = C.slice(i, h - 1)
    cols = [C.d.get(j, {}) for j in pre] + list(refs)
    keys = {}
    for col in cols:
        for k in col:
            keys.setdefault(k, len(keys))
    for k in vec:
        keys.setdefault(k, len(keys))
    eqs = {k: {} for k in keys}
    for c, col in enumerate(cols):
        for k, v in col.items():
            eqs[k][c] = v
    sol = _solve(eqs, dict(vec), len(cols))
    if sol is None:
        return None
    return sol[len(pre):]


def is_boundary(C, vec):
    return solve_modulo_boundaries(C, vec, []) is not None


# ---------------------------------------------------------------- the bigon square

GENERATORS = {"A": (0, frozenset()), "B": (1, frozenset({1})),
              "C": (1, frozenset({2})), "D": (2, frozenset())}
PAIRING = {("A", "D"): 1, ("B", "B"): 1, ("C", "C"): -1, ("D", "A"): 1}
_PARTNER = {x: y for x, y in PAIRING}
_NAME = {v: k for k, v in GENERATORS.items()}


def pairing_compatible(c=2):
    """<dx, y> = <x, dy>, with the right-module differential the flip of the
    left one."""
    Q = koszul_resolution(c)
    for x, y in itertools.product(GENERATORS, repeat=2):
        kx, Sx = GENERATORS[x]
        ky, Sy = GENERATORS[y]
        lhs = rhs = None
        for z in GENERATORS:
            kz, Sz = GENERATORS[z]
            # <dx, y>: dx = sum flip(d(x -> z)) z, then <z, y>
            if kz == kx - 1 and (x_z := Q.component(kx, Sx, Sz)) is not None and (z, y) in PAIRING:
                t = x_z.flip().scale(PAIRING[(z, y)])
                lhs = t if lhs is None else lhs + t
            # <x, dy>: dy = sum d(y -> z) z, then <x, z>
            if kz == ky - 1 and (y_z := Q.component(ky, Sy, Sz)) is not None and (x, z) in PAIRING:
                t = y_z.scale(PAIRING[(x, z)])
                rhs = t if rhs is None else rhs + t
        if lhs is None and rhs is None:
            continue
        if lhs is None or rhs is None or not equal(lhs, rhs):
            return False
    return True


@dataclass
class BigonSquare:
    complex: GradedComplex
    k: dict          # the canonical element (index vector)
    AA: dict         # A (x) A
    psi: ChainMap
    y_i: ChainMap
    y_ip1: ChainMap
    pairing: dict

    def tensor_form(self, vec):
        """Express an index vector in tensor notation {(X, Y, diagram): coeff}."""
        out = {}
        for j, c in vec.items():
            (z, y, w, dots), _, _ = self.complex.cells[j]
            x = _PARTNER[z]
            key = (x, y, repr(nf_diagram(P(2, GENERATORS[z][1]), w, dots)))
            out[key] = out.get(key, 0) + c / PAIRING[(x, z)]
        return {k: v for k, v in sorted(out.items()) if v}


def _hom_cells(Q, D):
    """Cells (Z, Y, w, dots) of Hom(Q, Q): maps from generator Z to Y."""
    cells = []
    for z, (kz, Sz) in sorted(GENERATORS.items()):
        for y, (ky, Sy) in sorted(GENERATORS.items()):
            p = kz - ky
            for g in range(0, D + p + 1):
                delta = ky + g - kz
                if delta > D:
                    break
                for w, dots in basis_keys(P(2, Sz), P(2, Sy), g):
                    cells.append(((z, y, w, dots), p, delta))
    return cells


def _as_element(cell):
    z, y, w, dots = cell
    return Element.of(nf_diagram(P(2, GENERATORS[z][1]), w, dots))


def _coords_vector(x, z, y, index):
    out = {}
    for _, kc in coordinates(x).items():
        for (w, dots), v in kc.items():
            lab = (z, y, w, dots)
            if lab not in index:
                return None
            out[index[lab]] = out.get(index[lab], 0) + Fraction(v)
    return out


def bigon_square(c=2, truncation=None):
    """Hom_A(Q, Q) for the c = 2 resolution, truncated at internal degree D.

    ``truncation`` defaults to the witness bound (top generator degree + 4)."""
    if c != 2:
        raise ValueError("the bigon square is implemented for c = 2")
    Q = koszul_resolution(c)
    top = max(GENERATORS[x][0] for x in GENERATORS)
    D = top + WITNESS_MARGIN if truncation is None else truncation
    cells = _hom_cells(Q, D)
    index = {lab: j for j, (lab, _, _) in enumerate(cells)}

    def dcomp(z):
        # {target generator: Element} for the resolution differential out of z
        kz, Sz = GENERATORS[z]
        out = {}
        for t, (kt, St) in GENERATORS.items():
            if kt == kz - 1:
                e = Q.component(kz, Sz, St)
                if e is not None:
                    out[t] = e
        return out

    into = {}
    for z in GENERATORS:
        for t, e in dcomp(z).items():
            into.setdefault(t, []).append((z, e))

    d = {}
    for j, (lab, p, delta) in enumerate(cells):
        z, y, w, dots = lab
        a = _as_element(lab)
        row = {}
        # d o f
        for t, e in dcomp(y).items():
            v = _coords_vector(e * a, z, t, index)
            if v is None:
                continue
            for k, c2 in v.items():
                row[k] = row.get(k, 0) + c2
        # -(-1)^p f o d
        sign = 1 if p % 2 else -1
        for src, e in into.get(z, []):
            v = _coords_vector(a * e, src, y, index)
            if v is None:
                continue
            for k, c2 in v.items():
                row[k] = row.get(k, 0) + sign * c2
        d[j] = row
    C = GradedComplex(cells, d, name="bigon square c=2", generator_top=top, truncation=D)

    # the canonical element is the identity map
    k_vec = {}
    for z, (kz, Sz) in GENERATORS.items():
        v = _coords_vector(Element.of(idempotent(P(2, Sz))), z, z, index)
        for j, c2 in v.items():
            k_vec[j] = k_vec.get(j, 0) + c2
    AA = _coords_vector(Element.of(idempotent(P(2, frozenset()))), "D", "A", index)
    AA = {j: v * PAIRING[("A", "D")] for j, v in AA.items()}

    def precompose(direction, name):
        Y = deformed_square(c, direction)
        ent = {}
        for j, (lab, p, delta) in enumerate(cells):
            z, y, w, dots = lab
            a = _as_element(lab)
            row = {}
            for (jj, S, U), coeff in Y.items():
                src, tgt = _NAME[(jj, S)], _NAME[(jj - 2, U)]
                if tgt != z:
                    continue
                m = Element.of(minimal_diagram(P(c, S), P(c, U)), coeff)
                v = _coords_vector(a * m, src, y, index)
                if v is None:
                    raise CutoffError(D, "bigon square (y action)")
                for k, c2 in v.items():
                    row[k] = row.get(k, 0) + c2
            if row:
                ent[j] = row
        return ChainMap(C, C, (2, -2), ent, name)

    y_i = precompose(LEFT_RED, "y_i")
    y_ip1 = precompose(RIGHT_RED, "y_{i+1}")
    (aa_idx, aa_c), = AA.items()
    psi = ChainMap(C, C, (-2, 2), {aa_idx: {j: v / aa_c for j, v in k_vec.items()}}, "psi")
    for m in (y_i, y_ip1, psi):
        if not m.is_chain_map():
            raise RuntimeError(f"{m.name} is not a chain map")
    return BigonSquare(C, _clean(k_vec), AA, psi, y_i, y_ip1, dict(PAIRING))


@dataclass
class NilHeckeReport:
    relations: dict        # name -> bool (homotopy found and verified)
    homotopies: dict       # name -> ChainMap
    generator_checks: dict  # name -> bool
    truncation: int

    @property
    def ok(self):
        return all(self.relations.values()) and all(self.generator_checks.values())

    def to_json(self):
        return {"relations": dict(sorted(self.relations.items())),
                "generator_checks": dict(sorted(self.generator_checks.items())),
                "homotopy_sizes": {k: sum(len(r) for r in h.entries.values())
                                   for k, h in sorted(self.homotopies.items()) if h is not None},
                "truncation": self.truncation, "ok": self.ok}


def nilhecke_check(truncation=None):
    """y_i psi - psi y_{i+1} ~ id ~ psi y_i - y_{i+1} psi and psi^2 ~ 0,
    each witnessed by an explicit homotopy on the bigon square."""
    sq = bigon_square(2, truncation)
    C = sq.complex
    ident = ChainMap.identity(C)
    psi, yi, yj = sq.psi, sq.y_i, sq.y_ip1
    rels = {
        "y_i psi - psi y_{i+1} ~ id": ((yi @ psi) - (psi @ yj), ident),
        "psi y_i - y_{i+1} psi ~ id": ((psi @ yi) - (yj @ psi), ident),
        "psi psi ~ 0": (psi @ psi, ChainMap.zero(C, C, (-4, 4))),
    }
    ok, hs = {}, {}
    for name, (f, g) in rels.items():
        h = homotopy_between(f, g)
        hs[name] = h
        ok[name] = h is not None and check_homotopy(f, g, h)
    neg_AA = {j: -v for j, v in sq.AA.items()}
    gens = {
        "y_i(k) = A(x)A": solve_modulo_boundaries(C, _sub(yi(sq.k), sq.AA), []) is not None,
        "y_{i+1}(k) = -A(x)A": solve_modulo_boundaries(C, _sub(yj(sq.k), neg_AA), []) is not None,
        "y_i(A(x)A) = 0": not yi(sq.AA),
        "psi(A(x)A) = k": psi(sq.AA) == sq.k,
        "k is not a boundary": not is_boundary(C, sq.k),
        "A(x)A is not a boundary": not is_boundary(C, sq.AA),
        "pairing compatible with d": pairing_compatible(2),
    }
    return NilHeckeReport(ok, hs, gens, C.truncation)


def _sub(u, v):
    return _clean({k: u.get(k, 0) - v.get(k, 0) for k, _ in
                   itertools.chain(u.items(), v.items())})


# ---------------------------------------------------------------- polynomial model

def _poly_mul(f, g):
    out = {}
    for a, x in f.items():
        for b, y in g.items():
            e = tuple(i + j for i, j in zip(a, b))
            out[e] = out.get(e, 0) + x * y
    return _clean(out)


def elementary(k, m):
    out = {}
    for S in itertools.combinations(range(m), k):
        out[tuple(1 if j in S else 0 for j in range(m))] = Fraction(1)
    return out


def demazure(i, f):
    """(f - s_i f) / (y_i - y_{i+1}), i 1-based."""
    out = {}
    for e, c in f.items():
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        sgn, lo, hi = (1, b, a) if a > b else (-1, a, b)
        for k in range(hi - lo):
            ne = list(e)
            ne[i - 1], ne[i] = hi - 1 - k, lo + k
            out[tuple(ne)] = out.get(tuple(ne), 0) + sgn * c
    return _clean(out)


def _monomials(m, degree):
    if m == 0:
        return [()] if degree == 0 else []
    out = []
    for a in range(degree, -1, -1):
        for rest in _monomials(m - 1, degree - a):
            out.append((a,) + rest)
    return out


@dataclass
class PolynomialModel:
    m: int
    complex: GradedComplex

    def cell(self, mono, J=()):
        return self.complex.index[(tuple(mono), tuple(J))]

    def poly_vector(self, f, J=()):
        return _clean({self.cell(e, J): Fraction(c) for e, c in f.items()})

    def _map(self, op, bideg, name):
        C = self.complex
        ent = {}
        for j, ((mono, J), h, i) in enumerate(C.cells):
            img = op({mono: Fraction(1)})
            row = {}
            for e, c in img.items():
                lab = (e, J)
                if lab not in C.index:
                    if C.internal(j) + bideg[1] <= C.truncation:
                        raise CutoffError(C.truncation, "polynomial model")
                    continue
                row[C.index[lab]] = c
            if row:
                ent[j] = row
        return ChainMap(C, C, bideg, ent, name)

    def psi(self, i):
        return self._map(lambda f: demazure(i, f), (0, -2), f"psi{i}")

    def y(self, i):
        mono = tuple(1 if j == i - 1 else 0 for j in range(self.m))
        return self._map(lambda f: _poly_mul(f, {mono: Fraction(1)}), (0, 2), f"y{i}")


def polynomial_model(m, truncation=None):
    """Koszul complex of e_1..e_m over Q[y_1..y_m] (deg y = 2), truncated in
    internal degree; its homology is the coinvariant algebra in hom degree 0."""
    top = sum(2 * k for k in range(1, m + 1))
    D = top + WITNESS_MARGIN if truncation is None else truncation
    cells, d = [], {}
    for r in range(m + 1):
        for J in itertools.combinations(range(1, m + 1), r):
            jdeg = sum(2 * k for k in J)
            for pd in range(0, (D - jdeg) // 2 + 1):
                for mono in _monomials(m, pd):
                    cells.append(((mono, J), -len(J), 2 * pd + jdeg))
    index = {lab: j for j, (lab, _, _) in enumerate(cells)}
    for j, ((mono, J), h, i) in enumerate(cells):
        row = {}
        for t, k in enumerate(J):
            rest = J[:t] + J[t + 1:]
            for e, c in _poly_mul({mono: Fraction(1)}, elementary(k, m)).items():
                row[index[(e, rest)]] = row.get(index[(e, rest)], 0) + (-1) ** t * c
        d[j] = row
    C = GradedComplex(cells, d, name=f"polynomial model m={m}", generator_top=top, truncation=D)
    return PolynomialModel(m, C)


def two_strand_comparison(truncation=None):
    """On homology, (k, A(x)A) in the bigon square and (1, y_1) in the m = 2
    polynomial model carry the same matrices for psi, y_i, y_{i+1}."""
    sq = bigon_square(2, truncation)
    pm = polynomial_model(2)
    one = pm.poly_vector({(0, 0): 1})
    y1 = pm.poly_vector({(1, 0): 1})

    def mats(C, basis, maps):
        out = {}
        for name, f in maps.items():
            cols = []
            for b in basis:
                img = f(b)
                if not img:
                    cols.append([Fraction(0)] * len(basis))
                    continue
                deg = {(C.hom(j), C.internal(j)) for j in img}
                refs = [v if {(C.hom(j), C.internal(j)) for j in v} == deg else {} for v in basis]
                s = solve_modulo_boundaries(C, img, [r for r in refs])
                cols.append(s)
            out[name] = cols
        return out

    a = mats(sq.complex, [sq.k, sq.AA], {"psi": sq.psi, "y_i": sq.y_i, "y_{i+1}": sq.y_ip1})
    b = mats(pm.complex, [one, y1], {"psi": pm.psi(1), "y_i": pm.y(1), "y_{i+1}": pm.y(2)})
    return a == b, a, b


@dataclass
class BraidReport:
    hom_space_dim: int
    scalar_left: Fraction
    scalar_right: Fraction
    homotopy_found: bool
    squares_null: dict
    homology: dict
    bidegree: tuple = (-6, 6)

    @property
    def ok(self):
        return (self.hom_space_dim == 1 and self.scalar_left == self.scalar_right
                and self.scalar_left != 0 and self.homotopy_found
                and all(self.squares_null.values()))

    def to_json(self):
        return {"bidegree": list(self.bidegree), "hom_space_dim": self.hom_space_dim,
                "scalar_left": str(self.scalar_left), "scalar_right": str(self.scalar_right),
                "homotopy_found": self.homotopy_found,
                "squares_null": dict(sorted(self.squares_null.items())),
                "homology": {f"{h},{i}": v for (h, i), v in sorted(self.homology.items())},
                "ok": self.ok}


def nilhecke_braid_check(truncation=None):
    """psi1 psi2 psi1 versus psi2 psi1 psi2 on the three-strand model.

    A class of polynomial degree 2k sits in bidegree (2k, -2k) of the bigon
    square (compare two_strand_comparison), so the triple composites, of
    polynomial degree -6, have bidegree (-6, 6)."""
    pm = polynomial_model(3, truncation)
    C = pm.complex
    H = C.homology_dimensions()
    dim = sum(H.get((0, i), 0) * H.get((0, i - 6), 0) for _, i in H)
    p1, p2 = pm.psi(1), pm.psi(2)
    left = p1 @ p2 @ p1
    right = p2 @ p1 @ p2
    top = pm.poly_vector({(2, 1, 0): 1})
    one = pm.poly_vector({(0, 0, 0): 1})
    sl = solve_modulo_boundaries(C, left(top), [one])
    sr = solve_modulo_boundaries(C, right(top), [one])
    h = homotopy_between(left, right)
    squares = {}
    for name, f in (("left", left), ("right", right)):
        sq = f @ f
        z = ChainMap.zero(C, C, sq.bidegree)
        hh = homotopy_between(sq, z)
        squares[name] = hh is not None and check_homotopy(sq, z, hh)
    return BraidReport(dim, sl[0] if sl else Fraction(0), sr[0] if sr else Fraction(0),
                       h is not None and check_homotopy(left, right, h), squares, H)


# ---------------------------------------------------------------- Rickard complexes

@dataclass(frozen=True)
class RickardTerm:
    position: int       # homological degree
    word: tuple         # ((kind, thickness), ...) applied right to left
    tate: int           # the Tate twist <tate>

    def to_json(self):
        return {"position": self.position,
                "word": [f"{k}^({c})" for k, c in self.word], "tate": self.tate}


@dataclass(frozen=True)
class RickardComplex:
    i: int
    weight: int
    sign: int
    terms: tuple

    def to_json(self):
        return {"i": self.i, "weight": self.weight, "sign": self.sign,
                "terms": [t.to_json() for t in self.terms]}

    def euler_coefficients(self):
        """[(LaurentScalar, word)]: (-1)^position q^tate."""
        return [(LaurentScalar({t.tate: (-1) ** t.position}), t.word) for t in self.terms]

    def euler_operator(self, ell, n=None):
        """The Euler characteristic as a function on vectors of the wedge space."""
        coeffs = self.euler_coefficients()
        ops = [(c, [rung_operator(k, self.i, t, ell, n) for k, t in word]) for c, word in coeffs]

        def apply(v):
            out = {}
            for c, word in ops:
                w = v
                for op in reversed(word):
                    w = op(w)
                    if not w:
                        break
                out = vadd(out, w, c)
            return out
        return apply


def rickard_complex(i, weight, sign=1, labels=None, n=None):
    """Theta (sign=+1) or Theta^{-1} (sign=-1) at sl_2-weight ``weight``.

    The terms are cut off by the weight bounds of the blocks with uprights in
    [0, n]: with ``labels = (p_i, p_{i+1})`` exactly (E^{(s)} or F^{(s)} dies
    once s exceeds the room left on the uprights), otherwise at
    s <= n - |weight|, the largest s that can act on any block."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n is None:
        raise ValueError("n is required to bound the complex")
    if labels is not None:
        a, b = labels
        if a - b != weight:
            raise ValueError("labels do not have the given weight")
        if not (0 <= a <= n and 0 <= b <= n):
            raise ValueError("labels out of range")
        smax = min(b, n - a) if weight >= 0 else min(a, n - b)
    else:
        smax = n - abs(weight)
    terms = []
    for s in range(0, max(smax, -1) + 1):
        if weight >= 0:
            word = (("F", weight + s), ("E", s))
        else:
            word = (("E", -weight + s), ("F", s))
        if sign == 1:
            terms.append(RickardTerm(s, word, -abs(weight) + s))
        else:
            terms.append(RickardTerm(-s, word, abs(weight) - s))
    return RickardComplex(i, weight, sign, tuple(terms))
