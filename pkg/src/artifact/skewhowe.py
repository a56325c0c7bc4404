"""Quantum skew Howe duality on wedge spaces.

A vector of the wedge tensor  wedge^{p_1} C^n (x) ... (x) wedge^{p_l} C^n  is a
dict {tag: LaurentScalar} where a tag is a tuple (J_1, ..., J_l) of increasing
tuples, J_r a p_r-subset of [1, n] (the factor model).  The skew-Howe model
tags the same basis by the set {(r, j) : j in J_r} of [1,l] x [1,n]; with the
pairs ordered row by row the two bases agree on the nose, so conversion never
introduces signs.

gl_n acts through the coproduct  D(F) = F (x) K^-1 + 1 (x) F,
D(E) = E (x) 1 + K (x) E.  The gl_l divided powers move c labels between
neighbouring factors by a split followed by a merge.  Both carry the
coefficient (-q^-1)^(number of pairs (f, s) with f < s), f in the left piece
and s in the right piece; the merge of c labels into a set K also carries
q^(c |K|), which is what makes E F - F E = [p_i - p_{i+1}] and
F^c = [c]! F^(c) hold on the nose.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .qring import ONE, ZERO, LaurentScalar, qfact, qint

_MQI = LaurentScalar({-1: -1})  # -q^-1


@lru_cache(maxsize=None)
def _mqi_pow(k):
    return _MQI ** k


def _ascents(first, second):
    return sum(1 for f in first for s in second if f < s)


# ------------------------------------------------------------------ vectors

def vadd(u, v, scale=ONE):
    out = dict(u)
    for t, c in v.items():
        s = out.get(t, ZERO) + scale * c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def vscale(v, s):
    s = LaurentScalar.coerce(s)
    if not s:
        return {}
    return {t: c * s for t, c in v.items()}


def vclean(v):
    return {t: c for t, c in v.items() if c}


def wedge_basis(n, p):
    return [tuple(J) for J in combinations(range(1, n + 1), p)]


def block_basis(n, pvec):
    """Basis tags of wedge^{p_1} (x) ... (x) wedge^{p_l} C^n."""
    if any(p < 0 or p > n for p in pvec):
        return []
    return [tuple(t) for t in product(*(wedge_basis(n, p) for p in pvec))]


def factor_to_subset(tag):
    return frozenset((r + 1, j) for r, J in enumerate(tag) for j in J)


def subset_to_factor(S, ell):
    rows = [[] for _ in range(ell)]
    for r, j in sorted(S):
        rows[r - 1].append(j)
    return tuple(tuple(x) for x in rows)


def gl_n_weight(tag, n):
    w = [0] * n
    for J in tag:
        for j in J:
            w[j - 1] += 1
    return tuple(w)


def gl_l_weight(tag):
    return tuple(len(J) for J in tag)


def vector_to_json(v):
    """Deterministic JSON: list of [tag, poly] pairs sorted by tag."""
    return [[[list(J) for J in t], c.to_json()] for t, c in sorted(v.items())]


def vector_from_json(obj):
    return {tuple(tuple(J) for J in t): LaurentScalar.from_json(c) for t, c in obj}


# ------------------------------------------------------------ gl_n actions

def _wt(j, J):
    return (j in J) - (j + 1 in J)


def gl_n_F_tag(j, tag):
    out = {}
    for r, J in enumerate(tag):
        if j in J and j + 1 not in J:
            e = -sum(_wt(j, tag[s]) for s in range(r + 1, len(tag)))
            nt = tag[:r] + (tuple(sorted(set(J) - {j} | {j + 1})),) + tag[r + 1:]
            out[nt] = out.get(nt, ZERO) + LaurentScalar({e: 1})
    return out


def gl_n_E_tag(j, tag):
    out = {}
    for r, J in enumerate(tag):
        if j + 1 in J and j not in J:
            e = sum(_wt(j, tag[s]) for s in range(r))
            nt = tag[:r] + (tuple(sorted(set(J) - {j + 1} | {j})),) + tag[r + 1:]
            out[nt] = out.get(nt, ZERO) + LaurentScalar({e: 1})
    return out


def gl_n_K_tag(j, tag):
    return {tag: LaurentScalar({sum(_wt(j, J) for J in tag): 1})}


# ----------------------------------------------------------- gl_l actions

def rung_tag(kind, i, c, tag):
    """F_i^{(c)} or E_i^{(c)} on one basis tag; i is 1-based."""
    if c == 0:
        return {tag: ONE}
    J, K = tag[i - 1], tag[i]
    if kind == "F":
        src, dst = J, K
    elif kind == "E":
        src, dst = K, J
    else:
        raise ValueError(f"rung kind must be 'F' or 'E', got {kind!r}")
    out = {}
    dset = set(dst)
    for A in combinations(src, c):
        if dset.intersection(A):
            continue
        rest = tuple(x for x in src if x not in A)
        new = tuple(sorted(dset.union(A)))
        if kind == "F":
            # split J -> (rest, A), merge (A, K) -> new
            e = _ascents(rest, A) + _ascents(A, dst)
            nt = tag[:i - 1] + (rest, new) + tag[i + 1:]
        else:
            # split K -> (A, rest), merge (J, A) -> new
            e = _ascents(A, rest) + _ascents(dst, A)
            nt = tag[:i - 1] + (new, rest) + tag[i + 1:]
        out[nt] = out.get(nt, ZERO) + _mqi_pow(e).shift(c * len(dst))
    return out


def gl_l_K_tag(i, tag):
    return {tag: LaurentScalar({len(tag[i - 1]) - len(tag[i]): 1})}


# ------------------------------------------------------------- operators

@dataclass(frozen=True)
class QuantumOperator:
    """A tag-level operator: `fn(tag) -> vector`.  `side` is 'gl_l' or 'gl_n',
    `shift` the weight change it causes on its own side."""

    name: str
    side: str
    shift: tuple
    fn: object = field(compare=False, repr=False)

    def __call__(self, v):
        out = {}
        for t, c in v.items():
            for t2, c2 in self.fn(t).items():
                out[t2] = out.get(t2, ZERO) + c * c2
        return vclean(out)

    def on_tag(self, tag):
        return vclean(self.fn(tag))

    def matrix(self, tags):
        """{src: {dst: coeff}} over the given source tags."""
        return {t: self.on_tag(t) for t in tags}

    def then(self, other):
        """other after self."""
        return QuantumOperator(f"{other.name}*{self.name}", self.side,
                               tuple(a + b for a, b in zip(self.shift, other.shift)),
                               lambda t: other(self({t: ONE})))


def _alpha(ell, i, s):
    a = [0] * ell
    a[i - 1] += s
    a[i] -= s
    return tuple(a)


def gl_n_F(j, n):
    if not 1 <= j < n:
        raise ValueError(f"gl_n index j={j} out of range for n={n}")
    return QuantumOperator(f"F{j}", "gl_n", _alpha(n, j, -1), lambda t: gl_n_F_tag(j, t))


def gl_n_E(j, n):
    if not 1 <= j < n:
        raise ValueError(f"gl_n index j={j} out of range for n={n}")
    return QuantumOperator(f"E{j}", "gl_n", _alpha(n, j, 1), lambda t: gl_n_E_tag(j, t))


def gl_n_K(j, n):
    return QuantumOperator(f"K{j}", "gl_n", (0,) * n, lambda t: gl_n_K_tag(j, t))


def rung_operator(kind, i, c, ell, n=None):
    """The ladder rung F_i^{(c)} / E_i^{(c)} on the wedge tensor with ell uprights.

    Targets outside [0, n] never arise from subset moves, so out-of-range
    weights automatically give the zero operator."""
    if not 1 <= i < ell:
        raise ValueError(f"rung index i={i} out of range for ell={ell}")
    if c < 0:
        raise ValueError("rung thickness must be >= 0")
    s = -c if kind == "F" else c
    return QuantumOperator(f"{kind}{i}^({c})", "gl_l", _alpha(ell, i, s),
                           lambda t: rung_tag(kind, i, c, t))


def gl_l_K(i, ell):
    return QuantumOperator(f"K{i}", "gl_l", (0,) * ell, lambda t: gl_l_K_tag(i, t))


def apply_word(word, v):
    """Apply rung operators right to left: word = [(kind, i, c), ...] read as a
    product, so the last entry acts first."""
    for kind, i, c in reversed(word):
        v = _rung_apply(kind, i, c, v)
    return v


def _rung_apply(kind, i, c, v):
    out = {}
    for t, x in v.items():
        for t2, y in rung_tag(kind, i, c, t).items():
            out[t2] = out.get(t2, ZERO) + x * y
    return vclean(out)


# ---------------------------------------------------------------- checks

def operators_equal(A, B, tags):
    return all(A.on_tag(t) == B.on_tag(t) for t in tags)


def commutator_vanishes(X, Y, tags):
    for t in tags:
        v = {t: ONE}
        if X(Y(v)) != Y(X(v)):
            return False
    return True


def pvecs(ell, n, p):
    """All p-vectors with entries in [0, n] summing to p, lexicographic."""
    return [pv for pv in product(range(n + 1), repeat=ell) if sum(pv) == p]


@dataclass
class CommuteReport:
    ell: int
    n: int
    p: int
    dimension: int
    block_dims: dict
    pairs_checked: int
    ok: bool
    failures: list

    def to_json(self):
        return {"ell": self.ell, "n": self.n, "p": self.p, "dim": self.dimension,
                "blocks": [[list(k), v] for k, v in sorted(self.block_dims.items())],
                "pairs_checked": self.pairs_checked, "ok": self.ok,
                "failures": self.failures}


def _mono(fn):
    """Wrap a tag operator whose entries are signed monomials as
    tag -> [(tag, exponent, sign)], which is much cheaper to compose."""
    def go(t):
        out = []
        for t2, c in fn(t).items():
            for e, v in c.items():
                out.append((t2, e, v))
        return out
    return go


def _fast_commutes(X, Y, tags):
    for t in tags:
        acc = {}
        for a, e1, s1 in Y(t):
            for b, e2, s2 in X(a):
                k = (b, e1 + e2)
                acc[k] = acc.get(k, 0) + s1 * s2
        for a, e1, s1 in X(t):
            for b, e2, s2 in Y(a):
                k = (b, e1 + e2)
                acc[k] = acc.get(k, 0) - s1 * s2
        if any(acc.values()):
            return False
    return True


def verify_commuting_actions(ell, n, p):
    """Exhaustively check [gl_l generator, gl_n generator] = 0 on wedge^p(C^l (x) C^n)."""
    blocks = {pv: block_basis(n, pv) for pv in pvecs(ell, n, p)}
    dim = sum(len(b) for b in blocks.values())
    ok = dim == comb(ell * n, p)
    ok = ok and all(len(b) == _prod(comb(n, x) for x in pv) for pv, b in blocks.items())
    tags = [t for b in blocks.values() for t in b]
    L = [rung_operator(k, i, 1, ell) for i in range(1, ell) for k in "EF"]
    L += [gl_l_K(i, ell) for i in range(1, ell)]
    N = [op(j, n) for j in range(1, n) for op in (gl_n_E, gl_n_F, gl_n_K)]
    failures = []
    fN = [lru_cache(maxsize=None)(_mono(Y.fn)) for Y in N]
    for X in L:
        fx = lru_cache(maxsize=None)(_mono(X.fn))
        for Y, fy in zip(N, fN):
            if not _fast_commutes(fx, fy, tags):
                failures.append([X.name, Y.name])
    return CommuteReport(ell, n, p, dim, {k: len(v) for k, v in blocks.items()},
                         len(L) * len(N), ok and not failures, failures)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def check_EF_relation(i, ell, n, pvec):
    """E_i F_i - F_i E_i = [p_i - p_{i+1}] on the p-block."""
    tags = block_basis(n, pvec)
    E, F = rung_operator("E", i, 1, ell), rung_operator("F", i, 1, ell)
    k = qint(pvec[i - 1] - pvec[i])
    for t in tags:
        v = {t: ONE}
        lhs = vadd(E(F(v)), F(E(v)), -ONE)
        if lhs != vscale(v, k):
            return False
    return True


def check_divided_powers(kind, i, c, ell, n, pvec):
    """(X_i)^c = [c]! X_i^{(c)} on the p-block."""
    tags = block_basis(n, pvec)
    X = rung_operator(kind, i, 1, ell)
    Xc = rung_operator(kind, i, c, ell)
    f = qfact(c)
    for t in tags:
        v = {t: ONE}
        w = v
        for _ in range(c):
            w = X(w)
        if w != vscale(Xc(v), f):
            return False
    return True


def check_serre(kind, i, j, ell, n, pvec):
    """X_i^2 X_j - [2] X_i X_j X_i + X_j X_i^2 = 0 for |i - j| = 1."""
    tags = block_basis(n, pvec)
    Xi, Xj = rung_operator(kind, i, 1, ell), rung_operator(kind, j, 1, ell)
    two = qint(2)
    for t in tags:
        v = {t: ONE}
        s = vadd(Xi(Xi(Xj(v))), Xj(Xi(Xi(v))))
        s = vadd(s, Xi(Xj(Xi(v))), -two)
        if s:
            return False
    return True


# ----------------------------------------------------- highest weight vectors

def top_vector(p):
    """v_{[1,p]}, the highest weight vector of wedge^p C^n."""
    return tuple(range(1, p + 1))


def highest_weight_vector(a, b, n):
    """The unique vector of gl_n weight omega_{a+b} in wedge^a (x) wedge^b killed by
    every E_j, normalized so v_{[b+1,c]} (x) v_{[1,b]} has coefficient 1.

    Solved directly: the weight space is spanned by v_{[1,c] - B} (x) v_B, and the
    kernel conditions fix each coefficient from a neighbour's."""
    c = a + b
    if a < 0 or b < 0 or c > n:
        raise ValueError(f"need a, b >= 0 and a + b <= n (a={a}, b={b}, n={n})")
    lead = (tuple(range(b + 1, c + 1)), tuple(range(1, b + 1)))
    tags = [(tuple(x for x in range(1, c + 1) if x not in B), B)
            for B in combinations(range(1, c + 1), b)]
    # E_j maps the weight space to a space where each target gets at most two
    # contributions; propagate coefficients outward from the lead tag.
    coef = {lead: ONE}
    frontier = [lead]
    Es = [gl_n_E(j, n) for j in range(1, c)]
    while frontier:
        nxt = []
        for t in frontier:
            for E in Es:
                for tgt, x in E.on_tag(t).items():
                    # find the other source hitting tgt
                    for s in tags:
                        if s == t:
                            continue
                        y = E.on_tag(s).get(tgt)
                        if y is None:
                            continue
                        val = -(coef[t] * x) * y ** -1 if _is_unit(y) else None
                        if val is None:
                            raise RuntimeError("non-monomial coefficient in kernel solve")
                        if s in coef:
                            if coef[s] != val:
                                raise RuntimeError("no highest weight vector: inconsistent")
                        else:
                            coef[s] = val
                            nxt.append(s)
        frontier = nxt
    v = {t: coef[t] for t in tags if t in coef and coef[t]}
    for E in Es:
        if E(v):
            raise RuntimeError("highest weight solve failed")
    return v


def _is_unit(x):
    items = list(x.items())
    return len(items) == 1 and abs(items[0][1]) == 1

