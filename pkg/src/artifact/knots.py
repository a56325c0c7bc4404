"""Tangle diagrams, their compilation to ladder words and decategorified
evaluation to sl_n Reshetikhin-Turaev invariants.

A diagram is read bottom to top as a list of slices acting on the visible
strands: ``Cup(pos, a)`` creates two strands labelled (n - a, a) at
positions pos, pos + 1; ``Cap(pos, a)`` closes two strands labelled
(n - a, a); ``Crossing(pos, sign, (a, b))`` crosses the strands at pos,
pos + 1, labelled (a, b) before and (b, a) after.  Labels are the ladder
labels of upward strands (a strand labelled n - a going up is the strand
labelled a going down).

Compilation places every strand on an upright of a ladder.  Extra
"reservoir" uprights labelled n or 0 supply cups and absorb caps: a cup is
the rung F^{(a)} on a reservoir pair (n, 0), a cap is E^{(a)} back to (n, 0),
and a crossing is the Euler characteristic of the Rickard complex.
Reservoirs are moved past other uprights by the rungs that move a whole
label across; these act as the plain swap up to the sign (-1)^{b(n-b)},
which is divided out.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import rickard_complex
from .qring import ONE, ZERO, LaurentScalar
from .skewhowe import rung_operator, vclean

__all__ = [
    "Cup", "Cap", "Crossing", "TangleDiagram", "TangleError", "UnsupportedFeature",
    "InvariantValue", "LadderWord", "xi", "xi_prime", "weighted_writhe",
    "grading_offset", "compile_tangle", "tangle_operator", "run_word",
    "crossing_normalization", "twist_exponent", "evaluate", "unknot",
    "plat_closure", "trefoil", "hopf_link", "braid_operator",
    "reidemeister2_check", "reidemeister3_check",
]


class TangleError(ValueError):
    """A malformed tangle; ``slice_index`` locates the offending slice."""

    def __init__(self, slice_index, message):
        super().__init__(f"slice {slice_index}: {message}")
        self.slice_index = slice_index
        self.message = message


class UnsupportedFeature(ValueError):
    pass


@dataclass(frozen=True)
class Cup:
    pos: int
    color: int

    def to_json(self):
        return {"cup": [self.pos, self.color]}


@dataclass(frozen=True)
class Cap:
    pos: int
    color: int

    def to_json(self):
        return {"cap": [self.pos, self.color]}


@dataclass(frozen=True)
class Crossing:
    pos: int
    sign: int
    colors: tuple

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("crossing sign must be +1 or -1")
        object.__setattr__(self, "colors", tuple(self.colors))

    def to_json(self):
        return {"x": [self.pos, "+" if self.sign > 0 else "-", list(self.colors)]}


def _slice_from_json(obj):
    if len(obj) != 1:
        raise ValueError(f"a slice has exactly one key, got {sorted(obj)}")
    (k, v), = obj.items()
    if k == "cup":
        return Cup(int(v[0]), int(v[1]))
    if k == "cap":
        return Cap(int(v[0]), int(v[1]))
    if k == "x":
        pos, sign, colors = v
        s = {"+": 1, "-": -1, 1: 1, -1: -1}.get(sign)
        if s is None:
            raise ValueError(f"bad crossing sign {sign!r}")
        return Crossing(int(pos), s, tuple(int(c) for c in colors))
    raise ValueError(f"unknown slice type {k!r}")


@dataclass(frozen=True)
class TangleDiagram:
    n: int
    slices: tuple
    framing: tuple = None
    bottom: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        if self.framing is not None:
            object.__setattr__(self, "framing", tuple(int(f) for f in self.framing))
        if self.n < 1:
            raise ValueError("n must be positive")
        self.labels()

    @classmethod
    def from_json(cls, obj):
        try:
            n = int(obj["n"])
            slices = [_slice_from_json(s) for s in obj.get("slices", [])]
        except (KeyError, TypeError, IndexError) as e:
            raise ValueError(f"malformed tangle: {e}") from e
        return cls(n, slices, obj.get("framing"), tuple(obj.get("bottom", ())))

    def to_json(self):
        out = {"n": self.n, "slices": [s.to_json() for s in self.slices]}
        if self.framing is not None:
            out["framing"] = list(self.framing)
        if self.bottom:
            out["bottom"] = list(self.bottom)
        return out

    def labels(self):
        """Labels of the visible strands after each slice (validates colors)."""
        n = self.n
        cur = list(self.bottom)
        for c in cur:
            if not 0 <= c <= n:
                raise TangleError(-1, f"bottom label {c} outside [0, {n}]")
        out = [tuple(cur)]
        for k, s in enumerate(self.slices):
            if isinstance(s, Cup):
                if not 0 <= s.color <= n:
                    raise TangleError(k, f"color {s.color} outside [0, {n}]")
                if not 0 <= s.pos <= len(cur):
                    raise TangleError(k, f"cup position {s.pos} out of range")
                cur[s.pos:s.pos] = [n - s.color, s.color]
            elif isinstance(s, Cap):
                if not 0 <= s.pos < len(cur) - 1:
                    raise TangleError(k, f"cap position {s.pos} out of range")
                want = [n - s.color, s.color]
                if cur[s.pos:s.pos + 2] != want:
                    raise TangleError(k, f"cap of color {s.color} needs labels {want}, "
                                         f"found {cur[s.pos:s.pos + 2]}")
                del cur[s.pos:s.pos + 2]
            elif isinstance(s, Crossing):
                if not 0 <= s.pos < len(cur) - 1:
                    raise TangleError(k, f"crossing position {s.pos} out of range")
                if tuple(cur[s.pos:s.pos + 2]) != s.colors:
                    raise TangleError(k, f"crossing colors {list(s.colors)} do not match "
                                         f"strand labels {cur[s.pos:s.pos + 2]}")
                cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
            else:
                raise TangleError(k, f"unknown slice {s!r}")
            out.append(tuple(cur))
        return out

    @property
    def is_closed(self):
        return not self.bottom and not self.labels()[-1]

    def crossings(self):
        return [(k, s) for k, s in enumerate(self.slices) if isinstance(s, Crossing)]

    # -- components and orientations

    def _edges(self):
        """Edges between points (level, pos): vertical segments through each
        slice and the horizontal cups and caps."""
        labels = self.labels()
        edges = []
        for k, s in enumerate(self.slices):
            for p in range(len(labels[k])):
                if isinstance(s, Cup):
                    q = p if p < s.pos else p + 2
                elif isinstance(s, Cap):
                    if p in (s.pos, s.pos + 1):
                        continue
                    q = p if p < s.pos else p - 2
                else:
                    q = {s.pos: s.pos + 1, s.pos + 1: s.pos}.get(p, p)
                crossing = isinstance(s, Crossing) and p in (s.pos, s.pos + 1)
                edges.append(((k, p), (k + 1, q), ("x" if crossing else "v", k, p, labels[k][p])))
            if isinstance(s, Cup):
                edges.append(((k + 1, s.pos), (k + 1, s.pos + 1), ("cup", k, s.color)))
            if isinstance(s, Cap):
                edges.append(((k, s.pos), (k, s.pos + 1), ("cap", k)))
        return edges

    def components(self):
        """Traverse every component once.

        Returns (comp, orient, colors): ``comp[(k, p)]`` and ``orient[(k, p)]``
        (+1 upward, -1 downward) for the strand entering crossing slice k at
        position p, and the color of each component read along its
        traversal (label when going up, n - label when going down)."""
        edges = self._edges()
        at = {}
        for e, (u, v, _) in enumerate(edges):
            at.setdefault(u, []).append(e)
            at.setdefault(v, []).append(e)
        used = set()
        comp, orient, colors = {}, {}, []
        # open arcs first (start at an endpoint), then closed loops
        starts = sorted(pt for pt, es in at.items() if len(es) == 1) + sorted(at)
        for start in starts:
            free = [e for e in at[start] if e not in used]
            if not free:
                continue
            c = len(colors)
            color = None
            cur, e = start, free[0]
            while e is not None:
                used.add(e)
                u, v, tag = edges[e]
                nxt = v if u == cur else u
                if tag[0] in ("x", "v"):
                    up = 1 if nxt[0] > cur[0] else -1
                    lab = tag[3]
                    if color is None:
                        color = lab if up > 0 else self.n - lab
                    if tag[0] == "x":
                        comp[(tag[1], tag[2])] = c
                        orient[(tag[1], tag[2])] = up
                elif tag[0] == "cup" and color is None:
                    # left to right along a cup climbs the leg labelled a
                    color = tag[2] if nxt[1] > cur[1] else self.n - tag[2]
                cur = nxt
                rest = [f for f in at[cur] if f not in used]
                e = rest[0] if rest else None
            colors.append(color)
        return comp, orient, colors

    def oriented_signs(self):
        """{crossing slice: (oriented sign, self-crossing component or None)}."""
        comp, orient, _ = self.components()
        out = {}
        for k, s in self.crossings():
            o1, o2 = orient[(k, s.pos)], orient[(k, s.pos + 1)]
            c1, c2 = comp[(k, s.pos)], comp[(k, s.pos + 1)]
            out[k] = (s.sign * o1 * o2, c1 if c1 == c2 else None)
        return out

    def self_writhes(self):
        _, _, colors = self.components()
        w = [0] * len(colors)
        for sign, c in self.oriented_signs().values():
            if c is not None:
                w[c] += sign
        return w


# ---------------------------------------------------------------- gradings

def _check_pair(a, b, n):
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"labels ({a}, {b}) outside [1, {n}]")


def xi(a, b, n):
    _check_pair(a, b, n)
    return Fraction((n - max(a, b)) * min(a, b), n)


def xi_prime(a, b, n):
    _check_pair(a, b, n)
    return Fraction(min(a, b) * max(a, b), n)


def _crossing_pairs(L):
    for _, s in L.crossings():
        a, b = s.colors
        if a in (0, L.n) or b in (0, L.n):
            continue  # a crossing with an invisible strand carries no shift
        yield s.sign, a, b


def weighted_writhe(L):
    return sum((s * xi_prime(a, b, L.n) for s, a, b in _crossing_pairs(L)), Fraction(0))


def grading_offset(L):
    """The shift carried by the braiding functors, sum of sign * xi(a, b)."""
    return sum((s * xi(a, b, L.n) for s, a, b in _crossing_pairs(L)), Fraction(0))


# ---------------------------------------------------------------- compilation

@dataclass
class LadderWord:
    n: int
    ell: int
    initial: tuple        # initial upright labels
    steps: list = field(default_factory=list)  # see compile_tangle
    final: tuple = ()
    initial_kinds: tuple = ()  # "s" strand / "r" reservoir per upright
    final_kinds: tuple = ()

    def to_json(self):
        def enc(st):
            if st[0] == "rung":
                _, kind, i, c, sgn, why = st
                return {"rung": f"{kind}{i}^({c})", "sign": sgn, "role": why}
            _, i, sign, (a, b) = st
            cx = rickard_complex(i, a - b, sign, (a, b), self.n)
            return {"crossing": i, "sign": "+" if sign > 0 else "-", "colors": [a, b],
                    "rickard": cx.to_json()["terms"]}
        return {"n": self.n, "ell": self.ell, "initial": list(self.initial),
                "final": list(self.final), "steps": [enc(s) for s in self.steps]}


def compile_tangle(L, park=False):
    """The ladder word of L: rungs ("rung", kind, i, c, sign, role) and
    crossings ("crossing", i, sign, (a, b)), with 1-based upright index i.

    With ``park`` the reservoirs are routed back to the right end at the top,
    so that open tangles compose as operators on their visible strands."""
    n = L.n
    L.labels()
    ncups = sum(isinstance(s, Cup) for s in L.slices)
    # entries: ("s", label) for strands, ("r", label) for reservoirs
    state = [("s", c) for c in L.bottom] + [e for _ in range(ncups) for e in (("r", n), ("r", 0))]
    word = LadderWord(n, len(state), tuple(lab for _, lab in state))
    word.initial_kinds = tuple(k for k, _ in state)

    def visible():
        return [j for j, (k, _) in enumerate(state) if k == "s"]

    def swap(j, why):
        (k1, x), (k2, y) = state[j], state[j + 1]
        if k1 == "s" and k2 == "s":
            raise RuntimeError("routing tried to swap two strands")
        if x == y:
            state[j], state[j + 1] = state[j + 1], state[j]
            return
        if x == 0:
            kind, c, other = "E", y, y
        elif y == 0:
            kind, c, other = "F", x, x
        elif x == n:
            kind, c, other = "F", n - y, y
        else:  # y == n
            kind, c, other = "E", n - x, x
        sgn = (-1) ** (other * (n - other)) if other not in (0, n) else 1
        word.steps.append(("rung", kind, j + 1, c, sgn, why))
        state[j], state[j + 1] = state[j + 1], state[j]

    def move(src, dst, why):
        while src > dst:
            swap(src - 1, why)
            src -= 1
        while src < dst:
            swap(src, why)
            src += 1

    def make_adjacent(p):
        """Clear reservoirs from between visible strands p and p + 1."""
        vis = visible()
        j1, j2 = vis[p], vis[p + 1]
        while j2 > j1 + 1:
            move(j1 + 1, j2, "route")
            vis = visible()
            j1, j2 = vis[p], vis[p + 1]
        return j1

    for k, s in enumerate(L.slices):
        if isinstance(s, Cup):
            vis = visible()
            slot = vis[s.pos - 1] + 1 if s.pos > 0 else 0
            # bring a reservoir n to the slot, then a reservoir 0 right after it
            rn = min((j for j, e in enumerate(state) if e == ("r", n)),
                     key=lambda j: (abs(j - slot), j), default=None)
            if rn is None:
                raise TangleError(k, "no reservoir available")
            move(rn, slot if rn >= slot else slot - 1, "route")
            at = slot if rn >= slot else slot - 1
            r0 = min((j for j, e in enumerate(state) if e == ("r", 0) and j != at),
                     key=lambda j: (abs(j - at), j))
            if r0 < at:
                move(r0, at, "route")
                at -= 1
            else:
                move(r0, at + 1, "route")
            word.steps.append(("rung", "F", at + 1, s.color, 1, "cup"))
            state[at], state[at + 1] = ("s", n - s.color), ("s", s.color)
        elif isinstance(s, Cap):
            j = make_adjacent(s.pos)
            word.steps.append(("rung", "E", j + 1, s.color, 1, "cap"))
            state[j], state[j + 1] = ("r", n), ("r", 0)
        else:
            j = make_adjacent(s.pos)
            word.steps.append(("crossing", j + 1, s.sign, s.colors))
            state[j], state[j + 1] = state[j + 1], state[j]
    if park:
        # send every reservoir to the right end, keeping their order
        for j in range(len(state) - 1, -1, -1):
            if state[j][0] == "r":
                end = max(i for i, e in enumerate(state) if e[0] == "s" or i == j)
                move(j, end, "park")
    word.final = tuple(lab for _, lab in state)
    word.final_kinds = tuple(k for k, _ in state)
    return word


def tangle_operator(L, v):
    """Apply the ladder word of an open tangle to a vector on its bottom strands.

    Vectors are dicts {tag: LaurentScalar} with one subset per visible strand;
    the reservoir uprights are added on input and dropped on output."""
    word = compile_tangle(L, park=True)
    full = tuple(range(1, L.n + 1))

    def pad(t):
        it = iter(t)
        return tuple(next(it) if k == "s" else (full if lab == L.n else ())
                     for k, lab in zip(word.initial_kinds, word.initial))

    out = run_word(word, {pad(t): c for t, c in v.items()})
    res = {}
    for t, c in out.items():
        key = tuple(x for x, k in zip(t, word.final_kinds) if k == "s")
        res[key] = res.get(key, ZERO) + c
    return vclean(res)


def _vector_of_labels(labels):
    return tuple(tuple(range(1, c + 1)) for c in labels)


def braid_operator(i, sign, ell, n):
    """The Euler characteristic of Theta_i^{sign} on the wedge space, blockwise."""
    def apply(v):
        out = {}
        for t, c in v.items():
            a, b = len(t[i - 1]), len(t[i])
            R = rickard_complex(i, a - b, sign, (a, b), n)
            for t2, c2 in R.euler_operator(ell, n)({t: c}).items():
                out[t2] = out.get(t2, ZERO) + c2
        return vclean(out)
    return apply


def run_word(word, v):
    for st in word.steps:
        if st[0] == "rung":
            _, kind, i, c, sgn, _ = st
            v = rung_operator(kind, i, c, word.ell, word.n)(v)
            if sgn != 1:
                v = {t: x * sgn for t, x in v.items()}
        else:
            _, i, sign, _ = st
            v = braid_operator(i, sign, word.ell, word.n)(v)
        if not v:
            break
    return v


# ---------------------------------------------------------------- evaluation

def _mu(x, y, n):
    return min(x, n - x, y, n - y)


def crossing_normalization(sign, x, y, n, parallel):
    """(unit sign, q-exponent) multiplying the ladder value of one crossing.

    The ladder crossing between uprights labelled (x, y) is rescaled by
    q^{sign (xi(x, y) + n/2 - 2 mu)}, mu = min(x, n-x, y, n-y), and crossings
    between antiparallel strands also by (-1)^mu.  This is the unique choice
    (up to writhe-type terms) making crossings slide past cups and caps, and
    the q-part does not depend on orientations."""
    mu = _mu(x, y, n)
    unit = 1 if parallel else (-1) ** mu
    return unit, sign * (xi(x, y, n) + Fraction(n, 2) - 2 * mu)


@dataclass(frozen=True)
class InvariantValue:
    """The number q^offset * poly, kept with 0 <= offset < 1."""
    poly: LaurentScalar
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        off = Fraction(self.offset)
        k = off.numerator // off.denominator
        object.__setattr__(self, "offset", off - k)
        object.__setattr__(self, "poly", self.poly.shift(k) if k else self.poly)

    def __mul__(self, other):
        return InvariantValue(self.poly * other.poly, self.offset + other.offset)

    def to_json(self):
        return {"poly": self.poly.to_json(), "offset": str(self.offset)}


def _raw(L):
    """The ladder value of a closed diagram, before any normalization."""
    if not L.is_closed:
        raise UnsupportedFeature("evaluate needs a closed link diagram")
    word = compile_tangle(L)
    out = run_word(word, {_vector_of_labels(word.initial): ONE})
    tag = _vector_of_labels(word.final)
    if set(out) - {tag}:
        raise RuntimeError("closed ladder did not return to the reservoir weight space")
    return out.get(tag, ZERO)


def twist_exponent(a, n):
    """q-exponent of the framing factor theta_a of a strand colored a."""
    if a in (0, n):
        return Fraction(0)
    m = min(a, n - a)
    return xi(a, a, n) + Fraction(n, 2) - 2 * m - a * (n - a)


def _check_supported(L):
    for k, s in L.crossings():
        if any(c in (0, L.n) for c in s.colors):
            raise UnsupportedFeature(
                f"slice {k}: crossings with 0- or n-labelled strands are not supported")


def evaluate(L, n=None):
    """The invariant of a closed diagram as q^offset * poly.

    Every crossing is rescaled by :func:`crossing_normalization`, which makes
    the result an invariant of framed oriented links with blackboard framing.
    When ``L.framing`` is given, component c is moved from its blackboard
    framing w_c to framing f_c by theta^{f_c - w_c}."""
    if n is not None and n != L.n:
        L = TangleDiagram(n, L.slices, L.framing, L.bottom)
    _check_supported(L)
    if not L.slices and not L.bottom:
        return InvariantValue(ONE, Fraction(0))
    poly = _raw(L)
    comp, orient, colors = L.components()
    exponent = Fraction(0)
    for k, s in L.crossings():
        parallel = orient[(k, s.pos)] == orient[(k, s.pos + 1)]
        unit, e = crossing_normalization(s.sign, *s.colors, L.n, parallel)
        exponent += e
        if unit < 0:
            poly = -poly
    if L.framing is not None:
        w = L.self_writhes()
        if len(L.framing) != len(w):
            raise ValueError(f"framing lists {len(L.framing)} components, diagram has {len(w)}")
        for f, bw, a in zip(L.framing, w, colors):
            exponent += (f - bw) * twist_exponent(a, L.n)
    return InvariantValue(poly, exponent)


def unknot(n, p, framing=0):
    if p in (0, n):
        return TangleDiagram(n, [], None)
    return TangleDiagram(n, [Cup(0, p), Cap(0, p)], (framing,))


def plat_closure(n, word, colors=(1, 1), framing=None):
    """Plat closure of a braid word on four strands.

    ``word`` lists (position, sign) pairs; cups of colors (a, n - b) open the
    strands, so that the middle two strands are parallel."""
    a, b = colors
    slices = [Cup(0, a), Cup(2, n - b)]
    cur = [n - a, a, b, n - b]
    for pos, sign in word:
        slices.append(Crossing(pos, sign, (cur[pos], cur[pos + 1])))
        cur[pos], cur[pos + 1] = cur[pos + 1], cur[pos]
    if cur[0] + cur[1] != n or cur[2] + cur[3] != n:
        raise TangleError(len(slices), f"plat closure labels {cur} do not close up")
    slices += [Cap(2, cur[3]), Cap(0, cur[1])]
    return TangleDiagram(n, slices, framing)


def trefoil(n=2, sign=1, color=1, framing=None):
    return plat_closure(n, [(1, sign)] * 3, (color, color), framing)


def hopf_link(n=2, sign=1, colors=(1, 1), framing=None):
    return plat_closure(n, [(1, sign)] * 2, colors, framing)


# ---------------------------------------------------------------- Reidemeister checks

def _blocks(ell, n, max_label=None):
    from .skewhowe import block_basis, pvecs
    for p in range(ell * n + 1):
        for pv in pvecs(ell, n, p):
            if max_label is not None and max(pv) > max_label:
                continue
            yield pv, block_basis(n, pv)


def reidemeister2_check(ell, n, max_label=None):
    """beta_i beta_i^{-1} = beta_i^{-1} beta_i = 1 on every block."""
    bad = []
    for pv, tags in _blocks(ell, n, max_label):
        for i in range(1, ell):
            bp, bm = braid_operator(i, 1, ell, n), braid_operator(i, -1, ell, n)
            for t in tags:
                v = {t: ONE}
                if bm(bp(v)) != v or bp(bm(v)) != v:
                    bad.append((pv, i, t))
    return bad


def reidemeister3_check(ell, n, max_label=None):
    """beta_i beta_{i+1} beta_i = beta_{i+1} beta_i beta_{i+1} on every block."""
    bad = []
    for pv, tags in _blocks(ell, n, max_label):
        for i in range(1, ell - 1):
            b1, b2 = braid_operator(i, 1, ell, n), braid_operator(i + 1, 1, ell, n)
            for t in tags:
                v = {t: ONE}
                if b1(b2(b1(v))) != b2(b1(b2(v))):
                    bad.append((pv, i, t))
    return bad
