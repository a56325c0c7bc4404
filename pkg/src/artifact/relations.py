"""Instances of the defining local relations of T~ on a given idempotent.

Each instance is returned as an Element (left side minus right side) with the
given bottom; it vanishes in T~ and therefore in every T~-module."""
from __future__ import annotations

from .stendhal_core import BLACK, RED, Diagram, Element


def _el(bottom, words):
    """Sum of coeff * diagram for words given as [(coeff, word), ...]."""
    terms = {}
    top = None
    for c, w in words:
        d = Diagram(bottom, tuple(w))
        top = d.top if top is None else top
        terms[d] = terms.get(d, 0) + c
    return Element(bottom, top, terms)


def local_relations(e):
    s = e.seq
    n = len(s)
    out = []
    for k in range(n - 1):
        (k1, l1), (k2, l2) = s[k], s[k + 1]
        X = ("x", k)
        if k1 == BLACK and k2 == BLACK:
            dl, dr = ("dot", k), ("dot", k + 1)
            if l1 == l2:
                out.append(_el(e, [(1, [X, dl]), (-1, [dr, X]), (-1, [])]))
                out.append(_el(e, [(1, [dl, X]), (-1, [X, dr]), (-1, [])]))
                out.append(_el(e, [(1, [X, X])]))
            else:
                out.append(_el(e, [(1, [X, dl]), (-1, [dr, X])]))
                out.append(_el(e, [(1, [dl, X]), (-1, [X, dr])]))
                if l2 == l1 + 1:
                    out.append(_el(e, [(1, [X, X]), (-1, [dr]), (1, [dl])]))
                elif l1 == l2 + 1:
                    out.append(_el(e, [(1, [X, X]), (-1, [dl]), (1, [dr])]))
                else:
                    out.append(_el(e, [(1, [X, X]), (-1, [])]))
        elif k1 == BLACK and k2 == RED:
            # dot slides through the red; cost of separating
            out.append(_el(e, [(1, [X, ("dot", k + 1)]), (-1, [("dot", k), X])]))
            out.append(_el(e, [(1, [X, X]), (-1, [("dot", k)] if l1 == l2 else [])]))
        elif k1 == RED and k2 == BLACK:
            out.append(_el(e, [(1, [X, ("dot", k)]), (-1, [("dot", k + 1), X])]))
            out.append(_el(e, [(1, [X, X]), (-1, [("dot", k + 1)] if l2 == l1 else [])]))
    for k in range(n - 2):
        a, b, c = s[k], s[k + 1], s[k + 2]
        if sum(1 for x in (a, b, c) if x[0] == RED) > 1:
            continue
        L = [("x", k), ("x", k + 1), ("x", k)]
        Rw = [("x", k + 1), ("x", k), ("x", k + 1)]
        corr = 0
        if a[0] == BLACK and b[0] == BLACK and c[0] == BLACK:
            if a[1] == c[1] == b[1] + 1:
                corr = 1
            elif a[1] == c[1] == b[1] - 1:
                corr = -1
        elif b[0] == RED and a[1] == c[1] == b[1]:
            corr = 1  # sum over a+b+1 = lambda^i with lambda^i = 1
        out.append(_el(e, [(1, L), (-1, Rw)] + ([(-corr, [])] if corr else [])))
    # far commutation
    for k in range(n - 1):
        for m in range(k + 2, n - 1):
            if s[k][0] == RED and s[k + 1][0] == RED or s[m][0] == RED and s[m + 1][0] == RED:
                continue
            out.append(_el(e, [(1, [("x", k), ("x", m)]), (-1, [("x", m), ("x", k)])]))
    return [r for r in out if r.top is not None]


def relations_hold_in_tilde(e):
    from .stendhal_core import equal
    for r in local_relations(e):
        if not equal(r, Element.zero(r.bottom, r.top)):
            return False
    return True
