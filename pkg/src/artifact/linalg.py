"""Exact rational linear algebra on top of python-flint's fmpq_mat."""
from __future__ import annotations

from fractions import Fraction

import flint


def _q(x):
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def _frac(x):
    return Fraction(int(x.p), int(x.q))


def to_mat(rows, ncols=None):
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    m = flint.fmpq_mat(len(rows), ncols)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if v:
                m[i, j] = _q(v)
    return m


def sparse_to_mat(rows, ncols):
    """rows: list of {col: value} dicts."""
    m = flint.fmpq_mat(len(rows), ncols)
    for i, r in enumerate(rows):
        for j, v in r.items():
            if v:
                m[i, j] = _q(v)
    return m


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (list of Fraction rows, pivot columns)."""
    rows = list(rows)
    if not rows:
        return [], []
    m = to_mat(rows, ncols)
    return _rref_mat(m)


def _rref_mat(m):
    r, rank = m.rref()
    out, piv = [], []
    nc = r.ncols()
    for i in range(rank):
        row = [_frac(r[i, j]) for j in range(nc)]
        out.append(row)
        piv.append(next(j for j, v in enumerate(row) if v))
    return out, piv


def sparse_rref(rows, ncols):
    if not rows:
        return [], []
    return _rref_mat(sparse_to_mat(rows, ncols))


def rank(rows, ncols=None):
    rows = list(rows)
    if not rows:
        return 0
    return to_mat(rows, ncols).rank()


def sparse_rank(rows, ncols):
    if not rows:
        return 0
    return sparse_to_mat(rows, ncols).rank()


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} for A given by rows (list of lists)."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution x of A x = rhs (A as dense rows), or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


def solve_sparse(cols, target, nrows_hint=None):
    """Express `target` (a {key: value} dict) as a combination of the vectors
    `cols` (list of {key: value} dicts).  Returns coefficient list or None."""
    keys = {}
    for c in cols:
        for k in c:
            keys.setdefault(k, len(keys))
    for k in target:
        if k not in keys:
            return None
    n = len(cols)
    # equations: one per key
    eqs = [dict() for _ in keys]
    for j, c in enumerate(cols):
        for k, v in c.items():
            eqs[keys[k]][j] = v
    rhs = [0] * len(keys)
    for k, v in target.items():
        rhs[keys[k]] = v
    m = flint.fmpq_mat(len(keys), n + 1)
    for i, e in enumerate(eqs):
        for j, v in e.items():
            m[i, j] = _q(v)
        if rhs[i]:
            m[i, n] = _q(rhs[i])
    red, piv = _rref_mat(m)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def as_int(x):
    """Fraction -> int when integral."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x
