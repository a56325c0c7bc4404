"""Exact Laurent polynomials in q and the usual quantum numbers."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class LaurentScalar:
    """An element of Z[q, q^-1], stored sparsely as {exponent: coefficient}."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                v = int(v)
                if v:
                    c[int(e)] = c.get(int(e), 0) + v
        self._c = {e: v for e, v in sorted(c.items()) if v}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, v):
        return cls({0: v})

    @classmethod
    def mono(cls, e, v=1):
        return cls({e: v})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot coerce {x!r} to LaurentScalar")

    # access
    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_degree(self):
        return min(self._c) if self._c else None

    def max_degree(self):
        return max(self._c) if self._c else None

    def at(self, value):
        """Evaluate at q = value (value may be a Fraction or int)."""
        return sum(v * value ** e for e, v in self._c.items())

    def total(self):
        return sum(self._c.values())

    # arithmetic
    def __add__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentScalar(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentScalar(c)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            (e, v), = self._c.items()
            if abs(v) != 1:
                raise ValueError("only unit monomials are invertible")
            return LaurentScalar({-e * (-k): v ** (-k)})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        """Multiply by q^k."""
        return LaurentScalar({e + k: v for e, v in self._c.items()})

    def bar(self):
        return LaurentScalar({-e: v for e, v in self._c.items()})

    def exact_div(self, other):
        """Polynomial long division; raises ValueError if not exact."""
        other = LaurentScalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        rem = dict(self._c)
        quo = {}
        dlead = other.max_degree()
        dcoef = other[dlead]
        dlow = other.min_degree()
        while rem:
            top = max(rem)
            if top - dlead < min(rem) - dlow if rem else False:
                break
            v = rem[top]
            if v % dcoef:
                raise ValueError("inexact Laurent division")
            f = v // dcoef
            s = top - dlead
            quo[s] = quo.get(s, 0) + f
            for e, w in other._c.items():
                rem[e + s] = rem.get(e + s, 0) - f * w
                if not rem[e + s]:
                    del rem[e + s]
            if rem and max(rem) - dlead < min(self._c) - dlow - 1:
                raise ValueError("inexact Laurent division")
        return LaurentScalar(quo)

    # comparison / hashing
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.const(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    # serialization
    def to_json(self):
        return {str(e): v for e, v in self._c.items()}

    @classmethod
    def from_json(cls, obj):
        return cls({int(e): int(v) for e, v in obj.items()})

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            if e == 0:
                parts.append(str(v))
            else:
                mon = "q" if e == 1 else f"q^{e}"
                parts.append(mon if v == 1 else ("-" + mon if v == -1 else f"{v}*{mon}"))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LaurentScalar()
ONE = LaurentScalar({0: 1})
q = LaurentScalar({1: 1})


def qint(n: int) -> LaurentScalar:
    """Balanced quantum integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}."""
    if n < 0:
        return -qint(-n)
    return LaurentScalar({n - 1 - 2 * j: 1 for j in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentScalar:
    if n < 0:
        raise ValueError(f"qfact needs n >= 0, got {n}")
    out = ONE
    for j in range(1, n + 1):
        out = out * qint(j)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentScalar:
    if not 0 <= k <= n:
        raise ValueError(f"qbinom({n}, {k}): need 0 <= k <= n")
    if k == 0 or k == n:
        return ONE
    # Pascal: [n,k] = q^k [n-1,k] + q^{k-n} [n-1,k-1]
    return qbinom(n - 1, k).shift(k) + qbinom(n - 1, k - 1).shift(k - n)


@dataclass(frozen=True)
class GradedShift:
    """A bigrading shift: internal (n) and homological [n]."""

    internal: int = 0
    homological: int = 0

    @classmethod
    def tate(cls, n: int) -> "GradedShift":
        # <n> = [n](-n)
        return cls(internal=-n, homological=n)

    def __add__(self, other):
        return GradedShift(self.internal + other.internal,
                           self.homological + other.homological)

    def __neg__(self):
        return GradedShift(-self.internal, -self.homological)

    def k0(self) -> LaurentScalar:
        """Class of the shift in K_0: (n) -> q^n, [1] -> -1."""
        sign = -1 if self.homological % 2 else 1
        return LaurentScalar({self.internal: sign})

    def to_json(self):
        return {"internal": self.internal, "homological": self.homological}
