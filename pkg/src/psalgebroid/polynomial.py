"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .linalg import as_fraction


class Poly:
    """Polynomial in ``nvars`` variables, stored as {exponent tuple: Fraction}.

    Zero coefficients are never stored, so equality is syntactic.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    t[e] = c
        self.terms = t

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def const(cls, nvars: int, c=1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The variable with 0-based index ``i``."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials in different numbers of variables")

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def deriv(self, i: int) -> "Poly":
        """Partial derivative in the 0-based variable ``i``."""
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                t[tuple(ne)] = c * k
        return Poly._raw(self.nvars, t)

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def compose(self, images: Sequence["Poly"], nvars: int | None = None) -> "Poly":
        """Substitute variable i by ``images[i]``; the result lives in the
        images' ring (``nvars`` variables, required when there are no images)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        m = images[0].nvars if images else nvars
        if m is None:
            raise ValueError("target ring size unknown")
        if not self.nvars:
            return Poly.const(m, self.terms.get((), 0))
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = Poly.const(m) if k == 0 else power(i, k - 1) * images[i]
            return cache[key]

        out = Poly.zero(m)
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=monomial_key):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def monomial_key(e: tuple) -> tuple:
    """Graded-lex order: total degree first, then x1 before x2 before ..."""
    return (sum(e), tuple(-k for k in e))


def monomials(nvars: int, max_degree: int) -> list[tuple]:
    """All exponent vectors of total degree <= max_degree in graded-lex order."""
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    if nvars == 0 and max_degree >= 0:
        out = [()]
    return sorted(set(out), key=monomial_key)


def affine(nvars: int, const, linear: Sequence) -> Poly:
    """const + sum_i linear[i] * x_i."""
    t = {(0,) * nvars: const}
    for i, c in enumerate(linear):
        e = [0] * nvars
        e[i] = 1
        t[tuple(e)] = c
    return Poly(nvars, t)


def poly_to_json(p: Poly) -> list:
    return [{"exps": list(e), "coef": fraction_str(p.terms[e])} for e in sorted(p.terms, key=monomial_key)]


def poly_from_json(nvars: int, data: list) -> Poly:
    return Poly(nvars, {tuple(t["exps"]): as_fraction(t["coef"]) for t in data})


def fraction_str(x) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"
