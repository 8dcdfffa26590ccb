"""Finite-dimensional Lie algebras over Q and their Chevalley-Eilenberg complex.

The complex is built on the exterior algebra of the dual space, with basis
e*_I for ascending 0-based index tuples I. The differential is

    (d eta)(x_0, ..., x_p) = sum_{i<j} (-1)^{i+j} eta([x_i, x_j], x_0, ..^i..^j.., x_p).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .config import LIMITS
from .exterior import merge, perm_sign
from .homology import CochainComplex, CohomologyResult, cohomology
from .linalg import RationalMatrix, as_fraction
from .simplicial import DomainError, MalformedInput


class LieAlgebra:
    """Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
                 name: str = ""):
        if dim < 0:
            raise MalformedInput("negative dimension")
        if dim > LIMITS.max_lie_dim:
            raise DomainError(f"Lie algebra dimension {dim} exceeds limit {LIMITS.max_lie_dim}")
        self.dim = dim
        self.name = name
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < j < dim):
                raise MalformedInput(f"brackets must be given for 0 <= i < j < dim, got ({i}, {j})")
            for k, v in coeffs.items():
                k = int(k)
                if not 0 <= k < dim:
                    raise MalformedInput(f"basis index {k} out of range")
                v = as_fraction(v)
                c[i][j][k] = v
                c[j][i][k] = -v
        self.c = c

    @classmethod
    def from_constants(cls, c: Sequence[Sequence[Sequence]], name: str = "") -> "LieAlgebra":
        """Use a full (possibly invalid) constant table verbatim."""
        n = len(c)
        g = cls(n, name=name)
        g.c = [[[as_fraction(c[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        return g

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebra":
        return cls(n, name=f"abelian{n}")

    @classmethod
    def sl2(cls) -> "LieAlgebra":
        # basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
        return cls(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, name="sl2")

    @classmethod
    def solvable2(cls) -> "LieAlgebra":
        # [e_1, e_2] = e_1
        return cls(2, {(0, 1): {0: 1}}, name="solvable2")

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        return list(self.c[i][j])

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.c == other.c

    def __hash__(self):
        return hash(tuple(x for a in self.c for b in a for x in b))

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or self.dim})"


def bracket(g: LieAlgebra, u: Sequence, v: Sequence) -> list[Fraction]:
    n = g.dim
    if len(u) != n or len(v) != n:
        raise DomainError("vectors must have length dim g")
    out = [Fraction(0)] * n
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            ab = as_fraction(a) * as_fraction(b)
            for k, ck in enumerate(g.c[i][j]):
                if ck:
                    out[k] += ab * ck
    return out


@dataclass
class Violation:
    kind: str
    indices: tuple

    def __str__(self) -> str:
        return f"{self.kind} violated at indices {self.indices}"


@dataclass
class ValidationReport:
    ok: bool
    violation: Violation | None = None


def validate(g: LieAlgebra) -> ValidationReport:
    n, c = g.dim, g.c
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    return ValidationReport(False, Violation("antisymmetry", (i, j, k)))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                for k in range(n):
                    s = sum(c[i][j][m] * c[m][l][k] + c[j][l][m] * c[m][i][k] + c[l][i][m] * c[m][j][k]
                            for m in range(n))
                    if s:
                        return ValidationReport(False, Violation("Jacobi", (i, j, l, k)))
    return ValidationReport(True)


def ce_basis(n: int, p: int) -> list[tuple]:
    return list(combinations(range(n), p))


def ce_differential_matrix(g: LieAlgebra, p: int) -> RationalMatrix:
    """Matrix of d: Lambda^p g* -> Lambda^{p+1} g* in the e*_I bases."""
    n = g.dim
    src = ce_basis(n, p)
    tgt = ce_basis(n, p + 1)
    sidx = {I: a for a, I in enumerate(src)}
    m = RationalMatrix(len(tgt), len(src))
    for r, J in enumerate(tgt):
        # coefficient of e*_J in d e*_I is (d e*_I)(e_{j_0}, ..., e_{j_p})
        for a in range(len(J)):
            for b in range(a + 1, len(J)):
                rest = J[:a] + J[a + 1:b] + J[b + 1:]
                sign = -1 if (a + b) & 1 else 1
                for k, ck in enumerate(g.c[J[a]][J[b]]):
                    if not ck:
                        continue
                    seq = (k,) + rest
                    s = perm_sign(seq)
                    if not s:
                        continue
                    I = tuple(sorted(seq))
                    m[r, sidx[I]] = m[r, sidx[I]] + sign * s * ck
    return m


def ce_complex(g: LieAlgebra) -> CochainComplex:
    n = g.dim
    return CochainComplex([len(ce_basis(n, p)) for p in range(n + 1)],
                          [ce_differential_matrix(g, p) for p in range(n + 1)],
                          labels=[ce_basis(n, p) for p in range(n + 1)])


def ce_cohomology(g: LieAlgebra) -> CohomologyResult:
    rep = validate(g)
    if not rep.ok:
        raise DomainError(f"not a Lie algebra: {rep.violation}")
    return cohomology(ce_complex(g))


class CEElement:
    """Element of Lambda^p g*: {ascending index tuple: coefficient}."""

    __slots__ = ("algebra", "degree", "comps")

    def __init__(self, algebra: LieAlgebra, degree: int, comps: Mapping | None = None):
        if not 0 <= degree <= algebra.dim:
            raise DomainError(f"degree {degree} out of range for dim {algebra.dim}")
        self.algebra = algebra
        self.degree = degree
        out = {}
        for I, v in (comps or {}).items():
            I = tuple(I)
            if len(I) != degree or list(I) != sorted(set(I)) or (I and not 0 <= I[0] <= I[-1] < algebra.dim):
                raise DomainError(f"bad CE index {I}")
            v = as_fraction(v)
            if v:
                out[I] = v
        self.comps = out

    @classmethod
    def one(cls, g: LieAlgebra) -> "CEElement":
        return cls(g, 0, {(): 1})

    @classmethod
    def basis(cls, g: LieAlgebra, I: Sequence[int]) -> "CEElement":
        return cls(g, len(I), {tuple(I): 1})

    def __add__(self, other: "CEElement") -> "CEElement":
        if self.degree != other.degree:
            raise DomainError("adding CE elements of different degrees")
        out = dict(self.comps)
        for I, v in other.comps.items():
            out[I] = out.get(I, 0) + v
        return CEElement(self.algebra, self.degree, out)

    def scale(self, c) -> "CEElement":
        c = as_fraction(c)
        return CEElement(self.algebra, self.degree, {I: c * v for I, v in self.comps.items()})

    def wedge(self, other: "CEElement") -> "CEElement":
        p = self.degree + other.degree
        if p > self.algebra.dim:
            return _zero(self.algebra, p)
        out: dict = {}
        for I, a in self.comps.items():
            for J, b in other.comps.items():
                s, K = merge(I, J)
                if s:
                    out[K] = out.get(K, 0) + s * a * b
        return CEElement(self.algebra, p, out)

    def d(self) -> "CEElement":
        p = self.degree
        if p >= self.algebra.dim:
            return _zero(self.algebra, p + 1)
        M = ce_differential_matrix(self.algebra, p)
        src = {I: a for a, I in enumerate(ce_basis(self.algebra.dim, p))}
        tgt = ce_basis(self.algebra.dim, p + 1)
        vec = [Fraction(0)] * len(src)
        for I, v in self.comps.items():
            vec[src[I]] = v
        return CEElement(self.algebra, p + 1, {tgt[r]: x for r, x in enumerate(M.apply(vec)) if x})

    def evaluate(self, vectors: Sequence[Sequence]) -> Fraction:
        """Pair with p vectors of g (determinant convention: e*_I(e_I) = 1)."""
        from .exterior import det
        if len(vectors) != self.degree:
            raise DomainError("wrong number of vectors")
        return sum((v * det([[as_fraction(x[i]) for x in vectors] for i in I]) for I, v in self.comps.items()),
                   Fraction(0))

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other) -> bool:
        if not isinstance(other, CEElement):
            return NotImplemented
        return self.degree == other.degree and self.comps == other.comps

    def __repr__(self) -> str:
        return " + ".join(f"{v}*e{''.join(map(str, I))}" for I, v in sorted(self.comps.items())) or "0"


class _ZeroTop(CEElement):
    """Zero element in a degree above dim g (the exterior algebra vanishes there)."""

    def __init__(self, algebra: LieAlgebra, degree: int):
        self.algebra = algebra
        self.degree = degree
        self.comps = {}


def _zero(g: LieAlgebra, p: int) -> CEElement:
    return CEElement(g, p) if p <= g.dim else _ZeroTop(g, p)


def liealg_to_json(g: LieAlgebra) -> dict:
    from .polynomial import fraction_str
    out = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            coeffs = {str(k): fraction_str(v) for k, v in enumerate(g.c[i][j]) if v}
            if coeffs:
                out.append({"i": i, "j": j, "coeffs": coeffs})
    return {"dim": g.dim, "brackets": out}


def liealg_from_json(data: dict, name: str = "") -> LieAlgebra:
    """Parse the JSON format. An order (i, j) given without its partner (j, i)
    is filled in by antisymmetry; anything given explicitly is kept verbatim,
    so inconsistent input surfaces in :func:`validate`."""
    if not isinstance(data, dict) or "dim" not in data:
        raise MalformedInput("expected an object with key 'dim'")
    n = data["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise MalformedInput("'dim' must be a non-negative integer")
    if n > LIMITS.max_lie_dim:
        raise DomainError(f"Lie algebra dimension {n} exceeds limit {LIMITS.max_lie_dim}")
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    given = set()
    for b in data.get("brackets", []):
        try:
            i, j = int(b["i"]), int(b["j"])
            coeffs = {int(k): as_fraction(v) for k, v in b.get("coeffs", {}).items()}
        except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
            raise MalformedInput(f"bad bracket entry {b!r}: {exc}") from None
        if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in coeffs):
            raise MalformedInput(f"index out of range in bracket entry {b!r}")
        for k, v in coeffs.items():
            c[i][j][k] += v
        given.add((i, j))
    for i, j in given:
        if i != j and (j, i) not in given:
            c[j][i] = [-v for v in c[i][j]]
    return LieAlgebra.from_constants(c, name)
