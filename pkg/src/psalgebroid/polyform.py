"""Piecewise polynomial differential forms on carrier families.

On a k-simplex [v_0, ..., v_k] the affine coordinates are x_i = lambda_{v_i}
for i = 1..k, with lambda_{v_0} = 1 - sum(x_i) eliminated. A local p-form is
a map from ascending index tuples I (1-based, |I| = p) to polynomial
coefficients of dx_I. A piecewise form carries one local form per member of
its family, agreeing under restriction to every face that stays in the family.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

from . import config
from .exterior import det, merge, perm_sign
from .linalg import IntegrityError, RationalMatrix, as_fraction, rank_kernel_image
from .polynomial import Poly, fraction_str, monomials, poly_from_json, poly_to_json
from .simplicial import CarrierFamily, DomainError, Simplex, faces, is_face


class LocalForm:
    """Polynomial p-form on a single closed simplex."""

    __slots__ = ("simplex", "degree", "comps")

    def __init__(self, simplex: Simplex, degree: int, comps: Mapping | None = None):
        k = len(simplex) - 1
        if not 0 <= degree:
            raise DomainError("negative form degree")
        self.simplex = tuple(simplex)
        self.degree = degree
        out = {}
        for I, f in (comps or {}).items():
            I = tuple(I)
            if len(I) != degree or list(I) != sorted(set(I)) or (I and not 1 <= I[0] <= I[-1] <= k):
                raise DomainError(f"bad index tuple {I} for a {degree}-form on a {k}-simplex")
            if f.nvars != k:
                raise DomainError("coefficient polynomial in the wrong number of variables")
            if f:
                out[I] = f
        self.comps = out

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1

    @classmethod
    def zero(cls, simplex: Simplex, degree: int) -> "LocalForm":
        return cls(simplex, degree)

    @classmethod
    def function(cls, simplex: Simplex, f: Poly) -> "LocalForm":
        return cls(simplex, 0, {(): f})

    @classmethod
    def dx(cls, simplex: Simplex, *idx: int) -> "LocalForm":
        k = len(simplex) - 1
        s = perm_sign(idx)
        if not s:
            return cls(simplex, len(idx))
        return cls(simplex, len(idx), {tuple(sorted(idx)): Poly.const(k, s)})

    def is_zero(self) -> bool:
        return not self.comps

    def _same(self, other: "LocalForm"):
        if self.simplex != other.simplex or self.degree != other.degree:
            raise DomainError("local forms on different simplices or of different degrees")

    def __add__(self, other: "LocalForm") -> "LocalForm":
        self._same(other)
        out = dict(self.comps)
        for I, f in other.comps.items():
            g = out.get(I)
            out[I] = f if g is None else g + f
        return LocalForm(self.simplex, self.degree, out)

    def __neg__(self) -> "LocalForm":
        return LocalForm(self.simplex, self.degree, {I: -f for I, f in self.comps.items()})

    def __sub__(self, other: "LocalForm") -> "LocalForm":
        return self + (-other)

    def scale(self, c) -> "LocalForm":
        if isinstance(c, Poly):
            return LocalForm(self.simplex, self.degree, {I: f * c for I, f in self.comps.items()})
        c = as_fraction(c)
        return LocalForm(self.simplex, self.degree, {I: f.scale(c) for I, f in self.comps.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalForm):
            return NotImplemented
        return (self.simplex, self.degree, self.comps) == (other.simplex, other.degree, other.comps)

    def wedge(self, other: "LocalForm") -> "LocalForm":
        if self.simplex != other.simplex:
            raise DomainError("wedge of local forms on different simplices")
        p = self.degree + other.degree
        if p > self.dim:
            return LocalForm(self.simplex, p)
        out: dict = {}
        for I, f in self.comps.items():
            for J, g in other.comps.items():
                s, K = merge(I, J)
                if s:
                    t = f * g
                    if s < 0:
                        t = -t
                    out[K] = out[K] + t if K in out else t
        return LocalForm(self.simplex, p, out)

    def d(self) -> "LocalForm":
        k = self.dim
        p = self.degree + 1
        if p > k:
            return LocalForm(self.simplex, p)
        out: dict = {}
        for I, f in self.comps.items():
            for i in range(1, k + 1):
                if i in I:
                    continue
                df = f.deriv(i - 1)
                if not df:
                    continue
                s, K = merge((i,), I)
                t = df if s > 0 else -df
                out[K] = out[K] + t if K in out else t
        return LocalForm(self.simplex, p, out)

    def flatten(self, prefix=()) -> dict:
        out = {}
        for I, f in self.comps.items():
            for e, c in f.terms.items():
                out[(*prefix, self.simplex, I, e)] = c
        return out

    def max_poly_degree(self) -> int:
        return max((f.degree for f in self.comps.values()), default=-1)

    def __repr__(self) -> str:
        if not self.comps:
            return f"0 [{self.degree}-form on {list(self.simplex)}]"
        terms = [f"({f}) dx{''.join(map(str, I))}" if I else f"({f})" for I, f in sorted(self.comps.items())]
        return " + ".join(terms) + f" on {list(self.simplex)}"


def barycentric(simplex: Simplex, v: int) -> LocalForm:
    """The barycentric coordinate of vertex ``v`` as a 0-form on ``simplex``."""
    k = len(simplex) - 1
    if v not in simplex:
        return LocalForm.function(simplex, Poly.zero(k))
    i = simplex.index(v)
    if i == 0:
        f = Poly.const(k) - sum((Poly.var(k, j) for j in range(k)), Poly.zero(k))
    else:
        f = Poly.var(k, i - 1)
    return LocalForm.function(simplex, f)


def affine_pullback(a: LocalForm, target: Simplex, images: Sequence[Sequence]) -> LocalForm:
    """Pull ``a`` back along the affine map sending vertex j of ``target`` to
    the point with barycentric coordinates ``images[j]`` on ``a.simplex``."""
    k = a.dim
    m = len(target) - 1
    if len(images) != m + 1:
        raise DomainError("need one image point per vertex of the target simplex")
    pts = []
    for P in images:
        P = [as_fraction(x) for x in P]
        if len(P) != k + 1:
            raise DomainError("image point has the wrong number of barycentric coordinates")
        if sum(P) != 1 or any(x < 0 for x in P):
            raise DomainError("image point is not in the closed simplex")
        pts.append(P)
    # x_i = P_0[i] + sum_j y_j (P_j[i] - P_0[i])
    J = [[pts[j][i] - pts[0][i] for j in range(1, m + 1)] for i in range(1, k + 1)]
    subs = []
    for i in range(1, k + 1):
        t = {(0,) * m: pts[0][i]}
        for j in range(m):
            if J[i - 1][j]:
                e = [0] * m
                e[j] = 1
                t[tuple(e)] = J[i - 1][j]
        subs.append(Poly(m, t))
    p = a.degree
    out: dict = {}
    if p > m:
        return LocalForm(target, p)
    Ls = list(combinations(range(1, m + 1), p))
    for I, f in a.comps.items():
        g = f.compose(subs, m)
        if not g:
            continue
        for L in Ls:
            c = det([[J[i - 1][l - 1] for l in L] for i in I])
            if c:
                t = g.scale(c)
                out[L] = out[L] + t if L in out else t
    return LocalForm(target, p, out)


def restrict_to_face(a: LocalForm, face: Simplex) -> LocalForm:
    face = tuple(face)
    if not is_face(face, a.simplex):
        raise DomainError(f"{list(face)} is not a face of {list(a.simplex)}")
    if face == a.simplex:
        return a
    k = a.dim
    images = []
    for w in face:
        P = [0] * (k + 1)
        P[a.simplex.index(w)] = 1
        images.append(P)
    return affine_pullback(a, face, images)


def evaluate_form(a: LocalForm, point: Sequence, vectors: Sequence[Sequence]) -> Fraction:
    """Value of ``a`` at a barycentric point on tangent vectors given in affine coordinates."""
    k = a.dim
    pt = [as_fraction(x) for x in point]
    if len(pt) != k + 1 or sum(pt) != 1 or any(x < 0 for x in pt):
        raise DomainError("point is not in the closed simplex")
    if len(vectors) != a.degree:
        raise DomainError(f"{a.degree}-form needs {a.degree} vectors, got {len(vectors)}")
    vecs = [[as_fraction(c) for c in v] for v in vectors]
    if any(len(v) != k for v in vecs):
        raise DomainError("tangent vectors must have one component per affine coordinate")
    x = pt[1:]
    total = Fraction(0)
    for I, f in a.comps.items():
        total += f(x) * det([[v[i - 1] for v in vecs] for i in I])
    return total


class PiecewiseForm:
    """Family of compatible local forms, one per member of a carrier family."""

    __slots__ = ("family", "degree", "locals")

    def __init__(self, family: CarrierFamily, degree: int, locals: Mapping | None = None,
                 check: bool | None = None):
        self.family = family
        self.degree = degree
        out = {}
        for s, lf in (locals or {}).items():
            s = tuple(s)
            if s not in family.members:
                raise DomainError(f"{list(s)} is not a member of the family")
            if lf.simplex != s or lf.degree != degree:
                raise DomainError("local form does not match its simplex/degree")
            out[s] = lf
        for s in family.members:
            if len(s) - 1 >= degree and s not in out:
                out[s] = LocalForm(s, degree)
        self.locals = out
        if check if check is not None else config.LIMITS.check_compatibility:
            bad = self.incompatibility()
            if bad:
                raise IntegrityError(f"face compatibility fails between {bad}")

    @classmethod
    def zero(cls, family: CarrierFamily, degree: int) -> "PiecewiseForm":
        return cls(family, degree, check=False)

    @classmethod
    def from_function(cls, family: CarrierFamily, fn) -> "PiecewiseForm":
        """Build a form with locals ``fn(simplex)`` on every member."""
        locs = {s: fn(s) for s in family.members}
        deg = {lf.degree for lf in locs.values()}
        if len(deg) > 1:
            raise DomainError("local forms of mixed degree")
        return cls(family, deg.pop() if deg else 0, locs)

    def local(self, s: Simplex) -> LocalForm:
        s = tuple(s)
        if s in self.locals:
            return self.locals[s]
        if s in self.family.members:
            return LocalForm(s, self.degree)
        raise DomainError(f"{list(s)} is not a member of the family")

    def incompatibility(self):
        """First pair (face, simplex) where restriction disagrees, or None."""
        for s in sorted(self.locals):
            lf = self.locals[s]
            for f in sorted(faces(s)):
                if f == s or f not in self.family.members or len(f) - 1 < self.degree:
                    continue
                if restrict_to_face(lf, f) != self.locals[f]:
                    return (f, s)
        return None

    def is_compatible(self) -> bool:
        return self.incompatibility() is None

    def _same(self, other: "PiecewiseForm"):
        if self.family.members != other.family.members:
            raise DomainError("piecewise forms over different families")

    def _binop(self, other, op, degree) -> "PiecewiseForm":
        self._same(other)
        locs = {s: op(self.local(s), other.local(s)) for s in self.family.members
                if len(s) - 1 >= degree}
        return PiecewiseForm(self.family, degree, locs)

    def __add__(self, other: "PiecewiseForm") -> "PiecewiseForm":
        if self.degree != other.degree:
            raise DomainError("adding forms of different degrees")
        return self._binop(other, LocalForm.__add__, self.degree)

    def __sub__(self, other: "PiecewiseForm") -> "PiecewiseForm":
        if self.degree != other.degree:
            raise DomainError("subtracting forms of different degrees")
        return self._binop(other, LocalForm.__sub__, self.degree)

    def __neg__(self) -> "PiecewiseForm":
        return self.scale(-1)

    def scale(self, c) -> "PiecewiseForm":
        c = as_fraction(c)
        return PiecewiseForm(self.family, self.degree,
                             {s: lf.scale(c) for s, lf in self.locals.items()}, check=False)

    def wedge(self, other: "PiecewiseForm") -> "PiecewiseForm":
        return self._binop(other, LocalForm.wedge, self.degree + other.degree)

    def d(self) -> "PiecewiseForm":
        return PiecewiseForm(self.family, self.degree + 1,
                             {s: lf.d() for s, lf in self.locals.items() if lf.dim > self.degree})

    def restrict(self, family: CarrierFamily) -> "PiecewiseForm":
        """Forget the locals outside a sub-family."""
        if not family.members <= self.family.members:
            raise DomainError("target family is not contained in the source family")
        return PiecewiseForm(family, self.degree,
                             {s: lf for s, lf in self.locals.items() if s in family.members})

    def pullback_subdivision(self, sub, family: CarrierFamily | None = None) -> "PiecewiseForm":
        """Restrict to the barycentric subdivision ``sub`` of the whole complex."""
        if not self.family.is_whole():
            raise DomainError("subdivision restriction needs a form on the whole complex")
        if family is None:
            from .simplicial import whole_family
            family = whole_family(sub.complex)
        locs = {}
        for t in family.members:
            if len(t) - 1 < self.degree:
                continue
            carrier = sub.carrier[t]
            images = [[sub.coords[w].get(v, 0) for v in carrier] for w in t]
            locs[t] = affine_pullback(self.locals[carrier], t, images)
        return PiecewiseForm(family, self.degree, locs)

    def flatten(self, prefix=()) -> dict:
        out = {}
        for lf in self.locals.values():
            out.update(lf.flatten(prefix))
        return out

    def is_zero(self) -> bool:
        return all(lf.is_zero() for lf in self.locals.values())

    def max_poly_degree(self) -> int:
        return max((lf.max_poly_degree() for lf in self.locals.values()), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseForm):
            return NotImplemented
        return (self.family.members == other.family.members and self.degree == other.degree
                and all(self.local(s) == other.local(s) for s in self.locals))

    def __repr__(self) -> str:
        nz = sum(not lf.is_zero() for lf in self.locals.values())
        return f"PiecewiseForm(degree={self.degree}, nonzero locals={nz}/{len(self.locals)})"


def wedge(a: PiecewiseForm, b: PiecewiseForm) -> PiecewiseForm:
    return a.wedge(b)


def exterior_derivative(a: PiecewiseForm) -> PiecewiseForm:
    return a.d()


def from_flat(family: CarrierFamily, degree: int, flat: Mapping) -> PiecewiseForm:
    """Inverse of :meth:`PiecewiseForm.flatten` (keys (simplex, I, exps))."""
    grouped: dict = {}
    for (s, I, e), c in flat.items():
        grouped.setdefault(s, {}).setdefault(I, {})[e] = c
    locs = {}
    for s, comps in grouped.items():
        k = len(s) - 1
        locs[s] = LocalForm(s, degree, {I: Poly(k, t) for I, t in comps.items()})
    return PiecewiseForm(family, degree, locs, check=False)


def hat_function(family: CarrierFamily, v: int) -> PiecewiseForm:
    return PiecewiseForm(family, 0, {s: barycentric(s, v) for s in family.members})


@lru_cache(maxsize=None)
def _whitney_local(sigma: Simplex, delta: Simplex) -> LocalForm:
    q = len(sigma) - 1
    lam = [barycentric(delta, v) for v in sigma]
    dlam = [l.d() for l in lam]
    total = LocalForm(delta, q)
    for i in range(q + 1):
        term = lam[i]
        for j in range(q + 1):
            if j != i:
                term = term.wedge(dlam[j])
        total = total + (term if i % 2 == 0 else -term)
    return total.scale(factorial(q))


def whitney_local(sigma: Simplex, delta: Simplex) -> LocalForm:
    sigma, delta = tuple(sigma), tuple(delta)
    if not is_face(sigma, delta):
        return LocalForm(delta, len(sigma) - 1)
    return _whitney_local(sigma, delta)


def whitney_elementary_form(family: CarrierFamily, sigma: Sequence[int]) -> PiecewiseForm:
    """q! sum_i (-1)^i lambda_{s_i} dlambda_{s_0} ^ ... (omit i) ... ^ dlambda_{s_q}."""
    sigma = tuple(sigma)
    if sigma not in family.complex.simplices:
        raise DomainError(f"{list(sigma)} is not a simplex of the complex")
    q = len(sigma) - 1
    return PiecewiseForm(family, q, {s: whitney_local(sigma, s) for s in family.members if len(s) > q})


def _carrier_components(family: CarrierFamily, sigma: Simplex) -> list[list[Simplex]]:
    """Members containing sigma, grouped by connectivity through member faces."""
    ms = [m for m in family.members if is_face(sigma, m)]
    parent = {m: m for m in ms}

    def find(m):
        while parent[m] != m:
            parent[m] = parent[parent[m]]
            m = parent[m]
        return m

    for m in ms:
        for i in range(len(m)):
            f = m[:i] + m[i + 1:]
            if f in parent:
                parent[find(f)] = find(m)
    groups: dict = {}
    for m in sorted(ms):
        groups.setdefault(find(m), []).append(m)
    return sorted(groups.values())


def whitney_basis(family: CarrierFamily, p: int) -> tuple[list, list[PiecewiseForm]]:
    """Whitney p-forms restricted to ``family``: one per p-face of a member.

    When the members containing a face fall apart into several pieces with
    no member face in common (unions of stars), the form is split into one
    basis element per piece, labelled (face, piece index)."""
    labels, forms = [], []
    for s in family.closure():
        if len(s) != p + 1:
            continue
        comps = _carrier_components(family, s)
        if len(comps) <= 1:
            labels.append(s)
            forms.append(whitney_elementary_form(family, s))
            continue
        for k, comp in enumerate(comps):
            labels.append((s, k))
            forms.append(PiecewiseForm(family, p, {m: whitney_local(s, m) for m in comp}))
    return labels, forms


def _unknowns(family: CarrierFamily, p: int, r: int) -> list[tuple]:
    out = []
    for s in family.sorted():
        k = len(s) - 1
        if k < p:
            continue
        for I in combinations(range(1, k + 1), p):
            for e in monomials(k, r):
                out.append((s, I, e))
    return out


def basis_pr(family: CarrierFamily, p: int, r: int) -> list[PiecewiseForm]:
    """Basis of compatible piecewise p-forms with coefficients of degree <= r.

    Found as the kernel of the face-compatibility system over the unknown
    coefficients (simplices lex, index tuples lex, monomials graded-lex).
    Codimension-one constraints suffice because star families are closed
    under passing to cofaces.
    """
    if r < 0 or p > family.dimension:
        return []
    cols = _unknowns(family, p, r)
    index = {u: j for j, u in enumerate(cols)}
    rows: dict = {}
    for (s, I, e), j in index.items():
        k = len(s) - 1
        lf = LocalForm(s, p, {I: Poly(k, {e: 1})})
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            if not f or f not in family.members or len(f) - 1 < p:
                continue
            for (_, I2, e2), c in restrict_to_face(lf, f).flatten().items():
                rows.setdefault((s, f, I2, e2), {})[j] = c
        # the unknown is also the "face side" of every constraint from its cofaces
        for t in family.members:
            if len(t) == len(s) + 1 and is_face(s, t):
                key = (t, s, I, e)
                rows.setdefault(key, {})[j] = rows.get(key, {}).get(j, 0) - 1
    m = RationalMatrix(len(rows), len(cols), [
        {j: as_fraction(v) for j, v in rows[key].items() if v} for key in sorted(rows)])
    _, ker, _ = rank_kernel_image(m)
    out = []
    for vec in ker:
        flat = {cols[j]: v for j, v in enumerate(vec) if v}
        out.append(from_flat(family, p, flat))
    return out


def local_form_to_json(lf: LocalForm) -> list:
    return [{"indices": list(I), "poly": poly_to_json(f)} for I, f in sorted(lf.comps.items())]


def form_to_json(a: PiecewiseForm) -> dict:
    return {
        "degree": a.degree,
        "locals": [{"simplex": list(s), "components": local_form_to_json(a.locals[s])}
                   for s in sorted(a.locals)],
    }


def form_from_json(family: CarrierFamily, data: dict) -> PiecewiseForm:
    p = data["degree"]
    locs = {}
    for entry in data["locals"]:
        s = tuple(entry["simplex"])
        k = len(s) - 1
        locs[s] = LocalForm(s, p, {tuple(c["indices"]): poly_from_json(k, c["poly"])
                                   for c in entry["components"]})
    return PiecewiseForm(family, p, locs)


__all__ = [
    "LocalForm", "PiecewiseForm", "affine_pullback", "restrict_to_face", "evaluate_form",
    "wedge", "exterior_derivative", "whitney_elementary_form", "whitney_basis", "basis_pr",
    "hat_function", "barycentric", "form_to_json", "form_from_json", "fraction_str",
]
