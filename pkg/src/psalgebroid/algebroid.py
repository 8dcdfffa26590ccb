"""Forms on the trivial Lie algebroid T(Delta) x g over a carrier family.

An algebroid form is stored in split representation: a map from CE index
tuples I to piecewise forms xi_I, standing for sum_I xi_I ^ e*_I with the
base leg written first. Sections over a simplex are pairs (X, u) of a
polynomial tangent field X and a polynomial g-valued function u.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .exterior import det, merge, shuffles
from .homology import ChainMap, CochainComplex
from .liealg import CEElement, LieAlgebra, ce_basis, ce_differential_matrix
from .linalg import IntegrityError, RationalMatrix, as_fraction, sparse
from .models import WHITNEY, FormSpace, Model, form_space, plain_space
from .polyform import LocalForm, PiecewiseForm, form_from_json, form_to_json
from .polynomial import Poly
from .simplicial import CarrierFamily, DomainError, Simplex, Subdivision, whole_family

SIGNS = {"standard": 1, "paper": -1}


@dataclass(frozen=True)
class TrivialAlgebroid:
    family: CarrierFamily
    algebra: LieAlgebra

    def restricted(self, family: CarrierFamily) -> "TrivialAlgebroid":
        return TrivialAlgebroid(family, self.algebra)


class AlgebroidForm:
    __slots__ = ("algebroid", "degree", "comps")

    def __init__(self, algebroid: TrivialAlgebroid, degree: int, comps: Mapping | None = None):
        self.algebroid = algebroid
        self.degree = degree
        n = algebroid.algebra.dim
        out = {}
        for I, xi in (comps or {}).items():
            I = tuple(I)
            if list(I) != sorted(set(I)) or (I and not 0 <= I[0] <= I[-1] < n):
                raise DomainError(f"bad CE index {I}")
            if xi.family.members != algebroid.family.members:
                raise DomainError("component lives on a different family")
            if xi.degree + len(I) != degree:
                raise DomainError("component degree + |I| must equal the total degree")
            if not xi.is_zero():
                out[I] = xi
        self.comps = out

    @property
    def family(self) -> CarrierFamily:
        return self.algebroid.family

    @property
    def algebra(self) -> LieAlgebra:
        return self.algebroid.algebra

    @classmethod
    def zero(cls, A: TrivialAlgebroid, degree: int) -> "AlgebroidForm":
        return cls(A, degree)

    def component(self, I: Sequence[int]) -> PiecewiseForm:
        I = tuple(I)
        if I in self.comps:
            return self.comps[I]
        return PiecewiseForm.zero(self.family, self.degree - len(I))

    def _check(self, other: "AlgebroidForm"):
        if self.family.members != other.family.members or self.algebra != other.algebra:
            raise DomainError("algebroid forms over different algebroids")

    def __add__(self, other: "AlgebroidForm") -> "AlgebroidForm":
        self._check(other)
        if self.degree != other.degree:
            raise DomainError("adding forms of different degrees")
        out = dict(self.comps)
        for I, xi in other.comps.items():
            out[I] = out[I] + xi if I in out else xi
        return AlgebroidForm(self.algebroid, self.degree, out)

    def __neg__(self) -> "AlgebroidForm":
        return self.scale(-1)

    def __sub__(self, other: "AlgebroidForm") -> "AlgebroidForm":
        return self + (-other)

    def scale(self, c) -> "AlgebroidForm":
        return AlgebroidForm(self.algebroid, self.degree, {I: xi.scale(c) for I, xi in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebroidForm):
            return NotImplemented
        return (self.degree == other.degree and self.family.members == other.family.members
                and self.comps.keys() == other.comps.keys()
                and all(self.comps[I] == other.comps[I] for I in self.comps))

    def wedge(self, other: "AlgebroidForm") -> "AlgebroidForm":
        self._check(other)
        out: dict = {}
        n = self.algebra.dim
        for I, xi in self.comps.items():
            for J, zeta in other.comps.items():
                s, K = merge(I, J)
                if not s or len(K) > n:
                    continue
                if (len(I) * zeta.degree) & 1:
                    s = -s
                term = xi.wedge(zeta)
                if s < 0:
                    term = -term
                out[K] = out[K] + term if K in out else term
        return AlgebroidForm(self.algebroid, self.degree + other.degree, out)

    def d(self) -> "AlgebroidForm":
        return tensor_differential(self)

    def flatten(self) -> dict:
        out = {}
        for I, xi in self.comps.items():
            out.update(xi.flatten(prefix=(I,)))
        return out

    def is_compatible(self) -> bool:
        return all(xi.is_compatible() for xi in self.comps.values())

    def __repr__(self) -> str:
        return f"AlgebroidForm(degree={self.degree}, components={sorted(self.comps)})"


def kunneth_map(xi: PiecewiseForm, eta: CEElement, A: TrivialAlgebroid | None = None) -> AlgebroidForm:
    """xi (x) eta  |->  gamma^* xi ^ pi^* eta."""
    if A is None:
        A = TrivialAlgebroid(xi.family, eta.algebra)
    if xi.family.members != A.family.members or eta.algebra != A.algebra:
        raise DomainError("base form or CE element does not belong to this algebroid")
    return AlgebroidForm(A, xi.degree + eta.degree, {I: xi.scale(v) for I, v in eta.comps.items()})


@lru_cache(maxsize=64)
def _ce_columns(g: LieAlgebra, q: int) -> dict:
    """e*_I -> {J: coefficient} for d_g e*_I with |I| = q."""
    if q >= g.dim:
        return {I: {} for I in ce_basis(g.dim, q)}
    M = ce_differential_matrix(g, q)
    tgt = ce_basis(g.dim, q + 1)
    return {I: {tgt[r]: v for r, v in col.items()} for I, col in zip(ce_basis(g.dim, q), M.columns())}


def tensor_differential(w: AlgebroidForm) -> AlgebroidForm:
    """d(xi ^ e*_I) = d xi ^ e*_I + (-1)^{deg xi} xi ^ d_g e*_I."""
    g = w.algebra
    out: dict = {}

    def put(K, form):
        out[K] = out[K] + form if K in out else form

    for I, xi in w.comps.items():
        if xi.degree < w.family.dimension:
            put(I, xi.d())
        sign = -1 if xi.degree & 1 else 1
        for J, c in _ce_columns(g, len(I))[I].items():
            put(J, xi.scale(sign * c))
    return AlgebroidForm(w.algebroid, w.degree + 1, out)


def restrict_form(w: AlgebroidForm, target) -> AlgebroidForm:
    """Restrict to a sub-family, or pull back to a barycentric subdivision."""
    if isinstance(target, CarrierFamily):
        if not target.members <= w.family.members:
            raise DomainError("target family is not contained in the source family")
        A = w.algebroid.restricted(target)
        return AlgebroidForm(A, w.degree, {I: xi.restrict(target) for I, xi in w.comps.items()})
    if isinstance(target, Subdivision):
        fam = whole_family(target.complex)
        A = w.algebroid.restricted(fam)
        return AlgebroidForm(A, w.degree, {I: xi.pullback_subdivision(target, fam) for I, xi in w.comps.items()})
    raise TypeError("target must be a CarrierFamily or a Subdivision")


# ----------------------------------------------------------------- sections


@dataclass(frozen=True)
class PolySection:
    simplex: Simplex
    X: tuple   # k polynomials: tangent field in affine coordinates
    u: tuple   # n polynomials: g-valued function

    def __post_init__(self):
        k = len(self.simplex) - 1
        if len(self.X) != k:
            raise DomainError("tangent part needs one polynomial per affine coordinate")
        if any(p.nvars != k for p in (*self.X, *self.u)):
            raise DomainError("section entries must be polynomials on the simplex")

    @classmethod
    def zero(cls, simplex: Simplex, n: int) -> "PolySection":
        k = len(simplex) - 1
        return cls(tuple(simplex), tuple(Poly.zero(k) for _ in range(k)), tuple(Poly.zero(k) for _ in range(n)))

    def times(self, f: Poly) -> "PolySection":
        return PolySection(self.simplex, tuple(f * x for x in self.X), tuple(f * x for x in self.u))

    def __add__(self, other: "PolySection") -> "PolySection":
        return PolySection(self.simplex, tuple(a + b for a, b in zip(self.X, other.X)),
                           tuple(a + b for a, b in zip(self.u, other.u)))

    def __neg__(self) -> "PolySection":
        return PolySection(self.simplex, tuple(-a for a in self.X), tuple(-a for a in self.u))

    def __sub__(self, other: "PolySection") -> "PolySection":
        return self + (-other)


def anchor(s: PolySection) -> tuple:
    return s.X


def directional(X: Sequence[Poly], f: Poly) -> Poly:
    """X . f = sum_i X_i df/dx_i."""
    out = Poly.zero(f.nvars)
    for i, x in enumerate(X):
        if x:
            out = out + x * f.deriv(i)
    return out


def vector_field_bracket(X: Sequence[Poly], Y: Sequence[Poly]) -> tuple:
    return tuple(directional(X, Y[i]) - directional(Y, X[i]) for i in range(len(X)))


def poly_bracket(g: LieAlgebra, u: Sequence[Poly], v: Sequence[Poly], nvars: int) -> tuple:
    n = g.dim
    out = [Poly.zero(nvars) for _ in range(n)]
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            uv = None
            for k, c in enumerate(g.c[i][j]):
                if c:
                    if uv is None:
                        uv = u[i] * v[j]
                    out[k] = out[k] + uv.scale(c)
    return tuple(out)


def algebroid_bracket(s: PolySection, t: PolySection, g: LieAlgebra,
                      convention: str = "standard") -> PolySection:
    """([X, Y], X(v) - Y(u) + sign [u, v]); sign is +1 for 'standard', -1 for 'paper'."""
    if s.simplex != t.simplex:
        raise DomainError("sections over different simplices")
    if len(s.u) != g.dim or len(t.u) != g.dim:
        raise DomainError("g-part has the wrong length")
    sign = SIGNS[convention]
    k = len(s.simplex) - 1
    XY = vector_field_bracket(s.X, t.X)
    uv = poly_bracket(g, s.u, t.u, k)
    gpart = tuple(directional(s.X, t.u[a]) - directional(t.X, s.u[a]) + uv[a].scale(sign)
                  for a in range(g.dim))
    return PolySection(s.simplex, XY, gpart)


def pairing(w: AlgebroidForm, simplex: Simplex, sections: Sequence[PolySection]) -> Poly:
    """The function x -> w_x(s_1, ..., s_p) on ``simplex`` as a polynomial."""
    simplex = tuple(simplex)
    if len(sections) != w.degree:
        raise DomainError(f"degree-{w.degree} form needs {w.degree} sections, got {len(sections)}")
    if simplex not in w.family.members:
        raise DomainError(f"{list(simplex)} is not a member of the family")
    k = len(simplex) - 1
    if any(s.simplex != simplex for s in sections):
        raise DomainError("sections live on a different simplex")
    total = Poly.zero(k)
    p = w.degree
    for I, xi in w.comps.items():
        lf = xi.local(simplex)
        a = lf.degree
        if a > k or lf.is_zero():
            continue
        for sign, first, rest in shuffles(p, a):
            base = Poly.zero(k)
            for L, f in lf.comps.items():
                base = base + f * det([[sections[s].X[l - 1] for s in first] for l in L])
            if not base:
                continue
            ce = det([[sections[t].u[i] for t in rest] for i in I])
            term = base * ce
            total = total + (term if sign > 0 else -term)
    return total


def _point_coords(simplex: Simplex, point: Sequence) -> list[Fraction]:
    pt = [as_fraction(x) for x in point]
    if len(pt) != len(simplex) or sum(pt) != 1 or any(x < 0 for x in pt):
        raise DomainError("point is not in the closed simplex")
    return pt[1:]


def evaluate_algebroid_form(w: AlgebroidForm, simplex: Simplex, sections: Sequence[PolySection],
                            point: Sequence) -> Fraction:
    return pairing(w, simplex, sections)(_point_coords(simplex, point))


def cartan_operator(fn, g: LieAlgebra, convention: str = "standard"):
    """Turn a p-ary alternating function of sections into the (p+1)-ary one
    given by the two-sum invariant formula."""

    def dfn(sections: Sequence[PolySection]) -> Poly:
        m = len(sections)
        k = len(sections[0].simplex) - 1
        total = Poly.zero(k)
        for j in range(m):
            rest = list(sections[:j]) + list(sections[j + 1:])
            term = directional(sections[j].X, fn(rest))
            total = total + (term if j % 2 == 0 else -term)
        for i in range(m):
            for l in range(i + 1, m):
                br = algebroid_bracket(sections[i], sections[l], g, convention)
                rest = [s for n, s in enumerate(sections) if n not in (i, l)]
                term = fn([br] + rest)
                total = total + (term if (i + l) % 2 == 0 else -term)
        return total

    return dfn


def cartan_derivative_evaluate(w: AlgebroidForm, simplex: Simplex, sections: Sequence[PolySection],
                               point: Sequence, convention: str = "standard") -> Fraction:
    if len(sections) != w.degree + 1:
        raise DomainError(f"need {w.degree + 1} sections, got {len(sections)}")
    simplex = tuple(simplex)
    dfn = cartan_operator(lambda ss: pairing(w, simplex, ss), w.algebra, convention)
    return dfn(list(sections))(_point_coords(simplex, point))


# ------------------------------------------------------------------ models


class AlgebroidSpace:
    """Model space of algebroid forms of one total degree: basis k(b (x) e*_I)."""

    def __init__(self, A: TrivialAlgebroid, p: int, model: Model):
        self.algebroid = A
        self.degree = p
        self.model = model
        n = A.algebra.dim
        self.labels: list[tuple] = []
        self.base: dict[int, FormSpace] = {}
        self.offsets: dict[tuple, int] = {}
        for q in range(min(p, n) + 1):
            if p - q > max(A.family.dimension, 0):
                continue
            space = form_space(A.family, p - q, model)
            self.base[p - q] = space
            for I in ce_basis(n, q):
                self.offsets[I] = len(self.labels)
                for lab in space.labels:
                    self.labels.append((I, lab))

    def __len__(self) -> int:
        return len(self.labels)

    def basis_form(self, idx: int) -> AlgebroidForm:
        I, _ = self.labels[idx]
        space = self.base[self.degree - len(I)]
        b = space.basis[idx - self.offsets[I]]
        return kunneth_map(b, CEElement.basis(self.algebroid.algebra, I), self.algebroid)

    def basis(self) -> list[AlgebroidForm]:
        return [self.basis_form(i) for i in range(len(self))]

    def coordinates(self, w: AlgebroidForm) -> list[Fraction]:
        if w.degree != self.degree and not w.is_zero():
            raise DomainError("form degree does not match the space")
        out = [Fraction(0)] * len(self)
        for I, xi in w.comps.items():
            if I not in self.offsets:
                raise IntegrityError(f"component {I} lies outside the model")
            c = self.base[xi.degree].coordinates(xi)
            off = self.offsets[I]
            out[off:off + len(c)] = c
        return out

    def form(self, coords: Sequence) -> AlgebroidForm:
        out = AlgebroidForm.zero(self.algebroid, self.degree)
        comps: dict = {}
        for idx, c in enumerate(coords):
            c = as_fraction(c)
            if not c:
                continue
            I, _ = self.labels[idx]
            b = self.base[self.degree - len(I)].basis[idx - self.offsets[I]].scale(c)
            comps[I] = comps[I] + b if I in comps else b
        if comps:
            out = AlgebroidForm(self.algebroid, self.degree, comps)
        return out


@lru_cache(maxsize=256)
def algebroid_space(A: TrivialAlgebroid, p: int, model: Model) -> AlgebroidSpace:
    return AlgebroidSpace(A, p, model)


def top_degree(A: TrivialAlgebroid) -> int:
    return max(A.family.dimension, 0) + A.algebra.dim


@lru_cache(maxsize=128)
def build_algebroid_complex(A: TrivialAlgebroid, model: Model = WHITNEY) -> CochainComplex:
    """Cochain complex of the model with differentials from tensor_differential."""
    top = top_degree(A)
    spaces = [algebroid_space(A, p, model) for p in range(top + 1)]
    ds = []
    for p in range(top + 1):
        if p < top:
            cols = [sparse(spaces[p + 1].coordinates(tensor_differential(b))) for b in spaces[p].basis()]
            ds.append(RationalMatrix.from_columns(len(spaces[p + 1]), cols))
        else:
            ds.append(RationalMatrix.zeros(0, len(spaces[p])))
    C = CochainComplex([len(s) for s in spaces], ds, labels=[s.labels for s in spaces])
    C.check()
    return C


def restriction_chain_map(A: TrivialAlgebroid, target, model: Model = WHITNEY,
                          target_model: Model | None = None) -> ChainMap:
    """Matrix form of restrict_form between model complexes."""
    target_model = target_model or model
    if isinstance(target, CarrierFamily):
        B = A.restricted(target)
    else:
        B = TrivialAlgebroid(whole_family(target.complex), A.algebra)
    src = build_algebroid_complex(A, model)
    tgt = build_algebroid_complex(B, target_model)
    maps = []
    for p in range(src.top + 1):
        S = algebroid_space(A, p, model)
        T = algebroid_space(B, p, target_model)
        cols = [sparse(T.coordinates(restrict_form(b, target))) for b in S.basis()]
        maps.append(RationalMatrix.from_columns(len(T), cols))
    F = ChainMap(src, tgt, maps)
    F.check()
    return F


def joint_space_dimension(A: TrivialAlgebroid, p: int, r: int) -> int:
    """Dimension of compatible algebroid p-forms whose coefficients have degree
    <= r - (base form degree), computed on the joint exterior algebra over
    dx_1..dx_k, e*_1..e*_n without passing through base bases."""
    from .polyform import restrict_to_face
    from .polynomial import monomials
    from .linalg import rank_kernel_image
    fam, n = A.family, A.algebra.dim
    cols = []
    for s in fam.sorted():
        k = len(s) - 1
        for q in range(min(p, n) + 1):
            a = p - q
            if a > k or r - a < 0:
                continue
            for L in combinations(range(1, k + 1), a):
                for I in combinations(range(n), q):
                    for e in monomials(k, r - a):
                        cols.append((s, L, I, e))
    index = {c: j for j, c in enumerate(cols)}
    rows: dict = {}
    for (s, L, I, e), j in index.items():
        k = len(s) - 1
        lf = LocalForm(s, len(L), {L: Poly(k, {e: 1})})
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            if not f or f not in fam.members or len(f) - 1 < len(L):
                continue
            for (_, L2, e2), c in restrict_to_face(lf, f).flatten().items():
                rows.setdefault((s, f, L2, I, e2), {})[j] = c
        for t in fam.members:
            if len(t) == len(s) + 1 and set(s) <= set(t):
                key = (t, s, L, I, e)
                rows.setdefault(key, {})
                rows[key][j] = rows[key].get(j, 0) - 1
    m = RationalMatrix(len(rows), len(cols), [
        {j: as_fraction(v) for j, v in rows[key].items() if v} for key in sorted(rows)])
    return len(cols) - rank_kernel_image(m)[0]


def algebroid_form_to_json(w: AlgebroidForm) -> dict:
    return {"degree": w.degree,
            "components": [{"ce_indices": list(I), "form": form_to_json(xi)} for I, xi in sorted(w.comps.items())]}


def algebroid_form_from_json(A: TrivialAlgebroid, data: dict) -> AlgebroidForm:
    comps = {tuple(c["ce_indices"]): form_from_json(A.family, c["form"]) for c in data["components"]}
    return AlgebroidForm(A, data["degree"], comps)
