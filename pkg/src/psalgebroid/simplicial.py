"""Finite abstract simplicial complexes, star families and subdivision.

A simplex is a strictly increasing tuple of non-negative vertex ids; the
ascending order fixes its orientation. All sign conventions elsewhere in the
package derive from this global vertex order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .config import LIMITS
from .linalg import RationalMatrix, rank

Simplex = tuple  # strictly increasing tuple of ints


class MalformedInput(ValueError):
    pass


class DomainError(ValueError):
    pass


def simplex(vertices: Iterable[int]) -> Simplex:
    vs = list(vertices)
    if not vs:
        raise MalformedInput("empty simplex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise MalformedInput(f"vertex ids must be non-negative integers, got {v!r}")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise MalformedInput(f"duplicate vertex in simplex {vs}")
    return s


def dim(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex) -> set[Simplex]:
    """All non-empty faces of ``s``, including ``s`` itself."""
    return {c for k in range(1, len(s) + 1) for c in combinations(s, k)}


def is_face(a: Simplex, b: Simplex) -> bool:
    return set(a) <= set(b)


def boundary_faces(s: Simplex) -> list[tuple[int, Simplex]]:
    """Codimension-one faces with incidence signs (-1)^i for the i-th omitted vertex."""
    return [((-1) ** i, s[:i] + s[i + 1:]) for i in range(len(s))] if len(s) > 1 else []


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset

    def __post_init__(self):
        if len(self.simplices) > LIMITS.max_simplices:
            raise DomainError(
                f"complex has {len(self.simplices)} simplices, limit is {LIMITS.max_simplices}")

    @property
    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, p: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == p + 1)

    def sorted(self) -> list[Simplex]:
        return sorted(self.simplices)

    def maximal(self) -> list[Simplex]:
        ss = self.simplices
        return sorted(s for s in ss
                      if not any(len(t) == len(s) + 1 and is_face(s, t) for t in ss))

    def f_vector(self) -> list[int]:
        return [len(self.of_dim(p)) for p in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.f_vector()))

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(self.sorted())


def build_complex(maximal_simplices: Sequence[Sequence[int]]) -> SimplicialComplex:
    """Face closure of the given simplices."""
    out: set = set()
    for vs in maximal_simplices:
        s = simplex(vs)
        if len(s) > 24:
            raise MalformedInput("simplex dimension too large")
        out |= faces(s)
        if len(out) > LIMITS.max_simplices:
            raise DomainError(f"complex exceeds {LIMITS.max_simplices} simplices")
    return SimplicialComplex(frozenset(out))


@dataclass(frozen=True)
class CarrierFamily:
    """Simplices of ``complex`` admitting one of ``generators`` as a face.

    This is the combinatorial index set of a union of open stars. A member
    is *open* when its intersection with the union of stars is a proper
    subset of the closed simplex, i.e. some face of it is not a member.
    """

    complex: SimplicialComplex
    generators: tuple
    members: frozenset = field(compare=True)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.members

    def sorted(self) -> list[Simplex]:
        return sorted(self.members)

    def of_dim(self, p: int) -> list[Simplex]:
        return sorted(s for s in self.members if len(s) == p + 1)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.members), default=-1)

    def is_open(self, s: Simplex) -> bool:
        return any(f not in self.members for f in faces(s))

    def flagged_members(self) -> list[tuple[Simplex, bool]]:
        return [(s, self.is_open(s)) for s in self.sorted()]

    def closure(self) -> list[Simplex]:
        """Every face of every member, sorted."""
        out: set = set()
        for s in self.members:
            out |= faces(s)
        return sorted(out)

    def is_whole(self) -> bool:
        return self.members == self.complex.simplices

    def __repr__(self) -> str:
        return f"CarrierFamily(generators={list(self.generators)}, members={len(self.members)})"


def star_family(K: SimplicialComplex, generators: Iterable[Sequence[int]]) -> CarrierFamily:
    gens = tuple(simplex(g) for g in generators)
    for g in gens:
        if g not in K.simplices:
            raise DomainError(f"generator {list(g)} is not a simplex of the complex")
    gsets = [set(g) for g in gens]
    members = frozenset(s for s in K.simplices if any(g <= set(s) for g in gsets))
    return CarrierFamily(K, gens, members)


def whole_family(K: SimplicialComplex) -> CarrierFamily:
    return star_family(K, [[v] for v in K.vertices])


def family_union(a: CarrierFamily, b: CarrierFamily) -> CarrierFamily:
    if a.complex != b.complex:
        raise DomainError("families over different complexes")
    gens = tuple(dict.fromkeys(a.generators + b.generators))
    return CarrierFamily(a.complex, gens, a.members | b.members)


def is_star_cover(K: SimplicialComplex, families: Sequence[CarrierFamily]) -> bool:
    covered: set = set()
    for f in families:
        covered |= f.members
    return K.simplices <= covered


@dataclass(frozen=True)
class Subdivision:
    """Barycentric subdivision L of K.

    ``carrier`` sends each simplex of L to the smallest simplex of K
    containing it; ``coords`` sends each vertex of L to the barycentre of the
    K-simplex it stands for, as barycentric weights on that simplex's vertices.
    ``vertex_of`` / ``simplex_of`` translate between new vertex ids and K-simplices.
    """

    base: SimplicialComplex
    complex: SimplicialComplex
    simplex_of: dict
    vertex_of: dict
    carrier: dict
    coords: dict


def barycentric_subdivision(K: SimplicialComplex) -> Subdivision:
    order = K.sorted()
    order.sort(key=lambda s: (len(s), s))
    vertex_of = {s: i for i, s in enumerate(order)}
    simplex_of = {i: s for s, i in vertex_of.items()}
    # flags s_0 < s_1 < ... < s_m of K, grown one proper coface at a time
    cofaces = {s: [t for t in K.simplices if len(t) > len(s) and is_face(s, t)] for s in order}
    flags: list[tuple] = [(s,) for s in order]
    frontier = list(flags)
    while frontier:
        nxt = []
        for fl in frontier:
            for t in cofaces[fl[-1]]:
                nxt.append(fl + (t,))
        flags.extend(nxt)
        frontier = nxt
    L_simplices = set()
    carrier = {}
    for fl in flags:
        sx = tuple(sorted(vertex_of[s] for s in fl))
        L_simplices.add(sx)
        carrier[sx] = fl[-1]
    L = SimplicialComplex(frozenset(L_simplices))
    coords = {}
    for s, i in vertex_of.items():
        w = Fraction(1, len(s))
        coords[i] = {v: w for v in s}
    return Subdivision(K, L, simplex_of, vertex_of, carrier, coords)


def coboundary_matrix(K: SimplicialComplex, p: int) -> RationalMatrix:
    """Simplicial coboundary C^p -> C^{p+1} in the sorted simplex bases."""
    src = K.of_dim(p)
    tgt = K.of_dim(p + 1)
    idx = {s: i for i, s in enumerate(src)}
    m = RationalMatrix(len(tgt), len(src))
    for r, t in enumerate(tgt):
        for sign, f in boundary_faces(t):
            m[r, idx[f]] = sign
    return m


def simplicial_cochain_cohomology(K: SimplicialComplex) -> list[int]:
    """Rational Betti numbers from the simplicial coboundary."""
    n = K.dimension
    ranks = [rank(coboundary_matrix(K, p)) for p in range(n + 1)]
    out = []
    for p in range(n + 1):
        before = ranks[p - 1] if p > 0 else 0
        out.append(len(K.of_dim(p)) - ranks[p] - before)
    return out


def complex_to_json(K: SimplicialComplex) -> dict:
    return {"maximal_simplices": [list(s) for s in K.maximal()]}


def complex_from_json(data: dict) -> SimplicialComplex:
    if not isinstance(data, dict) or "maximal_simplices" not in data:
        raise MalformedInput("expected an object with key 'maximal_simplices'")
    ms = data["maximal_simplices"]
    if not isinstance(ms, list) or not all(isinstance(s, list) for s in ms):
        raise MalformedInput("'maximal_simplices' must be a list of vertex lists")
    return build_complex(ms)
