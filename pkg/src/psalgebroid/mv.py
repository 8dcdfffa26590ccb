"""Mayer-Vietoris sequences over covers by unions of open stars."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebroid import TrivialAlgebroid, build_algebroid_complex, restriction_chain_map
from .homology import (
    ChainMap,
    check_short_exact,
    cohomology,
    connecting_homomorphism,
    direct_sum,
    induced_map,
    verify_long_exact,
)
from .liealg import LieAlgebra, ce_cohomology
from .linalg import Echelon, RationalMatrix, block_diag, hstack, rank, sparse, vstack
from .models import WHITNEY, Model, plain_space
from .simplicial import (
    CarrierFamily,
    DomainError,
    SimplicialComplex,
    Simplex,
    simplex,
    star_family,
    whole_family,
)


@dataclass(frozen=True)
class StarCoverSplit:
    complex: SimplicialComplex
    whole: CarrierFamily
    u_generators: tuple
    v_generators: tuple
    U: CarrierFamily
    V: CarrierFamily
    UV: CarrierFamily


def build_split(K: SimplicialComplex, u_generators: Sequence, v_generators: Sequence,
                whole: CarrierFamily | None = None) -> StarCoverSplit:
    """Split ``whole`` (default: all of K) as U = stars of the first
    generators, V = stars of the second. The intersection family consists
    of the simplices having a U-generator and a V-generator as faces, i.e.
    the star family of the joins of such pairs."""
    whole = whole or whole_family(K)
    U = star_family(K, u_generators)
    V = star_family(K, v_generators)
    if not (U.members | V.members) >= whole.members:
        missing = sorted(whole.members - U.members - V.members)[0]
        raise DomainError(f"not a star cover: simplex {list(missing)} has no generator as a face")
    if not (U.members | V.members) <= whole.members:
        raise DomainError("U or V leaves the family being split")
    joins = []
    for a in U.generators:
        for b in V.generators:
            j = simplex(set(a) | set(b))
            if j in K.simplices and j not in joins:
                joins.append(j)
    UV = CarrierFamily(K, tuple(joins), U.members & V.members)
    return StarCoverSplit(K, whole, U.generators, V.generators, U, V, UV)


def _algebroids(split: StarCoverSplit, g: LieAlgebra):
    return (TrivialAlgebroid(split.whole, g), TrivialAlgebroid(split.U, g),
            TrivialAlgebroid(split.V, g), TrivialAlgebroid(split.UV, g))


def delta_map(split: StarCoverSplit, g: LieAlgebra, model: Model = WHITNEY) -> ChainMap:
    """omega |-> (omega|U, omega|V)."""
    A, AU, AV, _ = _algebroids(split, g)
    ru = restriction_chain_map(A, split.U, model)
    rv = restriction_chain_map(A, split.V, model)
    tgt = direct_sum(ru.target, rv.target)
    maps = [vstack(ru.f(p), rv.f(p)) for p in range(ru.source.top + 1)]
    return ChainMap(ru.source, tgt, maps)


def pi_map(split: StarCoverSplit, g: LieAlgebra, model: Model = WHITNEY) -> ChainMap:
    """(xi, eta) |-> eta|UV - xi|UV."""
    _, AU, AV, _ = _algebroids(split, g)
    ru = restriction_chain_map(AU, split.UV, model)
    rv = restriction_chain_map(AV, split.UV, model)
    src = direct_sum(ru.source, rv.source)
    maps = [hstack(-ru.f(p), rv.f(p)) for p in range(src.top + 1)]
    return ChainMap(src, ru.target, maps)


def _image_covers(source_spaces, target_space, restrict) -> tuple[bool, int]:
    """Does the span of restricted source forms contain ``target_space``?
    Returns (ok, number of target basis vectors missed)."""
    e = Echelon()
    for space, sign in source_spaces:
        for b in space.basis:
            e.add(restrict(b, sign).flatten())
    missed = sum(not e.contains(b.flatten()) for b in target_space.basis)
    return missed == 0, missed


def headroom_surjectivity(split: StarCoverSplit, p: int, r: int, headroom: int = 1) -> dict:
    """Is every compatible p-form of coefficient degree <= r on the
    intersection the difference of restrictions of forms of degree
    <= r + headroom on U and V?"""
    tgt = plain_space(split.UV, p, r)
    su = plain_space(split.U, p, r + headroom)
    sv = plain_space(split.V, p, r + headroom)

    def restrict(b, sign):
        f = b.restrict(split.UV)
        return f.scale(sign)

    ok, missed = _image_covers([(su, -1), (sv, 1)], tgt, restrict)
    return {"form_degree": p, "r": r, "headroom": headroom, "target_dim": len(tgt),
            "missed": missed, "ok": ok}


def truncation_square(split: StarCoverSplit, p: int, r: int) -> bool:
    """Inclusions P_r -> P_{r+1} commute with delta and pi (degree p, scalar forms)."""
    def inclusion(fam):
        lo, hi = plain_space(fam, p, r), plain_space(fam, p, r + 1)
        return lo, hi, RationalMatrix.from_columns(len(hi), [sparse(hi.coordinates(b)) for b in lo.basis])

    def restriction(src, dst_space, fam):
        return RationalMatrix.from_columns(len(dst_space), [sparse(dst_space.coordinates(b.restrict(fam)))
                                                            for b in src.basis])

    kl, kh, ik = inclusion(split.whole)
    ul, uh, iu = inclusion(split.U)
    vl, vh, iv = inclusion(split.V)
    wl, wh, iw = inclusion(split.UV)
    d_lo = vstack(restriction(kl, ul, split.U), restriction(kl, vl, split.V))
    d_hi = vstack(restriction(kh, uh, split.U), restriction(kh, vh, split.V))
    i_uv = block_diag(iu, iv)
    pi_lo = hstack(-restriction(ul, wl, split.UV), restriction(vl, wl, split.UV))
    pi_hi = hstack(-restriction(uh, wh, split.UV), restriction(vh, wh, split.UV))
    return (d_hi @ ik) == (i_uv @ d_lo) and (pi_hi @ i_uv) == (iw @ pi_lo)


@dataclass
class ShortExactReport:
    delta_injective: list[bool]
    exact_middle: list[bool]
    pi_surjective: list[bool]
    headroom: list[dict] = field(default_factory=list)
    euler: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (all(self.delta_injective) and all(self.exact_middle) and all(self.pi_surjective)
                and all(h["ok"] for h in self.headroom) and self.euler.get("ok", True))

    def to_json(self) -> dict:
        return {"delta_injective": self.delta_injective, "exact_middle": self.exact_middle,
                "pi_surjective": self.pi_surjective, "headroom": self.headroom,
                "euler": self.euler, "ok": self.ok}


def verify_short_exact(split: StarCoverSplit, g: LieAlgebra, model: Model = WHITNEY,
                       headroom_degrees: Sequence[int] = ()) -> ShortExactReport:
    d = delta_map(split, g, model)
    pi = pi_map(split, g, model)
    rep = check_short_exact(d, pi)
    out = ShortExactReport(rep.injective, rep.exact_middle, rep.surjective)
    chi = [C.euler_characteristic() for C in (d.source, d.target, pi.target)]
    out.euler = {"K": chi[0], "U+V": chi[1], "UV": chi[2], "ok": chi[0] == chi[1] - chi[2]}
    for r in headroom_degrees:
        for p in range(split.UV.dimension + 1):
            out.headroom.append(headroom_surjectivity(split, p, r))
    return out


@dataclass
class MVReport:
    ok: bool
    dims_K: list[int]
    dims_U: list[int]
    dims_V: list[int]
    dims_UV: list[int]
    node_dims: list[int]
    failure: int | None
    connecting_ranks: list[int]

    def to_json(self) -> dict:
        return dict(self.__dict__)


def mv_long_exact(split: StarCoverSplit, g: LieAlgebra, model: Model = WHITNEY) -> MVReport:
    d = delta_map(split, g, model)
    pi = pi_map(split, g, model)
    se = check_short_exact(d, pi)
    if not se.ok:
        name, p = se.first_failure()
        raise DomainError(f"short exactness fails ({name}, degree {p})")
    hK, hS, hW = cohomology(d.source), cohomology(d.target), cohomology(pi.target)
    Hd = induced_map(d, hK, hS)
    Hp = induced_map(pi, hS, hW)
    conn = connecting_homomorphism(d, pi, hK, hW)
    top = d.source.top
    dims, maps = [], []
    for p in range(top + 1):
        dims += [hK[p].dim, hS[p].dim, hW[p].dim]
        maps += [Hd[p], Hp[p]]
        if p < top:
            maps.append(conn[p])
    le = verify_long_exact(dims, maps)
    _, AU, AV, _ = _algebroids(split, g)
    dU = cohomology(build_algebroid_complex(AU, model)).dims
    dV = cohomology(build_algebroid_complex(AV, model)).dims
    return MVReport(le.ok, hK.dims, dU, dV, hW.dims, dims, le.failure, [rank(c) for c in conn])


def star_contractibility(K: SimplicialComplex, g: LieAlgebra, model: Model = WHITNEY,
                         generators: Sequence[Simplex] | None = None) -> list[dict]:
    """Cohomology of the algebroid complex over each star against H(g)."""
    expected = ce_cohomology(g).dims
    out = []
    for v in generators if generators is not None else [(v,) for v in K.vertices]:
        F = star_family(K, [v])
        dims = cohomology(build_algebroid_complex(TrivialAlgebroid(F, g), model)).dims
        padded = dims + [0] * (len(expected) - len(dims))
        got = padded[: max(len(expected), len(dims))]
        ok = got[: len(expected)] == expected and not any(got[len(expected):])
        out.append({"generator": list(v), "dims": dims, "expected": expected, "ok": ok})
    return out


def induction_steps(K: SimplicialComplex, g: LieAlgebra, model: Model = WHITNEY) -> list[dict]:
    """Vertex-by-vertex Mayer-Vietoris skeleton: at step m the family of the
    stars of v_0..v_m is split as U = stars of v_0..v_{m-1}, V = star of v_m."""
    vs = K.vertices
    steps = []
    for m in range(1, len(vs)):
        whole = star_family(K, [[v] for v in vs[: m + 1]])
        split = build_split(K, [[v] for v in vs[:m]], [[vs[m]]], whole=whole)
        if not split.UV.members:
            # disjoint stars: the sequence splits with a zero third term
            steps.append({"vertex": vs[m], "intersection_empty": True, "ok": True})
            continue
        se = verify_short_exact(split, g, model)
        step = {"vertex": vs[m], "short_exact": se.to_json(), "dims_whole": None, "long_exact": None}
        if se.ok:
            le = mv_long_exact(split, g, model)
            step.update(long_exact=le.ok, dims_whole=le.dims_K, dims_U=le.dims_U, dims_V=le.dims_V,
                        dims_UV=le.dims_UV)
        # a vertex outside the family caps the piecewise-polynomial partition
        # functions; such steps are reported, not asserted
        step["ok"] = se.ok and bool(step["long_exact"])
        steps.append(step)
    return steps
