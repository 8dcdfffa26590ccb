"""Cochain complexes, cohomology, induced maps and long exact sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import (
    Echelon,
    IntegrityError,
    RationalMatrix,
    block_diag,
    column_solver,
    dense,
    rank,
    rank_kernel_image,
    sparse,
)
from .simplicial import DomainError


@dataclass
class CochainComplex:
    """Graded finite-dimensional spaces C^0..C^N with D_p: C^p -> C^{p+1}.

    ``differentials[p]`` has shape (dims[p+1], dims[p]); the last one maps
    into the zero space and may be omitted.
    """

    dims: list[int]
    differentials: list[RationalMatrix]
    labels: list[list] | None = None

    def __post_init__(self):
        n = len(self.dims)
        ds = list(self.differentials)
        while len(ds) < n:
            p = len(ds)
            ds.append(RationalMatrix.zeros(self.dims[p + 1] if p + 1 < n else 0, self.dims[p]))
        self.differentials = ds
        for p, D in enumerate(ds):
            tgt = self.dims[p + 1] if p + 1 < n else 0
            if D.shape != (tgt, self.dims[p]):
                raise ValueError(f"differential {p} has shape {D.shape}, expected {(tgt, self.dims[p])}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, p: int) -> RationalMatrix:
        if p < 0:
            return RationalMatrix.zeros(self.dims[0] if self.dims else 0, 0)
        if p > self.top:
            return RationalMatrix.zeros(0, 0)
        return self.differentials[p]

    def dim(self, p: int) -> int:
        return self.dims[p] if 0 <= p <= self.top else 0

    def square_zero_defect(self):
        """First degree p with D_{p+1} D_p != 0, or None."""
        for p in range(self.top):
            if not (self.differentials[p + 1] @ self.differentials[p]).is_zero():
                return p
        return None

    def check(self):
        p = self.square_zero_defect()
        if p is not None:
            raise IntegrityError(f"D^2 != 0 at degree {p}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.dims))

    def padded(self, top: int) -> "CochainComplex":
        dims = list(self.dims) + [0] * (top + 1 - len(self.dims))
        return CochainComplex(dims, self.differentials[: len(self.dims) - 1])


def direct_sum(a: CochainComplex, b: CochainComplex) -> CochainComplex:
    top = max(a.top, b.top)
    a, b = a.padded(top), b.padded(top)
    return CochainComplex([x + y for x, y in zip(a.dims, b.dims)],
                          [block_diag(da, db) for da, db in zip(a.differentials, b.differentials)])


@dataclass
class ChainMap:
    source: CochainComplex
    target: CochainComplex
    maps: list[RationalMatrix]

    def __post_init__(self):
        for p, F in enumerate(self.maps):
            if F.shape != (self.target.dim(p), self.source.dim(p)):
                raise ValueError(f"chain map component {p} has shape {F.shape}")

    def f(self, p: int) -> RationalMatrix:
        if 0 <= p < len(self.maps):
            return self.maps[p]
        return RationalMatrix.zeros(self.target.dim(p), self.source.dim(p))

    def commutation_defect(self):
        for p in range(max(self.source.top, self.target.top) + 1):
            lhs = self.f(p + 1) @ self.source.d(p) if p + 1 <= self.source.top else None
            rhs = self.target.d(p) @ self.f(p) if p + 1 <= self.target.top else None
            if lhs is None and rhs is None:
                continue
            if lhs is None:
                lhs = RationalMatrix.zeros(*rhs.shape)
            if rhs is None:
                rhs = RationalMatrix.zeros(*lhs.shape)
            if lhs != rhs:
                return p
        return None

    def check(self):
        p = self.commutation_defect()
        if p is not None:
            raise IntegrityError(f"chain map does not commute with differentials at degree {p}")


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    n = max(len(f.maps), len(g.maps))
    return ChainMap(f.source, g.target, [g.f(p) @ f.f(p) for p in range(n)])


@dataclass
class DegreeCohomology:
    dim: int
    representatives: list[list[Fraction]]
    _solver: Echelon = field(repr=False, default=None)

    def coordinates(self, z: Sequence) -> list[Fraction]:
        """Coordinates of the class of cocycle ``z`` in the representative basis."""
        sol = self._solver.solve(sparse(z))
        if sol is None:
            raise IntegrityError("vector is not a cocycle of this complex")
        return [sol.get(("h", i), Fraction(0)) for i in range(self.dim)]

    def is_coboundary(self, z: Sequence) -> bool:
        return not any(self.coordinates(z))


@dataclass
class CohomologyResult:
    degrees: list[DegreeCohomology]

    @property
    def dims(self) -> list[int]:
        return [d.dim for d in self.degrees]

    def __getitem__(self, p: int) -> DegreeCohomology:
        return self.degrees[p]


def cohomology(C: CochainComplex) -> CohomologyResult:
    C.check()
    out = []
    for p in range(C.top + 1):
        _, Z, _ = rank_kernel_image(C.d(p))
        B = C.d(p - 1).columns() if p > 0 else []
        solver = Echelon(track=True)
        for j, b in enumerate(B):
            if b:
                solver.add(b, label=("b", j))
        reps = []
        for z in Z:
            if solver.add(sparse(z), label=("h", len(reps))):
                reps.append(z)
        out.append(DegreeCohomology(len(reps), reps, solver))
    return CohomologyResult(out)


def cohomology_dims(C: CochainComplex) -> list[int]:
    """Betti numbers only: nullity(D_p) - rank(D_{p-1})."""
    C.check()
    ranks = [rank(C.d(p)) for p in range(C.top + 1)]
    return [C.dims[p] - ranks[p] - (ranks[p - 1] if p else 0) for p in range(C.top + 1)]


def induced_map(F: ChainMap, hs: CohomologyResult | None = None,
                ht: CohomologyResult | None = None) -> list[RationalMatrix]:
    """Matrices of H(F) in representative coordinates, one per degree."""
    F.check()
    hs = hs or cohomology(F.source)
    ht = ht or cohomology(F.target)
    out = []
    for p in range(F.source.top + 1):
        Fp = F.f(p)
        if p <= F.target.top:
            # coboundaries must go to coboundaries
            if p > 0:
                for b in F.source.d(p - 1).columns():
                    if b and not ht[p].is_coboundary(Fp.apply(dense(b, Fp.ncols))):
                        raise IntegrityError("chain map sends a coboundary to a non-trivial class")
            cols = [ht[p].coordinates(Fp.apply(z)) for z in hs[p].representatives]
            out.append(RationalMatrix.from_columns(ht[p].dim, [sparse(c) for c in cols]))
        else:
            out.append(RationalMatrix.zeros(0, hs[p].dim))
    return out


def is_quasi_isomorphism(F: ChainMap) -> bool:
    hs, ht = cohomology(F.source), cohomology(F.target)
    if hs.dims[: len(ht.dims)] != ht.dims[: len(hs.dims)]:
        return False
    return all(rank(M) == M.nrows == M.ncols for M in induced_map(F, hs, ht))


@dataclass
class ExactnessReport:
    injective: list[bool]
    exact_middle: list[bool]
    surjective: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.injective) and all(self.exact_middle) and all(self.surjective)

    def first_failure(self):
        for name in ("injective", "exact_middle", "surjective"):
            for p, v in enumerate(getattr(self, name)):
                if not v:
                    return name, p
        return None


def check_short_exact(i: ChainMap, q: ChainMap) -> ExactnessReport:
    top = max(i.source.top, i.target.top, q.target.top)
    inj, mid, sur = [], [], []
    for p in range(top + 1):
        ip, qp = i.f(p), q.f(p)
        ri, rq = rank(ip), rank(qp)
        inj.append(ri == ip.ncols)
        mid.append((qp @ ip).is_zero() and ri == qp.ncols - rq)
        sur.append(rq == qp.nrows)
    return ExactnessReport(inj, mid, sur)


def connecting_homomorphism(i: ChainMap, q: ChainMap, hA: CohomologyResult | None = None,
                            hC: CohomologyResult | None = None) -> list[RationalMatrix]:
    """H^p(C) -> H^{p+1}(A) for 0 -> A -i-> B -q-> C -> 0, by the snake construction."""
    rep = check_short_exact(i, q)
    if not rep.ok:
        name, p = rep.first_failure()
        raise DomainError(f"sequence is not short exact ({name} fails in degree {p})")
    A, B, C = i.source, i.target, q.target
    hA = hA or cohomology(A)
    hC = hC or cohomology(C)
    out = []
    for p in range(C.top + 1):
        qs = column_solver(q.f(p))
        _, qker, _ = rank_kernel_image(q.f(p))
        isolve = column_solver(i.f(p + 1)) if p + 1 <= A.top else None
        cols = []
        for c in hC[p].representatives:
            classes = []
            lifts = [qs.solve(sparse(c))]
            if qker:
                alt = dict(lifts[0])
                for kv in qker:
                    for j, v in enumerate(kv):
                        if v:
                            alt[j] = alt.get(j, 0) + v
                lifts.append(alt)
            for b in lifts:
                if b is None:
                    raise IntegrityError("failed to lift a cocycle through q")
                db = B.d(p).apply(dense(b, B.dim(p)))
                if p + 1 > A.top:
                    if any(db):
                        raise IntegrityError("boundary of a lift leaves the complex")
                    classes.append([])
                    continue
                a = isolve.solve(sparse(db))
                if a is None:
                    raise IntegrityError("d(lift) is not in the image of i")
                classes.append(hA[p + 1].coordinates(dense(a, A.dim(p + 1))))
            if any(cl != classes[0] for cl in classes[1:]):
                raise IntegrityError("connecting map depends on the choice of lift")
            cols.append(classes[0])
        rows = hA[p + 1].dim if p + 1 <= A.top else 0
        out.append(RationalMatrix.from_columns(rows, [sparse(c) for c in cols]))
    return out


@dataclass
class LongExactReport:
    ok: bool
    failure: int | None
    node_dims: list[int]
    detail: str = ""


def verify_long_exact(dims: Sequence[int], maps: Sequence[RationalMatrix]) -> LongExactReport:
    """Check im = ker at every node of 0 -> V_0 -> V_1 -> ... -> V_n -> 0."""
    dims = list(dims)
    if len(maps) != max(len(dims) - 1, 0):
        raise ValueError("need one map between each pair of consecutive nodes")
    for k, M in enumerate(maps):
        if M.shape != (dims[k + 1], dims[k]):
            raise ValueError(f"map {k} has shape {M.shape}, expected {(dims[k + 1], dims[k])}")
    ranks = [rank(M) for M in maps]
    for k in range(len(dims)):
        r_in = ranks[k - 1] if k > 0 else 0
        r_out = ranks[k] if k < len(maps) else 0
        if k > 0 and k < len(maps) and not (maps[k] @ maps[k - 1]).is_zero():
            return LongExactReport(False, k, dims, "composite of consecutive maps is non-zero")
        if r_in != dims[k] - r_out:
            return LongExactReport(False, k, dims, f"rank in {r_in} != nullity out {dims[k] - r_out}")
    return LongExactReport(True, None, dims)
