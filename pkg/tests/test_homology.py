import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from psalgebroid.homology import (
    ChainMap,
    CochainComplex,
    check_short_exact,
    cohomology,
    connecting_homomorphism,
    direct_sum,
    induced_map,
    verify_long_exact,
)
from psalgebroid.linalg import IntegrityError, RationalMatrix, rank, rank_kernel_image
from psalgebroid.liealg import LieAlgebra, ce_complex
from psalgebroid.models import Model, WHITNEY, base_complex
from psalgebroid.mv import build_split, mv_long_exact
from psalgebroid.simplicial import whole_family


def M(rows):
    return RationalMatrix.from_dense(rows)


def test_rank_kernel_image_examples():
    r, ker, img = rank_kernel_image(RationalMatrix.identity(3))
    assert r == 3 and ker == [] and len(img) == 3
    r, ker, _ = rank_kernel_image(RationalMatrix.zeros(2, 5))
    assert r == 0 and len(ker) == 5
    r, ker, _ = rank_kernel_image(M([[1, 2], [2, 4]]))
    assert r == 1 and len(ker) == 1
    k = ker[0]
    assert k[0] / k[1] == Fraction(-2)


matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                                min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_rank_matches_sympy_and_kernel_is_kernel(rows):
    A = M(rows)
    r, ker, img = rank_kernel_image(A)
    assert r == sympy.Matrix(rows).rank()
    assert r + len(ker) == A.ncols
    for v in ker:
        assert not any(A.apply(v))


def test_cohomology_examples(circle):
    assert cohomology(base_complex(whole_family(circle))).dims == [1, 1]
    assert cohomology(ce_complex(LieAlgebra.sl2())).dims == [1, 0, 0, 1]
    C = CochainComplex([2, 3, 1], [RationalMatrix.zeros(3, 2), RationalMatrix.zeros(1, 3), RationalMatrix.zeros(0, 1)])
    assert cohomology(C).dims == [2, 3, 1]


def test_square_nonzero_is_integrity_error():
    with pytest.raises(IntegrityError):
        cohomology(CochainComplex([1, 1, 1], [M([[1]]), M([[1]]), RationalMatrix.zeros(0, 1)]))


def _random_complex(rng):
    # C = B-shaped complex: random acyclic pieces plus a zero part
    n = rng.randint(1, 4)
    dims = [rng.randint(0, 3) for _ in range(n + 1)]
    ds = []
    for p in range(n + 1):
        tgt = dims[p + 1] if p < n else 0
        ds.append(RationalMatrix.zeros(tgt, dims[p]))
    # add d = f o g chains: pick random maps with d_{p+1} d_p = 0 by factoring through projections
    for p in range(n):
        if dims[p] and dims[p + 1]:
            col = [Fraction(rng.randint(-2, 2)) for _ in range(dims[p + 1])]
            if p > 0 and not ds[p - 1].is_zero():
                continue
            if p + 1 < n and not ds[p + 1].is_zero():
                continue
            ds[p] = RationalMatrix.from_columns(dims[p + 1], [dict(enumerate(col))] + [{}] * (dims[p] - 1))
    return CochainComplex(dims, ds)


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_cohomology_basis_independent_and_euler(seed, pseed):
    rng = random.Random(seed)
    C = _random_complex(rng)
    h = cohomology(C).dims
    assert sum((-1) ** p * d for p, d in enumerate(C.dims)) == sum((-1) ** p * d for p, d in enumerate(h))
    # permute the basis of every degree
    prng = random.Random(pseed)
    perms = [prng.sample(range(d), d) for d in C.dims]
    ds = []
    for p in range(C.top + 1):
        D = C.d(p).to_dense()
        tgt = perms[p + 1] if p < C.top else []
        ds.append(M([[D[tgt[i]][perms[p][j]] for j in range(C.dims[p])] for i in range(len(tgt))])
                  if tgt else RationalMatrix.zeros(0, C.dims[p]))
    assert cohomology(CochainComplex(C.dims, ds)).dims == h


def test_induced_maps(circle):
    C = base_complex(whole_family(circle))
    ident = ChainMap(C, C, [RationalMatrix.identity(d) for d in C.dims])
    assert all(m == RationalMatrix.identity(m.nrows) for m in induced_map(ident))
    zero = ChainMap(C, C, [RationalMatrix.zeros(d, d) for d in C.dims])
    assert all(m.is_zero() for m in induced_map(zero))


def test_whitney_into_p2_is_quasi_isomorphism(circle):
    from psalgebroid.models import form_space
    from psalgebroid.linalg import sparse
    fam = whole_family(circle)
    src, tgt = base_complex(fam), base_complex(fam, Model("pr", 2))
    maps = []
    for p in range(2):
        S, T = form_space(fam, p, WHITNEY), form_space(fam, p, Model("pr", 2))
        maps.append(RationalMatrix.from_columns(len(T), [sparse(T.coordinates(b)) for b in S.basis]))
    H = induced_map(ChainMap(src, tgt, maps))
    assert [rank(m) for m in H] == [1, 1] and cohomology(tgt).dims == [1, 1]


def test_connecting_trivial_cases(circle):
    C = base_complex(whole_family(circle))
    Z = CochainComplex([0] * len(C.dims), [RationalMatrix.zeros(0, 0)] * len(C.dims))
    i = ChainMap(C, C, [RationalMatrix.identity(d) for d in C.dims])
    q = ChainMap(C, Z, [RationalMatrix.zeros(0, d) for d in C.dims])
    assert all(m.ncols == 0 for m in connecting_homomorphism(i, q))
    # split sequence A -> A + C -> C
    B = direct_sum(C, C)
    inc = ChainMap(C, B, [RationalMatrix.identity(d).__class__.from_dense(
        [[1 if r == c else 0 for c in range(d)] for r in range(2 * d)]) for d in C.dims])
    proj = ChainMap(B, C, [RationalMatrix.from_dense(
        [[1 if c == r + d else 0 for c in range(2 * d)] for r in range(d)]) for d in C.dims])
    assert check_short_exact(inc, proj).ok
    assert all(m.is_zero() for m in connecting_homomorphism(inc, proj))


def test_mv_connecting_rank_on_circle(circle):
    rep = mv_long_exact(build_split(circle, [[0], [1]], [[2]]), LieAlgebra.abelian(0))
    assert rep.ok
    assert rep.connecting_ranks[0] == 1


def test_verify_long_exact_corruption():
    I = RationalMatrix.identity
    assert verify_long_exact([1, 1], [I(1)]).ok
    bad = verify_long_exact([1, 1], [RationalMatrix.zeros(1, 1)])
    assert not bad.ok and bad.failure is not None
    assert verify_long_exact([0, 0], [RationalMatrix.zeros(0, 0)]).ok
