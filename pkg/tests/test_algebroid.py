import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from psalgebroid import sampling
from psalgebroid.algebroid import (
    AlgebroidForm,
    PolySection,
    TrivialAlgebroid,
    algebroid_bracket,
    algebroid_form_from_json,
    algebroid_form_to_json,
    anchor,
    build_algebroid_complex,
    cartan_derivative_evaluate,
    evaluate_algebroid_form,
    kunneth_map,
    restrict_form,
    tensor_differential,
    vector_field_bracket,
)
from psalgebroid.homology import cohomology
from psalgebroid.liealg import CEElement, LieAlgebra, ce_complex
from psalgebroid.polyform import LocalForm, PiecewiseForm, hat_function, whitney_elementary_form
from psalgebroid.polynomial import Poly
from psalgebroid.simplicial import (
    DomainError,
    barycentric_subdivision,
    build_complex,
    star_family,
    whole_family,
)

E = (0, 1)
T = (0, 1, 2)


def const(k, c):
    return Poly.const(k, c)


def one(F):
    return PiecewiseForm(F, 0, {s: LocalForm.function(s, const(len(s) - 1, 1)) for s in F.members})


def test_kunneth_examples(circle, sl2):
    F = whole_family(circle)
    A = TrivialAlgebroid(F, sl2)
    xi = hat_function(F, 0)
    w = kunneth_map(xi, CEElement.one(sl2), A)
    assert list(w.comps) == [()] and w.component(()) == xi
    w = kunneth_map(one(F), CEElement.basis(sl2, (0,)), A)
    assert list(w.comps) == [(0,)] and w.component((0,)).d().is_zero()
    with pytest.raises(DomainError):
        kunneth_map(xi, CEElement.one(LieAlgebra.abelian(1)), A)


def test_kunneth_multiplicative(sphere, sl2):
    rng = random.Random(7)
    F = whole_family(sphere)
    A = TrivialAlgebroid(F, sl2)
    for _ in range(10):
        x1, x2 = sampling.piecewise_form(rng, F, 1, 1), sampling.piecewise_form(rng, F, 0, 1)
        e1, e2 = sampling.ce_element(rng, sl2, 1), sampling.ce_element(rng, sl2, 1)
        lhs = kunneth_map(x1, e1, A).wedge(kunneth_map(x2, e2, A))
        # Koszul sign (-1)^{|e1| |x2|} is +1 for a 0-form x2
        rhs = kunneth_map(x1.wedge(x2), e1.wedge(e2), A)
        assert lhs == rhs


def test_tensor_differential_abelian_is_base_d(circle):
    A = TrivialAlgebroid(whole_family(circle), LieAlgebra.abelian(2))
    w = sampling.algebroid_form(random.Random(1), A, 1)
    dw = tensor_differential(w)
    assert all(dw.component(I) == w.component(I).d() for I in w.comps)


def test_tensor_differential_explicit(disk, sl2):
    F = whole_family(disk)
    A = TrivialAlgebroid(F, sl2)
    lam = hat_function(F, 0)
    w = kunneth_map(lam, CEElement.basis(sl2, (0,)), A)
    # d(lam (x) h*) = dlam (x) h* + lam (x) (-e*^f*)
    expected = kunneth_map(lam.d(), CEElement.basis(sl2, (0,)), A) + \
        kunneth_map(lam, CEElement(sl2, 2, {(1, 2): -1}), A)
    assert tensor_differential(w) == expected


def test_bracket_examples():
    g = LieAlgebra.abelian(1)
    s = PolySection(T, (const(2, 1), const(2, 2)), (const(2, 3),))
    t = PolySection(T, (const(2, -1), const(2, 5)), (const(2, 1),))
    r = algebroid_bracket(s, t, g)
    assert not any(r.X) and not any(r.u)
    s = PolySection(E, (Poly.var(1, 0),), (Poly.zero(1),))
    t = PolySection(E, (const(1, 1),), (Poly.zero(1),))
    assert algebroid_bracket(s, t, g).X == (const(1, -1),)
    rng = random.Random(3)
    u = sampling.section(rng, T, LieAlgebra.sl2())
    r = algebroid_bracket(u, u, LieAlgebra.sl2())
    assert not any(r.X) and not any(r.u)


def test_anchor_is_a_morphism(sl2):
    rng = random.Random(5)
    for _ in range(10):
        s, t = sampling.section(rng, T, sl2), sampling.section(rng, T, sl2)
        assert anchor(algebroid_bracket(s, t, sl2)) == vector_field_bracket(anchor(s), anchor(t))
    assert anchor(PolySection(T, (Poly.zero(2),) * 2, (const(2, 1),) * 3)) == (Poly.zero(2),) * 2


def test_evaluation_examples(disk):
    g = LieAlgebra.abelian(1)
    F = whole_family(disk)
    A = TrivialAlgebroid(F, g)
    pt = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    xi = whitney_elementary_form(F, (0, 1))
    s = PolySection(T, (const(2, 2), const(2, -1)), (Poly.var(2, 0),))
    w = kunneth_map(xi, CEElement.one(g), A)
    from psalgebroid.polyform import evaluate_form
    assert evaluate_algebroid_form(w, T, [s], pt) == evaluate_form(xi.local(T), pt, [[2, -1]])
    w = kunneth_map(one(F), CEElement.basis(g, (0,)), A)
    assert evaluate_algebroid_form(w, T, [s], pt) == pt[1]
    # dx1 (x) e*_1 on an edge against (X, u), (Y, v): X v - Y u
    I = build_complex([E])
    B = TrivialAlgebroid(whole_family(I), g)
    xi = PiecewiseForm(B.family, 1, {E: LocalForm.dx(E, 1)})
    w = kunneth_map(xi, CEElement.basis(g, (0,)), B)
    a = PolySection(E, (const(1, 3),), (const(1, 5),))
    b = PolySection(E, (const(1, 7),), (const(1, 11),))
    assert evaluate_algebroid_form(w, E, [a, b], [Fraction(1, 2)] * 2) == 3 * 11 - 7 * 5
    with pytest.raises(DomainError):
        evaluate_algebroid_form(w, E, [a], [Fraction(1, 2)] * 2)


def test_cartan_examples(disk):
    g = LieAlgebra.abelian(1)
    F = whole_family(disk)
    A = TrivialAlgebroid(F, g)
    f = hat_function(F, 1).wedge(hat_function(F, 2))
    w = kunneth_map(f, CEElement.one(g), A)
    s = PolySection(T, (const(2, 2), const(2, -1)), (const(2, 4),))
    pt = [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)]
    # X.f = 2 d/dx1 (x1 x2) - d/dx2 (x1 x2) = 2 x2 - x1
    assert cartan_derivative_evaluate(w, T, [s], pt) == 2 * pt[2] - pt[1]
    w = kunneth_map(one(F), CEElement.basis(g, (0,)), A)
    t = PolySection(T, (const(2, 1), const(2, 1)), (const(2, -3),))
    assert cartan_derivative_evaluate(w, T, [s, t], pt) == 0


def test_restrict_form_examples(circle, sl2):
    F = whole_family(circle)
    A = TrivialAlgebroid(F, sl2)
    w = sampling.algebroid_form(random.Random(2), A, 1)
    assert restrict_form(w, F) == w
    S = star_family(circle, [[0]])
    r = restrict_form(w, S)
    assert set(r.family.members) == S.members
    assert all(r.component(I).local(s) == w.component(I).local(s) for I in w.comps for s in S.members
               if len(s) - 1 >= r.component(I).degree)
    with pytest.raises(DomainError):
        restrict_form(r, F)


def test_subdivision_preserves_midpoint_value():
    I = build_complex([E])
    g = LieAlgebra.abelian(1)
    A = TrivialAlgebroid(whole_family(I), g)
    w = kunneth_map(whitney_elementary_form(A.family, E), CEElement.one(g), A)
    sub = barycentric_subdivision(I)
    wl = restrict_form(w, sub)
    mid = sub.vertex_of[E]
    half = tuple(sorted((sub.vertex_of[(0,)], mid)))
    # unit tangent vector on [0,1] is twice the unit vector on the half edge
    s_base = PolySection(E, (const(1, 1),), (const(1, 0),))
    s_half = PolySection(half, (const(1, 2 if half[0] < half[1] else -2),), (const(1, 0),))
    at_mid = [0, 1] if half[1] == mid else [1, 0]
    assert evaluate_algebroid_form(wl, half, [s_half], at_mid) == \
        evaluate_algebroid_form(w, E, [s_base], [Fraction(1, 2)] * 2)


def test_complex_examples(circle, sl2):
    A = TrivialAlgebroid(whole_family(circle), LieAlgebra.abelian(1))
    C = build_algebroid_complex(A)
    assert C.dims == [3, 6, 3]
    assert C.euler_characteristic() == 0
    pt = build_complex([[0]])
    P = build_algebroid_complex(TrivialAlgebroid(whole_family(pt), sl2))
    CE = ce_complex(sl2)
    assert P.dims == CE.dims
    assert all(P.d(p) == CE.d(p) for p in range(4))


def test_json_roundtrip(sphere, sl2):
    A = TrivialAlgebroid(whole_family(sphere), sl2)
    w = sampling.algebroid_form(random.Random(4), A, 2)
    assert algebroid_form_from_json(A, algebroid_form_to_json(w)) == w


seeds = st.integers(0, 10**6)


@given(seeds)
def test_random_tensor_d_squared_and_kunneth_chain_map(seed):
    rng = random.Random(seed)
    K = build_complex([[0, 1, 2], [1, 2, 3]])
    g = LieAlgebra.sl2()
    A = TrivialAlgebroid(whole_family(K), g)
    w = sampling.algebroid_form(rng, A, rng.randint(0, 3))
    assert tensor_differential(tensor_differential(w)).is_zero()
    a, q = rng.randint(0, 2), rng.randint(0, 3)
    xi, eta = sampling.piecewise_form(rng, A.family, a), sampling.ce_element(rng, g, q)
    rhs = AlgebroidForm.zero(A, a + q + 1)
    if a < 2:
        rhs = rhs + kunneth_map(xi.d(), eta, A)
    if q < 3:
        rhs = rhs + kunneth_map(xi, eta.d(), A).scale((-1) ** a)
    assert tensor_differential(kunneth_map(xi, eta, A)) == rhs


@given(seeds)
def test_random_cartan_equals_tensor(seed):
    rng = random.Random(seed)
    g = LieAlgebra.sl2()
    A = TrivialAlgebroid(whole_family(build_complex([T])), g)
    p = rng.randint(0, 2)
    w = sampling.algebroid_form(rng, A, p)
    ss = [sampling.section(rng, T, g) for _ in range(p + 1)]
    pt = sampling.point(rng, T)
    assert cartan_derivative_evaluate(w, T, ss, pt) == evaluate_algebroid_form(tensor_differential(w), T, ss, pt)


@given(seeds)
def test_random_restriction_commutes_with_d(seed):
    rng = random.Random(seed)
    K = build_complex([[0, 1, 2]])
    g = LieAlgebra.solvable2()
    A = TrivialAlgebroid(whole_family(K), g)
    w = sampling.algebroid_form(rng, A, rng.randint(0, 3))
    S = star_family(K, [[1]])
    assert restrict_form(tensor_differential(w), S) == tensor_differential(restrict_form(w, S))
    sub = barycentric_subdivision(K)
    assert restrict_form(tensor_differential(w), sub) == tensor_differential(restrict_form(w, sub))
