import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from psalgebroid import sampling
from psalgebroid.linalg import Echelon
from psalgebroid.models import base_complex, form_space, WHITNEY
from psalgebroid.homology import cohomology
from psalgebroid.polyform import (
    LocalForm,
    PiecewiseForm,
    affine_pullback,
    barycentric,
    basis_pr,
    evaluate_form,
    exterior_derivative,
    form_from_json,
    form_to_json,
    hat_function,
    restrict_to_face,
    wedge,
    whitney_basis,
    whitney_elementary_form,
)
from psalgebroid.polynomial import Poly
from psalgebroid.simplicial import (
    DomainError,
    build_complex,
    simplicial_cochain_cohomology,
    star_family,
    whole_family,
)

T = (0, 1, 2)


def to_sympy(f: Poly, xs):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** e for x, e in zip(xs, ex)])
               for ex, c in f.terms.items())


@given(st.integers(0, 10**6))
def test_poly_derivative_and_compose_match_sympy(seed):
    rng = random.Random(seed)
    xs = sympy.symbols("x1:4")
    f = sampling.poly(rng, 3, 3)
    g = [sampling.poly(rng, 2, 2) for _ in range(3)]
    ys = sympy.symbols("y1:3")
    for i in range(3):
        assert sympy.expand(to_sympy(f.deriv(i), xs) - sympy.diff(to_sympy(f, xs), xs[i])) == 0
    comp = to_sympy(f, xs).subs({xs[i]: to_sympy(g[i], ys) for i in range(3)}, simultaneous=True)
    assert sympy.expand(to_sympy(f.compose(g), ys) - comp) == 0


def test_wedge_signs():
    assert LocalForm.dx(T, 1).wedge(LocalForm.dx(T, 2)) == LocalForm.dx(T, 1, 2)
    assert LocalForm.dx(T, 2).wedge(LocalForm.dx(T, 1)) == LocalForm.dx(T, 1, 2).scale(-1)


def test_degree_zero_wedge_is_multiplication(disk):
    F = whole_family(disk)
    lam0 = hat_function(F, 0)
    b = whitney_elementary_form(F, (1, 2))
    assert wedge(lam0, b) == PiecewiseForm(F, 1, {s: lf.scale(barycentric(s, 0).comps.get((), Poly.zero(len(s) - 1)))
                                                  for s, lf in b.locals.items()})


def test_odd_form_squares_to_zero(disk):
    a = whitney_elementary_form(whole_family(disk), (0, 1))
    assert wedge(a, a).is_zero()


def test_whitney_edge_form_and_derivative():
    # on [0,1,2] with x1 = lambda_1, x2 = lambda_2 and lambda_0 = 1 - x1 - x2
    x1, x2 = sympy.symbols("x1 x2")
    l0, l1 = 1 - x1 - x2, x1
    # lambda_0 dlambda_1 - lambda_1 dlambda_0 in the basis dx1, dx2
    expected = {(1,): sympy.expand(l0 * 1 - l1 * (-1)), (2,): sympy.expand(l0 * 0 - l1 * (-1))}
    w = whitney_elementary_form(whole_family(build_complex([T])), (0, 1)).local(T)
    for I, e in expected.items():
        assert sympy.expand(to_sympy(w.comps[I], (x1, x2)) - e) == 0
    # 2 dlambda_0 ^ dlambda_1 = 2 (-dx1 - dx2) ^ dx1 = 2 dx12
    assert w.d() == LocalForm.dx(T, 1, 2).scale(2)


def test_d_examples():
    S3 = (0, 1, 2, 3)
    l1, l2 = barycentric(S3, 1), barycentric(S3, 2)
    a = l1.wedge(l1).wedge(l2).wedge(LocalForm.dx(S3, 1))
    assert a.d().d().is_zero()
    assert LocalForm.function(T, Poly.const(2, 5)).d().is_zero()


def test_restrict_to_face_examples():
    e = (0, 1)
    assert restrict_to_face(barycentric(T, 1), e) == barycentric(e, 1)
    assert restrict_to_face(LocalForm.dx(T, 2), e).is_zero()
    lf = LocalForm.dx(T, 1).scale(Poly.var(2, 1))
    assert restrict_to_face(lf, T) == lf
    with pytest.raises(DomainError):
        restrict_to_face(lf, (0, 3))


def test_affine_pullback_examples():
    e = (0, 1)
    half = affine_pullback(LocalForm.dx(e, 1), (0, 1), [[1, 0], [Fraction(1, 2), Fraction(1, 2)]])
    assert half == LocalForm.dx(e, 1).scale(Fraction(1, 2))
    lf = LocalForm.dx(T, 2).scale(Poly.var(2, 0))
    assert affine_pullback(lf, T, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == lf
    assert affine_pullback(lf, (0, 2), [[1, 0, 0], [0, 0, 1]]) == restrict_to_face(lf, (0, 2))


def test_whitney_examples(disk, circle):
    F = whole_family(disk)
    assert whitney_elementary_form(F, (1,)) == hat_function(F, 1)
    w = whitney_elementary_form(whole_family(circle), (0, 1))
    assert w.local((1, 2)).is_zero() and w.local((0, 2)).is_zero()


def test_evaluate_examples():
    e = (0, 1)
    assert evaluate_form(barycentric(e, 1), [Fraction(1, 2)] * 2, []) == Fraction(1, 2)
    assert evaluate_form(LocalForm.dx(e, 1), [1, 0], [[1]]) == 1
    a = LocalForm.dx(T, 1, 2)
    assert evaluate_form(a, [1, 0, 0], [[1, 0], [0, 1]]) == 1
    assert evaluate_form(a, [1, 0, 0], [[0, 1], [1, 0]]) == -1
    with pytest.raises(DomainError):
        evaluate_form(a, [1, 0, 0], [[1, 0]])


def test_basis_pr_examples(circle):
    assert len(basis_pr(whole_family(circle), 0, 1)) == 3
    I = build_complex([[0, 1]])
    assert len(basis_pr(star_family(I, [[0, 1]]), 1, 0)) == 1
    assert basis_pr(whole_family(circle), 2, 3) == []


def test_basis_pr_dimension_oracle(circle):
    # compatible functions of degree <= r on a 3-cycle: one value per vertex
    # plus r - 1 interior coefficients per edge
    for r in range(1, 4):
        assert len(basis_pr(whole_family(circle), 0, r)) == 3 + 3 * (r - 1)
        assert len(basis_pr(whole_family(circle), 1, r)) == 3 * (r + 1)


@pytest.mark.parametrize("name", ["circle", "sphere", "solid_simplex", "torus", "interval", "point"])
def test_whitney_cohomology_matches_oracle(name):
    from psalgebroid.fixtures import load_complex
    K = load_complex(name)
    dims = cohomology(base_complex(whole_family(K))).dims
    assert dims == simplicial_cochain_cohomology(K)


def test_whitney_span_closed_under_d(sphere):
    F = whole_family(sphere)
    for p in range(2):
        nxt = form_space(F, p + 1, WHITNEY)
        for b in form_space(F, p, WHITNEY).basis:
            assert nxt.contains(b.d())


def test_whitney_on_union_of_stars_splits_disconnected_carriers(circle):
    # U = St(0) u St(1): vertex 2 is reached through [0,2] and [1,2] only
    F = star_family(circle, [[0], [1]])
    labels, _ = whitney_basis(F, 0)
    assert ((2,), 0) in labels and ((2,), 1) in labels
    assert cohomology(base_complex(F)).dims == [1, 0]


def test_json_roundtrip(sphere):
    F = whole_family(sphere)
    a = sampling.piecewise_form(random.Random(3), F, 1, 2)
    assert form_from_json(F, form_to_json(a)) == a


seeds = st.integers(0, 10**6)


@given(seeds)
def test_d_squared_zero_random(seed):
    rng = random.Random(seed)
    K = build_complex([[0, 1, 2, 3], [2, 3, 4]])
    F = whole_family(K)
    a = sampling.piecewise_form(rng, F, rng.randint(0, 1), 3)
    assert exterior_derivative(exterior_derivative(a)).is_zero()


@given(seeds)
def test_graded_leibniz_and_compatibility(seed):
    rng = random.Random(seed)
    K = build_complex([[0, 1, 2], [1, 2, 3], [3, 4]])
    F = whole_family(K)
    p, q = rng.randint(0, 1), rng.randint(0, 1)
    a, b = sampling.piecewise_form(rng, F, p, 2), sampling.piecewise_form(rng, F, q, 2)
    lhs = (a.wedge(b)).d() if p + q < 2 else None
    if lhs is not None:
        rhs = a.d().wedge(b) + a.wedge(b.d()).scale(-1 if p & 1 else 1)
        assert lhs == rhs
    assert a.wedge(b).is_compatible() and a.d().is_compatible()


@given(seeds)
def test_restriction_commutes_with_d(seed):
    rng = random.Random(seed)
    lf = sampling.local_form(rng, (0, 1, 2, 3), rng.randint(0, 2), 3)
    for face in [(0, 1, 2), (1, 3), (0, 2, 3)]:
        if len(face) - 1 > lf.degree:
            assert restrict_to_face(lf.d(), face) == restrict_to_face(lf, face).d()


@given(seeds)
def test_pullback_is_a_dga_map(seed):
    rng = random.Random(seed)
    a = sampling.local_form(rng, T, rng.randint(0, 1), 2)
    b = sampling.local_form(rng, T, 1, 1)
    pts = [sampling.point(rng, T) for _ in range(3)]
    tgt = (5, 6, 7)
    pull = lambda x: affine_pullback(x, tgt, pts)
    assert pull(a.d()) == pull(a).d()
    assert pull(a.wedge(b)) == pull(a).wedge(pull(b))


@given(seeds)
def test_subdivision_pullback_is_compatible(seed):
    from psalgebroid.simplicial import barycentric_subdivision
    rng = random.Random(seed)
    K = build_complex([[0, 1, 2]])
    a = sampling.piecewise_form(rng, whole_family(K), rng.randint(0, 2), 2)
    b = a.pullback_subdivision(barycentric_subdivision(K))
    assert b.is_compatible()
