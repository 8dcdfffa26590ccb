import pytest

from psalgebroid.algebroid import TrivialAlgebroid, build_algebroid_complex
from psalgebroid.homology import cohomology
from psalgebroid.linalg import rank
from psalgebroid.liealg import LieAlgebra
from psalgebroid.models import Model
from psalgebroid.mv import (
    build_split,
    delta_map,
    headroom_surjectivity,
    induction_steps,
    mv_long_exact,
    pi_map,
    star_contractibility,
    truncation_square,
    verify_short_exact,
)
from psalgebroid.polyform import hat_function
from psalgebroid.simplicial import DomainError, build_complex, whole_family
from psalgebroid.verify import convolve


def test_split_examples(circle, disk):
    sp = build_split(circle, [[0], [1]], [[2]])
    assert sp.UV.members == {(0, 2), (1, 2)}
    with pytest.raises(DomainError):
        build_split(disk, [[0]], [[1]])
    allv = [[v] for v in disk.vertices]
    assert build_split(disk, allv, allv).UV.members == disk.simplices


def test_delta_and_pi(circle):
    g = LieAlgebra.abelian(1)
    sp = build_split(circle, [[0], [1]], [[2]])
    d, pi = delta_map(sp, g), pi_map(sp, g)
    for p in range(3):
        assert (pi.f(p) @ d.f(p)).is_zero()
        assert rank(d.f(p)) == d.f(p).ncols


def test_delta_support_pattern(circle):
    # lambda_0 is supported in U only: its V-restriction vanishes on [1,2]
    from psalgebroid.algebroid import kunneth_map, restrict_form
    from psalgebroid.liealg import CEElement
    g = LieAlgebra.abelian(0)
    sp = build_split(circle, [[0]], [[1], [2]])
    A = TrivialAlgebroid(whole_family(circle), g)
    w = kunneth_map(hat_function(A.family, 0), CEElement.one(g), A)
    wv = restrict_form(w, sp.V).component(())
    assert wv.local((1, 2)).is_zero() and wv.local((1,)).is_zero() and not wv.local((0, 1)).is_zero()


def test_short_exact_circle_with_headroom(circle):
    rep = verify_short_exact(build_split(circle, [[0], [1]], [[2]]), LieAlgebra.abelian(1),
                             headroom_degrees=[1, 2])
    assert rep.ok and rep.euler["ok"]


def test_short_exact_sphere_sl2(sphere, sl2):
    rep = verify_short_exact(build_split(sphere, [[0], [1], [2]], [[3]]), sl2, headroom_degrees=[1, 2])
    assert rep.ok


def test_same_degree_measurement_is_reported(sphere):
    sp = build_split(sphere, [[0], [1], [2]], [[3]])
    m = headroom_surjectivity(sp, 1, 1, headroom=0)
    assert set(m) >= {"missed", "ok", "target_dim"}


def test_long_exact_circle(circle):
    rep = mv_long_exact(build_split(circle, [[0], [1]], [[2]]), LieAlgebra.abelian(1))
    assert rep.ok
    assert rep.dims_K == [1, 2, 1]
    assert rep.dims_U == [1, 1, 0] and rep.dims_V == [1, 1, 0]
    # the intersection is two arcs
    assert rep.dims_UV == [2, 2, 0]


def test_long_exact_sphere(sphere):
    rep = mv_long_exact(build_split(sphere, [[0], [1], [2]], [[3]]), LieAlgebra.abelian(1))
    assert rep.ok and rep.dims_K == convolve([1, 0, 1], [1, 1])


def test_single_simplex_degenerate(disk, sl2):
    allv = [[v] for v in disk.vertices]
    rep = mv_long_exact(build_split(disk, allv, allv), sl2)
    assert rep.ok and rep.dims_K == [1, 0, 0, 1, 0, 0] and rep.dims_UV == rep.dims_K


@pytest.mark.parametrize("name", ["circle", "sphere", "torus", "solid_simplex"])
def test_star_contractibility(name, sl2):
    from psalgebroid.fixtures import load_complex
    assert all(s["ok"] for s in star_contractibility(load_complex(name), sl2))


def test_truncation_square(sphere):
    sp = build_split(sphere, [[0], [1], [2]], [[3]])
    assert all(truncation_square(sp, p, r) for p in range(3) for r in range(3))


def test_euler_bookkeeping_pr_model(circle):
    rep = verify_short_exact(build_split(circle, [[0], [1]], [[2]]), LieAlgebra.abelian(1), Model("pr", 2))
    assert rep.ok and rep.euler["ok"]


def test_induction_skeleton_is_reported(circle, sphere):
    steps = induction_steps(circle, LieAlgebra.abelian(1))
    assert [s["ok"] for s in steps] == [True, True]
    # the middle step of the sphere leaves out a vertex whose carrier pieces
    # cannot be separated by polynomial partition functions
    steps = induction_steps(sphere, LieAlgebra.abelian(1))
    assert [s["ok"] for s in steps] == [True, False, True]
    assert steps[1]["short_exact"]["delta_injective"] == [True] * 4
    assert not all(steps[1]["short_exact"]["pi_surjective"])
