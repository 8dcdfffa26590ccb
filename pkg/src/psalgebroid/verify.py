"""Randomized and exhaustive verification suites.

Every suite returns a JSON-ready report::

    {"suite": name, "ok": bool, "properties": [{"name", "ok", "cases", ...}]}

A failing property carries a ``counterexample`` payload with the exact
inputs (forms, sections, points as "p/q" strings).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import sampling
from .algebroid import (
    AlgebroidForm,
    PolySection,
    TrivialAlgebroid,
    algebroid_bracket,
    algebroid_form_to_json,
    algebroid_space,
    anchor,
    build_algebroid_complex,
    cartan_derivative_evaluate,
    cartan_operator,
    directional,
    evaluate_algebroid_form,
    joint_space_dimension,
    kunneth_map,
    pairing,
    restrict_form,
    restriction_chain_map,
    tensor_differential,
    top_degree,
)
from .homology import cohomology, induced_map
from .liealg import CEElement, LieAlgebra, ce_basis, ce_cohomology, validate
from .linalg import Echelon, rank
from .models import WHITNEY, Model, form_space
from .mv import (
    build_split,
    headroom_surjectivity,
    induction_steps,
    mv_long_exact,
    star_contractibility,
    truncation_square,
    verify_short_exact,
)
from .polyform import form_to_json
from .polynomial import Poly, fraction_str, poly_to_json
from .simplicial import (
    SimplicialComplex,
    barycentric_subdivision,
    build_complex,
    simplicial_cochain_cohomology,
    whole_family,
)

SUITES = ("kunneth", "mv", "cartan", "subdivision", "bracket-sign", "structural")


@dataclass
class SuiteOptions:
    seed: int = 0
    cases: int = 200
    model: Model = WHITNEY
    convention: str = "standard"
    max_degree: int = 2


def _prop(name: str, ok: bool, cases: int = 1, counterexample=None, **extra) -> dict:
    out = {"name": name, "ok": bool(ok), "cases": cases}
    out.update(extra)
    if not ok and counterexample is not None:
        out["counterexample"] = counterexample
    return out


def _report(suite: str, props: list[dict], **extra) -> dict:
    out = {"suite": suite, "ok": all(p["ok"] for p in props), "properties": props}
    out.update(extra)
    return out


def section_to_json(s: PolySection) -> dict:
    return {"simplex": list(s.simplex), "X": [poly_to_json(f) for f in s.X],
            "u": [poly_to_json(f) for f in s.u]}


def _ce_to_json(e: CEElement) -> dict:
    return {"degree": e.degree, "comps": [{"I": list(I), "coef": fraction_str(v)} for I, v in sorted(e.comps.items())]}


def _point_json(pt) -> list[str]:
    return [fraction_str(x) for x in pt]


def convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(v: list[int]) -> list[int]:
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return v


def _random_degree(rng: random.Random, A: TrivialAlgebroid, lo: int = 0) -> int:
    return rng.randint(lo, top_degree(A))


def _member(rng: random.Random, A: TrivialAlgebroid, min_dim: int = 0):
    ms = [m for m in A.family.sorted() if len(m) - 1 >= min_dim]
    return rng.choice(ms)


# ------------------------------------------------------------------ kunneth


def kunneth_suite(K: SimplicialComplex, g: LieAlgebra, opts: SuiteOptions = SuiteOptions()) -> dict:
    rng = random.Random(opts.seed)
    fam = whole_family(K)
    A = TrivialAlgebroid(fam, g)
    n, top = g.dim, max(K.dimension, 0)
    props = []

    # commutation with differentials on random pure tensors
    bad = None
    for _ in range(opts.cases):
        a = rng.randint(0, top)
        q = rng.randint(0, n)
        xi = sampling.piecewise_form(rng, fam, a, opts.max_degree)
        eta = sampling.ce_element(rng, g, q)
        lhs = tensor_differential(kunneth_map(xi, eta, A))
        rhs = AlgebroidForm.zero(A, a + q + 1)
        if a < top:
            rhs = rhs + kunneth_map(xi.d(), eta, A)
        if q < n:
            rhs = rhs + kunneth_map(xi, eta.d(), A).scale(-1 if a & 1 else 1)
        if lhs != rhs:
            bad = {"xi": form_to_json(xi), "eta": _ce_to_json(eta)}
            break
    props.append(_prop("commutes_with_differential", bad is None, opts.cases, bad))

    # multiplicativity: k(a x b) ^ k(c x e) = (-1)^{|b||c|} k(a^c x b^e)
    bad = None
    m = max(opts.cases // 4, 1)
    for _ in range(m):
        a1, a2 = rng.randint(0, top), rng.randint(0, top)
        q1, q2 = rng.randint(0, n), rng.randint(0, n)
        x1 = sampling.piecewise_form(rng, fam, a1, 1)
        x2 = sampling.piecewise_form(rng, fam, a2, 1)
        e1, e2 = sampling.ce_element(rng, g, q1), sampling.ce_element(rng, g, q2)
        lhs = kunneth_map(x1, e1, A).wedge(kunneth_map(x2, e2, A))
        if a1 + a2 > top or q1 + q2 > n:
            ok = lhs.is_zero()
        else:
            rhs = kunneth_map(x1.wedge(x2), e1.wedge(e2), A).scale(-1 if (q1 * a2) & 1 else 1)
            ok = lhs == rhs
        if not ok:
            bad = {"xi1": form_to_json(x1), "eta1": _ce_to_json(e1),
                   "xi2": form_to_json(x2), "eta2": _ce_to_json(e2)}
            break
    props.append(_prop("multiplicative", bad is None, m, bad))

    # bijectivity on model bases: images of b (x) e*_I are independent and
    # their number matches an independent count of the joint form space
    dims_ok, detail = True, []
    for p in range(top_degree(A) + 1):
        e = Echelon()
        count = 0
        for q in range(min(p, n) + 1):
            sp = form_space(fam, p - q, opts.model)
            for I in ce_basis(n, q):
                for b in sp.basis:
                    e.add(kunneth_map(b, CEElement.basis(g, I), A).flatten())
                    count += 1
        independent = e.rank == count
        rec = {"degree": p, "images": count, "rank": e.rank}
        if opts.model.kind == "pr":
            rec["joint_dimension"] = joint_space_dimension(A, p, opts.model.r)
            independent = independent and rec["joint_dimension"] == count
        dims_ok = dims_ok and independent
        detail.append(rec)
    props.append(_prop("bijective_on_model_bases", dims_ok, top_degree(A) + 1, detail, detail=detail))
    return _report("kunneth", props, complex_size=len(K), algebra=g.name or str(g.dim), model=str(opts.model))


# ------------------------------------------------------------------- cartan


def _sections(rng, simplex, g, m, max_degree):
    return [sampling.section(rng, simplex, g, max_degree) for _ in range(m)]


def cartan_suite(K: SimplicialComplex, g: LieAlgebra, opts: SuiteOptions = SuiteOptions()) -> dict:
    """Invariant (two-sum) formula against the tensor differential, pointwise."""
    rng = random.Random(opts.seed)
    A = TrivialAlgebroid(whole_family(K), g)
    props = []
    bad = None
    for _ in range(opts.cases):
        p = rng.randint(0, min(top_degree(A) - 1, 2)) if top_degree(A) > 0 else 0
        w = sampling.algebroid_form(rng, A, p, opts.max_degree)
        s = _member(rng, A)
        ss = _sections(rng, s, g, p + 1, opts.max_degree)
        pt = sampling.point(rng, s)
        lhs = cartan_derivative_evaluate(w, s, ss, pt, opts.convention)
        rhs = evaluate_algebroid_form(tensor_differential(w), s, ss, pt)
        if lhs != rhs:
            bad = {"form": algebroid_form_to_json(w), "simplex": list(s),
                   "sections": [section_to_json(x) for x in ss], "point": _point_json(pt),
                   "cartan": fraction_str(lhs), "tensor": fraction_str(rhs)}
            break
    props.append(_prop("cartan_equals_tensor", bad is None, opts.cases, bad))

    bad = None
    m = max(opts.cases // 10, 1)
    for _ in range(m):
        p = rng.randint(0, 1)
        w = sampling.algebroid_form(rng, A, p, 1)
        s = _member(rng, A)
        ss = _sections(rng, s, g, p + 2, 1)
        ddf = cartan_operator(cartan_operator(lambda x: pairing(w, s, x), g, opts.convention), g, opts.convention)
        val = ddf(ss)
        if val:
            bad = {"form": algebroid_form_to_json(w), "simplex": list(s),
                   "sections": [section_to_json(x) for x in ss]}
            break
    props.append(_prop("cartan_square_zero", bad is None, m, bad))
    return _report("cartan", props, convention=opts.convention)


# --------------------------------------------------------------- structural


def _jacobi_defect(s, t, u, g, conv):
    def br(a, b):
        return algebroid_bracket(a, b, g, conv)
    return br(s, br(t, u)) + br(t, br(u, s)) + br(u, br(s, t))


def _is_zero_section(s: PolySection) -> bool:
    return not any(s.X) and not any(s.u)


def bracket_properties(g: LieAlgebra, simplex, rng: random.Random, cases: int, convention: str,
                       max_degree: int = 2) -> list[dict]:
    props = []
    for name in ("antisymmetry", "jacobi", "leibniz_anchor"):
        bad = None
        for _ in range(cases):
            s, t, u = _sections(rng, simplex, g, 3, max_degree)
            if name == "antisymmetry":
                defect = algebroid_bracket(s, t, g, convention) + algebroid_bracket(t, s, g, convention)
            elif name == "jacobi":
                defect = _jacobi_defect(s, t, u, g, convention)
            else:
                f = sampling.poly(rng, len(simplex) - 1, max_degree)
                lhs = algebroid_bracket(s, t.times(f), g, convention)
                rhs = algebroid_bracket(s, t, g, convention).times(f) + t.times(directional(anchor(s), f))
                defect = lhs - rhs
            if not _is_zero_section(defect):
                bad = {"sections": [section_to_json(x) for x in (s, t, u)]}
                break
        props.append(_prop(f"bracket_{name}", bad is None, cases, bad))
    return props


def structural_suite(K: SimplicialComplex, g: LieAlgebra, opts: SuiteOptions = SuiteOptions()) -> dict:
    """d o d = 0, graded Leibniz, compatibility preservation, bracket identities."""
    rng = random.Random(opts.seed)
    A = TrivialAlgebroid(whole_family(K), g)
    top = top_degree(A)
    props = []
    checks = {"d_squared_zero": None, "graded_leibniz": None, "compatibility_preserved": None}
    for _ in range(opts.cases):
        p = rng.randint(0, top)
        w = sampling.algebroid_form(rng, A, p, opts.max_degree)
        if checks["d_squared_zero"] is None and p + 2 <= top:
            if not tensor_differential(tensor_differential(w)).is_zero():
                checks["d_squared_zero"] = {"form": algebroid_form_to_json(w)}
        q = rng.randint(0, max(top - p, 0))
        v = sampling.algebroid_form(rng, A, q, 1)
        if checks["graded_leibniz"] is None and p + q + 1 <= top:
            lhs = tensor_differential(w.wedge(v))
            rhs = tensor_differential(w).wedge(v) + w.wedge(tensor_differential(v)).scale(-1 if p & 1 else 1) \
                if p + 1 <= top and q + 1 <= top else None
            if rhs is not None and lhs != rhs:
                checks["graded_leibniz"] = {"a": algebroid_form_to_json(w), "b": algebroid_form_to_json(v)}
        if checks["compatibility_preserved"] is None:
            outs = [w.wedge(v)] if p + q <= top else []
            if p < top:
                outs.append(tensor_differential(w))
            if not all(o.is_compatible() for o in outs):
                checks["compatibility_preserved"] = {"a": algebroid_form_to_json(w), "b": algebroid_form_to_json(v)}
    for name, bad in checks.items():
        props.append(_prop(name, bad is None, opts.cases, bad))
    s = max(K.simplices, key=lambda x: (len(x), x))
    props += bracket_properties(g, s, rng, opts.cases, opts.convention, opts.max_degree)
    return _report("structural", props, convention=opts.convention)


# ------------------------------------------------------------- bracket sign


def bracket_sign_suite(g: LieAlgebra | None = None, simplex=(0, 1, 2), opts: SuiteOptions = SuiteOptions()) -> dict:
    """Run both sign conventions of the bracket through Jacobi, the anchor
    Leibniz rule, d^2 = 0 of the invariant formula, and agreement with the
    tensor differential. Names the convention passing everything."""
    g = g or LieAlgebra.sl2()
    K = build_complex([list(simplex)])
    per = {}
    for conv in ("paper", "standard"):
        rng = random.Random(opts.seed)
        c = max(opts.cases // 4, 10)
        props = bracket_properties(g, tuple(simplex), rng, c, conv, opts.max_degree)
        sub = SuiteOptions(seed=opts.seed, cases=c, convention=conv, max_degree=opts.max_degree)
        props += cartan_suite(K, g, sub)["properties"]
        per[conv] = {"ok": all(p["ok"] for p in props), "properties": props}
    passing = [c for c, r in per.items() if r["ok"]]
    named = passing[0] if len(passing) == 1 else None
    props = [_prop("exactly_one_convention_passes", named is not None, 2, {"passing": passing}),
             _prop("named_convention_passes", named is not None and per[named]["ok"], 1)]
    return _report("bracket-sign", props, conventions=per, named=named, algebra=g.name)


# -------------------------------------------------------------- subdivision


def subdivision_suite(K: SimplicialComplex, g: LieAlgebra, opts: SuiteOptions = SuiteOptions()) -> dict:
    """Restriction to the barycentric subdivision, Whitney(K) -> P_r(L) with
    r = dim K (pulled back Whitney forms are not Whitney on L)."""
    sub = barycentric_subdivision(K)
    target_model = Model("pr", max(K.dimension, 1))
    props = []
    for label, alg in (("scalar", LieAlgebra.abelian(0)), ("algebroid", g)):
        A = TrivialAlgebroid(whole_family(K), alg)
        F = restriction_chain_map(A, sub, opts.model, target_model)
        hs, ht = cohomology(F.source), cohomology(F.target)
        H = induced_map(F, hs, ht)
        ranks = [rank(m) for m in H]
        ok = hs.dims == ht.dims and all(r == d for r, d in zip(ranks, hs.dims))
        props.append(_prop(f"{label}_induced_isomorphism", ok, len(H),
                           {"source": hs.dims, "target": ht.dims, "ranks": ranks},
                           source_dims=hs.dims, target_dims=ht.dims, ranks=ranks))
    # pointwise: restriction preserves values at a random point
    rng = random.Random(opts.seed)
    A = TrivialAlgebroid(whole_family(K), g)
    B_fam = whole_family(sub.complex)
    bad = None
    m = max(opts.cases // 10, 1)
    for _ in range(m):
        p = rng.randint(0, min(top_degree(A), 2))
        w = sampling.algebroid_form(rng, A, p, 1)
        wl = restrict_form(w, sub)
        t = rng.choice([x for x in B_fam.sorted() if len(x) == len(sub.carrier[x]) and len(x) > 0])
        base = sub.carrier[t]
        bt = sampling.point(rng, t)
        # the same point in barycentric coordinates of the carrier
        pt = [sum(bt[j] * sub.coords[wv].get(v, 0) for j, wv in enumerate(t)) for v in base]
        # sections of L on t pushed to K via the affine map (constant fields)
        k = len(t) - 1
        if k == 0 and p > 0:
            continue
        ss_L, ss_K = [], []
        for _ in range(p):
            vec = [sampling.rational(rng) for _ in range(k)]
            u = [sampling.rational(rng) for _ in range(g.dim)]
            ss_L.append(PolySection(t, tuple(Poly.const(k, c) for c in vec), tuple(Poly.const(k, c) for c in u)))
            # push vec forward: d/dy_j maps to image(w_j) - image(w_0) in base coordinates
            img = [[sub.coords[wv].get(v, 0) for v in base] for wv in t]
            kb = len(base) - 1
            pushed = [sum(vec[j] * (img[j + 1][i] - img[0][i]) for j in range(k)) for i in range(1, kb + 1)]
            ss_K.append(PolySection(base, tuple(Poly.const(kb, c) for c in pushed),
                                    tuple(Poly.const(kb, c) for c in u)))
        lhs = evaluate_algebroid_form(wl, t, ss_L, bt)
        rhs = evaluate_algebroid_form(w, base, ss_K, pt)
        if lhs != rhs:
            bad = {"form": algebroid_form_to_json(w), "simplex": list(t), "point": _point_json(bt)}
            break
    props.append(_prop("pointwise_values_preserved", bad is None, m, bad))
    return _report("subdivision", props, target_model=str(target_model))


# ----------------------------------------------------------------------- mv


def mv_suite(K: SimplicialComplex, g: LieAlgebra, opts: SuiteOptions = SuiteOptions(),
             u_generators=None, v_generators=None, headroom_degrees=(1, 2)) -> dict:
    vs = K.vertices
    u_gens = u_generators or [[v] for v in vs[:-1]]
    v_gens = v_generators or [[vs[-1]]]
    split = build_split(K, u_gens, v_gens)
    se = verify_short_exact(split, g, opts.model, headroom_degrees)
    le = mv_long_exact(split, g, opts.model) if se.ok else None
    props = [
        _prop("delta_injective", all(se.delta_injective), len(se.delta_injective), se.delta_injective),
        _prop("image_delta_equals_kernel_pi", all(se.exact_middle), len(se.exact_middle), se.exact_middle),
        _prop("pi_surjective_same_model", all(se.pi_surjective), len(se.pi_surjective), se.pi_surjective),
        _prop("headroom_surjectivity", all(h["ok"] for h in se.headroom), len(se.headroom),
              se.headroom, detail=se.headroom),
        _prop("euler_bookkeeping", se.euler["ok"], 1, se.euler),
        _prop("long_exact_sequence", le is not None and le.ok, 1,
              None if le is None else le.to_json(), **({} if le is None else {"detail": le.to_json()})),
    ]
    squares = [truncation_square(split, p, r) for p in range(K.dimension + 1) for r in (0, 1)]
    props.append(_prop("truncation_square_commutes", all(squares), len(squares), squares))
    stars = star_contractibility(K, g, opts.model)
    props.append(_prop("star_contractibility", all(s["ok"] for s in stars), len(stars),
                       [s for s in stars if not s["ok"]]))
    # measured, not asserted
    same = [headroom_surjectivity(split, p, r, 0) for r in headroom_degrees for p in range(K.dimension + 1)]
    return _report("mv", props, split={"U_generators": [list(x) for x in split.u_generators],
                                       "V_generators": [list(x) for x in split.v_generators]},
                   same_degree_measurement=same,
                   induction=[{k: v for k, v in s.items() if k != "short_exact"} for s in
                              induction_steps(K, g, opts.model)])


# ---------------------------------------------------------------- cohomology reports


def betti_report(K: SimplicialComplex, model: Model = WHITNEY) -> dict:
    from .models import base_complex
    oracle = simplicial_cochain_cohomology(K)
    dims = _trim(cohomology(base_complex(whole_family(K), model)).dims)
    return {"simplicial": oracle, "model": dims, "model_name": str(model), "ok": _trim(oracle) == dims}


def algebroid_report(K: SimplicialComplex, g: LieAlgebra, model: Model = WHITNEY) -> dict:
    betti = simplicial_cochain_cohomology(K)
    hg = ce_cohomology(g).dims
    predicted = _trim(convolve(betti, hg))
    computed = _trim(cohomology(build_algebroid_complex(TrivialAlgebroid(whole_family(K), g), model)).dims)
    return {"betti": betti, "lie_cohomology": hg, "predicted": predicted, "computed": computed,
            "model_name": str(model), "ok": predicted == computed}


def run_suite(name: str, K: SimplicialComplex | None, g: LieAlgebra | None, opts: SuiteOptions) -> dict:
    if name == "bracket-sign":
        s = max(K.simplices, key=lambda x: (len(x), x)) if K is not None and K.dimension >= 2 else (0, 1, 2)
        return bracket_sign_suite(g or LieAlgebra.sl2(), tuple(s)[:3], opts)
    fn = {"kunneth": kunneth_suite, "mv": mv_suite, "cartan": cartan_suite,
          "subdivision": subdivision_suite, "structural": structural_suite}[name]
    return fn(K, g, opts)


__all__ = ["SUITES", "SuiteOptions", "kunneth_suite", "cartan_suite", "structural_suite",
           "bracket_sign_suite", "subdivision_suite", "mv_suite", "betti_report", "algebroid_report",
           "run_suite", "convolve", "section_to_json", "bracket_properties"]
