"""Seeded random generators for forms, sections and points (exact rationals)."""
from __future__ import annotations

import random
from itertools import combinations
from fractions import Fraction

from .algebroid import AlgebroidForm, PolySection, TrivialAlgebroid, kunneth_map
from .liealg import CEElement, LieAlgebra, ce_basis
from .models import plain_space
from .polyform import LocalForm, PiecewiseForm
from .polynomial import Poly, monomials
from .simplicial import CarrierFamily, Simplex


def rational(rng: random.Random, bound: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def poly(rng: random.Random, nvars: int, max_degree: int, density: float = 0.6) -> Poly:
    terms = {e: rational(rng) for e in monomials(nvars, max_degree) if rng.random() < density}
    return Poly(nvars, terms)


def point(rng: random.Random, simplex: Simplex) -> list[Fraction]:
    """Random rational point of the closed simplex (barycentric)."""
    w = [rng.randint(0, 4) for _ in simplex]
    if not any(w):
        w[rng.randrange(len(w))] = 1
    t = sum(w)
    return [Fraction(x, t) for x in w]


def local_form(rng: random.Random, simplex: Simplex, degree: int, max_degree: int = 2) -> LocalForm:
    k = len(simplex) - 1
    comps = {I: poly(rng, k, max_degree) for I in combinations(range(1, k + 1), degree)}
    return LocalForm(simplex, degree, comps)


def piecewise_form(rng: random.Random, family: CarrierFamily, degree: int, max_degree: int = 2) -> PiecewiseForm:
    """Random combination of the compatible forms with coefficient degree <= max_degree."""
    space = plain_space(family, degree, max_degree)
    out = PiecewiseForm.zero(family, degree)
    for b in space.basis:
        if rng.random() < 0.5:
            out = out + b.scale(rational(rng))
    return out


def ce_element(rng: random.Random, g: LieAlgebra, degree: int) -> CEElement:
    return CEElement(g, degree, {I: rational(rng) for I in ce_basis(g.dim, degree) if rng.random() < 0.7})


def algebroid_form(rng: random.Random, A: TrivialAlgebroid, degree: int, max_degree: int = 2) -> AlgebroidForm:
    n = A.algebra.dim
    out = AlgebroidForm.zero(A, degree)
    for q in range(min(degree, n) + 1):
        a = degree - q
        if a > max(A.family.dimension, 0):
            continue
        for I in ce_basis(n, q):
            if rng.random() < 0.6:
                xi = piecewise_form(rng, A.family, a, max_degree)
                out = out + kunneth_map(xi, CEElement.basis(A.algebra, I), A)
    return out


def section(rng: random.Random, simplex: Simplex, g: LieAlgebra, max_degree: int = 2) -> PolySection:
    k = len(simplex) - 1
    return PolySection(tuple(simplex), tuple(poly(rng, k, max_degree) for _ in range(k)),
                       tuple(poly(rng, k, max_degree) for _ in range(g.dim)))
