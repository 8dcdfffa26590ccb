"""Finite models of the piecewise polynomial complex on a carrier family.

``whitney``  spans the Whitney elementary forms of the faces of members.
``pr``       is the graded truncation: p-forms with coefficients of degree
             <= r - p. It is a subcomplex with the cohomology of the
             triangulation once r >= the dimension of the family, and it
             contains the Whitney model at that point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .homology import CochainComplex
from .linalg import Echelon, IntegrityError, RationalMatrix, sparse
from .polyform import PiecewiseForm, basis_pr, whitney_basis
from .simplicial import CarrierFamily, DomainError


@dataclass(frozen=True)
class Model:
    kind: str = "whitney"
    r: int | None = None

    def __post_init__(self):
        if self.kind not in ("whitney", "pr"):
            raise ValueError(f"unknown model {self.kind!r}")
        if self.kind == "pr" and (self.r is None or self.r < 0):
            raise ValueError("the pr model needs a polynomial degree r >= 0")

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> "Model":
        if text == "whitney":
            return cls("whitney")
        if text == "pr":
            return cls("pr", 2 if r is None else r)
        if text.startswith("p") and text[1:].isdigit():
            return cls("pr", int(text[1:]))
        raise ValueError(f"unknown model {text!r}")

    def __str__(self) -> str:
        return "whitney" if self.kind == "whitney" else f"P{self.r}"


WHITNEY = Model("whitney")


class FormSpace:
    """A finite basis of piecewise forms with a coordinate solver."""

    def __init__(self, family: CarrierFamily, degree: int, basis: list[PiecewiseForm], labels=None):
        self.family = family
        self.degree = degree
        self.basis = basis
        self.labels = labels if labels is not None else list(range(len(basis)))
        self._solver = Echelon(track=True)
        for i, b in enumerate(basis):
            if not self._solver.add(b.flatten(), label=i):
                raise IntegrityError("model basis is linearly dependent")

    def __len__(self) -> int:
        return len(self.basis)

    def coordinates(self, form: PiecewiseForm) -> list[Fraction]:
        if form.degree != self.degree and not form.is_zero():
            raise DomainError("form degree does not match the space")
        sol = self._solver.solve(form.flatten())
        if sol is None:
            raise IntegrityError("form is not in the model space")
        out = [Fraction(0)] * len(self.basis)
        for i, v in sol.items():
            out[i] = v
        return out

    def contains(self, form: PiecewiseForm) -> bool:
        return self._solver.contains(form.flatten())


@lru_cache(maxsize=512)
def form_space(family: CarrierFamily, p: int, model: Model) -> FormSpace:
    if p < 0:
        return FormSpace(family, p, [])
    if model.kind == "whitney":
        labels, basis = whitney_basis(family, p)
        return FormSpace(family, p, basis, labels)
    if model.r < family.dimension:
        raise DomainError(f"the P_r model needs r >= {family.dimension} on this family")
    basis = basis_pr(family, p, model.r - p) if model.r >= p else []
    return FormSpace(family, p, basis)


@lru_cache(maxsize=256)
def plain_space(family: CarrierFamily, p: int, r: int) -> FormSpace:
    """All compatible p-forms with coefficients of degree <= r (no grading)."""
    return FormSpace(family, p, basis_pr(family, p, r))


def base_complex(family: CarrierFamily, model: Model = WHITNEY) -> CochainComplex:
    top = max(family.dimension, 0)
    spaces = [form_space(family, p, model) for p in range(top + 1)]
    ds = []
    for p in range(top + 1):
        if p + 1 <= top:
            cols = [sparse(spaces[p + 1].coordinates(b.d())) for b in spaces[p].basis]
            ds.append(RationalMatrix.from_columns(len(spaces[p + 1]), cols))
        else:
            ds.append(RationalMatrix.zeros(0, len(spaces[p])))
    C = CochainComplex([len(s) for s in spaces], ds, labels=[s.labels for s in spaces])
    C.check()
    return C
