"""Bundled example complexes and Lie algebras."""
from __future__ import annotations

import json
from importlib import resources

from .liealg import LieAlgebra, liealg_from_json
from .simplicial import SimplicialComplex, complex_from_json

COMPLEXES = ("point", "interval", "circle", "solid_simplex", "sphere", "torus")
ALGEBRAS = ("abelian1", "abelian2", "sl2", "solvable2")


def data_path(name: str):
    return resources.files(__package__) / "data" / name


def load_complex(name: str) -> SimplicialComplex:
    return complex_from_json(json.loads(data_path(f"{name}.complex.json").read_text()))


def load_algebra(name: str) -> LieAlgebra:
    return liealg_from_json(json.loads(data_path(f"{name}.liealg.json").read_text()), name=name)
