"""Exact generalized Dedekind sums attached to weight-zero newform Eisenstein series."""

from .characters import CharacterPair, DirichletCharacter, enumerate_characters, gauss_sum
from .cyclotomic import Cyclotomic, root_of_unity
from .dedekind import (
    cocycle_defect,
    dedekind_sum,
    dedekind_sum_direct,
    fricke_value,
    reciprocity_defect,
)
from .modgroup import GammaMatrix, complete_bottom_row, gamma_prime

__all__ = [
    "CharacterPair",
    "Cyclotomic",
    "DirichletCharacter",
    "GammaMatrix",
    "cocycle_defect",
    "complete_bottom_row",
    "dedekind_sum",
    "dedekind_sum_direct",
    "enumerate_characters",
    "fricke_value",
    "gamma_prime",
    "gauss_sum",
    "reciprocity_defect",
    "root_of_unity",
]
