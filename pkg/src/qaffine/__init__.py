"""Computational toolkit for quantum affine algebras: q-characters, cluster
seeds, functional relations, truncation combinatorics, the sl2 quantum
Grothendieck ring and a numeric XXZ bench."""

from .cartan import CartanData, UnknownCartanType, cartan_data
from .laurent import Laurent, PsiWeight, Y, YMonomial, ZMonomial, is_dominant, nakajima_leq, root_monomial
from .qchar import (FMFailure, NonGeneralPosition, NonTermination, QCharResult, StringSpec, fm_fundamental,
                    multiply, sl2_string_character, t_system_check_sl2)

__version__ = "0.1.0"

__all__ = [
    "CartanData", "UnknownCartanType", "cartan_data",
    "Laurent", "PsiWeight", "Y", "YMonomial", "ZMonomial", "is_dominant", "nakajima_leq", "root_monomial",
    "FMFailure", "NonGeneralPosition", "NonTermination", "QCharResult", "StringSpec", "fm_fundamental",
    "multiply", "sl2_string_character", "t_system_check_sl2",
]
