"""
Weakly tight germs, the census of weakly tight complexes, germ filtrations
and exhaustive searches over small complexes.
"""

from .census import Census, FilterMode, Route, counting_bound, enumerate_wt, essential_germs
from .filtrations import (
    GermFiltration,
    GermStep,
    bigraded_recursion,
    filtration_lengths,
    germ_filtration,
    germ_filtrations,
)
from .germs import WtGerm, extend, glue, is_essential_wt_germ, is_wt_germ
from .universe import all_complexes, dmin_search, random_complex, sigma

__all__ = [
    "Census",
    "FilterMode",
    "Route",
    "counting_bound",
    "enumerate_wt",
    "essential_germs",
    "GermFiltration",
    "GermStep",
    "bigraded_recursion",
    "filtration_lengths",
    "germ_filtration",
    "germ_filtrations",
    "WtGerm",
    "extend",
    "glue",
    "is_essential_wt_germ",
    "is_wt_germ",
    "all_complexes",
    "dmin_search",
    "random_complex",
    "sigma",
]
