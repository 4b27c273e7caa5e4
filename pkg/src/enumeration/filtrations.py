"""
Essential germ filtrations: peeling a weakly tight complex back to {∅}.

Removing a vertex v of V_mdim splits K as the cone over link v glued to
K∖v = K|_{V(link v)} * Δ^[r_v]. The pair (K|_{V(link v)}, link v) is an
essential germ and K|_{V(link v)} is again weakly tight, so peeling repeats.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import FrozenSet, List, Tuple

from ..complex_core import IsoClassKey, Mask, SimplicialComplex, compact, compress, popcount
from ..errors import NotWeaklyTight
from ..hochster import bigraded_betti, is_weakly_tight
from ..models import DEFAULT_LIMITS, BettiTable, FieldSpec, Limits, QQ_FIELD
from .germs import glue

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GermStep:
    """One extension Y_{k+1} = (v * L) ∪_L (Y * Δ^[r])."""

    ambient: SimplicialComplex
    sub: Tuple[Mask, ...]
    vertex: int
    r: int

    def extend(self) -> SimplicialComplex:
        return glue(self.ambient, self.sub, self.r)


@dataclass(frozen=True)
class GermFiltration:
    steps: Tuple[GermStep, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    def rebuild(self) -> SimplicialComplex:
        """Top of the filtration; {∅} for the empty filtration."""
        if not self.steps:
            return SimplicialComplex.irrelevant()
        return self.steps[-1].extend()

    def is_consistent(self, limits: Limits = DEFAULT_LIMITS) -> bool:
        """Each step's Y is isomorphic to the complex built by the step before it."""
        current = SimplicialComplex.irrelevant()
        for step in self.steps:
            if not step.ambient.is_isomorphic(current, limits):
                return False
            current = step.extend()
        return True


def peel(complex_: SimplicialComplex, v: int) -> GermStep:
    """The germ step removing v from a weakly tight complex, with v in V_mdim."""
    link = complex_.link_masks((v,))
    support = complex_.link_vertex_mask((v,))
    ambient = complex_.full_subcomplex_mask(support)
    sub = tuple(sorted(compress(f, support) for f in link))
    r = complex_.m - popcount(support) - 1
    return GermStep(ambient, sub, v, r)


def _require_weakly_tight(complex_, field_spec, limits):
    if not is_weakly_tight(complex_, field_spec, limits):
        raise NotWeaklyTight(f"{complex_} is not weakly tight")


def germ_filtration(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> GermFiltration:
    """Deterministic filtration: always peel the smallest V_mdim vertex of the
    canonical form. Vertices in the steps refer to canonical labels.

    Raises:
        NotWeaklyTight: K is not weakly tight
    """
    _require_weakly_tight(complex_, field_spec, limits)
    steps: List[GermStep] = []
    current = complex_
    while not current.is_irrelevant:
        current = current.canonical_form(limits)
        step = peel(current, min(current.v_mdim()))
        steps.append(step)
        current = step.ambient
    return GermFiltration(tuple(reversed(steps)))


def germ_filtrations(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[GermFiltration]:
    """Every filtration, one per sequence of V_mdim choices (canonical labels).

    Raises:
        NotWeaklyTight: K is not weakly tight
    """
    _require_weakly_tight(complex_, field_spec, limits)

    def walk(current: SimplicialComplex) -> List[Tuple[GermStep, ...]]:
        if current.is_irrelevant:
            return [()]
        current = current.canonical_form(limits)
        result = []
        for v in current.v_mdim():
            step = peel(current, v)
            result.extend(lower + (step,) for lower in walk(step.ambient))
        return result

    return [GermFiltration(steps) for steps in walk(complex_)]


@lru_cache(maxsize=None)
def _lengths(key: IsoClassKey, limits: Limits) -> FrozenSet[int]:
    m, facets = key
    current = SimplicialComplex(m, facets)
    if current.is_irrelevant:
        return frozenset({0})
    lengths = set()
    for v in current.v_mdim():
        ambient = peel(current, v).ambient
        lengths.update(1 + n for n in _lengths(ambient.canonical_key(limits), limits))
    return frozenset(lengths)


def filtration_lengths(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> FrozenSet[int]:
    """Lengths of all essential germ filtrations of K.

    Every filtration found so far has a unique length; a complex with two
    different lengths is logged as a warning and returned as is.

    Raises:
        NotWeaklyTight: K is not weakly tight
    """
    _require_weakly_tight(complex_, field_spec, limits)
    lengths = _lengths(complex_.canonical_key(limits), limits)
    if len(lengths) != 1:
        LOGGER.warning("Filtrations of different lengths %s for %s", sorted(lengths), complex_)
    return lengths


def bigraded_recursion(
    ambient: SimplicialComplex,
    sub: Tuple[Mask, ...],
    r: int,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> BettiTable:
    """Betti table of glue(Y, L, r) from the tables of L and Y alone.

    beta^{-i,2(j+1)}(K) = sum_s C(c, s) beta^{-(i-s),2(j-s)}(L)
                          + beta^{-i,2(j+1)}(Y) - beta^{-i,2j}(Y)
    with c = m - |V(L)| - 1, valid whenever (Y, L) is a germ.
    """
    m = ambient.m + r + 1
    link = compact(sub)
    c = m - link.m - 1
    link_table = bigraded_betti(link, field_spec, limits)
    ambient_table = bigraded_betti(ambient, field_spec, limits)
    table = BettiTable(m=m, field=field_spec, entries={(0, 0): 1})
    for i in range(0, m + 1):
        for j in range(0, m):
            value = sum(comb(c, s) * link_table.get(i - s, j - s) for s in range(0, j + 1))
            value += ambient_table.get(i, j + 1) - ambient_table.get(i, j)
            table.add(i, j + 1, value)
    return table
