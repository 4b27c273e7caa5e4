"""
Isomorph-free census of weakly tight complexes.

Two independent routes build Σ^wt(m):

* ``germs``: every subcomplex L of every Y in Σ^wt(m-1) that passes Cond-I is
  glued as (v * L) ∪ Y and kept when it is weakly tight, tested either by the
  D~ shortcut or by the homology-surjection condition.
* ``essential``: Σ^wt(m) is the set of extensions (v * L) ∪ (Y * Δ^[m-k-1])
  over essential germs (Y, L) on k < m vertices.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Set, Tuple

from tqdm import tqdm

from ..complex_core import IsoClassKey, SimplicialComplex, compact, pair_canonical_key
from ..errors import TooLarge
from ..hochster import total_betti, weakly_tight_bound
from ..models import DEFAULT_LIMITS, CensusRecord, FieldSpec, Limits, QQ_FIELD
from .germs import WtGerm, essential_by_key, cond_two, germ_candidates, glue

LOGGER = logging.getLogger(__name__)


class FilterMode(Enum):
    SHORTCUT = "shortcut"
    COND2 = "cond2"


class Route(Enum):
    GERMS = "germs"
    ESSENTIAL = "essential"


def record_for(complex_: SimplicialComplex, index: str = "", d_value: Optional[int] = None) -> CensusRecord:
    return CensusRecord(
        index=index,
        m=complex_.m,
        facets=tuple(complex_.facet_sets()),
        f_vector=tuple(complex_.f_vector()),
        mdim=complex_.mdim,
        d_value=d_value,
    )


def sort_key(complex_: SimplicialComplex) -> Tuple:
    """Dimension first, then f-vector, then the canonical facet tuple."""
    f_vector = complex_.f_vector()
    return len(f_vector), f_vector, complex_.facets


@dataclass
class Census:
    field_spec: FieldSpec = QQ_FIELD
    by_m: Dict[int, List[SimplicialComplex]] = field(default_factory=dict)

    def counts(self) -> Dict[int, int]:
        return {m: len(items) for m, items in sorted(self.by_m.items())}

    def keys(self, m: int) -> Set[IsoClassKey]:
        return {(k.m, k.facets) for k in self.by_m.get(m, [])}

    def records(self, m: int, with_d_value: bool = True) -> List[CensusRecord]:
        """Rows in table order, indexed ``m_1``, ``m_2``, ..."""
        rows = []
        for position, complex_ in enumerate(self.by_m.get(m, []), start=1):
            d_value = weakly_tight_bound(complex_) if with_d_value else None
            rows.append(record_for(complex_, f"{m}_{position}", d_value))
        return rows

    def all_records(self) -> List[CensusRecord]:
        return [row for m in sorted(self.by_m) for row in self.records(m)]


def _finish(found: Dict[IsoClassKey, SimplicialComplex]) -> List[SimplicialComplex]:
    return sorted(found.values(), key=sort_key)


def _next_level(
    level: List[SimplicialComplex],
    m: int,
    field_spec: FieldSpec,
    mode: FilterMode,
    limits: Limits,
    progress: bool,
) -> List[SimplicialComplex]:
    found: Dict[IsoClassKey, SimplicialComplex] = {}
    rejected: Set[IsoClassKey] = set()
    for ambient in tqdm(level, desc=f"Σ^wt({m})", disable=not progress):
        for masks in germ_candidates(ambient, field_spec, limits):
            candidate = glue(ambient, masks)
            key = candidate.canonical_key(limits)
            if key in found or key in rejected:
                continue
            if mode is FilterMode.SHORTCUT:
                target = 2 ** (m - compact(masks).mdim - 2)
                keep = total_betti(candidate, field_spec, limits, stop_above=target) == target
            else:
                keep = cond_two(ambient, masks, field_spec)
            if keep:
                found[key] = SimplicialComplex(*key)
            elif mode is FilterMode.SHORTCUT:
                rejected.add(key)
    return _finish(found)


def _essential_germs_of(
    level: List[SimplicialComplex], field_spec: FieldSpec, limits: Limits, progress: bool
) -> List[WtGerm]:
    germs = {}
    for ambient in tqdm(level, desc="essential germs", disable=not progress):
        for masks in germ_candidates(ambient, field_spec, limits, essential_only=True):
            key = pair_canonical_key(ambient, masks, limits)
            if key in germs:
                continue
            if essential_by_key(key, field_spec):
                m, ambient_facets, sub = key
                germs[key] = WtGerm(SimplicialComplex(m, ambient_facets), sub)
    return [germs[key] for key in sorted(germs)]


def _check_cap(m_max: int, limits: Limits) -> None:
    if m_max > limits.max_enumeration:
        raise TooLarge(f"m = {m_max} exceeds the enumeration cap {limits.max_enumeration}")


class EssentialLevels(NamedTuple):
    complexes: Dict[int, List[SimplicialComplex]]
    germs: Dict[int, List[WtGerm]]


def essential_levels(
    m_max: int,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
    progress: bool = False,
    germs_up_to: Optional[int] = None,
) -> EssentialLevels:
    """Σ^wt(m) for m <= m_max and G_e(k) for k <= germs_up_to (default m_max - 1)."""
    _check_cap(m_max, limits)
    germs_up_to = m_max - 1 if germs_up_to is None else germs_up_to
    complexes = {0: [SimplicialComplex.irrelevant()]}
    germs = {0: [WtGerm(SimplicialComplex.irrelevant(), (0,))]}
    for m in range(1, m_max + 1):
        keys = {
            germ.extend(m - k - 1).canonical_key(limits)
            for k in range(m)
            for germ in germs[k]
        }
        complexes[m] = _finish({key: SimplicialComplex(*key) for key in keys})
        if m <= germs_up_to:
            germs[m] = _essential_germs_of(complexes[m], field_spec, limits, progress)
        LOGGER.info("Σ^wt(%d): %d classes by essential germs", m, len(complexes[m]))
    return EssentialLevels(complexes, germs)


def essential_germs(
    k: int, field_spec: FieldSpec = QQ_FIELD, limits: Limits = DEFAULT_LIMITS, progress: bool = False
) -> List[WtGerm]:
    """G_e(k): essential germs on k vertices up to simultaneous isomorphism."""
    return essential_levels(k, field_spec, limits, progress, germs_up_to=k).germs[k]


def enumerate_wt(
    m_max: int,
    field_spec: FieldSpec = QQ_FIELD,
    mode: FilterMode = FilterMode.SHORTCUT,
    route: Route = Route.GERMS,
    limits: Limits = DEFAULT_LIMITS,
    progress: bool = False,
) -> Census:
    """All weakly tight complexes on 1..m_max vertices up to isomorphism.

    Raises:
        TooLarge: m_max above ``limits.max_enumeration``
    """
    _check_cap(m_max, limits)
    census = Census(field_spec=field_spec)
    if route is Route.ESSENTIAL:
        levels = essential_levels(m_max, field_spec, limits, progress)
        for m in range(1, m_max + 1):
            census.by_m[m] = levels.complexes[m]
        return census

    level = [SimplicialComplex.irrelevant()]
    for m in range(1, m_max + 1):
        level = _next_level(level, m, field_spec, mode, limits, progress)
        census.by_m[m] = level
        LOGGER.info("Σ^wt(%d): %d classes", m, len(level))
    return census


class CountingBound(NamedTuple):
    m: int
    weakly_tight: int
    germ_sum: int

    @property
    def holds(self) -> bool:
        return self.weakly_tight <= self.germ_sum


def counting_bound(
    m: int, field_spec: FieldSpec = QQ_FIELD, limits: Limits = DEFAULT_LIMITS, progress: bool = False
) -> CountingBound:
    """|Σ^wt(m)| against the sum of |G_e(k)| over k < m."""
    levels = essential_levels(m, field_spec, limits, progress)
    return CountingBound(
        m=m,
        weakly_tight=len(levels.complexes[m]),
        germ_sum=sum(len(levels.germs[k]) for k in range(m)),
    )


def diff_census(census: Census, expected: List[CensusRecord], limits: Limits = DEFAULT_LIMITS) -> List[str]:
    """Mismatches between a census and reference rows, compared by canonical key."""
    problems = []
    for m in sorted({row.m for row in expected}):
        rows = [row for row in expected if row.m == m]
        wanted = {}
        for row in rows:
            complex_ = SimplicialComplex.from_facets(m, row.facets, limits)
            key = complex_.canonical_key(limits)
            wanted[key] = row
            if tuple(complex_.f_vector()) != row.f_vector or complex_.mdim != row.mdim:
                problems.append(f"{row.index}: facets disagree with the listed f-vector or mdim")
        have = census.keys(m)
        for key, row in wanted.items():
            if key not in have:
                problems.append(f"{row.index}: missing from the census")
        for key in sorted(have - set(wanted)):
            problems.append(f"m={m}: unexpected class {SimplicialComplex(*key)}")
    return problems
