"""
Weakly tight germs (Y, L) and the cone-and-glue extension move.

A germ is a weakly tight complex Y with a subcomplex L whose inclusion is
surjective on reduced homology over every full subcomplex. Gluing the cone
v * L onto Y * Δ^[r] along L gives a weakly tight complex with v in V_mdim.
Subcomplexes are passed as facet masks in the labels of Y.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Tuple, Union

from ..complex_core import (
    Mask,
    PairKey,
    SimplicialComplex,
    bit_positions,
    compact,
    compress,
    maximal_masks,
    pair_canonical_key,
)
from ..errors import NotAGerm, NotASubcomplex, VertexSetMismatch
from ..field_linear import induced_surjective
from ..hochster import is_weakly_tight
from ..models import DEFAULT_LIMITS, FieldSpec, Limits, QQ_FIELD
from .universe import antichains

LOGGER = logging.getLogger(__name__)

SubcomplexLike = Union[SimplicialComplex, Iterable[Mask]]


def support_of(masks: Iterable[Mask]) -> Mask:
    support = 0
    for f in masks:
        support |= f
    return support


def sub_masks(ambient: SimplicialComplex, sub: SubcomplexLike) -> Tuple[Mask, ...]:
    """Normalize a subcomplex to its facet masks in the labels of ``ambient``.

    A ``SimplicialComplex`` is read with its own labels 1..sub.m taken as
    vertices of ``ambient``.

    Raises:
        NotASubcomplex: some facet is not a face of ``ambient``
    """
    masks = sub.facets if isinstance(sub, SimplicialComplex) else tuple(sub)
    masks = maximal_masks(masks) or (0,)
    for f in masks:
        if not ambient.is_face_mask(f):
            raise NotASubcomplex(f"{f:b} is not a face of the ambient complex")
    return masks


def restrict(masks: Iterable[Mask], subset: Mask) -> Tuple[Mask, ...]:
    return maximal_masks(f & subset for f in masks) or (0,)


def included(masks: Iterable[Mask], ambient_mask: Mask) -> Tuple[SimplicialComplex, Dict[int, int]]:
    """Compact a labeled subcomplex and map its vertices into the compact labels
    of the full subcomplex on ``ambient_mask``."""
    masks = tuple(masks)
    source = compact(masks)
    positions = {p: k + 1 for k, p in enumerate(bit_positions(ambient_mask))}
    embedding = {k + 1: positions[p] for k, p in enumerate(bit_positions(support_of(masks)))}
    return source, embedding


@dataclass(frozen=True)
class WtGerm:
    """A pair (Y, L) with L given by facet masks in the labels of Y."""

    ambient: SimplicialComplex
    sub: Tuple[Mask, ...]

    @property
    def essential(self) -> bool:
        return support_of(self.sub) == self.ambient.full_mask

    @property
    def sub_complex(self) -> SimplicialComplex:
        return compact(self.sub)

    def key(self, limits: Limits = DEFAULT_LIMITS) -> PairKey:
        return pair_canonical_key(self.ambient, self.sub, limits)

    def extend(self, r: int = 0) -> SimplicialComplex:
        return glue(self.ambient, self.sub, r)

    def describe(self) -> str:
        sub = ",".join(str(f) for f in self.sub)
        return f"Y: {self.ambient.to_text()} | L: [{sub}]"


def cond_one(ambient: SimplicialComplex, masks: Tuple[Mask, ...],
             field_spec: FieldSpec = QQ_FIELD, limits: Limits = DEFAULT_LIMITS) -> bool:
    """L = Y, or L weakly tight with mdim(L) < mdim(Y)."""
    if masks == ambient.facets:
        return True
    sub = compact(masks)
    return sub.mdim < ambient.mdim and is_weakly_tight(sub, field_spec, limits)


def cond_two(ambient: SimplicialComplex, masks: Tuple[Mask, ...],
             field_spec: FieldSpec = QQ_FIELD) -> bool:
    """Inclusion is surjective on reduced homology of every full subcomplex."""
    for subset in range(1 << ambient.m):
        target = ambient.full_subcomplex_mask(subset)
        source, embedding = included(restrict(masks, subset), subset)
        if not induced_surjective(source, target, embedding, field_spec):
            return False
    return True


def is_wt_germ(
    ambient: SimplicialComplex,
    sub: SubcomplexLike,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Cond-I and Cond-II for a subcomplex of a weakly tight complex.

    Raises:
        NotASubcomplex: L is not contained in Y
    """
    masks = sub_masks(ambient, sub)
    return cond_one(ambient, masks, field_spec, limits) and cond_two(ambient, masks, field_spec)


@lru_cache(maxsize=100_000)
def essential_by_key(key: PairKey, field_spec: FieldSpec) -> bool:
    m, ambient_facets, masks = key
    if m == 0:
        return True
    ambient = SimplicialComplex(m, ambient_facets)
    source, embedding = included(masks, ambient.full_mask)
    if not induced_surjective(source, ambient, embedding, field_spec):
        return False
    for position in range(m):
        subset = ambient.full_mask & ~(1 << position)
        smaller = ambient.full_subcomplex_mask(subset)
        restricted = tuple(compress(f, subset) for f in restrict(masks, subset))
        if not essential_by_key(pair_canonical_key(smaller, restricted), field_spec):
            return False
    return True


def is_essential_wt_germ(
    ambient: SimplicialComplex,
    sub: SubcomplexLike,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Essential germ test by recursion over single-vertex deletions.

    (Y, L) with V(L) = V(Y) is an essential germ iff H~(L) -> H~(Y) is onto and
    every pair obtained by deleting one vertex from both is an essential germ.
    Results are memoized on the simultaneous canonical key of the pair.

    Raises:
        NotASubcomplex: L is not contained in Y
        VertexSetMismatch: V(L) != V(Y)
    """
    masks = sub_masks(ambient, sub)
    if support_of(masks) != ambient.full_mask:
        raise VertexSetMismatch("An essential germ needs V(L) = V(Y)")
    if not is_weakly_tight(ambient, field_spec, limits):
        return False
    if masks != ambient.facets and not is_weakly_tight(compact(masks), field_spec, limits):
        return False
    return essential_by_key(pair_canonical_key(ambient, masks, limits), field_spec)


def glue(ambient: SimplicialComplex, masks: Iterable[Mask], r: int = 0) -> SimplicialComplex:
    """(v * L) ∪_L (Y * Δ^[r]) without checking the germ conditions.

    Y keeps labels 1..k, the simplex takes k+1..k+r and v is k+r+1.
    """
    if r < 0:
        raise ValueError(f"Simplex part must be nonnegative, got {r}")
    k = ambient.m
    block = ((1 << r) - 1) << k
    apex = 1 << (k + r)
    facets = [f | block for f in ambient.facets] + [g | apex for g in masks]
    return SimplicialComplex._build(k + r + 1, facets)


def extend(
    ambient: SimplicialComplex,
    sub: SubcomplexLike,
    r: int = 0,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> SimplicialComplex:
    """Glue a cone over L onto Y * Δ^[r]; the result is weakly tight.

    Raises:
        NotAGerm: (Y, L) fails Cond-I or Cond-II
    """
    masks = sub_masks(ambient, sub)
    if not is_wt_germ(ambient, masks, field_spec, limits):
        raise NotAGerm(f"L does not form a germ with {ambient}")
    return glue(ambient, masks, r)


def subcomplexes(ambient: SimplicialComplex) -> Iterator[Tuple[Mask, ...]]:
    """Every subcomplex of Y as a facet antichain, {∅} included."""
    yield (0,)
    if not ambient.is_irrelevant:
        yield from antichains(ambient.faces)


def germ_candidates(
    ambient: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
    essential_only: bool = False,
) -> Iterator[Tuple[Mask, ...]]:
    """Subcomplexes of Y passing Cond-I, the cheap filter in front of Cond-II."""
    for masks in subcomplexes(ambient):
        if essential_only and support_of(masks) != ambient.full_mask:
            continue
        if cond_one(ambient, masks, field_spec, limits):
            yield masks
