"""
Exhaustive and random universes of small simplicial complexes.

Complexes are generated as facet antichains and filtered afterwards: only the
labeling whose sorted facet tuple is lexicographically least is kept, so every
isomorphism class appears exactly once.
"""

import logging
import random
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from tqdm import tqdm

from ..complex_core import IsoClassKey, Mask, SimplicialComplex, popcount
from ..errors import TooLarge
from ..hochster import is_tight, total_betti
from ..models import DEFAULT_LIMITS, FieldSpec, Limits, QQ_FIELD

LOGGER = logging.getLogger(__name__)


def antichains(masks: Sequence[Mask]) -> Iterator[Tuple[Mask, ...]]:
    """Every nonempty antichain of nonzero masks drawn from ``masks``."""
    ordered = sorted(set(m for m in masks if m), key=lambda f: (-popcount(f), f))
    chosen: List[Mask] = []

    def walk(start: int) -> Iterator[Tuple[Mask, ...]]:
        for index in range(start, len(ordered)):
            face = ordered[index]
            # larger faces come first, so only containment in a chosen face can clash
            if any(face & ~other == 0 for other in chosen):
                continue
            chosen.append(face)
            yield tuple(sorted(chosen))
            yield from walk(index + 1)
            chosen.pop()

    yield from walk(0)


def all_complexes(
    m: int, limits: Limits = DEFAULT_LIMITS, progress: bool = False
) -> List[SimplicialComplex]:
    """One representative per isomorphism class of complexes with vertex set [m].

    Every facet antichain covering [m] is generated and kept only when it is
    already in canonical form; there is no orderly pruning of the search, so the
    cost grows with the number of antichains and ``limits.max_exhaustive`` caps m.

    Raises:
        TooLarge: m above ``limits.max_exhaustive``
    """
    if m > limits.max_exhaustive:
        raise TooLarge(f"m = {m} exceeds the exhaustive cap {limits.max_exhaustive}")
    if m == 0:
        return [SimplicialComplex.irrelevant()]
    full = (1 << m) - 1
    found = []
    candidates = antichains(range(1, full + 1))
    for facets in tqdm(candidates, desc=f"complexes m={m}", disable=not progress):
        covered = 0
        for f in facets:
            covered |= f
        if covered != full:
            continue
        complex_ = SimplicialComplex(m, facets)
        if complex_.is_canonical(limits):
            found.append(complex_)
    LOGGER.debug("%d isomorphism classes of complexes on %d vertices", len(found), m)
    return found


def sigma(m: int, d: int, limits: Limits = DEFAULT_LIMITS, progress: bool = False) -> List[SimplicialComplex]:
    """Σ(m, d): complexes on [m] of dimension exactly d, up to isomorphism."""
    return [k for k in all_complexes(m, limits, progress) if k.dim == d]


def random_complex(
    m: int,
    rng: random.Random,
    max_facets: Optional[int] = None,
    max_generators: Optional[int] = None,
) -> SimplicialComplex:
    """A random complex on exactly [m] vertices.

    Random nonempty subsets are drawn as candidate facets and every vertex
    they miss is added as an isolated point. With ``max_generators`` set,
    samples are redrawn until the Stanley-Reisner ideal is small enough.
    """
    full = (1 << m) - 1
    max_facets = max_facets or m + 2
    while True:
        count = rng.randint(1, max_facets)
        faces = [rng.randint(1, full) for _ in range(count)]
        covered = 0
        for f in faces:
            covered |= f
        faces.extend(1 << p for p in range(m) if not covered >> p & 1)
        complex_ = SimplicialComplex._build(m, faces)
        if max_generators is None or len(complex_.minimal_non_face_masks) <= max_generators:
            return complex_


def random_complexes(
    m: int, count: int, seed: int = 0, max_generators: Optional[int] = None
) -> List[SimplicialComplex]:
    rng = random.Random(seed)
    return [random_complex(m, rng, max_generators=max_generators) for _ in range(count)]


class DminResult(NamedTuple):
    min_value: int
    argmin: List[IsoClassKey]
    population: int
    reaches_tight_bound: bool
    minimizers_tight: bool


def dmin_search(
    m: int,
    d: int,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
    progress: bool = False,
) -> DminResult:
    """Minimum of D~ over Σ(m, d) and every minimizer up to isomorphism.

    Raises:
        TooLarge: Σ(m, d) is beyond exhaustive generation
        ValueError: Σ(m, d) is empty
    """
    population = sigma(m, d, limits, progress)
    if not population:
        raise ValueError(f"There is no complex of dimension {d} on {m} vertices")
    best: Optional[int] = None
    argmin: List[SimplicialComplex] = []
    for complex_ in tqdm(population, desc=f"D~ over Σ({m},{d})", disable=not progress):
        value = total_betti(complex_, field_spec, limits, stop_above=best)
        if best is None or value < best:
            best, argmin = value, [complex_]
        elif value == best:
            argmin.append(complex_)
    LOGGER.info("Σ(%d,%d): %d classes, min D~ = %d attained %d times",
                m, d, len(population), best, len(argmin))
    return DminResult(
        min_value=best,
        argmin=sorted(k.canonical_key(limits) for k in argmin),
        population=len(population),
        reaches_tight_bound=best == 2 ** (m - d - 1),
        minimizers_tight=all(is_tight(k, field_spec, limits) for k in argmin),
    )
