"""
Bigraded Betti numbers from the Taylor resolution of the Stanley-Reisner ideal.

An independent route to the same numbers as Hochster's formula: the cells of
the Taylor complex are subsets of the minimal non-faces, and after tensoring
with the field only cells with the same lcm talk to each other.
"""

import logging
from typing import Dict, List, NamedTuple, Tuple

from .complex_core import Mask, SimplicialComplex, bit_positions, popcount
from .errors import TooManyGenerators
from .field_linear import Matrix
from .hochster import bigraded_betti
from .models import DEFAULT_LIMITS, BettiTable, FieldSpec, Limits, QQ_FIELD

LOGGER = logging.getLogger(__name__)


class Disagreement(NamedTuple):
    i: int
    two_j: int
    hochster_value: int
    taylor_value: int


class TaylorStrand(NamedTuple):
    """Taylor cells of one multidegree, grouped by homological degree."""

    multidegree: Mask
    cells: Dict[int, List[int]]


def stanley_reisner_generators(complex_: SimplicialComplex) -> Tuple[Mask, ...]:
    """Squarefree generators of I_K: the minimal non-faces."""
    return complex_.minimal_non_face_masks


def taylor_strands(
    complex_: SimplicialComplex, limits: Limits = DEFAULT_LIMITS
) -> Tuple[Tuple[Mask, ...], List[int], Dict[Mask, TaylorStrand]]:
    """Split the nonempty Taylor cells by their lcm.

    Returns the generators, the lcm of every generator subset (indexed by the
    subset bitmask) and the strands keyed by multidegree.
    """
    generators = stanley_reisner_generators(complex_)
    g = len(generators)
    if g > limits.max_generators:
        raise TooManyGenerators(f"{g} minimal non-faces exceed the cap {limits.max_generators}")

    lcm = [0] * (1 << g)
    strands: Dict[Mask, TaylorStrand] = {}
    for subset in range(1, 1 << g):
        lowest = subset & -subset
        lcm[subset] = lcm[subset ^ lowest] | generators[lowest.bit_length() - 1]
        strand = strands.get(lcm[subset])
        if strand is None:
            strand = strands[lcm[subset]] = TaylorStrand(lcm[subset], {})
        strand.cells.setdefault(popcount(subset), []).append(subset)
    return generators, lcm, strands


def strand_boundary(strand: TaylorStrand, degree: int, lcm: List[int]) -> Matrix:
    """Differential from degree ``degree`` to ``degree - 1`` inside one strand."""
    sources = strand.cells.get(degree, [])
    targets = strand.cells.get(degree - 1, [])
    index = {cell: row for row, cell in enumerate(targets)}
    entries = {}
    for col, cell in enumerate(sources):
        for k, position in enumerate(bit_positions(cell)):
            face = cell & ~(1 << position)
            if face and lcm[face] == strand.multidegree:
                entries[(index[face], col)] = -1 if k % 2 else 1
    return Matrix(len(targets), len(sources), entries)


def taylor_betti(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> BettiTable:
    """Tor of F[K] against F computed from the Taylor resolution.

    Raises:
        TooManyGenerators: more minimal non-faces than ``limits.max_generators``
    """
    _, lcm, strands = taylor_strands(complex_, limits)
    table = BettiTable(m=complex_.m, field=field_spec, entries={(0, 0): 1})
    for multidegree, strand in strands.items():
        j = popcount(multidegree)
        top = max(strand.cells)
        ranks = {degree: strand_boundary(strand, degree, lcm).rank(field_spec)
                 for degree in range(2, top + 1)}
        for degree in range(1, top + 1):
            size = len(strand.cells.get(degree, []))
            homology = size - ranks.get(degree, 0) - ranks.get(degree + 1, 0)
            table.add(degree, j, homology)
    return table


def oracle_diff(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Disagreement]:
    """Entries where Hochster's formula and the Taylor complex disagree."""
    hochster = bigraded_betti(complex_, field_spec, limits)
    taylor = taylor_betti(complex_, field_spec, limits)
    keys = sorted(set(hochster.entries) | set(taylor.entries))
    found = [
        Disagreement(i, 2 * j, hochster.get(i, j), taylor.get(i, j))
        for i, j in keys
        if hochster.get(i, j) != taylor.get(i, j)
    ]
    if found:
        LOGGER.warning("Oracle disagreement on %s over %s: %s", complex_, field_spec, found)
    return found
