"""
Classification of tight complexes.

K is tight exactly when it is a simplex-sphere join Δ^[r] * ∂Δ^[n1] * ... ,
equivalently when its minimal non-faces are pairwise disjoint: each ∂Δ^[n]
factor contributes its full vertex set as the single minimal non-face and the
simplex factor contributes none.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from .complex_core import SimplicialComplex, boundary_simplex, popcount, simplex, sphere_join, vertices_of
from .enumeration.universe import all_complexes, random_complexes
from .errors import TooLarge
from .hochster import is_tight, is_weakly_tight
from .models import DEFAULT_LIMITS, FieldSpec, GF2_FIELD, Limits, QQ_FIELD, TightDecomposition
from .parallel import map_jobs

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class NotTight:
    """Two minimal non-faces that meet, so K is no sphere join."""

    first: Tuple[int, ...]
    second: Tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def classify_tight(complex_: SimplicialComplex) -> Union[TightDecomposition, NotTight]:
    """Normal form of a tight complex, or a ``NotTight`` witness."""
    non_faces = complex_.minimal_non_face_masks
    union = 0
    for n in non_faces:
        if union & n:
            other = next(earlier for earlier in non_faces if earlier & n)
            return NotTight(vertices_of(other), vertices_of(n))
        union |= n
    return TightDecomposition(
        r=complex_.m - popcount(union),
        blocks=tuple(popcount(n) for n in non_faces),
    )


def reconstruct(decomposition: TightDecomposition) -> SimplicialComplex:
    return sphere_join(decomposition.r, decomposition.blocks)


def tight_witness(m: int, d: int) -> SimplicialComplex:
    """Δ^[m-2k] * (∂Δ^[2])^{*k} with k = m - d - 1: a tight member of Σ(m, d).

    Raises:
        ValueError: d outside floor((m-1)/2) .. m-1, where no tight complex exists
    """
    if m < 1 or not (m - 1) // 2 <= d <= m - 1:
        raise ValueError(f"No tight complex of dimension {d} on {m} vertices")
    k = m - d - 1
    result = simplex(m - 2 * k)
    for _ in range(k):
        result = result.join(boundary_simplex(2))
    return result


@dataclass
class ClassificationReport:
    field_spec: FieldSpec
    checked: int = 0
    tight: int = 0
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.problems)} problem(s)"
        return f"{self.checked} complexes, {self.tight} tight over {self.field_spec}: {status}"


def check_complex(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    other_field: FieldSpec = GF2_FIELD,
    join_range: int = 0,
    limits: Limits = DEFAULT_LIMITS,
) -> Tuple[bool, List[str]]:
    """All classification properties of one complex; returns (tight, problems)."""
    problems = []
    name = complex_.to_text()
    tight = is_tight(complex_, field_spec, limits)
    decomposition = classify_tight(complex_)

    if tight != bool(decomposition):
        problems.append(f"{name}: is_tight={tight} but classification says {decomposition}")
    if tight != is_tight(complex_, other_field, limits):
        problems.append(f"{name}: tightness differs between {field_spec} and {other_field}")
    if tight != (complex_.is_pure and is_weakly_tight(complex_, field_spec, limits)):
        problems.append(f"{name}: tight does not match weakly tight and pure")
    for r in range(1, join_range + 1):
        if is_tight(complex_.join(simplex(r)), field_spec, limits) != tight:
            problems.append(f"{name}: joining Δ^[{r}] changes tightness")

    if not tight:
        return tight, problems

    m = complex_.m
    if decomposition and not reconstruct(decomposition).is_isomorphic(complex_, limits):
        problems.append(f"{name}: {decomposition.describe()} is not isomorphic to it")
    if m and not (m - 1) // 2 <= complex_.dim <= m - 1:
        problems.append(f"{name}: tight with dimension {complex_.dim} outside the range")
    if m and not complex_.is_connected() and not complex_.is_isomorphic(boundary_simplex(2), limits):
        problems.append(f"{name}: tight and disconnected but not two points")
    for face in complex_.faces:
        if face and not is_tight(complex_.link(vertices_of(face)), field_spec, limits):
            problems.append(f"{name}: link of {vertices_of(face)} is not tight")
    for subset in range(1, complex_.full_mask):
        if not is_tight(complex_.full_subcomplex_mask(subset), field_spec, limits):
            problems.append(f"{name}: full subcomplex on {vertices_of(subset)} is not tight")
    return tight, problems


def verify_classification(
    m_max: int,
    field_spec: FieldSpec = QQ_FIELD,
    other_field: FieldSpec = GF2_FIELD,
    samples: Optional[int] = None,
    seed: int = 0,
    jobs: int = 1,
    limits: Limits = DEFAULT_LIMITS,
    progress: bool = False,
) -> ClassificationReport:
    """Check the classification on every complex with at most ``m_max`` vertices,
    or on ``samples`` random complexes with exactly ``m_max`` vertices.

    Raises:
        TooLarge: exhaustive mode above ``limits.max_exhaustive``
    """
    if samples is None:
        if m_max > limits.max_exhaustive:
            raise TooLarge(f"m = {m_max} exceeds the exhaustive cap {limits.max_exhaustive}; use samples")
        population = [k for m in range(0, m_max + 1) for k in all_complexes(m, limits)]
    else:
        population = random_complexes(m_max, samples, seed)

    tasks = [(k, field_spec, other_field, 2 if k.m <= 4 else 0, limits) for k in population]
    results = map_jobs(check_complex, tasks, jobs, progress, desc="classification")

    report = ClassificationReport(field_spec=field_spec)
    for tight, problems in results:
        report.checked += 1
        report.tight += tight
        report.problems.extend(problems)
    for problem in report.problems:
        LOGGER.warning("Classification problem: %s", problem)
    LOGGER.info(report.summary())
    return report
