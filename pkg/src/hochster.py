"""
Bigraded Betti numbers of Stanley-Reisner rings via Hochster's formula.

beta^{-i,2j}(F[K]) = sum over |J| = j of the reduced Betti number
beta~_{j-i-1}(K_J); the total D~(K) is the sum of tb~(K_J) over all J.
"""

import logging
from typing import Iterator, Optional, Tuple

from .complex_core import Mask, SimplicialComplex, popcount
from .errors import TooLarge
from .field_linear import homotopy_profile, reduced_betti
from .models import DEFAULT_LIMITS, BettiTable, FieldSpec, Limits, QQ_FIELD, TightnessReport

LOGGER = logging.getLogger(__name__)


def _check_size(complex_: SimplicialComplex, limits: Limits) -> None:
    if complex_.m > limits.max_hochster:
        raise TooLarge(
            f"m = {complex_.m} exceeds the subset-iteration cap {limits.max_hochster}"
        )


def subset_betti(
    complex_: SimplicialComplex, field_spec: FieldSpec = QQ_FIELD
) -> Iterator[Tuple[Mask, Tuple[int, ...]]]:
    """Yield (J, reduced Betti vector of K_J) for every J with nonzero homology."""
    for subset in range(1 << complex_.m):
        if subset and complex_.is_face_mask(subset):
            continue  # a simplex is acyclic
        betti = reduced_betti(complex_.full_subcomplex_mask(subset), field_spec)
        if any(betti):
            yield subset, betti


def bigraded_betti(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> BettiTable:
    _check_size(complex_, limits)
    table = BettiTable(m=complex_.m, field=field_spec)
    for subset, betti in subset_betti(complex_, field_spec):
        j = popcount(subset)
        for index, value in enumerate(betti):
            degree = index - 1
            table.add(j - degree - 1, j, value)
    return table


def total_betti(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
    stop_above: Optional[int] = None,
) -> int:
    """D~(K). With ``stop_above`` set, returns early with some value > stop_above
    as soon as the running sum exceeds it."""
    _check_size(complex_, limits)
    total = 0
    for _, betti in subset_betti(complex_, field_spec):
        total += sum(betti)
        if stop_above is not None and total > stop_above:
            return total
    return total


def weakly_tight_bound(complex_: SimplicialComplex) -> int:
    """2^{m - mdim - 1}, the lower bound for D~ attained by weakly tight complexes."""
    return 2 ** (complex_.m - complex_.mdim - 1)


def tight_bound(complex_: SimplicialComplex) -> int:
    return 2 ** (complex_.m - complex_.dim - 1)


def is_weakly_tight(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    target = weakly_tight_bound(complex_)
    return total_betti(complex_, field_spec, limits, stop_above=target) == target


def is_tight(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    target = tight_bound(complex_)
    return total_betti(complex_, field_spec, limits, stop_above=target) == target


def sphere_subset_count(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> int:
    """Number of J with tb~(K_J) != 0 (J = ∅ counts, K_∅ = {∅})."""
    _check_size(complex_, limits)
    return sum(1 for _ in subset_betti(complex_, field_spec))


def tightness_report(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> TightnessReport:
    _check_size(complex_, limits)
    d_value = 0
    spheres = 0
    for _, betti in subset_betti(complex_, field_spec):
        d_value += sum(betti)
        spheres += 1
    weakly = d_value == weakly_tight_bound(complex_)
    return TightnessReport(
        d_value=d_value,
        m=complex_.m,
        mdim=complex_.mdim,
        dim=complex_.dim,
        is_weakly_tight=weakly,
        is_tight=d_value == tight_bound(complex_),
        sphere_subset_count=spheres,
        field=field_spec,
    )


def sphere_count_characterization(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """Every K_J is acyclic or a homology sphere, and there are 2^{m-mdim-1} spheres."""
    _check_size(complex_, limits)
    spheres = 0
    for subset in range(1 << complex_.m):
        if subset and complex_.is_face_mask(subset):
            continue
        profile = homotopy_profile(complex_.full_subcomplex_mask(subset), field_spec)
        if profile.is_sphere:
            spheres += 1
        elif not profile.is_acyclic:
            return False
    return spheres == weakly_tight_bound(complex_)
