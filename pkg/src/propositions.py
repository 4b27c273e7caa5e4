"""
Checkable inequalities and structure results for Betti numbers of
Stanley-Reisner rings.

Each check returns a list of ``Proposition`` results; violations are reported,
not raised.
"""

import logging
from math import comb
from typing import List

from .complex_core import SimplicialComplex, popcount, simplex
from .errors import NotWeaklyTight, VertexNotMdim
from .hochster import (
    bigraded_betti,
    is_tight,
    is_weakly_tight,
    sphere_count_characterization,
    total_betti,
)
from .models import BettiTable, DEFAULT_LIMITS, FieldSpec, GF2_FIELD, Limits, Proposition, QQ_FIELD

LOGGER = logging.getLogger(__name__)


def _vertex_recursion_terms(
    table: BettiTable, link_table: BettiTable, deletion_table: BettiTable, c: int, m: int
):
    """Yield (i, j, lhs, rhs) for the bigraded vertex inequality at every (i, j)."""
    for i in range(0, m + 1):
        for j in range(0, m):
            rhs = sum(comb(c, s) * link_table.get(i - s, j - s) for s in range(0, j + 1))
            rhs += deletion_table.get(i, j + 1) - deletion_table.get(i, j)
            yield i, j, table.get(i, j + 1), rhs


def _row_recursion_terms(table: BettiTable, link_table: BettiTable, c: int, m: int):
    for i in range(0, m + 1):
        rhs = sum(comb(c, s) * link_table.row_sum(i - s) for s in range(0, i + 1))
        yield i, table.row_sum(i), rhs


def check_lower_bounds(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Proposition]:
    """Binomial lower bounds on beta^{-i} and D~, and the per-vertex bounds."""
    m = complex_.m
    table = bigraded_betti(complex_, field_spec, limits)
    results = []

    span = m - complex_.mdim - 1
    low = [i for i in range(span + 1) if table.row_sum(i) < comb(span, i)]
    results.append(Proposition(
        "row sums >= C(m-mdim-1, i)", not low, f"fails at i={low}" if low else ""))

    span_dim = m - complex_.dim - 1
    low = [i for i in range(span_dim + 1) if table.row_sum(i) < comb(span_dim, i)]
    results.append(Proposition(
        "row sums >= C(m-dim-1, i)", not low, f"fails at i={low}" if low else ""))

    results.append(Proposition(
        "D~ >= 2^(m-dim-1)", table.total >= 2 ** span_dim, f"D~={table.total}"))
    results.append(Proposition(
        "D~ >= 2^(m-mdim-1)", table.total >= 2 ** span, f"D~={table.total}"))

    for v in complex_.vertices():
        link = complex_.link([v])
        link_table = bigraded_betti(link, field_spec, limits)
        deletion_table = bigraded_betti(complex_.delete_vertex(v), field_spec, limits)
        c = m - link.m - 1

        bad = [(i, j) for i, j, lhs, rhs in
               _vertex_recursion_terms(table, link_table, deletion_table, c, m) if lhs < rhs]
        results.append(Proposition(
            f"bigraded vertex bound at v={v}", not bad, f"fails at {bad}" if bad else ""))

        bad = [i for i, lhs, rhs in _row_recursion_terms(table, link_table, c, m) if lhs < rhs]
        results.append(Proposition(
            f"row-sum vertex bound at v={v}", not bad, f"fails at i={bad}" if bad else ""))

        results.append(Proposition(
            f"D~ vertex bound at v={v}",
            table.total >= 2 ** c * link_table.total,
            f"{table.total} vs 2^{c}*{link_table.total}"))
    return results


def check_wt_recursion(
    complex_: SimplicialComplex,
    v: int,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Proposition]:
    """For weakly tight K and v in V_mdim the vertex bounds are equalities.

    Raises:
        NotWeaklyTight: K is not weakly tight over the field
        VertexNotMdim: v is not on a facet of minimal dimension
    """
    if not is_weakly_tight(complex_, field_spec, limits):
        raise NotWeaklyTight(f"{complex_} is not weakly tight over {field_spec}")
    if v not in complex_.v_mdim():
        raise VertexNotMdim(f"Vertex {v} is not in V_mdim = {list(complex_.v_mdim())}")

    m = complex_.m
    table = bigraded_betti(complex_, field_spec, limits)
    link = complex_.link([v])
    link_table = bigraded_betti(link, field_spec, limits)
    deletion_table = bigraded_betti(complex_.delete_vertex(v), field_spec, limits)
    c = m - link.m - 1

    bad = [(i, j) for i, j, lhs, rhs in
           _vertex_recursion_terms(table, link_table, deletion_table, c, m) if lhs != rhs]
    row_bad = [i for i, lhs, rhs in _row_recursion_terms(table, link_table, c, m) if lhs != rhs]
    return [
        Proposition("bigraded recursion is an equality", not bad, f"differs at {bad}" if bad else ""),
        Proposition("row-sum recursion is an equality", not row_bad,
                    f"differs at i={row_bad}" if row_bad else ""),
        Proposition("D~ = 2^(m-m_v-1) D~(link)", table.total == 2 ** c * link_table.total,
                    f"{table.total} vs 2^{c}*{link_table.total}"),
        Proposition("link is weakly tight", is_weakly_tight(link, field_spec, limits), str(link)),
    ]


def binomial_betti_holds(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> bool:
    """beta^{-i} = C(m-mdim-1, i) for every i."""
    table = bigraded_betti(complex_, field_spec, limits)
    span = complex_.m - complex_.mdim - 1
    top = max(span, len(table.row_sums()) - 1)
    return all(table.row_sum(i) == comb(span, i) for i in range(top + 1))


def disjoint_point_and_simplex(m: int) -> SimplicialComplex:
    """Δ^[1] ⊔ Δ^[m-1]."""
    return simplex(1).disjoint_union(simplex(m - 1))


def check_structure(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    other_field: FieldSpec = GF2_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Proposition]:
    """Structural consequences of weak tightness.

    Raises:
        NotWeaklyTight: K is not weakly tight over ``field_spec``
    """
    if not is_weakly_tight(complex_, field_spec, limits):
        raise NotWeaklyTight(f"{complex_} is not weakly tight over {field_spec}")
    m = complex_.m
    results = [
        Proposition("weakly tight over the second field",
                    is_weakly_tight(complex_, other_field, limits), str(other_field)),
        Proposition("beta^{-i} = C(m-mdim-1, i)",
                    binomial_betti_holds(complex_, field_spec, limits)),
        Proposition("full subcomplexes acyclic or spheres, sphere count 2^(m-mdim-1)",
                    sphere_count_characterization(complex_, field_spec, limits)),
    ]

    not_wt = [
        subset for subset in range(1, 1 << m)
        if not is_weakly_tight(complex_.full_subcomplex_mask(subset), field_spec, limits)
    ]
    results.append(Proposition("full subcomplexes weakly tight", not not_wt,
                               f"fails on {len(not_wt)} subsets" if not_wt else ""))

    if m >= 1:
        results.append(Proposition(
            "(m-1)//2 <= dim <= m-1", (m - 1) // 2 <= complex_.dim <= m - 1, f"dim={complex_.dim}"))

    for v in complex_.v_mdim():
        link = complex_.link([v])
        link_support = complex_.link_vertex_mask([v])
        r_v = m - popcount(complex_.star_vertex_mask([v]))
        deletion = complex_.delete_vertex(v)
        rebuilt = complex_.full_subcomplex_mask(link_support).join(simplex(r_v))
        results.append(Proposition(
            f"K minus v = K|V(link v) * Δ^[{r_v}] at v={v}",
            deletion.is_isomorphic(rebuilt, limits)))

        deletion_masks = complex_.restricted_masks(complex_.full_mask & ~(1 << (v - 1)))
        same = set(complex_.link_masks([v])) == set(deletion_masks)
        results.append(Proposition(
            f"mdim(link v) <= mdim(K minus v), equality iff equal, at v={v}",
            link.mdim <= deletion.mdim and (link.mdim == deletion.mdim) == same,
            f"{link.mdim} vs {deletion.mdim}"))

    if m >= 2:
        disconnected = not complex_.is_connected()
        empty_link = any(complex_.link([v]).is_irrelevant for v in complex_.v_mdim())
        special = complex_.is_isomorphic(disjoint_point_and_simplex(m), limits)
        flags = {disconnected, complex_.mdim == 0, empty_link, special}
        results.append(Proposition(
            "disconnected <=> mdim 0 <=> empty link on V_mdim <=> Δ^[1] ⊔ Δ^[m-1]",
            len(flags) == 1,
            f"disconnected={disconnected} mdim0={complex_.mdim == 0} "
            f"empty_link={empty_link} special={special}"))
    return results


def check_join_identities(
    first: SimplicialComplex,
    second: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Proposition]:
    joined = first.join(second)
    d_first = total_betti(first, field_spec, limits)
    d_second = total_betti(second, field_spec, limits)
    d_joined = total_betti(joined, field_spec, limits)
    return [
        Proposition("D~(K*L) = D~(K) D~(L)", d_joined == d_first * d_second,
                    f"{d_joined} vs {d_first}*{d_second}"),
        Proposition("dim and mdim add under join",
                    joined.dim == first.dim + second.dim + 1
                    and joined.mdim == first.mdim + second.mdim + 1),
        Proposition("K*L weakly tight iff both are",
                    is_weakly_tight(joined, field_spec, limits)
                    == (is_weakly_tight(first, field_spec, limits)
                        and is_weakly_tight(second, field_spec, limits))),
        Proposition("K*L tight iff both are",
                    is_tight(joined, field_spec, limits)
                    == (is_tight(first, field_spec, limits) and is_tight(second, field_spec, limits))),
    ]


def check_simplex_join_invariance(
    complex_: SimplicialComplex,
    r: int,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> Proposition:
    coned = complex_.join(simplex(r))
    same = bigraded_betti(coned, field_spec, limits).same_values(
        bigraded_betti(complex_, field_spec, limits))
    return Proposition(f"table of K * Δ^[{r}] equals table of K", same)


def check_wedge_identities(
    complex_: SimplicialComplex,
    v: int,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Proposition]:
    wedge = complex_.simplicial_wedge(v)
    d_before = total_betti(complex_, field_spec, limits)
    d_after = total_betti(wedge, field_spec, limits)
    return [
        Proposition("D~(K(v)) = D~(K)", d_before == d_after, f"{d_after} vs {d_before}"),
        Proposition("mdim(K(v)) = mdim(K) + 1", wedge.mdim == complex_.mdim + 1),
        Proposition("|V(K(v))| = |V(K)| + 1", wedge.m == complex_.m + 1),
        Proposition("K(v) weakly tight iff K is",
                    is_weakly_tight(wedge, field_spec, limits)
                    == is_weakly_tight(complex_, field_spec, limits)),
    ]


def check_monotonicity(
    complex_: SimplicialComplex,
    field_spec: FieldSpec = QQ_FIELD,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Proposition]:
    """D~(K_J) <= D~(K) for every J, and D~ = 1 exactly for simplices."""
    d_value = total_betti(complex_, field_spec, limits)
    larger = [
        subset for subset in range(1 << complex_.m)
        if total_betti(complex_.full_subcomplex_mask(subset), field_spec, limits) > d_value
    ]
    is_simplex = len(complex_.facets) == 1
    return [
        Proposition("D~(K_J) <= D~(K)", not larger, f"{len(larger)} larger subsets" if larger else ""),
        Proposition("D~ = 1 iff simplex", (d_value == 1) == is_simplex, f"D~={d_value}"),
    ]

