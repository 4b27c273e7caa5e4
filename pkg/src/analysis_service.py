from typing import List, Optional, Sequence, Tuple, Union

from .complex_core import SimplicialComplex
from .enumeration.census import Census, FilterMode, Route, diff_census, enumerate_wt
from .enumeration.filtrations import GermFiltration, filtration_lengths, germ_filtration
from .enumeration.results_storage import CensusRunStorage
from .enumeration.universe import DminResult, all_complexes, dmin_search, random_complexes
from .facet_format import GOLDEN_TABLE1, load_records, parse_text
from .hochster import bigraded_betti, tight_bound, tightness_report, total_betti
from .models import (
    DEFAULT_LIMITS,
    BettiTable,
    FieldSpec,
    Limits,
    Proposition,
    QQ_FIELD,
    TightDecomposition,
    TightnessReport,
)
from .parallel import map_jobs
from .propositions import (
    check_lower_bounds,
    check_monotonicity,
    check_structure,
    check_wedge_identities,
    check_wt_recursion,
)
from .storage import CensusStore
from .taylor_oracle import Disagreement, oracle_diff
from .tight_classify import ClassificationReport, NotTight, classify_tight, verify_classification


class NoInputError(Exception):
    """Raised when a command needs at least one complex and got none"""
    pass


def _oracle_job(complex_: SimplicialComplex, field_spec: FieldSpec, limits: Limits) -> List[Disagreement]:
    return oracle_diff(complex_, field_spec, limits)


def _structure_job(complex_: SimplicialComplex, field_spec: FieldSpec, limits: Limits,
                   weakly_tight: bool) -> List[Proposition]:
    results = check_lower_bounds(complex_, field_spec, limits) + check_monotonicity(complex_, field_spec, limits)
    if complex_.m:
        results += check_wedge_identities(complex_, 1, field_spec, limits)
    if weakly_tight:
        results += check_structure(complex_, field_spec, limits=limits)
        for v in complex_.v_mdim():
            results += check_wt_recursion(complex_, v, field_spec, limits)
    return [result for result in results if not result.holds]


class AnalysisService:
    """
    Business logic layer between the command line and the library.

    Holds the coefficient field, the size limits and the census store, and
    turns text input into complexes.
    """

    def __init__(self, storage: CensusStore, field_spec: FieldSpec = QQ_FIELD,
                 limits: Limits = DEFAULT_LIMITS, jobs: int = 1, progress: bool = False):
        self.storage = storage
        self.field_spec = field_spec
        self.limits = limits
        self.jobs = jobs
        self.progress = progress

    def read_complexes(self, text: str, minimum: int = 1) -> List[SimplicialComplex]:
        """
        Parse facet-format lines.

        Raises:
            FacetFormatError: malformed text
            NoInputError: fewer than ``minimum`` complexes
        """
        complexes = parse_text(text, self.limits)
        if len(complexes) < minimum:
            raise NoInputError(f"Expected at least {minimum} complex(es) in facet format")
        return complexes

    def betti(self, complex_: SimplicialComplex) -> BettiTable:
        return bigraded_betti(complex_, self.field_spec, self.limits)

    def total(self, complex_: SimplicialComplex) -> int:
        return total_betti(complex_, self.field_spec, self.limits)

    def check(self, complex_: SimplicialComplex) -> TightnessReport:
        return tightness_report(complex_, self.field_spec, self.limits)

    def classify(self, complex_: SimplicialComplex) -> Tuple[Union[TightDecomposition, NotTight], int, int]:
        """Normal form or NotTight, together with D~ and the tight bound."""
        return classify_tight(complex_), self.total(complex_), tight_bound(complex_)

    def enumerate(self, m_max: int, mode: str = "shortcut", route: str = "germs",
                  save: bool = False, run_dir: Optional[str] = None) -> Census:
        """
        Enumerate weakly tight complexes up to ``m_max`` vertices.

        Args:
            m_max: Largest vertex count
            mode: ``shortcut`` (D~ test) or ``cond2`` (homology surjections)
            route: ``germs`` or ``essential``
            save: Store the rows in the census store
            run_dir: Also write a facet/JSON run export to this directory
        """
        census = enumerate_wt(m_max, self.field_spec, FilterMode(mode), Route(route),
                              self.limits, self.progress)
        if save:
            self.storage.save_records(census.all_records())
        if run_dir:
            CensusRunStorage(run_dir).save_run(census, {"m_max": m_max, "mode": mode, "route": route})
        return census

    def dmin(self, m: int, d: int) -> DminResult:
        return dmin_search(m, d, self.field_spec, self.limits, self.progress)

    def germ(self, complex_: SimplicialComplex) -> Tuple[GermFiltration, frozenset]:
        return (germ_filtration(complex_, self.field_spec, self.limits),
                filtration_lengths(complex_, self.field_spec, self.limits))

    def wedge(self, complex_: SimplicialComplex, vertex: Optional[int] = None,
              multiplicities: Optional[Sequence[int]] = None) -> SimplicialComplex:
        if multiplicities is not None:
            return complex_.doubling(multiplicities, self.limits)
        return complex_.simplicial_wedge(vertex if vertex is not None else 1)

    def join(self, complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
        result = complexes[0]
        for other in complexes[1:]:
            result = result.join(other)
        return result

    def oracle(self, complexes: Sequence[SimplicialComplex]) -> List[Tuple[SimplicialComplex, List[Disagreement]]]:
        """Hochster against Taylor on every input; only complexes with disagreements are returned."""
        tasks = [(k, self.field_spec, self.limits) for k in complexes]
        results = map_jobs(_oracle_job, tasks, self.jobs, self.progress, desc="oracle")
        return [(k, found) for k, found in zip(complexes, results) if found]

    def exhaustive_oracle(self, m_max: int) -> List[Tuple[SimplicialComplex, List[Disagreement]]]:
        complexes = [k for m in range(m_max + 1) for k in all_complexes(m, self.limits)]
        return self.oracle(complexes)

    def random_oracle(self, m: int, samples: int, seed: int = 0) -> List[Tuple[SimplicialComplex, List[Disagreement]]]:
        # at most 2^12 Taylor cells per sample
        complexes = random_complexes(m, samples, seed, max_generators=min(12, self.limits.max_generators))
        return self.oracle(complexes)

    def verify_classification(self, m_max: int, samples: Optional[int] = None, seed: int = 0) -> ClassificationReport:
        return verify_classification(m_max, self.field_spec, samples=samples, seed=seed, jobs=self.jobs,
                                     limits=self.limits, progress=self.progress)

    def verify_structure(self, m_max: int) -> List[Tuple[SimplicialComplex, List[Proposition]]]:
        """Lower bounds, monotonicity and wedge identities on every complex with at most
        ``m_max`` vertices, plus the weakly tight structure results on the census."""
        census = enumerate_wt(m_max, self.field_spec, limits=self.limits, progress=self.progress)
        weakly_tight = {key for m in census.by_m for key in census.keys(m)}
        complexes = [k for m in range(1, m_max + 1) for k in all_complexes(m, self.limits)]
        tasks = [(k, self.field_spec, self.limits, (k.m, k.facets) in weakly_tight)
                 for k in complexes]
        results = map_jobs(_structure_job, tasks, self.jobs, self.progress, desc="structure")
        return [(k, failed) for k, failed in zip(complexes, results) if failed]

    def table1(self, m_max: int = 5, golden_path=GOLDEN_TABLE1) -> List[str]:
        """Regenerate the census and diff it against the golden rows."""
        expected = [row for row in load_records(golden_path) if row.m <= m_max]
        census = enumerate_wt(m_max, self.field_spec, limits=self.limits, progress=self.progress)
        return diff_census(census, expected, self.limits)
