import pytest

from src.complex_core import SimplicialComplex, boundary_simplex, simplex, sphere_join
from src.errors import TooLarge
from src.hochster import is_tight, tight_bound, total_betti
from src.models import QQ_FIELD, TightDecomposition
from src.tight_classify import (
    ClassificationReport,
    NotTight,
    check_complex,
    classify_tight,
    reconstruct,
    tight_witness,
    verify_classification,
)


class TestClassifyTight:

    def test_sphere_join(self):
        k = boundary_simplex(2).join(boundary_simplex(3))
        assert classify_tight(k) == TightDecomposition(r=0, blocks=(2, 3))

    def test_overlapping_non_faces(self):
        k = simplex(1).disjoint_union(simplex(2))
        result = classify_tight(k)
        assert isinstance(result, NotTight)
        assert not result
        assert (result.first, result.second) == ((1, 2), (1, 3))
        assert total_betti(k) == 4
        assert tight_bound(k) == 2

    def test_simplex_times_two_points(self):
        k = SimplicialComplex.from_facets(4, [(1, 2, 3), (1, 2, 4)])
        decomposition = classify_tight(k)
        assert decomposition == TightDecomposition(r=2, blocks=(2,))
        assert decomposition.describe() == "Δ^[2] * ∂Δ^[2]"
        assert decomposition.describe(ascii_only=True) == "D^[2] * dD^[2]"

    def test_irrelevant(self):
        decomposition = classify_tight(SimplicialComplex.irrelevant())
        assert decomposition == TightDecomposition(r=0)
        assert decomposition.describe() == "Δ^[0]"

    def test_reconstruct_round_trip(self):
        k = sphere_join(1, [3, 2]).relabel([5, 3, 1, 2, 6, 4])
        assert reconstruct(classify_tight(k)).is_isomorphic(k)

    def test_trivial_blocks_are_dropped(self):
        assert TightDecomposition(r=1, blocks=(1, 3, 2)).blocks == (2, 3)


class TestTightWitness:

    @pytest.mark.parametrize("m,d", [(5, 2), (5, 4), (6, 2), (4, 1), (1, 0)])
    def test_witness_is_tight_of_dimension(self, m, d):
        k = tight_witness(m, d)
        assert k.m == m
        assert k.dim == d
        assert is_tight(k)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            tight_witness(5, 1)
        with pytest.raises(ValueError):
            tight_witness(3, 3)


class TestVerification:

    def test_check_complex_on_tight(self):
        tight, problems = check_complex(boundary_simplex(2).join(simplex(1)), join_range=2)
        assert tight
        assert problems == []

    def test_check_complex_on_non_tight(self):
        tight, problems = check_complex(simplex(1).disjoint_union(simplex(2)))
        assert not tight
        assert problems == []

    @pytest.mark.parametrize("m_max", [3, 4])
    def test_exhaustive(self, m_max):
        report = verify_classification(m_max)
        assert report.ok, report.problems
        assert report.tight > 0
        assert report.checked > report.tight

    @pytest.mark.slow
    def test_exhaustive_five(self):
        report = verify_classification(5)
        assert report.ok, report.problems

    @pytest.mark.slow
    def test_random_six(self):
        report = verify_classification(6, samples=1000, seed=3)
        assert report.ok, report.problems
        assert report.checked == 1000

    def test_exhaustive_cap(self):
        with pytest.raises(TooLarge):
            verify_classification(6)

    def test_report_summary(self):
        report = ClassificationReport(field_spec=QQ_FIELD, checked=3, tight=2)
        assert report.summary() == "3 complexes, 2 tight over Q: ok"
