from unittest.mock import Mock

import pytest

from src.analysis_service import AnalysisService, NoInputError
from src.complex_core import SimplicialComplex, boundary_simplex, simplex
from src.errors import FacetFormatError
from src.models import GF2_FIELD, Limits, TightDecomposition
from src.storage import CensusStore
from src.tight_classify import NotTight

PENTAGON = "m=5; facets=(1,2),(2,3),(3,4),(4,5),(1,5)"


class TestAnalysisService:

    @pytest.fixture
    def mock_storage(self):
        return Mock(spec=CensusStore)

    @pytest.fixture
    def service(self, mock_storage):
        return AnalysisService(mock_storage)

    @pytest.fixture
    def square(self):
        return boundary_simplex(2).join(boundary_simplex(2))

    def test_read_complexes(self, service):
        complexes = service.read_complexes(f"{PENTAGON}\nm=1; facets=(1)\n")
        assert [k.m for k in complexes] == [5, 1]

    def test_read_complexes_minimum(self, service):
        with pytest.raises(NoInputError):
            service.read_complexes("# only a comment", minimum=1)
        with pytest.raises(NoInputError):
            service.read_complexes(PENTAGON, minimum=2)

    def test_read_complexes_malformed(self, service):
        with pytest.raises(FacetFormatError):
            service.read_complexes("m=5 facets=(1,2)")

    def test_betti_uses_field(self, mock_storage):
        service = AnalysisService(mock_storage, GF2_FIELD)
        pentagon = service.read_complexes(PENTAGON)[0]
        table = service.betti(pentagon)
        assert table.field == GF2_FIELD
        assert table.total == 12

    def test_classify_tight(self, service, square):
        decomposition, d_value, bound = service.classify(square)
        assert decomposition == TightDecomposition(0, (2, 2))
        assert (d_value, bound) == (4, 4)

    def test_classify_not_tight(self, service):
        pentagon = service.read_complexes(PENTAGON)[0]
        decomposition, d_value, bound = service.classify(pentagon)
        assert isinstance(decomposition, NotTight)
        assert (d_value, bound) == (12, 8)

    def test_check(self, service, square):
        report = service.check(square)
        assert report.is_tight
        assert report.sphere_subset_count == 4

    def test_enumerate_saves_rows(self, service, mock_storage):
        census = service.enumerate(3, save=True)
        assert census.counts() == {1: 1, 2: 2, 3: 4}
        mock_storage.save_records.assert_called_once()
        saved = mock_storage.save_records.call_args[0][0]
        assert [r.index for r in saved] == ["1_1", "2_1", "2_2", "3_1", "3_2", "3_3", "3_4"]

    def test_enumerate_without_save(self, service, mock_storage):
        service.enumerate(2)
        mock_storage.save_records.assert_not_called()

    def test_enumerate_run_export(self, service, tmp_path):
        service.enumerate(2, mode="cond2", route="germs", run_dir=str(tmp_path))
        assert len(list(tmp_path.glob("*.facets"))) == 1

    def test_enumerate_bad_mode(self, service):
        with pytest.raises(ValueError):
            service.enumerate(2, mode="fast")

    def test_germ(self, service):
        path = SimplicialComplex.from_facets(3, [(1, 2), (1, 3)])
        filtration, lengths = service.germ(path)
        assert filtration.length == 2
        assert lengths == {2}

    def test_wedge_defaults_to_first_vertex(self, service):
        assert service.wedge(boundary_simplex(2)) == boundary_simplex(3)
        assert service.wedge(simplex(1), vertex=1) == simplex(2)

    def test_wedge_with_multiplicities(self, service):
        assert service.wedge(boundary_simplex(3), multiplicities=[2, 1, 3]) == boundary_simplex(6)

    def test_join(self, service, square):
        joined = service.join([boundary_simplex(2), boundary_simplex(2), simplex(1)])
        assert joined.is_isomorphic(square.join(simplex(1)))

    def test_oracle_reports_only_disagreements(self, service, square):
        assert service.oracle([square, SimplicialComplex.irrelevant()]) == []

    def test_random_oracle_caps_generators(self, mocker, mock_storage):
        service = AnalysisService(mock_storage, limits=Limits(max_generators=16))
        sampler = mocker.patch("src.analysis_service.random_complexes", return_value=[])
        assert service.random_oracle(6, 10, seed=3) == []
        sampler.assert_called_once_with(6, 10, 3, max_generators=12)

    def test_verify_structure_small(self, service):
        assert service.verify_structure(3) == []

    def test_table1_small(self, service):
        assert service.table1(3) == []
