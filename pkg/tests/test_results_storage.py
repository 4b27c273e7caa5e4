import json
import tempfile

import pytest

from src.enumeration.census import Census, enumerate_wt
from src.enumeration.results_storage import CensusRunStorage


@pytest.fixture(scope="module")
def census():
    return enumerate_wt(3)


@pytest.fixture
def run_storage():
    with tempfile.TemporaryDirectory() as temp_dir:
        yield CensusRunStorage(temp_dir)


class TestCensusRunStorage:

    def test_save_and_load(self, run_storage, census):
        path = run_storage.save_run(census, {"id": "small", "m_max": 3})
        assert path.endswith("small.json")
        assert run_storage.load_run("small") == census.all_records()
        assert run_storage.list_runs() == ["small"]

    def test_sidecar_summary(self, run_storage, census):
        path = run_storage.save_run(census, {"id": "small"})
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        assert data["run_metadata"]["field"] == "Q"
        assert data["summary"]["total_classes"] == 7
        assert data["summary"]["counts_by_m"] == {"1": 1, "2": 2, "3": 4}
        assert data["summary"]["largest_d_value"] == 4

    def test_facet_lines(self, run_storage, census):
        run_storage.save_run(census, {"id": "small"})
        lines = (run_storage.base_dir / "small.facets").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 7
        assert lines[0] == "index=1_1; m=1; facets=(1); f=[1]; mdim=0; d=1"

    def test_falls_back_to_facet_lines(self, run_storage, census):
        run_storage.save_run(census, {"id": "small"})
        (run_storage.base_dir / "small.json").write_text("{broken", encoding="utf-8")
        assert run_storage.load_run("small") == census.all_records()

    def test_missing_run(self, run_storage):
        assert run_storage.load_run("nothing") == []

    def test_empty_census(self, run_storage):
        path = run_storage.save_run(Census(), {"id": "empty"})
        with open(path, encoding="utf-8") as f:
            assert json.load(f)["summary"] == {"total_classes": 0, "counts_by_m": {}}
        assert run_storage.load_run("empty") == []
