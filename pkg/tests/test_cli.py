import argparse
import json
from io import StringIO

import pytest

from src.analysis_service import AnalysisService
from src.cli import EXIT_MISMATCH, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, TightsrCLI, build_parser, main
from src.complex_core import SimplicialComplex
from src.enumeration.universe import DminResult
from src.models import QQ_FIELD, TightDecomposition
from src.taylor_oracle import Disagreement
from src.tight_classify import ClassificationReport, NotTight

PENTAGON = "m=5; facets=(1,2),(2,3),(3,4),(4,5),(1,5)"
SQUARE = "m=4; facets=(1,2),(1,3),(2,4),(3,4)"


@pytest.fixture
def run_cli(tmp_path, monkeypatch, capsys):
    """Run main() on the given stdin; returns (exit code, stdout, stderr)."""
    def run(argv, stdin=""):
        monkeypatch.setattr("sys.stdin", StringIO(stdin))
        code = main(["--data-dir", str(tmp_path / "data")] + argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run


class TestParser:

    def test_command_is_required(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args([])
        assert excinfo.value.code == 2

    def test_verify_needs_a_mode(self):
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args(["verify"])
        assert excinfo.value.code == 2

    def test_defaults(self):
        args = build_parser().parse_args(["table1"])
        assert args.field == "Q"
        assert args.jobs == 1
        assert args.m == 5


class TestComplexCommands:

    def test_betti_json(self, run_cli):
        code, out, _ = run_cli(["betti"], PENTAGON)
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["total"] == 12
        assert data["row_sums"] == [1, 5, 5, 1]

    def test_betti_table(self, run_cli):
        code, out, _ = run_cli(["betti", "--table"], "m=2; facets=(1),(2)\n")
        assert code == EXIT_OK
        assert out.splitlines()[1] == "total:   1  1"

    def test_input_file(self, run_cli, tmp_path):
        path = tmp_path / "complexes.txt"
        path.write_text(f"# two inputs\n{PENTAGON}\n{SQUARE}\n", encoding="utf-8")
        code, out, _ = run_cli(["--in", str(path), "total"])
        assert code == EXIT_OK
        assert out.split() == ["12", "4"]

    def test_check_irrelevant(self, run_cli):
        code, out, _ = run_cli(["check"], "m=0; facets=()")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["tight"] is True
        assert report["d_value"] == 1

    def test_check_over_prime_field(self, run_cli):
        code, out, _ = run_cli(["--field", "Fp:2", "check"], PENTAGON)
        assert code == EXIT_OK
        assert json.loads(out)["field"] == "Fp:2"

    def test_classify(self, run_cli):
        code, out, _ = run_cli(["classify"], f"{SQUARE}\n{PENTAGON}\n")
        assert code == EXIT_OK
        assert out.splitlines() == [
            "tight: ∂Δ^[2] * ∂Δ^[2]",
            "not tight (D̃=12, bound=8)",
        ]

    def test_wedge(self, run_cli):
        code, out, _ = run_cli(["wedge", "--vertex", "1"], "m=2; facets=(1),(2)")
        assert code == EXIT_OK
        assert out.strip() == "m=3; facets=(1,2),(1,3),(2,3)"

    def test_doubling(self, run_cli):
        code, out, _ = run_cli(["wedge", "--multiplicities", "1,1,1,1"], SQUARE)
        assert code == EXIT_OK
        assert out.strip() == SQUARE

    def test_join(self, run_cli):
        code, out, _ = run_cli(["join"], "m=2; facets=(1),(2)\nm=2; facets=(1),(2)\n")
        assert code == EXIT_OK
        assert out.strip() == "m=4; facets=(1,3),(1,4),(2,3),(2,4)"

    def test_germ(self, run_cli):
        code, out, _ = run_cli(["germ"], "m=3; facets=(1,2),(1,3)")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("step 1: Y: ")
        assert lines[-1] == "lengths: [2]"


class TestErrors:

    def test_malformed_input(self, run_cli):
        code, _, err = run_cli(["betti"], "m=3; facets=(1,2")
        assert code == EXIT_USAGE
        assert err.startswith("FacetFormatError:")

    def test_empty_input(self, run_cli):
        code, _, err = run_cli(["total"], "# nothing\n")
        assert code == EXIT_USAGE
        assert err.startswith("NoInputError:")

    def test_ghost_vertex(self, run_cli):
        code, _, err = run_cli(["betti"], "m=3; facets=(1,2)")
        assert code == EXIT_PRECONDITION
        assert err.startswith("GhostVertex:")

    def test_germ_of_non_weakly_tight(self, run_cli):
        code, _, err = run_cli(["germ"], PENTAGON)
        assert code == EXIT_PRECONDITION
        assert err.startswith("NotWeaklyTight:")

    def test_bad_field(self, run_cli):
        code, _, err = run_cli(["--field", "Fp:6", "total"], PENTAGON)
        assert code == EXIT_USAGE
        assert err.startswith("BadField:")

    def test_bad_multiplicities(self, run_cli):
        code, _, err = run_cli(["wedge", "--multiplicities", "1,x"], SQUARE)
        assert code == EXIT_USAGE
        assert err.startswith("ValueError:")


class TestSweeps:

    def test_enumerate(self, run_cli, tmp_path):
        code, out, err = run_cli(["enumerate", "--m", "3", "--save", "--out", str(tmp_path / "runs")])
        assert code == EXIT_OK
        lines = out.splitlines()
        assert len(lines) == 7
        assert lines[0] == "index=1_1; m=1; facets=(1); f=[1]; mdim=0; d=1"
        assert "classes per m: 1:1 2:2 3:4" in err
        assert (tmp_path / "data" / "census.facets").exists()
        assert len(list((tmp_path / "runs").glob("*.json"))) == 1

    def test_dmin(self, run_cli, mocker):
        mocker.patch.object(AnalysisService, "dmin", return_value=DminResult(
            min_value=4, argmin=[(4, (0b0011, 0b0101, 0b1010, 0b1100))], population=10,
            reaches_tight_bound=True, minimizers_tight=True))
        code, out, _ = run_cli(["dmin", "--m", "4", "--d", "1"])
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["min"] == 4
        assert data["argmin"] == [SQUARE]
        assert data["population"] == 10

    def test_oracle_on_inputs(self, run_cli):
        code, out, _ = run_cli(["verify", "--oracle"], f"{PENTAGON}\n{SQUARE}\n")
        assert code == EXIT_OK
        assert out.strip() == "oracle: ok"

    def test_oracle_disagreement(self, run_cli, mocker):
        square = SimplicialComplex.from_facets(4, [(1, 2), (1, 3), (2, 4), (3, 4)])
        oracle = mocker.patch.object(AnalysisService, "random_oracle",
                                     return_value=[(square, [Disagreement(1, 4, 2, 3)])])
        code, out, _ = run_cli(["verify", "--oracle", "--random", "5", "--seed", "9", "--m", "4"])
        oracle.assert_called_once_with(4, 5, 9)
        assert code == EXIT_MISMATCH
        assert f"{SQUARE}: beta^(1,4) hochster=2 taylor=3" in out
        assert "oracle: 1 complex(es) disagree" in out

    def test_exhaustive_oracle(self, run_cli, mocker):
        oracle = mocker.patch.object(AnalysisService, "exhaustive_oracle", return_value=[])
        code, _, _ = run_cli(["verify", "--oracle", "--exhaustive", "3"])
        oracle.assert_called_once_with(3)
        assert code == EXIT_OK

    def test_classification_problems(self, run_cli, mocker):
        report = ClassificationReport(QQ_FIELD, checked=5, tight=2, problems=["m=2; facets=(1),(2): wrong"])
        check = mocker.patch.object(AnalysisService, "verify_classification", return_value=report)
        code, out, _ = run_cli(["verify", "--classification", "4", "--random", "20"])
        check.assert_called_once_with(4, samples=20, seed=0)
        assert code == EXIT_MISMATCH
        assert out.splitlines()[-1] == "5 complexes, 2 tight over Q: 1 problem(s)"

    def test_structure(self, run_cli, mocker):
        mocker.patch.object(AnalysisService, "verify_structure", return_value=[])
        code, out, _ = run_cli(["verify", "--structure", "3"])
        assert code == EXIT_OK
        assert out.strip() == "structure up to m=3: ok"

    def test_table1_ok(self, run_cli, mocker):
        mocker.patch.object(AnalysisService, "table1", return_value=[])
        code, out, _ = run_cli(["table1"])
        assert code == EXIT_OK
        assert out.strip() == "table1: ok"

    def test_table1_mismatch(self, run_cli, mocker):
        mocker.patch.object(AnalysisService, "table1", return_value=["3_1: missing from the census"])
        code, out, _ = run_cli(["table1", "--m", "3"])
        assert code == EXIT_MISMATCH
        assert out.splitlines() == ["3_1: missing from the census", "table1: 1 mismatch(es)"]


class AsciiConsole(StringIO):
    """A stdout that cannot encode anything outside ASCII."""

    def write(self, text):
        text.encode("ascii")
        return super().write(text)


class TestAsciiConsole:

    @pytest.fixture
    def cli(self, tmp_path, mocker):
        cli = TightsrCLI(QQ_FIELD, data_dir=str(tmp_path))
        cli.service = mocker.Mock()
        cli.service.read_complexes.return_value = [SimplicialComplex.irrelevant()]
        return cli

    def test_classify_falls_back_to_ascii_names(self, cli, monkeypatch):
        cli.service.classify.return_value = (TightDecomposition(1, (2, 2)), 4, 4)
        console = AsciiConsole()
        monkeypatch.setattr("sys.stdin", StringIO("m=0; facets=()"))
        monkeypatch.setattr("sys.stdout", console)
        assert cli.cmd_classify(argparse.Namespace()) == EXIT_OK
        assert console.getvalue() == "tight: D^[1] * dD^[2] * dD^[2]\n"

    def test_not_tight_is_replaced(self, cli, monkeypatch):
        cli.service.classify.return_value = (NotTight((1, 2), (2, 3)), 12, 8)
        console = AsciiConsole()
        monkeypatch.setattr("sys.stdin", StringIO("m=0; facets=()"))
        monkeypatch.setattr("sys.stdout", console)
        cli.cmd_classify(argparse.Namespace())
        assert console.getvalue() == "not tight (D?=12, bound=8)\n"
