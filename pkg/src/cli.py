#!/usr/bin/env python3
"""
tightsr CLI Interface

Command-line interface over the AnalysisService. Complexes are read in facet
format, one per line, from stdin or ``--in FILE``.

Exit codes: 0 success, 1 oracle or golden mismatch, 2 usage error,
3 violated mathematical precondition.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from .analysis_service import AnalysisService, NoInputError
from .complex_core import SimplicialComplex
from .errors import FacetFormatError, TightSRError
from .facet_format import format_record
from .json_storage import JSONStorage
from .models import DEFAULT_LIMITS, FieldSpec, Limits

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class TightsrCLI:
    """Command-line interface for complex analysis."""

    def __init__(self, field_spec: FieldSpec, limits: Limits = DEFAULT_LIMITS, jobs: int = 1,
                 progress: bool = False, data_dir: str = "data", input_path: Optional[str] = None):
        self.storage = JSONStorage(data_dir)
        self.service = AnalysisService(self.storage, field_spec, limits, jobs, progress)
        self.input_path = input_path

    def run(self, args: argparse.Namespace) -> int:
        """Dispatch one parsed command and map errors to exit codes."""
        handler = getattr(self, f"cmd_{args.command}")
        try:
            return handler(args)
        except (FacetFormatError, NoInputError) as e:
            print(f"{type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_USAGE
        except TightSRError as e:
            print(f"{type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_PRECONDITION
        except ValueError as e:
            print(f"ValueError: {e}", file=sys.stderr)
            return EXIT_USAGE

    def _read_input(self) -> str:
        if self.input_path:
            with open(self.input_path, "r", encoding="utf-8") as f:
                return f.read()
        return sys.stdin.read()

    def _complexes(self, minimum: int = 1) -> List[SimplicialComplex]:
        return self.service.read_complexes(self._read_input(), minimum)

    def _print(self, text: str, fallback: Optional[str] = None) -> None:
        """Print ``text``; consoles that cannot encode it get ``fallback`` or a
        replaced version."""
        try:
            print(text)
        except UnicodeEncodeError:
            print(fallback if fallback is not None else self._safe_console_text(text))

    def _safe_console_text(self, text: str) -> str:
        """Convert text to console-safe encoding, replacing problematic characters."""
        return text.encode("ascii", errors="replace").decode("ascii")

    def cmd_betti(self, args: argparse.Namespace) -> int:
        for complex_ in self._complexes():
            table = self.service.betti(complex_)
            self._print(str(table) if args.table else table.to_json())
        return EXIT_OK

    def cmd_total(self, args: argparse.Namespace) -> int:
        for complex_ in self._complexes():
            self._print(str(self.service.total(complex_)))
        return EXIT_OK

    def cmd_check(self, args: argparse.Namespace) -> int:
        for complex_ in self._complexes():
            self._print(self.service.check(complex_).to_json())
        return EXIT_OK

    def cmd_classify(self, args: argparse.Namespace) -> int:
        for complex_ in self._complexes():
            decomposition, d_value, bound = self.service.classify(complex_)
            if not decomposition:
                self._print(f"not tight (D̃={d_value}, bound={bound})")
                continue
            self._print(f"tight: {decomposition.describe()}",
                        fallback=f"tight: {decomposition.describe(ascii_only=True)}")
        return EXIT_OK

    def cmd_enumerate(self, args: argparse.Namespace) -> int:
        census = self.service.enumerate(args.m, mode=args.mode, route=args.route,
                                        save=args.save, run_dir=args.out)
        for record in census.all_records():
            self._print(format_record(record))
        counts = " ".join(f"{m}:{n}" for m, n in census.counts().items())
        print(f"classes per m: {counts}", file=sys.stderr)
        return EXIT_OK

    def cmd_dmin(self, args: argparse.Namespace) -> int:
        result = self.service.dmin(args.m, args.d)
        self._print(json.dumps({
            "m": args.m,
            "d": args.d,
            "population": result.population,
            "min": result.min_value,
            "argmin": [SimplicialComplex(m, facets).to_text() for m, facets in result.argmin],
            "reaches_tight_bound": result.reaches_tight_bound,
            "minimizers_tight": result.minimizers_tight,
        }, ensure_ascii=False))
        return EXIT_OK

    def cmd_germ(self, args: argparse.Namespace) -> int:
        for complex_ in self._complexes():
            filtration, lengths = self.service.germ(complex_)
            for position, step in enumerate(filtration.steps, start=1):
                sub = ",".join("(" + ",".join(map(str, face)) + ")"
                               for face in SimplicialComplex(step.ambient.m, step.sub).facet_sets())
                self._print(f"step {position}: Y: {step.ambient.to_text()} | L: {sub or '()'}"
                            f" | v={step.vertex} r={step.r}")
            self._print(f"lengths: {sorted(lengths)}")
        return EXIT_OK

    def cmd_wedge(self, args: argparse.Namespace) -> int:
        multiplicities = None
        if args.multiplicities:
            multiplicities = [int(part) for part in args.multiplicities.split(",")]
        for complex_ in self._complexes():
            self._print(self.service.wedge(complex_, args.vertex, multiplicities).to_text())
        return EXIT_OK

    def cmd_join(self, args: argparse.Namespace) -> int:
        self._print(self.service.join(self._complexes()).to_text())
        return EXIT_OK

    def cmd_verify(self, args: argparse.Namespace) -> int:
        if args.oracle:
            return self._verify_oracle(args)
        if args.classification is not None:
            report = self.service.verify_classification(args.classification, samples=args.random,
                                                        seed=args.seed)
            for problem in report.problems:
                self._print(problem)
            self._print(report.summary())
            return EXIT_OK if report.ok else EXIT_MISMATCH

        failed = self.service.verify_structure(args.structure)
        for complex_, propositions in failed:
            for proposition in propositions:
                self._print(f"{complex_.to_text()}: {proposition}")
        self._print(f"structure up to m={args.structure}: "
                    + ("ok" if not failed else f"{len(failed)} complex(es) with violations"))
        return EXIT_MISMATCH if failed else EXIT_OK

    def _verify_oracle(self, args: argparse.Namespace) -> int:
        if args.random is not None:
            found = self.service.random_oracle(args.m, args.random, args.seed)
        elif args.exhaustive is not None:
            found = self.service.exhaustive_oracle(args.exhaustive)
        else:
            found = self.service.oracle(self._complexes())
        for complex_, disagreements in found:
            for d in disagreements:
                self._print(f"{complex_.to_text()}: beta^({d.i},{d.two_j}) "
                            f"hochster={d.hochster_value} taylor={d.taylor_value}")
        self._print("oracle: ok" if not found else f"oracle: {len(found)} complex(es) disagree")
        return EXIT_MISMATCH if found else EXIT_OK

    def cmd_table1(self, args: argparse.Namespace) -> int:
        problems = self.service.table1(args.m)
        for problem in problems:
            self._print(problem)
        self._print("table1: ok" if not problems else f"table1: {len(problems)} mismatch(es)")
        return EXIT_MISMATCH if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tightsr",
        description="tightsr - Betti numbers and tightness of Stanley-Reisner rings",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  echo "m=5; facets=(1,2),(2,3),(3,4),(4,5),(1,5)" | %(prog)s betti --table
  echo "m=0; facets=()" | %(prog)s check
  %(prog)s --field Fp:2 --in complexes.txt classify
  %(prog)s enumerate --m 5 --out data/census
  %(prog)s dmin --m 5 --d 1
  %(prog)s --jobs 4 verify --oracle --random 200 --seed 7
  %(prog)s verify --classification 5
  %(prog)s table1
        """
    )
    parser.add_argument("--field", default="Q", help="Coefficient field: Q or Fp:<prime> (default: Q)")
    parser.add_argument("--in", dest="input_path", help="Read complexes from FILE instead of stdin")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes for sweeps (default: 1)")
    parser.add_argument("--max-generators", type=int, default=DEFAULT_LIMITS.max_generators,
                        help=f"Cap on minimal non-faces for the Taylor oracle (default: {DEFAULT_LIMITS.max_generators})")
    parser.add_argument("--data-dir", default="data", help="Census store directory (default: data)")
    parser.add_argument("--progress", action="store_true", help="Show progress bars for sweeps")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    subparsers.required = True

    betti_parser = subparsers.add_parser("betti", help="Bigraded Betti table as JSON")
    betti_parser.add_argument("--table", action="store_true", help="Print the table as text instead")

    subparsers.add_parser("total", help="Total Betti number D~")
    subparsers.add_parser("check", help="Tightness report as JSON")
    subparsers.add_parser("classify", help="Sphere-join normal form of a tight complex")

    enumerate_parser = subparsers.add_parser("enumerate", help="Census of weakly tight complexes")
    enumerate_parser.add_argument("--m", type=int, required=True, help="Largest number of vertices")
    enumerate_parser.add_argument("--mode", choices=["shortcut", "cond2"], default="shortcut",
                                  help="Germ filter (default: shortcut)")
    enumerate_parser.add_argument("--route", choices=["germs", "essential"], default="germs",
                                  help="Construction route (default: germs)")
    enumerate_parser.add_argument("--save", action="store_true", help="Store rows in the census store")
    enumerate_parser.add_argument("--out", help="Export the run as facet lines plus JSON to DIR")

    dmin_parser = subparsers.add_parser("dmin", help="Minimum of D~ over complexes of given dimension")
    dmin_parser.add_argument("--m", type=int, required=True, help="Number of vertices")
    dmin_parser.add_argument("--d", type=int, required=True, help="Dimension")

    subparsers.add_parser("germ", help="Germ filtration of a weakly tight complex")

    wedge_parser = subparsers.add_parser("wedge", help="Simplicial wedge or doubling")
    wedge_group = wedge_parser.add_mutually_exclusive_group()
    wedge_group.add_argument("--vertex", type=int, help="Vertex to wedge at (default: 1)")
    wedge_group.add_argument("--multiplicities", help="Comma-separated multiplicities j1,...,jm")

    subparsers.add_parser("join", help="Join of all input complexes")

    verify_parser = subparsers.add_parser("verify", help="Oracle, classification and structure sweeps")
    verify_group = verify_parser.add_mutually_exclusive_group(required=True)
    verify_group.add_argument("--oracle", action="store_true", help="Hochster against the Taylor resolution")
    verify_group.add_argument("--classification", type=int, metavar="M",
                              help="Tight classification on all complexes with at most M vertices")
    verify_group.add_argument("--structure", type=int, metavar="M",
                              help="Inequalities and structure results up to M vertices")
    verify_parser.add_argument("--random", type=int, metavar="N", help="Use N random complexes instead")
    verify_parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    verify_parser.add_argument("--m", type=int, default=6, help="Vertices of random oracle samples (default: 6)")
    verify_parser.add_argument("--exhaustive", type=int, metavar="M",
                               help="Oracle over all complexes with at most M vertices")

    table1_parser = subparsers.add_parser("table1", help="Regenerate the census and diff against the golden rows")
    table1_parser.add_argument("--m", type=int, default=5, help="Largest number of vertices (default: 5)")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        field_spec = FieldSpec.parse(args.field)
    except TightSRError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE

    limits = Limits(max_generators=args.max_generators)
    cli = TightsrCLI(field_spec, limits, jobs=args.jobs, progress=args.progress,
                     data_dir=args.data_dir, input_path=args.input_path)
    return cli.run(args)


if __name__ == "__main__":
    sys.exit(main())
