"""
Storage of census runs: the facet lines of every class plus a JSON sidecar.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List

from ..facet_format import format_record, parse_record
from ..errors import FacetFormatError
from ..models import CensusRecord
from .census import Census

LOGGER = logging.getLogger(__name__)


class CensusRunStorage:
    """Handles saving and reloading census runs."""

    def __init__(self, base_dir: str = "data/census"):
        """
        Initialize run storage.

        Args:
            base_dir: Directory to store census runs
        """
        self.base_dir = Path(base_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def save_run(self, census: Census, config: Dict[str, Any]) -> str:
        """
        Save a census as ``<run_id>.facets`` and ``<run_id>.json``.

        Args:
            census: The enumerated census
            config: Parameters of the run (m_max, mode, route, ...)

        Returns:
            Path to the JSON sidecar
        """
        records = census.all_records()
        run_id = config.get("id", f"census_{datetime.now().strftime('%Y%m%d_%H%M%S')}")
        sidecar = {
            "run_metadata": {
                "run_id": run_id,
                "timestamp": datetime.now().isoformat(),
                "field": str(census.field_spec),
                "config": config,
            },
            "records": [record.to_dict() for record in records],
            "summary": self._generate_summary(records),
        }

        facets_path = self.base_dir / f"{run_id}.facets"
        with open(facets_path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(format_record(record) + "\n")

        sidecar_path = self.base_dir / f"{run_id}.json"
        with open(sidecar_path, "w", encoding="utf-8") as f:
            json.dump(sidecar, f, indent=2, ensure_ascii=False)

        LOGGER.info("Saved %d census rows to %s", len(records), sidecar_path)
        return str(sidecar_path)

    def load_run(self, run_id: str) -> List[CensusRecord]:
        """Rows of a saved run. Falls back to the facet lines when the sidecar
        is missing or unreadable; returns [] when neither can be read."""
        sidecar_path = self.base_dir / f"{run_id}.json"
        try:
            with open(sidecar_path, "r", encoding="utf-8") as f:
                data = json.load(f)
            return [CensusRecord.from_dict(item) for item in data["records"]]
        except FileNotFoundError:
            LOGGER.warning("No sidecar for run %s", run_id)
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            LOGGER.warning("Corrupt sidecar %s: %s", sidecar_path, e)

        facets_path = self.base_dir / f"{run_id}.facets"
        try:
            with open(facets_path, "r", encoding="utf-8") as f:
                return [parse_record(line) for line in f if line.strip()]
        except (FileNotFoundError, FacetFormatError) as e:
            LOGGER.warning("Cannot read facet lines of run %s: %s", run_id, e)
            return []

    def list_runs(self) -> List[str]:
        return sorted(path.stem for path in self.base_dir.glob("*.json"))

    def _generate_summary(self, records: List[CensusRecord]) -> Dict[str, Any]:
        """Counts per vertex number and per mdim."""
        if not records:
            return {"total_classes": 0, "counts_by_m": {}}

        counts_by_m: Dict[int, int] = {}
        counts_by_mdim: Dict[int, int] = {}
        for record in records:
            counts_by_m[record.m] = counts_by_m.get(record.m, 0) + 1
            counts_by_mdim[record.mdim] = counts_by_mdim.get(record.mdim, 0) + 1

        largest = max(records, key=lambda r: r.d_value or 0)
        return {
            "total_classes": len(records),
            "counts_by_m": {str(m): n for m, n in sorted(counts_by_m.items())},
            "counts_by_mdim": {str(d): n for d, n in sorted(counts_by_mdim.items())},
            "largest_d_value": largest.d_value,
        }
