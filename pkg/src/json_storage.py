import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .facet_format import format_record
from .models import BettiTable, CensusRecord
from .storage import CensusStore

LOGGER = logging.getLogger(__name__)


def _index_order(index: str) -> Tuple[int, ...]:
    """``5_12`` sorts after ``5_2``."""
    try:
        return tuple(int(part) for part in index.split("_"))
    except ValueError:
        return (1 << 30,)


class JSONStorage(CensusStore):
    """Flat-file census store.

    ``census.json`` is the sidecar with one object per row keyed by index;
    ``census.facets`` mirrors it as facet-format lines and is rewritten on
    every save. Betti tables live in ``tables.json``.
    """

    def __init__(self, data_dir: str = "data"):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.census_file = self.data_dir / "census.json"
        self.facets_file = self.data_dir / "census.facets"
        self.tables_file = self.data_dir / "tables.json"

    def save_records(self, records: List[CensusRecord]) -> None:
        rows = self._load_rows()
        for record in records:
            rows[record.index] = record.to_dict()
        self._write_rows(rows)

    def load_record(self, index: str) -> Optional[CensusRecord]:
        data = self._load_rows().get(index)
        if data:
            return CensusRecord.from_dict(data)
        return None

    def load_records(self, m: Optional[int] = None) -> List[CensusRecord]:
        records = [CensusRecord.from_dict(data) for data in self._load_rows().values()]
        if m is not None:
            records = [record for record in records if record.m == m]
        return sorted(records, key=lambda r: _index_order(r.index))

    def delete_records(self, m: int) -> int:
        rows = self._load_rows()
        doomed = [index for index, data in rows.items() if data.get("m") == m]
        for index in doomed:
            del rows[index]
        if doomed:
            self._write_rows(rows)
        return len(doomed)

    def search_records(self, f_vector: Optional[Tuple[int, ...]] = None,
                       mdim: Optional[int] = None) -> List[CensusRecord]:
        matching = []
        for record in self.load_records():
            if f_vector is not None and record.f_vector != tuple(f_vector):
                continue
            if mdim is not None and record.mdim != mdim:
                continue
            matching.append(record)
        return matching

    def save_table(self, name: str, table: BettiTable) -> None:
        tables = self._load_json(self.tables_file)
        tables[name] = table.to_dict()
        with open(self.tables_file, "w", encoding="utf-8") as f:
            json.dump(tables, f, indent=2)

    def load_table(self, name: str) -> Optional[BettiTable]:
        data = self._load_json(self.tables_file).get(name)
        if data is None:
            return None
        try:
            return BettiTable.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            LOGGER.warning("Ignoring malformed table '%s' in %s: %s", name, self.tables_file, e)
            return None

    def _write_rows(self, rows: Dict[str, Dict[str, Any]]) -> None:
        with open(self.census_file, "w", encoding="utf-8") as f:
            json.dump(rows, f, indent=2)
        ordered = sorted(rows.values(), key=lambda data: _index_order(data["index"]))
        with open(self.facets_file, "w", encoding="utf-8") as f:
            for data in ordered:
                f.write(format_record(CensusRecord.from_dict(data)) + "\n")

    def _load_rows(self) -> Dict[str, Dict[str, Any]]:
        return self._load_json(self.census_file)

    def _load_json(self, path: Path) -> Dict[str, Any]:
        """Load a JSON object from disk; missing or corrupt files read as empty."""
        if not path.exists():
            return {}
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (json.JSONDecodeError, FileNotFoundError, UnicodeDecodeError) as e:
            LOGGER.warning("Ignoring unreadable %s: %s", path, e)
            return {}
        if not isinstance(data, dict):
            LOGGER.warning("Ignoring %s: expected a JSON object", path)
            return {}
        return data
