"""
Text facet format: one complex per line.

    m=<int>; facets=(a,b,c),(d,e),...

Vertices are 1-based and ``m=0; facets=()`` is the irrelevant complex {∅}.
Fixture lines may carry extra ``key=value`` fields, e.g.
``index=4_2; m=4; facets=(1,2,3),(4); f=[4,3,1]; mdim=0``.
Blank lines and lines starting with ``#`` are ignored.
"""

import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from .complex_core import SimplicialComplex
from .errors import FacetFormatError
from .models import DEFAULT_LIMITS, CensusRecord, Limits

GOLDEN_TABLE1 = Path(__file__).parent / "data" / "table1.golden"

_FACE = re.compile(r"\(([^()]*)\)")
_FACETS = re.compile(r"^(\(\s*\d+(\s*,\s*\d+)*\s*\)\s*,\s*)*\(\s*\d+(\s*,\s*\d+)*\s*\)$")


def _split_fields(line: str) -> Dict[str, str]:
    fields = {}
    for part in line.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise FacetFormatError(f"Expected key=value, got '{part}'")
        key, value = part.split("=", 1)
        key = key.strip()
        if key in fields:
            raise FacetFormatError(f"Duplicate field '{key}'")
        fields[key] = value.strip()
    return fields


def _parse_int(value: str, name: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise FacetFormatError(f"Field '{name}' must be an integer, got '{value}'")


def _parse_int_list(value: str, name: str) -> Tuple[int, ...]:
    if not (value.startswith("[") and value.endswith("]")):
        raise FacetFormatError(f"Field '{name}' must look like [a,b,...], got '{value}'")
    inner = value[1:-1].strip()
    if not inner:
        return ()
    return tuple(_parse_int(item.strip(), name) for item in inner.split(","))


def parse_facets(value: str) -> List[Tuple[int, ...]]:
    """``(1,2),(3)`` -> [(1, 2), (3,)]; ``()`` -> []."""
    value = value.strip()
    if value in ("", "()"):
        return []
    if not _FACETS.match(value):
        raise FacetFormatError(f"Malformed facet list '{value}'")
    return [tuple(int(v) for v in face.split(",")) for face in _FACE.findall(value)]


def parse_fields(line: str) -> Tuple[int, List[Tuple[int, ...]], Dict[str, str]]:
    """Split a line into m, the facet list and any extra fields."""
    fields = _split_fields(line)
    for required in ("m", "facets"):
        if required not in fields:
            raise FacetFormatError(f"Missing field '{required}' in '{line.strip()}'")
    m = _parse_int(fields.pop("m"), "m")
    facets = parse_facets(fields.pop("facets"))
    return m, facets, fields


def parse_line(line: str, limits: Limits = DEFAULT_LIMITS) -> SimplicialComplex:
    """Parse one complex.

    Raises:
        FacetFormatError: the text is not in facet format
        BadVertex, GhostVertex, TooLarge: the facets do not describe a complex on [m]
    """
    m, facets, _ = parse_fields(line)
    if m == 0:
        if facets:
            raise FacetFormatError("m=0 only allows the empty facet list")
        return SimplicialComplex.irrelevant()
    return SimplicialComplex.from_facets(m, facets, limits)


def content_lines(text: str) -> Iterable[str]:
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield stripped


def parse_text(text: str, limits: Limits = DEFAULT_LIMITS) -> List[SimplicialComplex]:
    return [parse_line(line, limits) for line in content_lines(text)]


def format_complex(complex_: SimplicialComplex) -> str:
    return complex_.to_text()


def format_record(record: CensusRecord) -> str:
    facets = ",".join("(" + ",".join(map(str, face)) + ")" for face in record.facets)
    parts = [
        f"index={record.index}",
        f"m={record.m}",
        f"facets={facets or '()'}",
        "f=[" + ",".join(map(str, record.f_vector)) + "]",
        f"mdim={record.mdim}",
    ]
    if record.d_value is not None:
        parts.append(f"d={record.d_value}")
    return "; ".join(parts)


def parse_record(line: str) -> CensusRecord:
    """Parse a fixture line with ``index``, ``f`` and ``mdim`` fields."""
    m, facets, fields = parse_fields(line)
    for required in ("index", "f", "mdim"):
        if required not in fields:
            raise FacetFormatError(f"Missing field '{required}' in fixture line '{line.strip()}'")
    d_value: Optional[int] = None
    if "d" in fields:
        d_value = _parse_int(fields["d"], "d")
    return CensusRecord(
        index=fields["index"],
        m=m,
        facets=tuple(facets),
        f_vector=_parse_int_list(fields["f"], "f"),
        mdim=_parse_int(fields["mdim"], "mdim"),
        d_value=d_value,
    )


def load_records(path: Path = GOLDEN_TABLE1) -> List[CensusRecord]:
    with open(path, "r", encoding="utf-8") as f:
        return [parse_record(line) for line in content_lines(f.read())]
