from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Any
import json

from sympy import isprime

from .errors import BadField


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (p = 0) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and (self.p < 2 or not isprime(self.p)):
            raise BadField(f"{self.p} is not a prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q`` or ``Fp:<p>``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls.rationals()
        if text.startswith("Fp:"):
            try:
                return cls.prime(int(text[3:]))
            except ValueError:
                raise BadField(f"Invalid prime in field spec '{text}'")
        raise BadField(f"Unknown field '{text}' (expected Q or Fp:<prime>)")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"


QQ_FIELD = FieldSpec.rationals()
GF2_FIELD = FieldSpec.prime(2)


@dataclass(frozen=True)
class Limits:
    """Size caps shared by the library entry points."""

    max_vertices: int = 32
    max_canonical: int = 8
    max_generators: int = 20
    max_enumeration: int = 6
    max_exhaustive: int = 5
    max_hochster: int = 20
    # complexes rebuilt from minimal non-faces (doubling) scan all 2^m subsets
    max_rebuild: int = 24


DEFAULT_LIMITS = Limits()


class ProfileKind(Enum):
    ACYCLIC = "acyclic"
    SPHERE = "sphere"
    OTHER = "other"


@dataclass(frozen=True)
class HomotopyProfile:
    """Homology-level shape of a complex: acyclic, a homology n-sphere, or other."""

    kind: ProfileKind
    dimension: Optional[int] = None
    betti: Tuple[int, ...] = ()

    @property
    def is_sphere(self) -> bool:
        return self.kind is ProfileKind.SPHERE

    @property
    def is_acyclic(self) -> bool:
        return self.kind is ProfileKind.ACYCLIC

    def __str__(self) -> str:
        if self.kind is ProfileKind.ACYCLIC:
            return "Acyclic"
        if self.kind is ProfileKind.SPHERE:
            return f"HomologySphere({self.dimension})"
        return f"Other({list(self.betti)})"


@dataclass
class BettiTable:
    """Sparse bigraded Betti table; ``entries[(i, j)]`` is beta^{-i,2j}.

    Only nonzero entries are stored. The factor 2 of the internal grading is
    implicit and only appears in printed and serialized labels.
    """

    m: int
    field: FieldSpec
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {key: value for key, value in self.entries.items() if value}

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def add(self, i: int, j: int, value: int) -> None:
        if value:
            self.entries[(i, j)] = self.entries.get((i, j), 0) + value

    def row_sum(self, i: int) -> int:
        return sum(value for (row, _), value in self.entries.items() if row == i)

    def row_sums(self) -> List[int]:
        """beta^{-i} for i = 0 .. largest nonzero row."""
        if not self.entries:
            return []
        top = max(i for i, _ in self.entries)
        return [self.row_sum(i) for i in range(top + 1)]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def same_values(self, other: "BettiTable") -> bool:
        return self.entries == other.entries

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "field": str(self.field),
            "entries": [
                {"i": i, "2j": 2 * j, "beta": value}
                for (i, j), value in sorted(self.entries.items())
            ],
            "row_sums": self.row_sums(),
            "total": self.total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BettiTable":
        entries = {}
        for item in data["entries"]:
            if item["2j"] % 2:
                raise ValueError(f"Odd internal degree in Betti entry {item}")
            entries[(item["i"], item["2j"] // 2)] = item["beta"]
        return cls(m=data["m"], field=FieldSpec.parse(data["field"]), entries=entries)

    @classmethod
    def from_json(cls, text: str) -> "BettiTable":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        # Macaulay2-style layout: columns i, rows j - i
        if not self.entries:
            return "(empty table)"
        columns = max(i for i, _ in self.entries) + 1
        rows = max(j - i for i, j in self.entries) + 1
        width = max(3, max(len(str(v)) for v in self.entries.values()) + 1,
                    len(str(self.total)) + 1)
        lines = ["       " + "".join(f"{i:>{width}}" for i in range(columns))]
        lines.append("total: " + "".join(f"{self.row_sum(i):>{width}}" for i in range(columns)))
        for row in range(rows):
            cells = []
            for i in range(columns):
                value = self.get(i, i + row)
                cells.append(f"{value if value else '.':>{width}}")
            lines.append(f"{row:>5}: " + "".join(cells))
        return "\n".join(lines)


@dataclass(frozen=True)
class TightnessReport:
    d_value: int
    m: int
    mdim: int
    dim: int
    is_weakly_tight: bool
    is_tight: bool
    sphere_subset_count: int
    field: FieldSpec = QQ_FIELD

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "field": str(self.field),
            "d_value": self.d_value,
            "dim": self.dim,
            "mdim": self.mdim,
            "weakly_tight": self.is_weakly_tight,
            "tight": self.is_tight,
            "sphere_subset_count": self.sphere_subset_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True)
class TightDecomposition:
    """Normal form Delta^[r] * dDelta^[n1] * ... of a tight complex."""

    r: int
    blocks: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("simplex part must be nonnegative")
        # dDelta^[1] is the irrelevant complex and does not change a join
        object.__setattr__(self, "blocks", tuple(sorted(n for n in self.blocks if n > 1)))

    @property
    def m(self) -> int:
        return self.r + sum(self.blocks)

    def describe(self, ascii_only: bool = False) -> str:
        simplex, sphere = ("D", "dD") if ascii_only else ("Δ", "∂Δ")
        factors = []
        if self.r or not self.blocks:
            factors.append(f"{simplex}^[{self.r}]")
        factors.extend(f"{sphere}^[{n}]" for n in self.blocks)
        return " * ".join(factors)


@dataclass(frozen=True)
class Proposition:
    """Outcome of one checkable inequality or equality."""

    name: str
    holds: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "ok" if self.holds else "VIOLATED"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


def all_hold(results: List[Proposition]) -> bool:
    return all(result.holds for result in results)


def failures(results: List[Proposition]) -> List[Proposition]:
    return [result for result in results if not result.holds]


@dataclass(frozen=True)
class CensusRecord:
    """One isomorphism class of a census, in the columns of a published table."""

    index: str
    m: int
    facets: Tuple[Tuple[int, ...], ...]
    f_vector: Tuple[int, ...]
    mdim: int
    d_value: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "index": self.index,
            "m": self.m,
            "facets": [list(face) for face in self.facets],
            "f_vector": list(self.f_vector),
            "mdim": self.mdim,
        }
        if self.d_value is not None:
            data["d_value"] = self.d_value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CensusRecord":
        return cls(
            index=data["index"],
            m=data["m"],
            facets=tuple(tuple(face) for face in data["facets"]),
            f_vector=tuple(data["f_vector"]),
            mdim=data["mdim"],
            d_value=data.get("d_value"),
        )
