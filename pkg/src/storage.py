from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

from .models import BettiTable, CensusRecord


class CensusStore(ABC):
    """Abstract interface for persisting census rows and Betti tables."""

    @abstractmethod
    def save_records(self, records: List[CensusRecord]) -> None:
        """Save or replace census rows, keyed by their index."""
        pass

    @abstractmethod
    def load_record(self, index: str) -> Optional[CensusRecord]:
        """Load a single row by index, e.g. ``4_2``."""
        pass

    @abstractmethod
    def load_records(self, m: Optional[int] = None) -> List[CensusRecord]:
        """Load all rows, or the rows with ``m`` vertices, in table order."""
        pass

    @abstractmethod
    def delete_records(self, m: int) -> int:
        """Delete every row with ``m`` vertices. Returns the number removed."""
        pass

    @abstractmethod
    def search_records(self, f_vector: Optional[Tuple[int, ...]] = None,
                       mdim: Optional[int] = None) -> List[CensusRecord]:
        """Rows matching an f-vector and/or an mdim."""
        pass

    @abstractmethod
    def save_table(self, name: str, table: BettiTable) -> None:
        """Save a Betti table under a name."""
        pass

    @abstractmethod
    def load_table(self, name: str) -> Optional[BettiTable]:
        """Load a Betti table saved under a name."""
        pass
