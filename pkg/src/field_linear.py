"""
Exact linear algebra over Q and F_p, and reduced simplicial homology.

Matrices are thin wrappers around sympy's ``DomainMatrix`` so ranks and
nullspaces are computed exactly in the chosen domain. Chain complexes are
augmented: degree -1 is spanned by the empty face.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from sympy import Matrix as SympyMatrix
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .complex_core import Mask, SimplicialComplex, bit_positions, mask_of, popcount, vertices_of
from .errors import NotASubcomplex
from .models import FieldSpec, HomotopyProfile, ProfileKind, QQ_FIELD

LOGGER = logging.getLogger(__name__)


def domain_for(field_spec: FieldSpec):
    return QQ if field_spec.is_rational else GF(field_spec.p)


@dataclass
class Matrix:
    """Sparse integer matrix whose rank and nullspace are taken over a field."""

    rows: int
    cols: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def to_domain_matrix(self, field_spec: FieldSpec) -> DomainMatrix:
        dense = SympyMatrix.zeros(self.rows, self.cols)
        for (r, c), value in self.entries.items():
            dense[r, c] = value
        return DomainMatrix.from_Matrix(dense).convert_to(domain_for(field_spec))

    def rank(self, field_spec: FieldSpec = QQ_FIELD) -> int:
        if not self.entries or self.rows == 0 or self.cols == 0:
            return 0
        return self.to_domain_matrix(field_spec).rank()

    def nullspace(self, field_spec: FieldSpec = QQ_FIELD) -> List[List[object]]:
        """Basis of the kernel as a list of column-length vectors of domain elements."""
        domain = domain_for(field_spec)
        if self.cols == 0:
            return []
        if not self.entries or self.rows == 0:
            return [
                [domain.one if k == c else domain.zero for k in range(self.cols)]
                for c in range(self.cols)
            ]
        basis = self.to_domain_matrix(field_spec).nullspace()
        rows = basis.to_Matrix().tolist()
        return [[domain.from_sympy(value) for value in row] for row in rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: Dict[int, Dict[int, int]] = {}
        for (r, c), value in other.entries.items():
            by_row.setdefault(r, {})[c] = value
        product: Dict[Tuple[int, int], int] = {}
        for (r, k), value in self.entries.items():
            for c, other_value in by_row.get(k, {}).items():
                product[(r, c)] = product.get((r, c), 0) + value * other_value
        return Matrix(self.rows, other.cols, {key: v for key, v in product.items() if v})

    def is_zero(self, field_spec: FieldSpec = QQ_FIELD) -> bool:
        if field_spec.is_rational:
            return not any(self.entries.values())
        return all(value % field_spec.p == 0 for value in self.entries.values())


def boundary_sign(face: Mask, position: int) -> int:
    """(-1)^k where k is the index of ``position`` among the vertices of ``face``."""
    below = face & ((1 << position) - 1)
    return -1 if popcount(below) % 2 else 1


def boundary_matrix(domain_faces: Sequence[Mask], target_faces: Sequence[Mask]) -> Matrix:
    """Boundary from ``domain_faces`` (degree n) to ``target_faces`` (degree n-1)."""
    index = {face: row for row, face in enumerate(target_faces)}
    entries = {}
    for col, face in enumerate(domain_faces):
        for position in bit_positions(face):
            row = index.get(face & ~(1 << position))
            if row is not None:
                entries[(row, col)] = boundary_sign(face, position)
    return Matrix(len(target_faces), len(domain_faces), entries)


def boundary_matrices(complex_: SimplicialComplex, field_spec: FieldSpec = QQ_FIELD) -> List[Matrix]:
    """[∂_0, ∂_1, ..., ∂_dim] of the augmented chain complex; ∂_0 is the augmentation."""
    groups = complex_.faces_by_dimension
    return [boundary_matrix(groups[n], groups[n - 1]) for n in range(0, complex_.dim + 1)]


def _is_cone(complex_: SimplicialComplex) -> bool:
    apex = complex_.full_mask
    for f in complex_.facets:
        apex &= f
    return apex != 0


@lru_cache(maxsize=200_000)
def reduced_betti(complex_: SimplicialComplex, field_spec: FieldSpec = QQ_FIELD) -> Tuple[int, ...]:
    """Reduced Betti numbers indexed by degree n + 1, for n = -1 .. dim."""
    size = complex_.dim + 2
    if complex_.is_irrelevant:
        return (1,)
    if _is_cone(complex_):
        return (0,) * size
    groups = complex_.faces_by_dimension
    ranks = [0] * (complex_.dim + 2)
    for n in range(0, complex_.dim + 1):
        ranks[n] = boundary_matrix(groups[n], groups[n - 1]).rank(field_spec)
    betti = []
    for n in range(-1, complex_.dim + 1):
        kernel = len(groups[n]) - (ranks[n] if n >= 0 else 0)
        image = ranks[n + 1] if n + 1 <= complex_.dim else 0
        betti.append(kernel - image)
    return tuple(betti)


def reduced_betti_map(complex_: SimplicialComplex, field_spec: FieldSpec = QQ_FIELD) -> Dict[int, int]:
    """Nonzero reduced Betti numbers keyed by degree."""
    return {n - 1: b for n, b in enumerate(reduced_betti(complex_, field_spec)) if b}


def total_reduced_betti(complex_: SimplicialComplex, field_spec: FieldSpec = QQ_FIELD) -> int:
    return sum(reduced_betti(complex_, field_spec))


def homotopy_profile(complex_: SimplicialComplex, field_spec: FieldSpec = QQ_FIELD) -> HomotopyProfile:
    betti = reduced_betti(complex_, field_spec)
    nonzero = [(n - 1, b) for n, b in enumerate(betti) if b]
    if not nonzero:
        return HomotopyProfile(ProfileKind.ACYCLIC)
    if len(nonzero) == 1 and nonzero[0][1] == 1:
        return HomotopyProfile(ProfileKind.SPHERE, dimension=nonzero[0][0])
    # drop the degree -1 slot, which is 0 for every m >= 1 complex
    return HomotopyProfile(ProfileKind.OTHER, betti=tuple(betti[1:]))


def _map_face(face: Mask, embedding: Mapping[int, int]) -> Tuple[Mask, int]:
    """Image of a face under a vertex map and the orientation sign it picks up."""
    images = [embedding[v] for v in vertices_of(face)]
    inversions = sum(1 for a in range(len(images)) for b in range(a + 1, len(images))
                     if images[a] > images[b])
    return mask_of(images), (-1 if inversions % 2 else 1)


def induced_map_ranks(
    source: SimplicialComplex,
    target: SimplicialComplex,
    embedding: Mapping[int, int],
    field_spec: FieldSpec = QQ_FIELD,
) -> Dict[int, Tuple[int, int]]:
    """For each degree n, (rank of H̃_n(source) -> H̃_n(target), dim H̃_n(target)).

    ``embedding`` maps source vertices to target vertices (1-based, injective).

    Raises:
        NotASubcomplex: some face of ``source`` does not land in ``target``
    """
    for v in source.vertices():
        if v not in embedding:
            raise NotASubcomplex(f"Vertex {v} of the subcomplex has no image")
    for f in source.facets:
        image, _ = _map_face(f, embedding)
        if not target.is_face_mask(image):
            raise NotASubcomplex(f"Face {list(vertices_of(f))} maps outside the target")

    source_groups = source.faces_by_dimension
    target_groups = target.faces_by_dimension
    target_betti = reduced_betti(target, field_spec)
    domain = domain_for(field_spec)

    result = {}
    for n in range(-1, target.dim + 1):
        homology = target_betti[n + 1]
        if homology == 0:
            result[n] = (0, 0)
            continue
        if n > source.dim:
            result[n] = (0, homology)
            continue

        # cycles of the source, pushed forward into the target face basis
        if n == -1:
            cycles = [[domain.one]]
        else:
            cycles = boundary_matrix(source_groups[n], source_groups[n - 1]).nullspace(field_spec)
        target_index = {face: row for row, face in enumerate(target_groups[n])}
        pushed = []
        for cycle in cycles:
            vector = [domain.zero] * len(target_groups[n])
            for face, coefficient in zip(source_groups[n], cycle):
                if coefficient == domain.zero:
                    continue
                image, sign = _map_face(face, embedding)
                vector[target_index[image]] += coefficient if sign > 0 else -coefficient
            pushed.append(vector)

        if n + 1 <= target.dim:
            boundaries = boundary_matrix(target_groups[n + 1], target_groups[n])
            boundary_dm = boundaries.to_domain_matrix(field_spec)
            boundary_rank = boundaries.rank(field_spec)
            boundary_columns = boundary_dm.to_Matrix().T.tolist()
            boundary_rows = [[domain.from_sympy(x) for x in row] for row in boundary_columns]
        else:
            boundary_rank = 0
            boundary_rows = []

        stacked = boundary_rows + pushed
        if stacked:
            combined = DomainMatrix(stacked, (len(stacked), len(target_groups[n])), domain)
            combined_rank = combined.rank()
        else:
            combined_rank = 0
        result[n] = (combined_rank - boundary_rank, homology)
    return result


def induced_surjective(
    source: SimplicialComplex,
    target: SimplicialComplex,
    embedding: Mapping[int, int],
    field_spec: FieldSpec = QQ_FIELD,
) -> bool:
    """True iff inclusion induces a surjection on reduced homology in every degree."""
    ranks = induced_map_ranks(source, target, embedding, field_spec)
    return all(rank == homology for rank, homology in ranks.values())
