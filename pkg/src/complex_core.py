"""
Finite abstract simplicial complexes on the ground set [m].

Faces are stored as integer bitmasks: vertex ``v`` (1-based) is bit ``v - 1``.
A complex is the immutable pair (m, facet antichain); every face query is
answered from the facets, and the full face set is only materialized on
demand for chain-complex work.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BadArity, BadVertex, GhostVertex, NotAFace, TooLarge
from .models import DEFAULT_LIMITS, Limits

LOGGER = logging.getLogger(__name__)

Mask = int
IsoClassKey = Tuple[int, Tuple[Mask, ...]]

# permutation tables are precomputed up to this ground-set size
_TABLE_LIMIT = 6


def mask_of(vertices: Iterable[int]) -> Mask:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask: Mask) -> Tuple[int, ...]:
    """1-based vertices of a bitmask, increasing."""
    result = []
    index = 1
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return tuple(result)


def bit_positions(mask: Mask) -> List[int]:
    """0-based bit indices of a bitmask, increasing."""
    return [v - 1 for v in vertices_of(mask)]


def popcount(mask: Mask) -> int:
    return bin(mask).count("1")


def submasks(mask: Mask) -> Iterable[Mask]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def maximal_masks(masks: Iterable[Mask]) -> Tuple[Mask, ...]:
    """Inclusion-maximal elements of a family of sets, sorted."""
    unique = sorted(set(masks), key=lambda f: (-popcount(f), f))
    kept: List[Mask] = []
    for candidate in unique:
        if not any(candidate & ~other == 0 for other in kept):
            kept.append(candidate)
    return tuple(sorted(kept))


def compress(mask: Mask, support: Mask) -> Mask:
    """Relabel ``mask`` (a subset of ``support``) order-preservingly onto 0..|support|-1."""
    result = 0
    for k, position in enumerate(bit_positions(support)):
        if mask >> position & 1:
            result |= 1 << k
    return result


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex with vertex set exactly [m] given by its facets.

    The irrelevant complex {∅} is the only value with m = 0; its facet tuple
    is ``(0,)``.
    """

    m: int
    facets: Tuple[Mask, ...]

    # construction

    @classmethod
    def from_facets(
        cls,
        m: int,
        faces: Iterable[Iterable[int]],
        limits: Limits = DEFAULT_LIMITS,
    ) -> "SimplicialComplex":
        """Build a complex from any generating family of faces over [m].

        Raises:
            BadVertex: a face mentions an index outside 1..m
            GhostVertex: some vertex of [m] lies in no face
            TooLarge: m exceeds the configured ground-set cap
        """
        if m < 0:
            raise BadVertex(f"Ground set size must be nonnegative, got {m}")
        if m > limits.max_vertices:
            raise TooLarge(f"m = {m} exceeds the ground-set cap {limits.max_vertices}")

        masks = []
        for face in faces:
            face = tuple(face)
            for v in face:
                if not isinstance(v, int) or not 1 <= v <= m:
                    raise BadVertex(f"Vertex {v!r} is outside 1..{m}")
            masks.append(mask_of(face))

        covered = 0
        for mask in masks:
            covered |= mask
        full = (1 << m) - 1
        if covered != full:
            missing = vertices_of(full & ~covered)
            raise GhostVertex(f"Vertices {list(missing)} lie in no facet")

        return cls._build(m, masks)

    @classmethod
    def from_masks(cls, m: int, masks: Iterable[Mask]) -> "SimplicialComplex":
        return cls.from_facets(m, [vertices_of(mask) for mask in masks])

    @classmethod
    def _build(cls, m: int, masks: Iterable[Mask]) -> "SimplicialComplex":
        facets = maximal_masks(masks)
        if not facets:
            facets = (0,)
        return cls(m, facets)

    @classmethod
    def irrelevant(cls) -> "SimplicialComplex":
        return cls(0, (0,))

    @classmethod
    def from_minimal_non_faces(
        cls, m: int, non_faces: Iterable[Mask], limits: Limits = DEFAULT_LIMITS
    ) -> "SimplicialComplex":
        """The largest complex on [m] avoiding every set in ``non_faces``."""
        cap = min(limits.max_vertices, limits.max_rebuild)
        if m > cap:
            raise TooLarge(f"m = {m} exceeds the rebuild cap {cap} (Limits.max_rebuild)")
        non_faces = list(non_faces)
        faces = [
            mask for mask in range(1 << m)
            if not any(n & ~mask == 0 for n in non_faces)
        ]
        return cls._build(m, faces)

    # basic queries

    @property
    def full_mask(self) -> Mask:
        return (1 << self.m) - 1

    @property
    def is_irrelevant(self) -> bool:
        return self.m == 0

    @cached_property
    def dim(self) -> int:
        return max(popcount(f) for f in self.facets) - 1

    @cached_property
    def mdim(self) -> int:
        return min(popcount(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return self.dim == self.mdim

    def vertices(self) -> Tuple[int, ...]:
        return tuple(range(1, self.m + 1))

    def facet_sets(self) -> List[Tuple[int, ...]]:
        """Facets as sorted vertex tuples, ordered by size then lexicographically."""
        return sorted((vertices_of(f) for f in self.facets), key=lambda t: (len(t), t))

    def is_face_mask(self, mask: Mask) -> bool:
        return any(mask & ~f == 0 for f in self.facets)

    def is_face(self, vertices: Iterable[int]) -> bool:
        return self.is_face_mask(mask_of(vertices))

    @cached_property
    def faces(self) -> frozenset:
        """Every face as a bitmask, the empty face included."""
        result = set()
        for f in self.facets:
            result.update(submasks(f))
        return frozenset(result)

    @cached_property
    def faces_by_dimension(self) -> Dict[int, List[Mask]]:
        """Faces grouped by dimension (-1 .. dim), each list in increasing vertex order."""
        groups: Dict[int, List[Mask]] = {d: [] for d in range(-1, self.dim + 1)}
        for face in self.faces:
            groups[popcount(face) - 1].append(face)
        for d in groups:
            groups[d].sort(key=vertices_of)
        return groups

    def f_vector(self) -> List[int]:
        return [len(self.faces_by_dimension[d]) for d in range(0, self.dim + 1)]

    def v_mdim(self) -> Tuple[int, ...]:
        """Vertices lying on some facet of minimal dimension."""
        mask = 0
        for f in self.facets:
            if popcount(f) - 1 == self.mdim:
                mask |= f
        return vertices_of(mask)

    def components(self) -> List[Mask]:
        """Vertex sets of the connected components."""
        remaining = [f for f in self.facets if f]
        parts: List[Mask] = []
        while remaining:
            part = remaining.pop()
            grown = True
            while grown:
                grown = False
                for f in list(remaining):
                    if f & part:
                        part |= f
                        remaining.remove(f)
                        grown = True
            parts.append(part)
        return sorted(parts)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.m:
            raise BadVertex(f"Vertex {v!r} is outside 1..{self.m}")

    def _check_vertices(self, vertices: Iterable[int]) -> Mask:
        vertices = list(vertices)
        for v in vertices:
            self._check_vertex(v)
        return mask_of(vertices)

    # subcomplexes

    def restricted_masks(self, subset: Mask) -> Tuple[Mask, ...]:
        """Facets of the full subcomplex on ``subset``, in the original labels."""
        return maximal_masks(f & subset for f in self.facets)

    def full_subcomplex_mask(self, subset: Mask) -> "SimplicialComplex":
        if subset == 0:
            return SimplicialComplex.irrelevant()
        facets = [compress(f, subset) for f in self.restricted_masks(subset)]
        return SimplicialComplex._build(popcount(subset), facets)

    def full_subcomplex(self, vertices: Iterable[int]) -> "SimplicialComplex":
        """K|_J relabeled order-preservingly onto [|J|]."""
        return self.full_subcomplex_mask(self._check_vertices(vertices))

    def delete_vertex(self, v: int) -> "SimplicialComplex":
        self._check_vertex(v)
        return self.full_subcomplex_mask(self.full_mask & ~(1 << (v - 1)))

    def _face_mask(self, sigma: Iterable[int]) -> Mask:
        mask = self._check_vertices(sigma)
        if not self.is_face_mask(mask):
            raise NotAFace(f"{list(vertices_of(mask))} is not a face")
        return mask

    def link_masks(self, sigma: Iterable[int]) -> Tuple[Mask, ...]:
        """Facets of link_K sigma in the original labels."""
        s = self._face_mask(sigma)
        return tuple(sorted(f & ~s for f in self.facets if f & s == s))

    def link_vertex_mask(self, sigma: Iterable[int]) -> Mask:
        mask = 0
        for f in self.link_masks(sigma):
            mask |= f
        return mask

    def star_masks(self, sigma: Iterable[int]) -> Tuple[Mask, ...]:
        s = self._face_mask(sigma)
        return tuple(f for f in self.facets if f & s == s)

    def star_vertex_mask(self, sigma: Iterable[int]) -> Mask:
        mask = 0
        for f in self.star_masks(sigma):
            mask |= f
        return mask

    def link(self, sigma: Iterable[int] = ()) -> "SimplicialComplex":
        return compact(self.link_masks(sigma))

    def star(self, sigma: Iterable[int]) -> "SimplicialComplex":
        return compact(self.star_masks(sigma))

    def contains_masks(self, masks: Iterable[Mask]) -> bool:
        return all(self.is_face_mask(mask) for mask in masks)

    # constructions

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        shift = self.m
        facets = [f | (g << shift) for f in self.facets for g in other.facets]
        return SimplicialComplex._build(self.m + other.m, facets)

    def cone(self) -> "SimplicialComplex":
        return self.join(simplex(1))

    def disjoint_union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        if self.is_irrelevant:
            return other
        if other.is_irrelevant:
            return self
        facets = list(self.facets) + [g << self.m for g in other.facets]
        return SimplicialComplex._build(self.m + other.m, facets)

    def relabel(self, permutation: Sequence[int]) -> "SimplicialComplex":
        """Apply the vertex bijection i -> permutation[i - 1]."""
        if sorted(permutation) != list(range(1, self.m + 1)):
            raise BadVertex(f"{list(permutation)} is not a permutation of 1..{self.m}")
        table = [1 << (p - 1) for p in permutation]
        facets = []
        for f in self.facets:
            image = 0
            for position in bit_positions(f):
                image |= table[position]
            facets.append(image)
        return SimplicialComplex._build(self.m, facets)

    @cached_property
    def minimal_non_face_masks(self) -> Tuple[Mask, ...]:
        candidates = set()
        for face in self.faces:
            for position in range(self.m):
                bit = 1 << position
                if not face & bit:
                    candidates.add(face | bit)
        result = []
        for candidate in candidates:
            if self.is_face_mask(candidate):
                continue
            if all(self.is_face_mask(candidate & ~(1 << p)) for p in bit_positions(candidate)):
                result.append(candidate)
        return tuple(sorted(result, key=lambda n: (popcount(n), vertices_of(n))))

    def minimal_non_faces(self) -> List[Tuple[int, ...]]:
        return [vertices_of(n) for n in self.minimal_non_face_masks]

    def simplicial_wedge(self, v: int) -> "SimplicialComplex":
        """K(v): vertex v becomes the edge {v, m+1}.

        Facets through v are extended by the new vertex; every facet of K minus v
        is coned off by each of the two copies.
        """
        self._check_vertex(v)
        old = 1 << (v - 1)
        new = 1 << self.m
        facets = [f | new for f in self.facets if f & old]
        for g in maximal_masks(f & ~old for f in self.facets):
            facets.extend((g | old, g | new))
        return SimplicialComplex._build(self.m + 1, facets)

    def doubling(self, multiplicities: Sequence[int], limits: Limits = DEFAULT_LIMITS) -> "SimplicialComplex":
        """K(J): vertex i is blown up into multiplicities[i-1] consecutive copies.

        Minimal non-faces of K(J) are exactly the blown-up minimal non-faces of K.

        Raises:
            BadArity: wrong number of multiplicities or one below 1
            TooLarge: the sum of multiplicities exceeds ``limits.max_rebuild``
        """
        multiplicities = list(multiplicities)
        if len(multiplicities) != self.m:
            raise BadArity(f"Expected {self.m} multiplicities, got {len(multiplicities)}")
        if any(not isinstance(j, int) or j < 1 for j in multiplicities):
            raise BadArity(f"Multiplicities must be positive integers: {multiplicities}")
        if self.m == 0:
            return self

        blocks = []
        offset = 0
        for j in multiplicities:
            blocks.append(((1 << j) - 1) << offset)
            offset += j
        blown_up = []
        for n in self.minimal_non_face_masks:
            mask = 0
            for position in bit_positions(n):
                mask |= blocks[position]
            blown_up.append(mask)
        return SimplicialComplex.from_minimal_non_faces(offset, blown_up, limits)

    # isomorphism

    def canonical_key(self, limits: Limits = DEFAULT_LIMITS) -> IsoClassKey:
        """Lexicographically least sorted facet tuple over all vertex permutations."""
        if self.m > limits.max_canonical:
            raise TooLarge(f"m = {self.m} exceeds the canonical-form cap {limits.max_canonical}")
        return self.m, min(
            tuple(sorted(image)) for image in _permuted_facets(self.m, self.facets)
        )

    def canonical_form(self, limits: Limits = DEFAULT_LIMITS) -> "SimplicialComplex":
        m, facets = self.canonical_key(limits)
        return SimplicialComplex(m, facets)

    def is_canonical(self, limits: Limits = DEFAULT_LIMITS) -> bool:
        """True when no relabeling gives a smaller sorted facet tuple."""
        if self.m > limits.max_canonical:
            raise TooLarge(f"m = {self.m} exceeds the canonical-form cap {limits.max_canonical}")
        for image in _permuted_facets(self.m, self.facets):
            if tuple(sorted(image)) < self.facets:
                return False
        return True

    def is_isomorphic(self, other: "SimplicialComplex", limits: Limits = DEFAULT_LIMITS) -> bool:
        if self.m != other.m or len(self.facets) != len(other.facets):
            return False
        if self.f_vector() != other.f_vector():
            return False
        return self.canonical_key(limits) == other.canonical_key(limits)

    # text form

    def to_text(self) -> str:
        if self.is_irrelevant:
            return "m=0; facets=()"
        facets = ",".join("(" + ",".join(map(str, face)) + ")" for face in self.facet_sets())
        return f"m={self.m}; facets={facets}"

    def __str__(self) -> str:
        return self.to_text()


@lru_cache(maxsize=None)
def _permutation_tables(m: int) -> Tuple[Tuple[Mask, ...], ...]:
    tables = []
    for perm in itertools.permutations(range(m)):
        table = []
        for mask in range(1 << m):
            image = 0
            for position in range(m):
                if mask >> position & 1:
                    image |= 1 << perm[position]
            table.append(image)
        tables.append(tuple(table))
    return tuple(tables)


def _permuted_facets(m: int, facets: Tuple[Mask, ...]) -> Iterable[List[Mask]]:
    if m <= _TABLE_LIMIT:
        for table in _permutation_tables(m):
            yield [table[f] for f in facets]
        return
    for perm in itertools.permutations(range(m)):
        images = []
        for f in facets:
            image = 0
            for position in bit_positions(f):
                image |= 1 << perm[position]
            images.append(image)
        yield images


def compact(masks: Iterable[Mask]) -> SimplicialComplex:
    """Turn a facet family with arbitrary labels into a complex on its own vertices."""
    masks = maximal_masks(masks)
    support = 0
    for f in masks:
        support |= f
    if support == 0:
        return SimplicialComplex.irrelevant()
    return SimplicialComplex._build(popcount(support), [compress(f, support) for f in masks])


def simplex(m: int) -> SimplicialComplex:
    """Δ^[m]; Δ^[0] is the irrelevant complex."""
    if m < 0:
        raise BadVertex(f"Simplex size must be nonnegative, got {m}")
    if m == 0:
        return SimplicialComplex.irrelevant()
    return SimplicialComplex(m, ((1 << m) - 1,))


def boundary_simplex(m: int) -> SimplicialComplex:
    """∂Δ^[m]; ∂Δ^[1] is the irrelevant complex."""
    if m < 1:
        raise BadVertex(f"Boundary of a simplex needs m >= 1, got {m}")
    if m == 1:
        return SimplicialComplex.irrelevant()
    full = (1 << m) - 1
    return SimplicialComplex._build(m, [full & ~(1 << p) for p in range(m)])


def sphere_join(r: int, blocks: Iterable[int]) -> SimplicialComplex:
    """Δ^[r] * ∂Δ^[n1] * ... * ∂Δ^[nk]."""
    result = simplex(r)
    for n in blocks:
        result = result.join(boundary_simplex(n))
    return result


def irrelevant_complex() -> SimplicialComplex:
    return SimplicialComplex.irrelevant()


def are_isomorphic(first: SimplicialComplex, second: SimplicialComplex,
                   limits: Limits = DEFAULT_LIMITS) -> bool:
    return first.is_isomorphic(second, limits)


def canonical_key(complex_: SimplicialComplex, limits: Limits = DEFAULT_LIMITS) -> IsoClassKey:
    return complex_.canonical_key(limits)


PairKey = Tuple[int, Tuple[Mask, ...], Tuple[Mask, ...]]


def pair_canonical_key(
    ambient: SimplicialComplex, sub_masks: Iterable[Mask], limits: Limits = DEFAULT_LIMITS
) -> PairKey:
    """Canonical key of (Y, L) under relabelings applied to both at once.

    ``sub_masks`` are facets of a subcomplex of ``ambient`` in its labels.
    """
    if ambient.m > limits.max_canonical:
        raise TooLarge(f"m = {ambient.m} exceeds the canonical-form cap {limits.max_canonical}")
    sub = maximal_masks(sub_masks) or (0,)
    split = len(ambient.facets)
    best = None
    for image in _permuted_facets(ambient.m, ambient.facets + sub):
        candidate = (tuple(sorted(image[:split])), tuple(sorted(image[split:])))
        if best is None or candidate < best:
            best = candidate
    return (ambient.m,) + best
