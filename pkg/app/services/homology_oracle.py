"""
Desk-scale homological oracles for squarefree monomial ideals.

Everything is exact and over the rationals: boundary-matrix ranks come from
sympy's `DomainMatrix` over QQ. Graded Betti numbers use Hochster's formula
(one reduced-homology computation per vertex subset), Cohen-Macaulayness
uses Reisner's criterion (vanishing homology of every link below its
dimension). Both are exponential in the number of variables and guarded by
configurable caps.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from app.core.config import settings
from app.core.limits import ensure_within
from app.services.alexander import minimal_transversals
from app.services.ideal_core import Universe, VarId
from app.services.polarization import SquarefreeIdeal

logger = logging.getLogger(__name__)

Face = Tuple[VarId, ...]


class VoidComplexError(ValueError):
    """The unit ideal has no Stanley-Reisner complex (not even the empty face)."""


def _maximal(faces: Iterable[FrozenSet[VarId]]) -> Tuple[FrozenSet[VarId], ...]:
    kept: List[FrozenSet[VarId]] = []
    for face in sorted(set(faces), key=lambda f: (-len(f), sorted(f))):
        if not any(face <= k for k in kept):
            kept.append(face)
    return tuple(sorted(kept, key=lambda f: (len(f), sorted(f))))


@dataclass(frozen=True)
class SimplicialComplex:
    """
    A complex on a ground set, given by its facets. No facets at all is the
    void complex; the single facet {} is the complex holding only the empty face.
    """

    vertices: Tuple[VarId, ...]
    facets: Tuple[FrozenSet[VarId], ...] = field(default=())

    @classmethod
    def from_faces(cls, vertices: Iterable[VarId], faces: Iterable[Iterable[VarId]]) -> "SimplicialComplex":
        return cls(tuple(sorted(set(vertices))), _maximal(frozenset(f) for f in faces))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @cached_property
    def faces(self) -> Dict[int, List[Face]]:
        """Faces by dimension, the empty face at dimension -1."""
        seen = set()
        for facet in self.facets:
            members = sorted(facet)
            for size in range(len(members) + 1):
                seen.update(combinations(members, size))
        by_dim: Dict[int, List[Face]] = defaultdict(list)
        for face in sorted(seen, key=lambda f: (len(f), f)):
            by_dim[len(face) - 1].append(face)
        return dict(by_dim)

    @property
    def dimension(self) -> int:
        return max(self.faces, default=-2)

    def f_vector(self) -> List[int]:
        """Face counts for dimensions -1..dim."""
        return [len(self.faces.get(d, [])) for d in range(-1, self.dimension + 1)]

    def contains(self, face: Iterable[VarId]) -> bool:
        face = frozenset(face)
        return any(face <= facet for facet in self.facets)


def restrict(complex_: SimplicialComplex, subset: Iterable[VarId]) -> SimplicialComplex:
    """The induced subcomplex on `subset`."""
    ground = frozenset(subset)
    if complex_.is_void:
        return SimplicialComplex(tuple(sorted(ground)))
    return SimplicialComplex(
        tuple(sorted(ground)), _maximal(facet & ground for facet in complex_.facets)
    )


def link(complex_: SimplicialComplex, face: Iterable[VarId]) -> SimplicialComplex:
    face = frozenset(face)
    remaining = [facet - face for facet in complex_.facets if face <= facet]
    ground = tuple(v for v in complex_.vertices if v not in face)
    return SimplicialComplex(ground, _maximal(remaining))


def _rank(matrix: List[List[int]], rows: int, cols: int) -> int:
    if rows == 0 or cols == 0:
        return 0
    return DomainMatrix([[QQ(x) for x in row] for row in matrix], (rows, cols), QQ).rank()


def _boundary_rank(complex_: SimplicialComplex, dim: int) -> int:
    """Rank of the boundary map from dim-faces to (dim-1)-faces (dim >= 0)."""
    upper = complex_.faces.get(dim, [])
    lower = complex_.faces.get(dim - 1, [])
    if not upper or not lower:
        return 0
    row_of = {face: k for k, face in enumerate(lower)}
    matrix = [[0] * len(upper) for _ in lower]
    for col, face in enumerate(upper):
        for k in range(len(face)):
            matrix[row_of[face[:k] + face[k + 1:]]][col] = -1 if k % 2 else 1
    return _rank(matrix, len(lower), len(upper))


def reduced_homology_ranks(
    complex_: SimplicialComplex, max_vertices: Optional[int] = None
) -> List[int]:
    """
    Ranks of reduced rational homology in dimensions -1..dim. The void
    complex has no chain groups and returns [].
    """
    ensure_within(
        "complex vertices", len(complex_.vertices), max_vertices or settings.HOMOLOGY_MAX_VERTICES
    )
    if complex_.is_void:
        return []
    if len(complex_.facets) == 1 and complex_.facets[0]:
        # A simplex is acyclic.
        return [0] * (len(complex_.facets[0]) + 1)
    top = complex_.dimension
    ranks = {d: _boundary_rank(complex_, d) for d in range(0, top + 2)}
    return [
        len(complex_.faces.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        for d in range(-1, top + 1)
    ]


def euler_characteristic(complex_: SimplicialComplex) -> int:
    """Reduced Euler characteristic from face counts (empty face included)."""
    return sum((-1) ** d * n for d, n in enumerate(complex_.f_vector(), start=-1))


def stanley_reisner(ideal: SquarefreeIdeal) -> SimplicialComplex:
    """The complex of all subsets of the universe containing no generator."""
    if ideal.is_unit:
        raise VoidComplexError("the unit ideal has no Stanley-Reisner complex")
    ground = ideal.universe.variables()
    everything = frozenset(ground)
    # Faces avoid every generator, so maximal faces are complements of minimal transversals.
    facets = (everything - t for t in minimal_transversals(ideal.supports()))
    return SimplicialComplex(tuple(ground), _maximal(facets))


def minimal_nonfaces(complex_: SimplicialComplex) -> List[FrozenSet[VarId]]:
    ground = frozenset(complex_.vertices)
    return minimal_transversals([ground - facet for facet in complex_.facets])


def stanley_reisner_ideal(complex_: SimplicialComplex, universe: Universe) -> SquarefreeIdeal:
    return SquarefreeIdeal.from_supports(universe, minimal_nonfaces(complex_))


def alexander_dual_complex(complex_: SimplicialComplex) -> SimplicialComplex:
    """{V \\ F : F not a face}, given by its facets (complements of minimal nonfaces)."""
    ground = frozenset(complex_.vertices)
    return SimplicialComplex(
        complex_.vertices, _maximal(ground - n for n in minimal_nonfaces(complex_))
    )


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers keyed by (homological index i, internal degree d)."""

    entries: Dict[Tuple[int, int], int]

    def __post_init__(self) -> None:
        for key, value in self.entries.items():
            if value <= 0:
                raise ValueError(f"Betti entry {key} must be stored only when positive")

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def to_json_map(self) -> Dict[str, int]:
        return {f"{i},{d}": n for (i, d), n in sorted(self.entries.items())}

    @classmethod
    def from_json_map(cls, data: Dict[str, int]) -> "BettiTable":
        entries = {}
        for key, n in data.items():
            i, d = (int(part) for part in key.split(","))
            entries[(i, d)] = n
        return cls(entries)

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((d - i for i, d in self.entries), default=0)

    def render_grid(self) -> str:
        """Rows are internal degrees, columns homological indices."""
        if not self.entries:
            return "(zero table)"
        columns = range(self.projective_dimension + 1)
        degrees = sorted({d for _, d in self.entries})
        width = max(len(str(n)) for n in self.entries.values()) + 1
        header = "d\\i".rjust(4) + "".join(str(i).rjust(width + 1) for i in columns)
        lines = [header]
        for d in degrees:
            cells = "".join(
                (str(self[(i, d)]) if self[(i, d)] else ".").rjust(width + 1) for i in columns
            )
            lines.append(f"{d:>4}{cells}")
        return "\n".join(lines)


def graded_betti(
    ideal: SquarefreeIdeal,
    max_vertices: Optional[int] = None,
    homology_max_vertices: Optional[int] = None,
) -> BettiTable:
    """
    Hochster: beta_{i,|W|} = sum over vertex subsets W of
    dim H~_{|W|-i-2}(Delta restricted to W).
    """
    ground = ideal.universe.variables()
    ensure_within("Betti universe size", len(ground), max_vertices or settings.BETTI_MAX_VERTICES)
    if ideal.is_unit:
        return BettiTable({(0, 0): 1})
    complex_ = stanley_reisner(ideal)
    entries: Dict[Tuple[int, int], int] = defaultdict(int)
    for size in range(len(ground) + 1):
        for subset in combinations(ground, size):
            ranks = reduced_homology_ranks(restrict(complex_, subset), homology_max_vertices)
            for dim, rank in enumerate(ranks, start=-1):
                i = size - dim - 2
                if rank and i >= 0:
                    entries[(i, size)] += rank
    logger.debug(f"Betti table over {len(ground)} variables: {dict(entries)}")
    return BettiTable(dict(entries))


def is_linear(table: BettiTable, start: int) -> bool:
    """Every entry (i, d) sits on the strand d = start + i."""
    return all(d == start + i for i, d in table.entries)


def has_linear_resolution(ideal: SquarefreeIdeal, max_vertices: Optional[int] = None) -> bool:
    if ideal.is_zero:
        return True
    degrees = {gen.degree for gen in ideal.generators}
    if len(degrees) != 1:
        return False
    (start,) = degrees
    return is_linear(graded_betti(ideal, max_vertices), start)


def is_cm_reisner(
    ideal: SquarefreeIdeal,
    max_vertices: Optional[int] = None,
    homology_max_vertices: Optional[int] = None,
) -> bool:
    """Every link (the whole complex included) has no homology below its dimension."""
    ground = ideal.universe.variables()
    ensure_within("Reisner universe size", len(ground), max_vertices or settings.BETTI_MAX_VERTICES)
    if ideal.is_unit:
        # Trivial curve: the zero ring counts as Cohen-Macaulay.
        return True
    complex_ = stanley_reisner(ideal)
    for faces in complex_.faces.values():
        for face in faces:
            ranks = reduced_homology_ranks(link(complex_, face), homology_max_vertices)
            if any(ranks[:-1]):
                logger.debug(f"link of {face} has homology below its dimension: {ranks}")
                return False
    return True
