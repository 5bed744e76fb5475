"""
Exact monomial and monomial-ideal arithmetic over a declared variable universe.

Monomials are immutable sorted tuples of (variable, exponent) pairs; ideals
keep a minimal generating set in canonical order (graded, then lexicographic
with a < b < c < d and copy indices ascending), so two ideals are equal
exactly when their generator tuples are equal.
"""

from __future__ import annotations

import logging
import string
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from app.models.schemas import TETRAHEDRON_EDGES, ExponentVector, PairExponents

logger = logging.getLogger(__name__)


class InvalidPrimeError(ValueError):
    """Raised for a pair prime (u, v) with u == v."""


class UniverseMismatchError(ValueError):
    """Raised when combining ideals over different base variables."""


class VarId(NamedTuple):
    base: int
    copy: int = 1


@dataclass(frozen=True)
class Universe:
    """
    Base variable names plus, for polarized rings, the number of copies of
    each base variable. `copies is None` marks an unpolarized ring.
    """

    names: Tuple[str, ...]
    copies: Optional[Tuple[int, ...]] = None

    @classmethod
    def standard(cls, n: int) -> "Universe":
        """a, b, c, d for n <= 4; x1..xn beyond."""
        if n <= 4:
            return cls(tuple(string.ascii_lowercase[:n]))
        return cls(tuple(f"x{k}" for k in range(1, n + 1)))

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def polarized(self) -> bool:
        return self.copies is not None

    def with_copies(self, copies: Iterable[int]) -> "Universe":
        return Universe(self.names, tuple(copies))

    def copy_count(self, base: int) -> int:
        return 1 if self.copies is None else self.copies[base]

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(
            VarId(base, copy)
            for base in range(self.size)
            for copy in range(1, self.copy_count(base) + 1)
        )

    def contains(self, var: VarId) -> bool:
        return 0 <= var.base < self.size and 1 <= var.copy <= self.copy_count(var.base)

    def join(self, other: "Universe") -> "Universe":
        """Smallest universe containing both (copy counts are maxima)."""
        if self.names != other.names:
            raise UniverseMismatchError(f"variables {self.names} vs {other.names}")
        if self.copies is None and other.copies is None:
            return self
        return Universe(
            self.names,
            tuple(max(self.copy_count(b), other.copy_count(b)) for b in range(self.size)),
        )

    def render(self, var: VarId) -> str:
        name = self.names[var.base]
        if not self.polarized:
            return name
        return f"{name}{var.copy}" if len(name) == 1 else f"{name}_{var.copy}"


@dataclass(frozen=True)
class Monomial:
    """A monomial as sorted (variable, positive exponent) pairs; () is 1."""

    exps: Tuple[Tuple[VarId, int], ...] = ()

    def __post_init__(self) -> None:
        for var, exponent in self.exps:
            if exponent <= 0:
                raise ValueError(f"stored exponent of {var} must be positive, got {exponent}")

    @classmethod
    def of(cls, exponents: Mapping[VarId, int]) -> "Monomial":
        return cls(tuple(sorted((v, e) for v, e in exponents.items() if e != 0)))

    @classmethod
    def from_support(cls, support: Iterable[VarId]) -> "Monomial":
        """The squarefree monomial with the given support."""
        return cls(tuple((v, 1) for v in sorted(set(support))))

    @cached_property
    def _map(self) -> Dict[VarId, int]:
        return dict(self.exps)

    @cached_property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @cached_property
    def support(self) -> frozenset:
        return frozenset(v for v, _ in self.exps)

    @property
    def is_one(self) -> bool:
        return not self.exps

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def exponent(self, var: VarId) -> int:
        return self._map.get(var, 0)

    def divides(self, other: "Monomial") -> bool:
        if self.degree > other.degree:
            return False
        theirs = other._map
        return all(theirs.get(v, 0) >= e for v, e in self.exps)

    def lcm(self, other: "Monomial") -> "Monomial":
        merged = dict(self._map)
        for v, e in other.exps:
            if e > merged.get(v, 0):
                merged[v] = e
        return Monomial.of(merged)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = dict(self._map)
        for v, e in other.exps:
            merged[v] = merged.get(v, 0) + e
        return Monomial.of(merged)

    @cached_property
    def sort_key(self) -> Tuple[int, Tuple[Tuple[VarId, int], ...]]:
        # Graded first; within a degree, larger exponents of earlier variables first.
        return self.degree, tuple((v, -e) for v, e in self.exps)


# Squarefree monomials are monomials whose exponents are all 1.
SquarefreeMonomial = Monomial


def minimalize(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Drop every monomial divisible by another one; canonical order."""
    kept: List[Monomial] = []
    for mono in sorted(set(gens), key=lambda m: m.sort_key):
        if not any(k.divides(mono) for k in kept):
            kept.append(mono)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Minimal generators over a universe. The unit ideal is generated by the
    single monomial 1; the zero ideal has no generators.
    """

    universe: Universe
    generators: Tuple[Monomial, ...] = field(default=())

    def __post_init__(self) -> None:
        for gen in self.generators:
            for var in gen.support:
                if not self.universe.contains(var):
                    raise ValueError(f"generator variable {var} is outside the universe")

    @classmethod
    def from_generators(cls, universe: Universe, gens: Iterable[Monomial]) -> "MonomialIdeal":
        return cls(universe, minimalize(gens))

    @classmethod
    def unit(cls, universe: Universe) -> "MonomialIdeal":
        return cls(universe, (Monomial(),))

    @classmethod
    def zero(cls, universe: Universe) -> "MonomialIdeal":
        return cls(universe, ())

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_one

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.generators)

    def rebase(self, universe: Universe) -> "MonomialIdeal":
        return type(self)(universe, self.generators)

    def render(self) -> str:
        return render_ideal(self)


def contains(ideal: MonomialIdeal, mono: Monomial) -> bool:
    return any(gen.divides(mono) for gen in ideal.generators)


def intersect(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    """I ∩ J, generated by the pairwise lcms of the generators."""
    universe = left.universe.join(right.universe)
    if left.is_unit:
        return right.rebase(universe)
    if right.is_unit:
        return left.rebase(universe)
    lcms = {f.lcm(g) for f in left.generators for g in right.generators}
    return type(left).from_generators(universe, lcms)


def pair_prime_power(
    u: VarId, v: VarId, p: int, universe: Optional[Universe] = None
) -> MonomialIdeal:
    """(u, v)^p; the unit ideal for p = 0."""
    if u == v:
        raise InvalidPrimeError(f"pair prime needs two distinct variables, got {u} twice")
    if p < 0:
        raise ValueError(f"power must be nonnegative, got {p}")
    universe = universe or Universe.standard(max(4, u.base + 1, v.base + 1))
    if p == 0:
        return MonomialIdeal.unit(universe)
    gens = (Monomial.of({u: t, v: p - t}) for t in range(p + 1))
    return MonomialIdeal.from_generators(universe, gens)


def _intersect_all(universe: Universe, components: Iterable[MonomialIdeal]) -> MonomialIdeal:
    return reduce(intersect, components, MonomialIdeal.unit(universe))


def tetrahedral_ideal(vector: ExponentVector) -> MonomialIdeal:
    """(a,b)^p1 ∩ (a,c)^p2 ∩ (a,d)^p3 ∩ (b,c)^p4 ∩ (b,d)^p5 ∩ (c,d)^p6."""
    universe = Universe.standard(4)
    components = (
        pair_prime_power(VarId(s), VarId(t), power, universe)
        for (s, t), power in zip(TETRAHEDRON_EDGES, vector.p)
    )
    ideal = _intersect_all(universe, components)
    logger.debug(f"tetrahedral ideal of ({vector}) has {len(ideal)} generators")
    return ideal


def pairwise_ideal(pairs: PairExponents) -> MonomialIdeal:
    """The intersection over s < t of (x_s, x_t)^p[s][t]."""
    universe = Universe.standard(pairs.n)
    components = (
        pair_prime_power(VarId(s), VarId(t), power, universe) for s, t, power in pairs.pairs()
    )
    return _intersect_all(universe, components)


def render_monomial(mono: Monomial, universe: Universe) -> str:
    """`a^2*c*d`; `1` for the unit monomial."""
    if mono.is_one:
        return "1"
    factors = []
    for var, exponent in mono.exps:
        name = universe.render(var)
        factors.append(name if exponent == 1 else f"{name}^{exponent}")
    return "*".join(factors)


def render_ideal(ideal: MonomialIdeal) -> str:
    if ideal.is_zero:
        return "(0)"
    return "(" + ", ".join(render_monomial(g, ideal.universe) for g in ideal.generators) + ")"
