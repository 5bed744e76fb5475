"""
Polarization: x^e becomes x_1·x_2·…·x_e, turning a monomial ideal into a
squarefree one over copy-indexed variables, plus the substitution x_{i,c} -> x_i
that undoes it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from app.services.ideal_core import (
    Monomial,
    MonomialIdeal,
    SquarefreeMonomial,
    Universe,
    VarId,
    pair_prime_power,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SquarefreeIdeal(MonomialIdeal):
    """A monomial ideal whose minimal generators are all squarefree."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for gen in self.generators:
            if not gen.is_squarefree:
                raise ValueError(f"generator {gen.exps} is not squarefree")

    @classmethod
    def from_supports(cls, universe: Universe, supports) -> "SquarefreeIdeal":
        return cls.from_generators(  # type: ignore[return-value]
            universe, (Monomial.from_support(s) for s in supports)
        )

    def supports(self) -> List[frozenset]:
        return [gen.support for gen in self.generators]


def polarize_monomial(mono: Monomial) -> SquarefreeMonomial:
    for var, _ in mono.exps:
        if var.copy != 1:
            raise ValueError(f"{var} is already a polarized variable")
    return Monomial.from_support(
        VarId(var.base, c) for var, exponent in mono.exps for c in range(1, exponent + 1)
    )


def polarize_ideal(ideal: MonomialIdeal) -> SquarefreeIdeal:
    """
    Polarize generator by generator. The polarized universe has, for each base
    variable, as many copies as its largest exponent among the generators.
    """
    copies = [0] * ideal.universe.size
    for gen in ideal.generators:
        for var, exponent in gen.exps:
            copies[var.base] = max(copies[var.base], exponent)
    universe = ideal.universe.with_copies(copies)
    polarized = SquarefreeIdeal.from_generators(
        universe, (polarize_monomial(g) for g in ideal.generators)
    )
    logger.debug(f"polarized {len(ideal)} generators into {sum(copies)} variables")
    return polarized  # type: ignore[return-value]


def depolarize_monomial(mono: SquarefreeMonomial) -> Monomial:
    counts: Dict[VarId, int] = {}
    for var in mono.support:
        base = VarId(var.base)
        counts[base] = counts.get(base, 0) + 1
    return Monomial.of(counts)


def depolarize_ideal(ideal: SquarefreeIdeal) -> MonomialIdeal:
    universe = Universe(ideal.universe.names)
    return MonomialIdeal.from_generators(
        universe, (depolarize_monomial(g) for g in ideal.generators)
    )


def polarize_pair_power_components(power: int) -> List[Tuple[int, int]]:
    """
    Components of the polarization of (x, y)^power: the primes (x_c1, y_c2),
    returned as (c1, c2). They satisfy c1 + c2 <= power + 1.
    """
    from app.services.alexander import alexander_dual

    universe = Universe(("x", "y"))
    ideal = pair_prime_power(VarId(0), VarId(1), power, universe)
    if ideal.is_unit:
        return []
    dual = alexander_dual(polarize_ideal(ideal))
    pairs = []
    for gen in dual.generators:
        x_copy, y_copy = (var.copy for var, _ in gen.exps)
        pairs.append((x_copy, y_copy))
    return sorted(pairs)
