"""
Alexander duality for squarefree monomial ideals.

The dual of J is the intersection of the primes generated by the supports of
J's generators, so its minimal generators are the minimal transversals
(hitting sets) of those supports. For unmixed height-two ideals the dual of
the polarization also has a closed form, generated by x_{s,i}·x_{t,j} with
i + j <= p[s][t] + 1.
"""

from __future__ import annotations

import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Union

from app.core.config import settings
from app.core.limits import WorkBudget
from app.models.schemas import ExponentVector, PairExponents
from app.services.ideal_core import Monomial, Universe, VarId
from app.services.polarization import SquarefreeIdeal

logger = logging.getLogger(__name__)

VertexSet = FrozenSet[VarId]


def _minimal_sets(sets: Iterable[VertexSet]) -> List[VertexSet]:
    kept: List[VertexSet] = []
    for candidate in sorted(set(sets), key=lambda s: (len(s), sorted(s))):
        if not any(k <= candidate for k in kept):
            kept.append(candidate)
    return kept


def minimal_transversals(
    family: Sequence[Iterable[VarId]], cap: Optional[int] = None
) -> List[VertexSet]:
    """
    All inclusion-minimal sets meeting every member of `family`.

    Supports are folded in one at a time: a partial transversal that already
    meets the next support is kept, any other is extended by each element of
    it, then the collection is minimalized. The number of partial
    transversals produced is charged against `cap`.
    """
    budget = WorkBudget("intermediate transversals", cap or settings.TRANSVERSAL_CAP)
    supports = sorted((frozenset(s) for s in family), key=lambda s: (len(s), sorted(s)))
    current: List[VertexSet] = [frozenset()]
    for support in supports:
        if not support:
            return []
        extended: List[VertexSet] = []
        for partial in current:
            if partial & support:
                extended.append(partial)
            else:
                extended.extend(partial | {var} for var in support)
        budget.charge(len(extended))
        current = _minimal_sets(extended)
    return current


def alexander_dual(ideal: SquarefreeIdeal, cap: Optional[int] = None) -> SquarefreeIdeal:
    """
    The Alexander dual over the same universe. The unit ideal dualizes to the
    zero ideal and the zero ideal to the unit ideal.
    """
    transversals = minimal_transversals(ideal.supports(), cap)
    dual = SquarefreeIdeal.from_supports(ideal.universe, transversals)
    logger.debug(f"dual of {len(ideal)} generators has {len(dual)} generators")
    return dual


def _as_pairs(pairs: Union[PairExponents, ExponentVector]) -> PairExponents:
    if isinstance(pairs, ExponentVector):
        return PairExponents.from_exponent_vector(pairs)
    return pairs


def dual_universe(pairs: PairExponents) -> Universe:
    """Copies of x_s: the largest exponent of a pair containing x_s."""
    copies = [max((pairs.p[s][t] for t in range(pairs.n)), default=0) for s in range(pairs.n)]
    return Universe.standard(pairs.n).with_copies(copies)


def dual_generators_direct(pairs: Union[PairExponents, ExponentVector]) -> SquarefreeIdeal:
    """Dual of the polarized ideal read straight off the exponents."""
    pairs = _as_pairs(pairs)
    gens = [
        Monomial.from_support((VarId(s, i), VarId(t, j)))
        for s, t, power in pairs.pairs()
        for i in range(1, power + 1)
        for j in range(1, power + 2 - i)
    ]
    return SquarefreeIdeal.from_generators(dual_universe(pairs), gens)  # type: ignore[return-value]
