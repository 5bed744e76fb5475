"""
Numeric ACM classification of tetrahedral curves.

Vectors are first normalized so that p1 + p6 is the largest of the three
opposite-edge sums. On a normalized vector the curve is ACM exactly when no
four-cycle witness (i, j, l, m) exists, and the closed-form conditions
(i)-(iv) in `app/conditions.yaml` describe the same set without a search.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Optional, Tuple

from app.models.schemas import (
    AcmVerdict,
    ExponentVector,
    FourCycleWitness,
    Method,
    Normalization,
)
from app.services.conditions import ConditionEngine, evaluation_data
from app.services.ideal_core import VarId

logger = logging.getLogger(__name__)


class NormalizationRequiredError(ValueError):
    """The operation needs p1 + p6 to be the largest opposite-edge sum."""


class BalancedCaseOnlyError(ValueError):
    """The balanced-case formulas need p1 + p6 = 2 + p2 + p5 = 2 + p3 + p4."""


class UncertifiedVerdictError(RuntimeError):
    """A condition table declared a curve not ACM but no witness exists."""

    def __init__(self, vector: ExponentVector):
        self.vector = vector
        super().__init__(f"({vector}) matched no condition, yet no four-cycle witness exists")


# Coordinate images of the swaps; both are involutions.
_PERMUTATIONS: Dict[str, Tuple[int, ...]] = {
    "identity": (0, 1, 2, 3, 4, 5),
    "b<->c": (1, 0, 2, 3, 5, 4),
    "b<->d": (2, 1, 0, 5, 4, 3),
}


def apply_permutation(p: ExponentVector, tag: Normalization) -> ExponentVector:
    order = _PERMUTATIONS[tag]
    return ExponentVector.of(*(p.p[k] for k in order))


def is_normalized(p: ExponentVector) -> bool:
    s16, s25, s34 = p.pair_sums()
    return s16 >= max(s25, s34)


def normalize(p: ExponentVector) -> Tuple[ExponentVector, Normalization]:
    """Ties prefer the identity, then b<->c, then b<->d."""
    s16, s25, s34 = p.pair_sums()
    tag: Normalization
    if s16 >= max(s25, s34):
        tag = "identity"
    elif s25 >= s34:
        tag = "b<->c"
    else:
        tag = "b<->d"
    return apply_permutation(p, tag), tag


def witness_holds(q: ExponentVector, witness: FourCycleWitness) -> bool:
    p1, p2, p3, p4, p5, p6 = q.p
    i, j, l, m = witness.as_tuple()  # noqa: E741
    return (
        i + j == p1 + 1
        and l + m == p6 + 1
        and i + l >= p2 + 2
        and i + m >= p3 + 2
        and j + l >= p4 + 2
        and j + m >= p5 + 2
    )


def find_witness(q: ExponentVector) -> Optional[FourCycleWitness]:
    """First witness with i ascending, then l ascending; None if there is none."""
    if not is_normalized(q):
        raise NormalizationRequiredError(f"({q}) is not normalized: p1+p6 is not maximal")
    p1, p2, p3, p4, p5, p6 = q.p
    for i in range(1, p1 + 1):
        j = p1 + 1 - i
        for l in range(1, p6 + 1):  # noqa: E741
            m = p6 + 1 - l
            if i + l >= p2 + 2 and i + m >= p3 + 2 and j + l >= p4 + 2 and j + m >= p5 + 2:
                return FourCycleWitness(i=i, j=j, l=l, m=m)
    return None


def witness_cycle(witness: FourCycleWitness) -> Tuple[VarId, VarId, VarId, VarId]:
    """The induced four-cycle a_i, c_l, b_j, d_m of the complementary graph."""
    return (
        VarId(0, witness.i),
        VarId(2, witness.l),
        VarId(1, witness.j),
        VarId(3, witness.m),
    )


def classify_witness(p: ExponentVector) -> AcmVerdict:
    q, tag = normalize(p)
    witness = find_witness(q)
    return AcmVerdict(acm=witness is None, method=Method.WITNESS, witness=witness, normalization=tag)


def unique_balanced_solution(q: ExponentVector) -> Optional[FourCycleWitness]:
    """
    On the balanced stratum the witness relations have exactly one rational
    solution; it is a witness when all four values are positive integers.
    """
    if not is_normalized(q):
        raise NormalizationRequiredError(f"({q}) is not normalized: p1+p6 is not maximal")
    s16, s25, s34 = q.pair_sums()
    if not s16 == s25 + 2 == s34 + 2:
        raise BalancedCaseOnlyError(f"({q}) is not balanced: sums are {s16}, {s25}, {s34}")
    p1, p2, p3, _, p5, _ = q.p
    doubled = (
        p1 + p3 - p5 + 1,
        p1 - p3 + p5 + 1,
        -p1 + 2 * p2 - p3 + p5 + 3,
        -p1 + p3 + p5 + 3,
    )
    if any(value % 2 or value <= 0 for value in doubled):
        return None
    i, j, l, m = (value // 2 for value in doubled)  # noqa: E741
    return FourCycleWitness(i=i, j=j, l=l, m=m)


def classify_closed_form(
    p: ExponentVector, engine: Optional[ConditionEngine] = None
) -> AcmVerdict:
    """
    First matching condition (i)-(iv) on the normalized vector. A negative
    verdict carries the witness of the normalized vector.
    """
    engine = engine or default_engine()
    q, tag = normalize(p)
    outcome = engine.evaluate(q)
    if outcome is not None:
        return AcmVerdict(acm=True, method=Method.CLOSED_FORM, condition=outcome, normalization=tag)
    witness = find_witness(q)
    if witness is None:
        raise UncertifiedVerdictError(p)
    return AcmVerdict(acm=False, method=Method.CLOSED_FORM, witness=witness, normalization=tag)


def classify_schwartau(p1: int, p3: int, p4: int, p6: int) -> bool:
    """Curves with p2 = p5 = 0: ACM iff p1 = 0, p6 = 0 or the sums differ by at most one."""
    for value in (p1, p3, p4, p6):
        if value < 0:
            raise ValueError(f"exponent {value} is negative")
    if p1 + p6 < p3 + p4:
        p1, p6, p3, p4 = p3, p4, p1, p6
    return p1 == 0 or p6 == 0 or (p1 + p6) - (p3 + p4) in (0, 1)


def sufficient_condition_flags(q: ExponentVector) -> Dict[str, bool]:
    """
    Which sufficient criteria hold for a normalized vector, plus
    `three_or_more`: the hypotheses under which a curve is never ACM.
    """
    data = evaluation_data(q)
    p1, p2, p3, p4, p5, p6 = q.p
    s16, max_other, min_other = data["s16"], data["max_other"], data["min_other"]
    letters_hold = (
        2 * p1 >= p2 + p3 + 3 - p6,
        2 * p1 >= p4 + p5 + 3 - p6,
        2 * p6 >= p2 + p4 + 3 - p1,
        2 * p6 >= p3 + p5 + 3 - p1,
    )
    balanced = s16 == data["s25"] + 2 == data["s34"] + 2
    return {
        "zero_exponent": p1 == 0 or p6 == 0,
        "small_gap": s16 - max_other in (0, 1),
        "each_letter": not all(letters_hold),
        "balanced_even": all(letters_hold) and balanced and (p1 + p3 + p5) % 2 == 0,
        "three_or_more": (
            p1 > 0
            and p6 > 0
            and s16 >= max_other + 2
            and s16 >= min_other + 3
            and all(letters_hold)
        ),
    }


@lru_cache()
def default_engine() -> ConditionEngine:
    """The bundled condition table, loaded once per process."""
    return ConditionEngine()
