"""
One entry point for the five ACM deciders of a tetrahedral curve.

closed_form and witness are numeric; chordal reads the complement graph of
the dual; linear_resolution and reisner are the homological oracles
(linear resolution of the dual, Cohen-Macaulayness of the polarization).
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

from app.core.limits import ResourceLimitError
from app.models.schemas import AcmVerdict, ExponentVector, Method, MethodOutcome, RunConfig
from app.services.alexander import alexander_dual
from app.services.conditions import ConditionEngine
from app.services.graphs import acm_via_chordality
from app.services.homology_oracle import graded_betti, is_cm_reisner, is_linear
from app.services.ideal_core import tetrahedral_ideal
from app.services.numeric_classifier import (
    UncertifiedVerdictError,
    classify_closed_form,
    classify_witness,
)
from app.services.polarization import polarize_ideal

logger = logging.getLogger(__name__)


def _linear_resolution(p: ExponentVector, config: RunConfig) -> AcmVerdict:
    # Dual by transversals, independent of the closed-form dual used by `chordal`.
    polarized = polarize_ideal(tetrahedral_ideal(p))
    dual = alexander_dual(polarized, cap=config.transversal_cap)
    if dual.is_zero:
        return AcmVerdict(acm=True, method=Method.LINEAR_RESOLUTION, betti={})
    table = graded_betti(
        dual,
        max_vertices=config.betti_max_vertices,
        homology_max_vertices=config.homology_max_vertices,
    )
    degrees = {gen.degree for gen in dual.generators}
    acm = len(degrees) == 1 and is_linear(table, degrees.pop())
    return AcmVerdict(acm=acm, method=Method.LINEAR_RESOLUTION, betti=table.to_json_map())


def _reisner(p: ExponentVector, config: RunConfig) -> AcmVerdict:
    polarized = polarize_ideal(tetrahedral_ideal(p))
    acm = is_cm_reisner(
        polarized,
        max_vertices=config.betti_max_vertices,
        homology_max_vertices=config.homology_max_vertices,
    )
    return AcmVerdict(acm=acm, method=Method.REISNER)


def decide(
    p: ExponentVector,
    method: Method,
    config: Optional[RunConfig] = None,
    engine: Optional[ConditionEngine] = None,
) -> AcmVerdict:
    """Raises ResourceLimitError when a homological method exceeds its cap."""
    config = config or RunConfig(methods=[method])
    if method is Method.CLOSED_FORM:
        return classify_closed_form(p, engine)
    if method is Method.WITNESS:
        return classify_witness(p)
    if method is Method.CHORDAL:
        return acm_via_chordality(p)
    if method is Method.LINEAR_RESOLUTION:
        return _linear_resolution(p, config)
    return _reisner(p, config)


def decide_all(
    p: ExponentVector,
    methods: Sequence[Method],
    config: Optional[RunConfig] = None,
    engine: Optional[ConditionEngine] = None,
) -> List[MethodOutcome]:
    config = config or RunConfig(methods=list(methods))
    outcomes = []
    for method in methods:
        try:
            outcomes.append(MethodOutcome(method=method, verdict=decide(p, method, config, engine)))
        except ResourceLimitError as e:
            logger.warning(f"{method.value} skipped for ({p}): {e}")
            outcomes.append(MethodOutcome(method=method, skipped=str(e)))
        except UncertifiedVerdictError as e:
            logger.error(f"{method.value} failed for ({p}): {e}")
            outcomes.append(MethodOutcome(method=method, error=str(e)))
    return outcomes


def agree(outcomes: Sequence[MethodOutcome]) -> bool:
    """Skipped methods are ignored; an uncertified method is a disagreement."""
    if any(o.error for o in outcomes):
        return False
    return len({o.verdict.acm for o in outcomes if o.verdict is not None}) <= 1
