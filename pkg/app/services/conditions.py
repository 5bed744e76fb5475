import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import TypeAdapter, ValidationError

from app.models.schemas import ConditionOutcome, ConditionRule, ExponentVector, RuleResult
from app.services.logic import apply as json_logic_apply

logger = logging.getLogger(__name__)

BUNDLED_CONDITIONS = Path(__file__).resolve().parent.parent / "conditions.yaml"


class ConditionTableError(RuntimeError):
    """The bundled condition table is missing or malformed."""


def evaluation_data(q: ExponentVector) -> Dict[str, Any]:
    """Variables visible to the rule table for a normalized vector."""
    s16, s25, s34 = q.pair_sums()
    data: Dict[str, Any] = {f"q{k}": value for k, value in enumerate(q.p, start=1)}
    data.update(
        s16=s16,
        s25=s25,
        s34=s34,
        max_other=max(s25, s34),
        min_other=min(s25, s34),
    )
    return data


def load_condition_table(path: Path) -> List[ConditionRule]:
    with open(path) as f:
        raw_rules = yaml.safe_load(f)
    return TypeAdapter(List[ConditionRule]).validate_python(raw_rules)


class ConditionEngine:
    """
    Closed-form ACM conditions as an ordered JSON-Logic rule table.
    The first matching rule names the condition; no match means not ACM.
    """

    def __init__(self, rules_path: Optional[str] = None):
        self.rules_path = Path(rules_path) if rules_path else BUNDLED_CONDITIONS
        self.rules: List[ConditionRule] = []
        self.load_rules()

    def load_rules(self) -> None:
        try:
            self.rules = load_condition_table(self.rules_path)
            logger.info(f"Loaded {len(self.rules)} condition rules from {self.rules_path}")
            return
        except (ValidationError, FileNotFoundError, yaml.YAMLError) as e:
            if self.rules_path == BUNDLED_CONDITIONS:
                raise ConditionTableError(f"Bundled condition table is broken: {e}") from e
            logger.warning(f"Config error in {self.rules_path}: {e}")

        logger.info("Falling back to the bundled condition table...")
        try:
            self.rules = load_condition_table(BUNDLED_CONDITIONS)
        except (ValidationError, FileNotFoundError, yaml.YAMLError) as e:
            raise ConditionTableError(f"Bundled condition table is broken: {e}") from e
        self.rules_path = BUNDLED_CONDITIONS

    def evaluate(self, q: ExponentVector) -> Optional[ConditionOutcome]:
        data = evaluation_data(q)
        for rule in self.rules:
            try:
                if json_logic_apply(rule.condition, data):
                    logger.debug(f"Condition rule matched for ({q}): {rule.name}")
                    return rule.outcome
            except Exception as e:
                logger.error(f"Error evaluating rule '{rule.name}': {e}")
        return None

    def trace(self, q: ExponentVector) -> List[RuleResult]:
        """Evaluate every rule, not stopping at the first match."""
        data = evaluation_data(q)
        results = []
        for rule in self.rules:
            matched = False
            try:
                matched = bool(json_logic_apply(rule.condition, data))
            except Exception as e:
                logger.error(f"Error checking rule '{rule.name}': {e}")
            results.append(
                RuleResult(
                    rule_name=rule.name,
                    matched=matched,
                    outcome=rule.outcome if matched else None,
                )
            )
        return results
