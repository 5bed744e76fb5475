from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, field_validator, model_validator

from app.core.config import settings

Normalization = Literal["identity", "b<->c", "b<->d"]
ConditionId = Literal["i", "ii", "iii", "iv"]


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    WITNESS = "witness"
    CHORDAL = "chordal"
    LINEAR_RESOLUTION = "linear_resolution"
    REISNER = "reisner"


# CLI spelling -> method
METHOD_ALIASES: Dict[str, Method] = {
    "closed": Method.CLOSED_FORM,
    "witness": Method.WITNESS,
    "chordal": Method.CHORDAL,
    "betti": Method.LINEAR_RESOLUTION,
    "reisner": Method.REISNER,
}


def _check_exponent(value: int) -> int:
    if value < 0:
        raise ValueError(f"exponent {value} is negative")
    if value > settings.MAX_EXPONENT:
        raise ValueError(f"exponent {value} exceeds the supported maximum {settings.MAX_EXPONENT}")
    return value


class ExponentVector(BaseModel):
    """
    The six exponents of a tetrahedral curve.

    Pairing: p1<->(a,b), p2<->(a,c), p3<->(a,d), p4<->(b,c), p5<->(b,d), p6<->(c,d).
    Opposite edges of the tetrahedron are (p1,p6), (p2,p5), (p3,p4).
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    p: Tuple[int, int, int, int, int, int]

    @field_validator("p")
    @classmethod
    def _nonnegative(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        for entry in value:
            _check_exponent(entry)
        return value

    @classmethod
    def of(cls, *entries: int) -> "ExponentVector":
        return cls(p=tuple(entries))  # type: ignore[arg-type]

    @classmethod
    def parse(cls, text: str) -> "ExponentVector":
        """Parse `"2,1,1,1,1,2"`. Raises ValueError on anything else."""
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 6 or not all(part.isdigit() for part in parts):
            raise ValueError(f"expected six comma-separated nonnegative integers, got {text!r}")
        return cls.of(*(int(part) for part in parts))

    def pair_sums(self) -> Tuple[int, int, int]:
        p1, p2, p3, p4, p5, p6 = self.p
        return p1 + p6, p2 + p5, p3 + p4

    def __str__(self) -> str:
        return ",".join(str(entry) for entry in self.p)


class PairExponents(BaseModel):
    """Symmetric exponent matrix of an unmixed height-two ideal in n variables."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: PositiveInt
    p: List[List[int]]

    @model_validator(mode="after")
    def _symmetric(self) -> "PairExponents":
        if len(self.p) != self.n or any(len(row) != self.n for row in self.p):
            raise ValueError(f"p must be an {self.n}x{self.n} matrix")
        for s in range(self.n):
            if self.p[s][s] != 0:
                raise ValueError(f"diagonal entry p[{s}][{s}] must be 0")
            for t in range(self.n):
                _check_exponent(self.p[s][t])
                if self.p[s][t] != self.p[t][s]:
                    raise ValueError(f"matrix is not symmetric at ({s},{t})")
        return self

    @classmethod
    def from_exponent_vector(cls, vector: ExponentVector) -> "PairExponents":
        matrix = [[0] * 4 for _ in range(4)]
        for (s, t), value in zip(TETRAHEDRON_EDGES, vector.p):
            matrix[s][t] = matrix[t][s] = value
        return cls(n=4, p=matrix)

    def pairs(self) -> List[Tuple[int, int, int]]:
        """(s, t, p[s][t]) for s < t, in canonical order."""
        return [(s, t, self.p[s][t]) for s in range(self.n) for t in range(s + 1, self.n)]


# Edge (base-variable pair) of each coordinate of an ExponentVector.
TETRAHEDRON_EDGES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class FourCycleWitness(BaseModel):
    """
    Positive integers (i, j, l, m) with i + j = p1 + 1, l + m = p6 + 1 and
    i + l >= p2 + 2, i + m >= p3 + 2, j + l >= p4 + 2, j + m >= p5 + 2.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    i: PositiveInt
    j: PositiveInt
    l: PositiveInt  # noqa: E741
    m: PositiveInt

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return self.i, self.j, self.l, self.m


class ChordalityCertificate(BaseModel):
    """Perfect elimination ordering if chordal, otherwise a chordless cycle of length >= 4."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    chordal: bool
    elimination_order: Optional[List[str]] = None
    chordless_cycle: Optional[List[str]] = None

    @model_validator(mode="after")
    def _one_certificate(self) -> "ChordalityCertificate":
        if self.chordal and (self.elimination_order is None or self.chordless_cycle is not None):
            raise ValueError("a chordal certificate carries exactly an elimination order")
        if not self.chordal:
            if self.chordless_cycle is None or self.elimination_order is not None:
                raise ValueError("a non-chordal certificate carries exactly a chordless cycle")
            if len(self.chordless_cycle) < 4:
                raise ValueError("a chordless cycle has length at least 4")
        return self


class ConditionOutcome(BaseModel):
    """Which closed-form condition made the curve ACM."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    condition: ConditionId
    inequality: Optional[str] = Field(None, description="The satisfied sub-inequality of (iii).")
    epsilon: Optional[Literal[0, 1]] = Field(None, description="The gap of condition (ii).")


class AcmVerdict(BaseModel):
    """The answer of one decision method for one ideal."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    acm: bool
    method: Method
    condition: Optional[ConditionOutcome] = None
    witness: Optional[FourCycleWitness] = None
    graph_certificate: Optional[ChordalityCertificate] = None
    betti: Optional[Dict[str, int]] = Field(None, description="Betti table keyed 'i,d'.")
    normalization: Normalization = "identity"

    @model_validator(mode="after")
    def _certified(self) -> "AcmVerdict":
        numeric = self.method in (Method.CLOSED_FORM, Method.WITNESS)
        if numeric and not self.acm and self.witness is None:
            raise ValueError(f"a negative {self.method.value} verdict must carry a witness")
        if self.method is Method.CLOSED_FORM and self.acm and self.condition is None:
            raise ValueError("a positive closed_form verdict must name its condition")
        if self.method is Method.CHORDAL and self.graph_certificate is None:
            raise ValueError("a chordal verdict must carry its graph certificate")
        return self


class ConditionRule(BaseModel):
    """One row of the closed-form condition table."""
    name: str = Field(..., min_length=1)
    condition: Dict[str, Any] = Field(..., description="JSON-Logic expression over q1..q6.")
    outcome: ConditionOutcome


class RuleResult(BaseModel):
    """Result of a single rule evaluation trace."""
    rule_name: str
    matched: bool
    outcome: Optional[ConditionOutcome] = None


class MethodOutcome(BaseModel):
    """A verdict, or the reason a method could not run on this input."""
    method: Method
    verdict: Optional[AcmVerdict] = None
    skipped: Optional[str] = Field(None, description="Resource limit that stopped the method.")
    error: Optional[str] = Field(None, description="The method produced no certified verdict.")


class RunConfig(BaseModel):
    """Options shared by the CLI commands."""
    model_config = ConfigDict(extra="forbid")

    methods: List[Method] = Field(..., min_length=1)
    output_format: Literal["text", "json", "csv", "html"] = "text"
    homology_max_vertices: PositiveInt = Field(default_factory=lambda: settings.HOMOLOGY_MAX_VERTICES)
    betti_max_vertices: PositiveInt = Field(default_factory=lambda: settings.BETTI_MAX_VERTICES)
    transversal_cap: PositiveInt = Field(default_factory=lambda: settings.TRANSVERSAL_CAP)
    cycle_max_vertices: PositiveInt = Field(default_factory=lambda: settings.CYCLE_MAX_VERTICES)
    jobs: PositiveInt = Field(default_factory=lambda: settings.JOBS)
    out: Optional[str] = None
    conditions_path: Optional[str] = None


class EnumerationRow(BaseModel):
    """One line of the `enumerate` table."""
    model_config = ConfigDict(frozen=True)

    p: Tuple[int, int, int, int, int, int]
    acm: bool
    method: Method
    condition: Optional[ConditionId] = None
    witness: Optional[FourCycleWitness] = None


class Discrepancy(BaseModel):
    p: Tuple[int, int, int, int, int, int]
    verdicts: Dict[str, bool]
    errors: Dict[str, str] = Field(default_factory=dict)


class CrosscheckReport(BaseModel):
    max_value: int
    total: int
    methods: List[Method]
    acm_count: int
    discrepancies: List[Discrepancy] = Field(default_factory=list)
    skipped: Dict[str, int] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


class ClassifyReport(BaseModel):
    """Everything `classify` prints for one vector."""
    model_config = ConfigDict(extra="forbid")

    p: Tuple[int, int, int, int, int, int]
    normalized: Tuple[int, int, int, int, int, int]
    normalization: Normalization
    outcomes: List[MethodOutcome]
    agree: bool
    trace: Optional[List[RuleResult]] = None
    flags: Optional[Dict[str, bool]] = None


class PipelineReport(BaseModel):
    """Every stage from the curve ideal to the chordality verdict."""
    model_config = ConfigDict(extra="forbid")

    p: Tuple[int, int, int, int, int, int]
    ideal: str
    polarization: str
    dual: str
    graph_vertices: List[str]
    graph_edges: List[Tuple[str, str]]
    complement_edges: List[Tuple[str, str]]
    certificate: ChordalityCertificate
    induced_cycles: Optional[List[List[str]]] = Field(
        None, description="Induced cycles of length >= 4 in the complement; None over the cap."
    )
    acm: bool


class GeneralReport(BaseModel):
    """Verdict for an arbitrary unmixed height-two pair matrix."""
    model_config = ConfigDict(extra="forbid")

    n: int
    dual: str
    verdict: AcmVerdict
