"""
Pydantic models for emitted documents and reports
Model documents, traces, run statistics and the report-valued checks
"""

from pydantic import BaseModel, Field
from typing import Optional, List, Dict
from enum import Enum


# ============================================================================
# ENUMS
# ============================================================================

class VerdictStatus(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


class Regime(str, Enum):
    """Complexity regime of the TBox part of the input"""
    NO_TBOX = "no TBox"
    COMPLETELY_UNRAVELLED = "completely unravelled"
    ACYCLIC = "acyclic, unravelled here"


class SliceFamily(str, Enum):
    BOX_OBJECTS = "box(0)[x]"     # {a | a R x}, must be object-stable
    BOX_FEATURES = "box(1)[a]"    # {x | a R x}, must be feature-stable
    DIA_FEATURES = "dia(0)[a]"    # {x | x R a}, must be feature-stable
    DIA_OBJECTS = "dia(1)[x]"     # {a | x R a}, must be object-stable


# ============================================================================
# MODEL DOCUMENT
# ============================================================================

class AtomExtension(BaseModel):
    extent: List[str] = Field(default_factory=list)
    intent: List[str] = Field(default_factory=list)


class ModelDocument(BaseModel):
    """Serialized enriched context; every list is sorted by element id"""
    objects: List[str] = Field(default_factory=list)
    features: List[str] = Field(default_factory=list)
    incidence: List[List[str]] = Field(default_factory=list)
    box: Dict[str, List[List[str]]] = Field(default_factory=dict)
    dia: Dict[str, List[List[str]]] = Field(default_factory=dict)
    atoms: Dict[str, AtomExtension] = Field(default_factory=dict)
    individuals: Dict[str, str] = Field(default_factory=dict, description="KB rendering -> element id")


# ============================================================================
# TRACE
# ============================================================================

class TraceRecord(BaseModel):
    step: int = Field(..., ge=1)
    rule: str
    premises: List[str] = Field(default_factory=list)
    added: List[str] = Field(default_factory=list)


class TraceDocument(BaseModel):
    """Declarations make every rendered term re-parseable"""
    declarations: List[str] = Field(default_factory=list)
    records: List[TraceRecord] = Field(default_factory=list)


# ============================================================================
# RUN STATISTICS
# ============================================================================

class RunStats(BaseModel):
    steps: int = 0
    terms: int = 0
    individuals: int = 0
    occurring_concepts: int = 0
    size: int = 0
    box_depth: int = 0
    dia_depth: int = 0
    role_count: int = 0
    bound: int = 0
    step_limit: int = 0
    headroom: int = 0
    max_individual_box_depth: int = 0
    max_individual_dia_depth: int = 0
    rule_counts: Dict[str, int] = Field(default_factory=dict)
    elapsed_seconds: float = 0.0
    regime: Optional[Regime] = None


# ============================================================================
# REPORTS
# ============================================================================

class SliceFailure(BaseModel):
    role: str
    family: SliceFamily
    element: str
    members: List[str]
    closure: List[str]


class CompatibilityReport(BaseModel):
    ok: bool = True
    failures: List[SliceFailure] = Field(default_factory=list)


class VerificationReport(BaseModel):
    ok: bool = True
    unsatisfied_terms: List[str] = Field(default_factory=list)
    membership_violations: List[str] = Field(default_factory=list)
    unstable_atoms: List[str] = Field(default_factory=list)
    compatibility: CompatibilityReport = Field(default_factory=CompatibilityReport)


class DepthViolation(BaseModel):
    term: str
    clause: str
    lhs: int
    rhs: int


class DepthBoundReport(BaseModel):
    ok: bool = True
    box_depth: int = 0
    dia_depth: int = 0
    violations: List[DepthViolation] = Field(default_factory=list)


class DerivedRuleViolation(BaseModel):
    rule: str
    premises: List[str]
    missing: str


class DerivedRuleReport(BaseModel):
    ok: bool = True
    checked: int = 0
    violations: List[DerivedRuleViolation] = Field(default_factory=list)


class CrossCheckReport(BaseModel):
    agree: bool
    engine_verdict: VerdictStatus
    oracle_found_model: bool
    carrier_bound: int
    contexts_searched: int = 0
    engine_model_verified: Optional[bool] = None
    abox: List[str] = Field(default_factory=list)
    witness: Optional[ModelDocument] = None
    note: str = ""


# ============================================================================
# BATCH
# ============================================================================

class BatchRow(BaseModel):
    file: str
    verdict: Optional[VerdictStatus] = None
    steps: int = 0
    terms: int = 0
    size: int = 0
    bound: int = 0
    wall_time: float = 0.0
    error: Optional[str] = None
