from .context import EnrichedContext, Interpretation, Polarity, StableSetPair
from .schemas import (
    BatchRow, CompatibilityReport, CrossCheckReport, DepthBoundReport,
    DerivedRuleReport, ModelDocument, Regime, RunStats, TraceDocument,
    TraceRecord, VerdictStatus, VerificationReport,
)
