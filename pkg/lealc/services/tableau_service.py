"""
Tableau Service
Saturation loop over the expansion rules, with clash detection after every
application, a safety limit derived from the termination bound, and model
extraction on a clash-free completion
"""

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Set, Tuple, Union

from lealc.core.config import get_settings
from lealc.core.exceptions import EngineInvariantError, SafetyLimitExceeded
from lealc.models.context import Interpretation
from lealc.models.schemas import RunStats, TraceDocument, TraceRecord, VerdictStatus
from lealc.syntax.measures import (
    abox_depths, abox_size, individual_box_depth, individual_dia_depth, step_bound,
)
from lealc.syntax.terms import AboxTerm, Signature, render_term, signature_of
from .extraction_service import extraction_service
from .rules import RANK_COUNT, RuleBinding, all_bindings, triggered_by_concept, triggered_by_term
from .tableau import Tableau, TraceEntry

logger = logging.getLogger(__name__)

Strategy = Union[str, random.Random]


@dataclass
class Verdict:
    status: VerdictStatus
    clashes: List[Tuple[AboxTerm, AboxTerm]] = field(default_factory=list)
    model: Optional[Interpretation] = None
    trace: List[TraceEntry] = field(default_factory=list)
    stats: RunStats = field(default_factory=RunStats)
    tableau: Optional[Tableau] = None
    signature: Signature = field(default_factory=Signature)

    @property
    def consistent(self) -> bool:
        return self.status is VerdictStatus.CONSISTENT

    @property
    def clash(self) -> Optional[Tuple[AboxTerm, AboxTerm]]:
        return self.clashes[0] if self.clashes else None

    @property
    def completion(self) -> frozenset:
        return self.tableau.snapshot() if self.tableau is not None else frozenset()


class Agenda:
    """
    Pending rule bindings. The priority strategy pops from the lowest rank
    first (FIFO within a rank); a seeded Random picks uniformly instead.
    """

    def __init__(self, strategy: Strategy = "priority"):
        if isinstance(strategy, random.Random):
            self.rng: Optional[random.Random] = strategy
        elif strategy == "priority":
            self.rng = None
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        self.queues: List[List[RuleBinding]] = [[] for _ in range(RANK_COUNT)]
        self.heads = [0] * RANK_COUNT
        self.pool: List[RuleBinding] = []
        self.queued: Set[RuleBinding] = set()

    def push(self, binding: RuleBinding) -> None:
        if binding in self.queued:
            return
        self.queued.add(binding)
        if self.rng is None:
            self.queues[binding.rule.rank].append(binding)
        else:
            self.pool.append(binding)

    def pop(self) -> Optional[RuleBinding]:
        if self.rng is None:
            for rank, queue in enumerate(self.queues):
                if self.heads[rank] < len(queue):
                    binding = queue[self.heads[rank]]
                    self.heads[rank] += 1
                    return binding
            return None
        if not self.pool:
            return None
        index = self.rng.randrange(len(self.pool))
        self.pool[index], self.pool[-1] = self.pool[-1], self.pool[index]
        return self.pool.pop()


class TableauService:
    """Algorithm driver: build, expand, and judge a tableau"""

    @staticmethod
    def applicable_rules(tableau: Tableau) -> List[RuleBinding]:
        """Every binding that would add at least one new term"""
        seen: Set[RuleBinding] = set()
        result = []
        for binding in all_bindings(tableau):
            if binding in seen:
                continue
            seen.add(binding)
            if binding.is_applicable(tableau):
                result.append(binding)
        return sorted(result, key=lambda b: b.rule.rank)

    @staticmethod
    def _add_all(tableau: Tableau, terms: Iterable[AboxTerm], agenda: Optional[Agenda]) -> List[AboxTerm]:
        added = []
        for term in terms:
            is_new, new_concepts = tableau.add(term)
            if not is_new:
                continue
            added.append(term)
            if agenda is not None:
                for concept in new_concepts:
                    for binding in triggered_by_concept(tableau, concept):
                        agenda.push(binding)
                for binding in triggered_by_term(tableau, term):
                    agenda.push(binding)
        return added

    @staticmethod
    def apply_rule(tableau: Tableau, binding: RuleBinding, agenda: Optional[Agenda] = None) -> TraceEntry:
        """Add the binding's conclusions; a binding that adds nothing is an engine fault"""
        missing = [p for p in binding.premises if p not in tableau]
        if missing:
            raise EngineInvariantError(f"{binding.rule.value} applied without premise {render_term(missing[0])}")
        added = TableauService._add_all(tableau, binding.conclusions, agenda)
        if not added:
            raise EngineInvariantError(f"{binding.rule.value} application added no new term")
        entry = tableau.record(binding.rule.value, binding.premises, added)
        logger.debug(f"step {entry.step}: {entry.rule} added {', '.join(render_term(t) for t in added)}")
        return entry

    @staticmethod
    def step_limit(terms: List[AboxTerm], role_count: int, max_steps: Optional[int] = None) -> int:
        settings = get_settings()
        if max_steps is not None:
            return max_steps
        if settings.max_steps is not None:
            return settings.max_steps
        return max(settings.min_step_limit, settings.step_bound_slack * step_bound(terms, role_count))

    @staticmethod
    def saturate(
        initial: Iterable[AboxTerm],
        signature: Optional[Signature] = None,
        max_steps: Optional[int] = None,
        stop_at_clash: Optional[bool] = None,
        strategy: Strategy = "priority",
        extract: bool = True,
    ) -> Verdict:
        """
        Expand the ABox until a clash is found or no rule applies.
        A clash-free completion gets an extracted model.
        """
        settings = get_settings()
        if stop_at_clash is None:
            stop_at_clash = settings.stop_at_first_clash
        started = time.perf_counter()

        tableau = Tableau()
        initial_terms = list(dict.fromkeys(tableau.canonical(t) for t in initial))
        tableau.initial = tuple(initial_terms)
        signature = signature if signature is not None else signature_of(initial_terms)
        limit = TableauService.step_limit(initial_terms, signature.role_count, max_steps)
        logger.info(f"Saturating {len(initial_terms)} terms (limit {limit} steps)")

        agenda = Agenda(strategy)
        TableauService._add_all(tableau, initial_terms, agenda)

        while not (tableau.has_clash and stop_at_clash):
            binding = agenda.pop()
            if binding is None:
                break
            if not binding.is_applicable(tableau):
                continue
            if tableau.steps >= limit:
                raise SafetyLimitExceeded(limit)
            clashes_before = len(tableau.clashes)
            TableauService.apply_rule(tableau, binding, agenda)
            for beta in tableau.clashes[clashes_before:]:
                logger.info(f"Clash on {render_term(beta)} at step {tableau.steps}")

        status = VerdictStatus.INCONSISTENT if tableau.has_clash else VerdictStatus.CONSISTENT
        verdict = Verdict(
            status=status,
            clashes=tableau.clash_pairs(),
            trace=list(tableau.trace),
            tableau=tableau,
            signature=signature,
        )
        if status is VerdictStatus.CONSISTENT and extract:
            verdict.model = extraction_service.extract_model(tableau, signature)
        verdict.stats = TableauService.run_stats(tableau, initial_terms, signature, limit,
                                                 time.perf_counter() - started)
        logger.info(f"Saturation finished: {status.value} after {tableau.steps} steps, {len(tableau)} terms")
        return verdict

    @staticmethod
    def run_stats(tableau: Tableau, initial: List[AboxTerm], signature: Signature,
                  limit: int, elapsed: float) -> RunStats:
        box, dia = abox_depths(initial)
        bound = step_bound(initial, signature.role_count)
        individuals = list(tableau.registry)
        return RunStats(
            steps=tableau.steps,
            terms=len(tableau),
            individuals=len(individuals),
            occurring_concepts=len(tableau.occurring),
            size=abox_size(initial),
            box_depth=box,
            dia_depth=dia,
            role_count=signature.role_count,
            bound=bound,
            step_limit=limit,
            headroom=bound - tableau.steps,
            max_individual_box_depth=max((individual_box_depth(i) for i in individuals), default=0),
            max_individual_dia_depth=max((individual_dia_depth(i) for i in individuals), default=0),
            rule_counts=dict(sorted(tableau.rule_counts.items())),
            elapsed_seconds=round(elapsed, 6),
        )

    @staticmethod
    def trace_document(verdict: Verdict) -> TraceDocument:
        return TraceDocument(
            declarations=verdict.signature.declaration_lines(),
            records=[
                TraceRecord(
                    step=entry.step,
                    rule=entry.rule,
                    premises=[render_term(t) for t in entry.premises],
                    added=[render_term(t) for t in entry.added],
                )
                for entry in verdict.trace
            ],
        )


# Singleton instance
tableau_service = TableauService()
