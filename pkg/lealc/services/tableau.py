"""
Tableau state
The growing set of ABox terms with the indexes the rules match against,
the interned individuals, the application trace and the clash list.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import DefaultDict, FrozenSet, Iterable, List, Set, Tuple

from lealc.syntax.concepts import And, Box, Concept, Dia, Or, subformulas
from lealc.syntax.individuals import Individual, IndividualRegistry, canonicalize
from lealc.syntax.terms import (
    AboxTerm, BoxRel, DescribedBy, DiaRel, Incidence, MemberOf, individuals_of,
)

Pair = Tuple[Individual, Individual]


@dataclass(frozen=True)
class TraceEntry:
    step: int
    rule: str
    premises: Tuple[AboxTerm, ...]
    added: Tuple[AboxTerm, ...]


def canonical_term(term: AboxTerm, registry: IndividualRegistry) -> AboxTerm:
    """Rewrite classifier redexes and intern every individual of the term"""
    def _ind(individual: Individual) -> Individual:
        return registry.intern(canonicalize(individual))

    body = term.body
    if isinstance(body, MemberOf):
        body = MemberOf(_ind(body.individual), body.concept)
    elif isinstance(body, DescribedBy):
        body = DescribedBy(_ind(body.individual), body.concept)
    elif isinstance(body, Incidence):
        body = Incidence(_ind(body.obj), _ind(body.feature))
    elif isinstance(body, BoxRel):
        body = BoxRel(body.role, _ind(body.obj), _ind(body.feature))
    else:
        body = DiaRel(body.role, _ind(body.feature), _ind(body.obj))
    return AboxTerm(body, term.positive)


class Tableau:
    """
    Single-owner mutable expansion of an ABox.
    Terms are only ever added; add() reports whether a term was new.
    """

    def __init__(self):
        self.initial: Tuple[AboxTerm, ...] = ()
        self.terms: Set[AboxTerm] = set()
        self.order: List[AboxTerm] = []
        self.registry = IndividualRegistry()
        self.trace: List[TraceEntry] = []
        self.rule_counts: Counter = Counter()
        self.clashes: List[AboxTerm] = []

        # b : C and y :: C, both directions
        self.members: DefaultDict[Individual, Set[Concept]] = defaultdict(set)
        self.members_of: DefaultDict[Concept, Set[Individual]] = defaultdict(set)
        self.described: DefaultDict[Individual, Set[Concept]] = defaultdict(set)
        self.described_by: DefaultDict[Concept, Set[Individual]] = defaultdict(set)

        # positive relational terms
        self.incidences: Set[Pair] = set()
        self.box_pairs: DefaultDict[str, Set[Pair]] = defaultdict(set)
        self.dia_pairs: DefaultDict[str, Set[Pair]] = defaultdict(set)

        # sub-formula closure of every asserted concept, with the
        # compound concepts indexed by their immediate subterms
        self.occurring: Set[Concept] = set()
        self.ands_with: DefaultDict[Concept, Set[And]] = defaultdict(set)
        self.ors_with: DefaultDict[Concept, Set[Or]] = defaultdict(set)
        self.boxes_over: DefaultDict[Concept, Set[Box]] = defaultdict(set)
        self.dias_over: DefaultDict[Concept, Set[Dia]] = defaultdict(set)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def __contains__(self, term: AboxTerm) -> bool:
        return term in self.terms

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def steps(self) -> int:
        return len(self.trace)

    @property
    def has_clash(self) -> bool:
        return bool(self.clashes)

    def canonical(self, term: AboxTerm) -> AboxTerm:
        return canonical_term(term, self.registry)

    def snapshot(self) -> FrozenSet[AboxTerm]:
        return frozenset(self.terms)

    # ------------------------------------------------------------------
    # Updates
    # ------------------------------------------------------------------

    def add(self, term: AboxTerm) -> Tuple[bool, List[Concept]]:
        """
        Add a canonical term. Returns (is_new, newly occurring concepts).
        Newly occurring concepts are indexed before the term itself.
        """
        if term in self.terms:
            return False, []
        self.terms.add(term)
        self.order.append(term)
        for individual in individuals_of(term):
            self.registry.intern(individual)

        new_concepts = self._note_concept(term.concept) if term.concept is not None else []

        body = term.body
        if term.positive:
            if isinstance(body, MemberOf):
                self.members[body.individual].add(body.concept)
                self.members_of[body.concept].add(body.individual)
            elif isinstance(body, DescribedBy):
                self.described[body.individual].add(body.concept)
                self.described_by[body.concept].add(body.individual)
            elif isinstance(body, Incidence):
                self.incidences.add((body.obj, body.feature))
            elif isinstance(body, BoxRel):
                self.box_pairs[body.role].add((body.obj, body.feature))
            elif isinstance(body, DiaRel):
                self.dia_pairs[body.role].add((body.feature, body.obj))

        if term.is_relational and term.negate() in self.terms:
            self.clashes.append(term if term.positive else term.negate())
        return True, new_concepts

    def _note_concept(self, concept: Concept) -> List[Concept]:
        fresh = [c for c in subformulas(concept) if c not in self.occurring]
        for c in fresh:
            self.occurring.add(c)
            if isinstance(c, And):
                self.ands_with[c.left].add(c)
                self.ands_with[c.right].add(c)
            elif isinstance(c, Or):
                self.ors_with[c.left].add(c)
                self.ors_with[c.right].add(c)
            elif isinstance(c, Box):
                self.boxes_over[c.concept].add(c)
            elif isinstance(c, Dia):
                self.dias_over[c.concept].add(c)
        return fresh

    def record(self, rule: str, premises: Iterable[AboxTerm], added: Iterable[AboxTerm]) -> TraceEntry:
        entry = TraceEntry(self.steps + 1, rule, tuple(premises), tuple(added))
        self.trace.append(entry)
        self.rule_counts[rule] += 1
        return entry

    def clash_pairs(self) -> List[Tuple[AboxTerm, AboxTerm]]:
        return [(beta, beta.negate()) for beta in self.clashes]

