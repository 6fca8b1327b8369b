"""
TBox Service
Acyclicity and complete-unravelling checks on the uses graph, GCI
rewriting, and unravelling of ABoxes against acyclic TBoxes
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from lealc.core.exceptions import (
    CyclicTBoxError, DuplicateDefinitionError, FreshNameCollisionError,
    NonAtomicDefinitionError, TBoxError,
)
from lealc.models.schemas import Regime
from lealc.syntax.concepts import And, Atom, Concept, atoms_of, map_atoms
from lealc.syntax.terms import (
    AboxTerm, KnowledgeBase, Signature, TboxDefinition, map_term_concepts,
)

logger = logging.getLogger(__name__)

FRESH_PREFIX = "Gci"


class FreshNames:
    """Supply of concept names not present in a set of used names"""

    def __init__(self, used: Iterable[str], prefix: str = FRESH_PREFIX):
        self.used: Set[str] = set(used)
        self.prefix = prefix
        self.counter = 0

    def reserve(self, name: str) -> str:
        if name in self.used:
            raise FreshNameCollisionError(name)
        self.used.add(name)
        return name

    def next(self) -> str:
        while True:
            self.counter += 1
            candidate = f"{self.prefix}{self.counter}"
            if candidate not in self.used:
                self.used.add(candidate)
                return candidate


class TBoxService:
    """Static TBox analyses and transformations"""

    @staticmethod
    def uses_graph(definitions: Sequence[TboxDefinition]) -> nx.DiGraph:
        """Edge A -> B when B occurs in the definition of A"""
        graph = nx.DiGraph()
        for definition in definitions:
            graph.add_node(definition.lhs)
            for used in atoms_of(definition.rhs):
                graph.add_edge(definition.lhs, used)
        return graph

    @staticmethod
    def check_acyclic(definitions: Sequence[TboxDefinition]) -> Optional[TBoxError]:
        """None when acyclic, else the error describing the witness"""
        seen: Set[str] = set()
        for definition in definitions:
            if definition.lhs in seen:
                return DuplicateDefinitionError(definition.lhs)
            seen.add(definition.lhs)

        graph = TBoxService.uses_graph(definitions)
        try:
            edges = nx.find_cycle(graph)
        except nx.NetworkXNoCycle:
            return None
        cycle = [u for u, _ in edges] + [edges[0][0]]
        return CyclicTBoxError(cycle)

    @staticmethod
    def require_acyclic(definitions: Sequence[TboxDefinition], lines: Optional[Dict[str, int]] = None) -> None:
        error = TBoxService.check_acyclic(definitions)
        if error is None:
            return
        if lines:
            anchor = error.name if isinstance(error, DuplicateDefinitionError) else error.cycle[0]
            error.line = lines.get(anchor)
        raise error

    @staticmethod
    def check_completely_unravelled(definitions: Sequence[TboxDefinition]) -> bool:
        if TBoxService.check_acyclic(definitions) is not None:
            return False
        defined = {d.lhs for d in definitions}
        return not any(atoms_of(d.rhs) & defined for d in definitions)

    @staticmethod
    def rewrite_gci(lhs: Concept, rhs: Concept, fresh: FreshNames,
                    name: Optional[str] = None) -> List[TboxDefinition]:
        """C1 <= C2 becomes C1 == C2 & C3 with C3 fresh (or the requested name)"""
        if not isinstance(lhs, Atom):
            raise NonAtomicDefinitionError("general concept inclusions need a concept name on the left")
        extra = fresh.reserve(name) if name is not None else fresh.next()
        return [TboxDefinition(lhs.name, And(rhs, Atom(extra)))]

    @staticmethod
    def definitions_of(kb: KnowledgeBase) -> Tuple[List[TboxDefinition], Signature]:
        """
        Definitions with every GCI rewritten, and the signature extended by
        the fresh names.
        """
        definitions = list(kb.tbox)
        if not kb.gcis:
            return definitions, kb.signature
        used = set(kb.signature.concepts) | set(kb.signature.objects) | set(kb.signature.features) \
            | set(kb.signature.box_roles) | set(kb.signature.dia_roles)
        fresh = FreshNames(used)
        added: Set[str] = set()
        for gci in kb.gcis:
            try:
                rewritten = TBoxService.rewrite_gci(gci.lhs, gci.rhs, fresh)
            except TBoxError as e:
                e.line = gci.line
                raise
            for definition in rewritten:
                added |= atoms_of(definition.rhs) - kb.signature.concepts
            definitions.extend(rewritten)
        signature = Signature(kb.signature.objects, kb.signature.features, kb.signature.box_roles,
                              kb.signature.dia_roles, kb.signature.concepts | frozenset(added))
        return definitions, signature

    @staticmethod
    def unravel_concept(concept: Concept, table: Dict[str, Concept],
                        memo: Optional[Dict[str, Concept]] = None) -> Concept:
        memo = {} if memo is None else memo
        active: List[str] = []

        def _expand(name: str) -> Concept:
            if name in memo:
                return memo[name]
            if name in active:
                raise CyclicTBoxError(active[active.index(name):] + [name])
            active.append(name)
            result = map_atoms(table[name], _replace)
            active.pop()
            memo[name] = result
            return result

        def _replace(atom: Atom) -> Concept:
            return _expand(atom.name) if atom.name in table else atom

        return map_atoms(concept, _replace)

    @staticmethod
    def unravel(terms: Iterable[AboxTerm], definitions: Sequence[TboxDefinition]) -> List[AboxTerm]:
        """Replace every defined atom by its definition, to a fixpoint"""
        TBoxService.require_acyclic(definitions)
        table = {d.lhs: d.rhs for d in definitions}
        memo: Dict[str, Concept] = {}
        result: List[AboxTerm] = []
        seen: Set[AboxTerm] = set()
        for term in terms:
            rewritten = map_term_concepts(term, lambda c: TBoxService.unravel_concept(c, table, memo))
            if rewritten not in seen:
                seen.add(rewritten)
                result.append(rewritten)
        return result

    @staticmethod
    def regime(kb: KnowledgeBase) -> Regime:
        if not kb.tbox and not kb.gcis:
            return Regime.NO_TBOX
        definitions, _ = TBoxService.definitions_of(kb)
        if TBoxService.check_completely_unravelled(definitions):
            return Regime.COMPLETELY_UNRAVELLED
        return Regime.ACYCLIC

    @staticmethod
    def prepare(kb: KnowledgeBase) -> Tuple[List[AboxTerm], Signature, Regime]:
        """Validate the TBox and return the unravelled ABox the engine runs on"""
        definitions, signature = TBoxService.definitions_of(kb)
        TBoxService.require_acyclic(definitions, dict(kb.tbox_lines))
        regime = TBoxService.regime(kb)
        if not definitions:
            return list(kb.abox), signature, regime
        abox = TBoxService.unravel(kb.abox, definitions)
        logger.info(f"Unravelled {len(kb.abox)} terms against {len(definitions)} definitions ({regime.value})")
        return abox, signature, regime


# Singleton instance
tbox_service = TBoxService()
