"""
Formal Concept Analysis Service
Galois derivations, I-compatibility, complex-algebra box/diamond operators
and the model checker for LE-ALC terms and TBox definitions
"""

import logging
import threading
import weakref
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional

import numpy as np

from lealc.core.config import get_settings
from lealc.core.exceptions import LatticeTooLargeError, SemanticsError
from lealc.models.context import EnrichedContext, Interpretation, Pair, Polarity, StableSetPair
from lealc.models.schemas import (
    AtomExtension, CompatibilityReport, ModelDocument, SliceFailure, SliceFamily,
)
from lealc.syntax.concepts import And, Atom, Bot, Box, Concept, Dia, Or, Top
from lealc.syntax.individuals import Individual, Sort, render_individual
from lealc.syntax.parser import parse_individual
from lealc.syntax.terms import (
    AboxTerm, BoxRel, DescribedBy, DiaRel, Incidence, MemberOf, Signature, TboxDefinition,
)

logger = logging.getLogger(__name__)

# per-interpretation memo of concept extensions
_EVAL_CACHE: "weakref.WeakKeyDictionary[Interpretation, Dict[Concept, StableSetPair]]" = (
    weakref.WeakKeyDictionary()
)
_EVAL_LOCK = threading.Lock()


class FcaService:
    """Pure operations over polarities, enriched contexts and interpretations"""

    # ------------------------------------------------------------------
    # Galois connection
    # ------------------------------------------------------------------

    @staticmethod
    def poly_up(polarity: Polarity, objects: Iterable[str]) -> FrozenSet[str]:
        """B -> B^: the features shared by every object of B"""
        mask = polarity.object_mask(objects)
        return polarity.features_of(polarity.matrix[mask].all(axis=0))

    @staticmethod
    def poly_down(polarity: Polarity, features: Iterable[str]) -> FrozenSet[str]:
        """Y -> Yv: the objects having every feature of Y"""
        mask = polarity.feature_mask(features)
        return polarity.objects_of(polarity.matrix[:, mask].all(axis=1))

    @staticmethod
    def close_objects(polarity: Polarity, objects: Iterable[str]) -> FrozenSet[str]:
        return FcaService.poly_down(polarity, FcaService.poly_up(polarity, objects))

    @staticmethod
    def close_features(polarity: Polarity, features: Iterable[str]) -> FrozenSet[str]:
        return FcaService.poly_up(polarity, FcaService.poly_down(polarity, features))

    @staticmethod
    def is_stable_pair(polarity: Polarity, pair: StableSetPair) -> bool:
        return (FcaService.poly_up(polarity, pair.extent) == pair.intent
                and FcaService.poly_down(polarity, pair.intent) == pair.extent)

    # ------------------------------------------------------------------
    # Relation slices
    # ------------------------------------------------------------------

    @staticmethod
    def rel_slice(relation: Iterable[Pair], side: int, element: str) -> FrozenSet[str]:
        """
        side 0: {u | u T element}; side 1: {v | element T v}.
        For box relations (a, x) this gives R(0)[x] and R(1)[a]; for diamond
        relations (x, a) it gives R(0)[a] and R(1)[x].
        """
        if side == 0:
            return frozenset(u for u, v in relation if v == element)
        if side == 1:
            return frozenset(v for u, v in relation if u == element)
        raise ValueError(f"side must be 0 or 1, got {side}")

    @staticmethod
    def rel_image(relation: Iterable[Pair], side: int, subset: Iterable[str],
                  carrier: Iterable[str]) -> FrozenSet[str]:
        """Universal image: side 0 gives {u in carrier | u T v for all v in subset}"""
        relation = frozenset(relation)
        subset = frozenset(subset)
        if side == 0:
            return frozenset(u for u in carrier if all((u, v) in relation for v in subset))
        if side == 1:
            return frozenset(v for v in carrier if all((u, v) in relation for u in subset))
        raise ValueError(f"side must be 0 or 1, got {side}")

    # ------------------------------------------------------------------
    # I-compatibility
    # ------------------------------------------------------------------

    @staticmethod
    def check_i_compatibility(context: EnrichedContext) -> CompatibilityReport:
        polarity = context.base
        failures: List[SliceFailure] = []

        def _check(role: str, family: SliceFamily, element: str, members: FrozenSet[str], objects: bool):
            closure = (FcaService.close_objects(polarity, members) if objects
                       else FcaService.close_features(polarity, members))
            if closure != members:
                failures.append(SliceFailure(
                    role=role, family=family, element=element,
                    members=sorted(members), closure=sorted(closure),
                ))

        for role in sorted(context.box_rels):
            relation = context.box_rels[role]
            for x in polarity.features:
                _check(role, SliceFamily.BOX_OBJECTS, x, FcaService.rel_slice(relation, 0, x), True)
            for a in polarity.objects:
                _check(role, SliceFamily.BOX_FEATURES, a, FcaService.rel_slice(relation, 1, a), False)
        for role in sorted(context.dia_rels):
            relation = context.dia_rels[role]
            for a in polarity.objects:
                _check(role, SliceFamily.DIA_FEATURES, a, FcaService.rel_slice(relation, 0, a), False)
            for x in polarity.features:
                _check(role, SliceFamily.DIA_OBJECTS, x, FcaService.rel_slice(relation, 1, x), True)

        if failures:
            logger.debug(f"{len(failures)} non-stable relation slices")
        return CompatibilityReport(ok=not failures, failures=failures)

    # ------------------------------------------------------------------
    # Complex-algebra operators
    # ------------------------------------------------------------------

    @staticmethod
    def box_op(context: EnrichedContext, role: str, pair: StableSetPair) -> StableSetPair:
        """[R]c: extent is R(0)[intent of c]"""
        relation = context.box_relation(role)
        extent = FcaService.rel_image(relation, 0, pair.intent, context.base.objects)
        return StableSetPair(extent, FcaService.poly_up(context.base, extent))

    @staticmethod
    def dia_op(context: EnrichedContext, role: str, pair: StableSetPair) -> StableSetPair:
        """<R>c: intent is R(0)[extent of c]"""
        relation = context.dia_relation(role)
        intent = FcaService.rel_image(relation, 0, pair.extent, context.base.features)
        return StableSetPair(FcaService.poly_down(context.base, intent), intent)

    @staticmethod
    def top(polarity: Polarity) -> StableSetPair:
        objects = frozenset(polarity.objects)
        return StableSetPair(objects, FcaService.poly_up(polarity, objects))

    @staticmethod
    def bottom(polarity: Polarity) -> StableSetPair:
        features = frozenset(polarity.features)
        return StableSetPair(FcaService.poly_down(polarity, features), features)

    # ------------------------------------------------------------------
    # Model checking
    # ------------------------------------------------------------------

    @staticmethod
    def eval_concept(interpretation: Interpretation, concept: Concept) -> StableSetPair:
        with _EVAL_LOCK:
            cache = _EVAL_CACHE.setdefault(interpretation, {})
            cached = cache.get(concept)
        if cached is not None:
            return cached

        context = interpretation.context
        polarity = context.base
        if isinstance(concept, Atom):
            result = interpretation.atom(concept.name)
        elif isinstance(concept, Top):
            result = FcaService.top(polarity)
        elif isinstance(concept, Bot):
            result = FcaService.bottom(polarity)
        elif isinstance(concept, And):
            left = FcaService.eval_concept(interpretation, concept.left)
            right = FcaService.eval_concept(interpretation, concept.right)
            extent = left.extent & right.extent
            result = StableSetPair(extent, FcaService.poly_up(polarity, extent))
        elif isinstance(concept, Or):
            left = FcaService.eval_concept(interpretation, concept.left)
            right = FcaService.eval_concept(interpretation, concept.right)
            intent = left.intent & right.intent
            result = StableSetPair(FcaService.poly_down(polarity, intent), intent)
        elif isinstance(concept, Box):
            result = FcaService.box_op(context, concept.role,
                                       FcaService.eval_concept(interpretation, concept.concept))
        elif isinstance(concept, Dia):
            result = FcaService.dia_op(context, concept.role,
                                       FcaService.eval_concept(interpretation, concept.concept))
        else:
            raise SemanticsError(f"not a concept: {concept!r}")

        with _EVAL_LOCK:
            cache[concept] = result
        return result

    @staticmethod
    def _element(interpretation: Interpretation, individual: Individual) -> str:
        element = interpretation.element_of(individual)
        polarity = interpretation.context.base
        index = polarity.object_index if individual.sort is Sort.OBJECT else polarity.feature_index
        if element not in index:
            raise SemanticsError(f"{individual.sort.value} {individual!r} maps to {element!r} outside its carrier")
        return element

    @staticmethod
    def satisfies(interpretation: Interpretation, term: AboxTerm) -> bool:
        body = term.body
        element = FcaService._element
        if isinstance(body, MemberOf):
            holds = element(interpretation, body.individual) in \
                FcaService.eval_concept(interpretation, body.concept).extent
        elif isinstance(body, DescribedBy):
            holds = element(interpretation, body.individual) in \
                FcaService.eval_concept(interpretation, body.concept).intent
        elif isinstance(body, Incidence):
            pair = (element(interpretation, body.obj), element(interpretation, body.feature))
            holds = pair in interpretation.context.base.incidence
        elif isinstance(body, BoxRel):
            pair = (element(interpretation, body.obj), element(interpretation, body.feature))
            holds = pair in interpretation.context.box_relation(body.role)
        elif isinstance(body, DiaRel):
            pair = (element(interpretation, body.feature), element(interpretation, body.obj))
            holds = pair in interpretation.context.dia_relation(body.role)
        else:
            raise SemanticsError(f"not a term: {term!r}")
        return holds if term.positive else not holds

    @staticmethod
    def satisfies_all(interpretation: Interpretation, terms: Iterable[AboxTerm]) -> bool:
        return all(FcaService.satisfies(interpretation, t) for t in terms)

    @staticmethod
    def satisfies_tbox(interpretation: Interpretation, definitions: Iterable[TboxDefinition]) -> bool:
        for definition in definitions:
            lhs = FcaService.eval_concept(interpretation, Atom(definition.lhs))
            rhs = FcaService.eval_concept(interpretation, definition.rhs)
            if lhs != rhs:
                return False
        return True

    # ------------------------------------------------------------------
    # Concept lattice
    # ------------------------------------------------------------------

    @staticmethod
    def iter_concepts(polarity: Polarity, max_elements: Optional[int] = None) -> Iterator[StableSetPair]:
        """
        All formal concepts, extents in lectic order (NextClosure over objects).
        """
        limit = get_settings().lattice_max_elements if max_elements is None else max_elements
        if len(polarity.objects) > limit or len(polarity.features) > limit:
            raise LatticeTooLargeError(
                f"concept lattice of a {len(polarity.objects)}x{len(polarity.features)} context "
                f"exceeds the limit of {limit} elements per side"
            )

        matrix = polarity.matrix
        n = len(polarity.objects)

        def _close(mask: np.ndarray) -> np.ndarray:
            intent = matrix[mask].all(axis=0)
            return matrix[:, intent].all(axis=1)

        current = _close(np.zeros(n, dtype=bool))
        while True:
            extent = polarity.objects_of(current)
            yield StableSetPair(extent, FcaService.poly_up(polarity, extent))
            if current.all():
                return
            for i in range(n - 1, -1, -1):
                if current[i]:
                    continue
                candidate = current.copy()
                candidate[i:] = False
                candidate[i] = True
                closed = _close(candidate)
                if np.array_equal(closed[:i], current[:i]):
                    current = closed
                    break

    @staticmethod
    def concept_lattice(polarity: Polarity, max_elements: Optional[int] = None) -> List[StableSetPair]:
        """Every stable pair, ordered so that extent inclusion is respected"""
        concepts = list(FcaService.iter_concepts(polarity, max_elements))
        return sorted(concepts, key=lambda c: (len(c.extent), sorted(c.extent)))

    # ------------------------------------------------------------------
    # Documents
    # ------------------------------------------------------------------

    @staticmethod
    def to_document(interpretation: Interpretation) -> ModelDocument:
        context = interpretation.context
        polarity = context.base
        return ModelDocument(
            objects=list(polarity.objects),
            features=list(polarity.features),
            incidence=[list(p) for p in sorted(polarity.incidence)],
            box={r: [list(p) for p in sorted(context.box_rels[r])] for r in sorted(context.box_rels)},
            dia={r: [list(p) for p in sorted(context.dia_rels[r])] for r in sorted(context.dia_rels)},
            atoms={
                name: AtomExtension(extent=sorted(pair.extent), intent=sorted(pair.intent))
                for name, pair in sorted(interpretation.atom_map.items())
            },
            individuals={
                render_individual(i): e
                for i, e in sorted(interpretation.individual_map.items(), key=lambda kv: render_individual(kv[0]))
            },
        )

    @staticmethod
    def from_document(document: ModelDocument, signature: Optional[Signature] = None) -> Interpretation:
        """Rebuild an interpretation; individuals are re-parsed when a signature is given"""
        polarity = Polarity.build(document.objects, document.features,
                                  (tuple(p) for p in document.incidence))
        context = EnrichedContext(
            base=polarity,
            box_rels={r: frozenset(tuple(p) for p in pairs) for r, pairs in document.box.items()},
            dia_rels={r: frozenset(tuple(p) for p in pairs) for r, pairs in document.dia.items()},
        )
        atoms = {
            name: StableSetPair(frozenset(ext.extent), frozenset(ext.intent))
            for name, ext in document.atoms.items()
        }
        for name, pair in atoms.items():
            if not FcaService.is_stable_pair(polarity, pair):
                raise SemanticsError(f"atom {name} is not a stable pair of the context")
        individuals: Dict[Individual, str] = {}
        if signature is not None:
            for rendering, element in document.individuals.items():
                individuals[parse_individual(rendering, signature)] = element
        return Interpretation(context, individuals, atoms)


# Singleton instance
fca_service = FcaService()
