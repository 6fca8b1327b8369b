"""
Oracle Service
Brute-force model search over bounded enriched formal contexts, used to
cross-check engine verdicts on small knowledge bases
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from lealc.core.config import get_settings
from lealc.core.exceptions import OracleBoundError, PreconditionError
from lealc.models.context import EnrichedContext, Interpretation, Pair, Polarity, StableSetPair
from lealc.models.schemas import CrossCheckReport
from lealc.syntax.concepts import Concept, atoms_of
from lealc.syntax.individuals import Individual, Named, Sort
from lealc.syntax.parser import render_abox_lines
from lealc.syntax.terms import (
    AboxTerm, BoxRel, DescribedBy, Incidence, MemberOf, Signature,
    concepts_of_terms, individuals_of, signature_of,
)
from .extraction_service import extraction_service
from .fca_service import FcaService
from .tableau_service import tableau_service

logger = logging.getLogger(__name__)


@dataclass
class OracleResult:
    model: Optional[Interpretation]
    searched: int
    carrier_bound: int

    @property
    def found(self) -> bool:
        return self.model is not None


def _carrier(prefix: str, size: int) -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, size + 1))


def _subsets_by_size(pairs: Sequence[Pair]) -> Iterator[FrozenSet[Pair]]:
    """All subsets, smallest first"""
    for k in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, k):
            yield frozenset(chosen)


class OracleService:
    """Exhaustive, unoptimised search; every candidate is checked by the model checker"""

    @staticmethod
    def _max_carrier(max_carrier: Optional[int]) -> int:
        return get_settings().oracle_max_carrier if max_carrier is None else max_carrier

    @staticmethod
    def model_bound(model: Optional[Interpretation]) -> int:
        """Larger carrier of an extracted model, or the configured bound without one"""
        if model is None:
            return get_settings().oracle_max_carrier
        polarity = model.context.base
        return max(len(polarity.objects), len(polarity.features))

    @staticmethod
    def _require_bound(n_objects: int, n_features: int, max_carrier: int) -> None:
        if n_objects > max_carrier or n_features > max_carrier:
            raise OracleBoundError(
                f"carrier sizes {n_objects}x{n_features} exceed the oracle bound {max_carrier}"
            )

    # ------------------------------------------------------------------
    # Context enumeration
    # ------------------------------------------------------------------

    @staticmethod
    def compatible_relations(polarity: Polarity, diamond: bool = False) -> List[FrozenSet[Pair]]:
        """
        Every I-compatible relation of one role, smallest first.
        Slices are tested against the precomputed stable sets.
        """
        lattice = FcaService.concept_lattice(polarity, max_elements=max(len(polarity.objects),
                                                                        len(polarity.features)))
        extents = {c.extent for c in lattice}
        intents = {c.intent for c in lattice}
        if diamond:
            pairs = [(x, a) for x in polarity.features for a in polarity.objects]
        else:
            pairs = [(a, x) for a in polarity.objects for x in polarity.features]

        result = []
        for relation in _subsets_by_size(pairs):
            if diamond:
                ok = all(FcaService.rel_slice(relation, 0, a) in intents for a in polarity.objects) and \
                    all(FcaService.rel_slice(relation, 1, x) in extents for x in polarity.features)
            else:
                ok = all(FcaService.rel_slice(relation, 0, x) in extents for x in polarity.features) and \
                    all(FcaService.rel_slice(relation, 1, a) in intents for a in polarity.objects)
            if ok:
                result.append(relation)
        return result

    @staticmethod
    def iter_contexts(n_objects: int, n_features: int, box_roles: Iterable[str] = (),
                      dia_roles: Iterable[str] = (), max_carrier: Optional[int] = None) -> Iterator[EnrichedContext]:
        """Enriched contexts of the given carrier sizes, incidence by ascending cardinality"""
        OracleService._require_bound(n_objects, n_features, OracleService._max_carrier(max_carrier))
        box_roles, dia_roles = sorted(box_roles), sorted(dia_roles)
        objects, features = _carrier("o", n_objects), _carrier("f", n_features)
        pairs = [(a, x) for a in objects for x in features]

        for incidence in _subsets_by_size(pairs):
            polarity = Polarity.build(objects, features, incidence)
            box_choices = OracleService.compatible_relations(polarity) if box_roles else []
            dia_choices = OracleService.compatible_relations(polarity, diamond=True) if dia_roles else []
            pools = [box_choices] * len(box_roles) + [dia_choices] * len(dia_roles)
            for chosen in itertools.product(*pools):
                yield EnrichedContext(
                    base=polarity,
                    box_rels=dict(zip(box_roles, chosen[:len(box_roles)])),
                    dia_rels=dict(zip(dia_roles, chosen[len(box_roles):])),
                )

    @staticmethod
    def iter_contexts_filtered(n_objects: int, n_features: int, box_roles: Iterable[str] = (),
                               dia_roles: Iterable[str] = (),
                               max_carrier: Optional[int] = None) -> Iterator[EnrichedContext]:
        """Same family as iter_contexts, by generating every relation and filtering afterwards"""
        OracleService._require_bound(n_objects, n_features, OracleService._max_carrier(max_carrier))
        box_roles, dia_roles = sorted(box_roles), sorted(dia_roles)
        objects, features = _carrier("o", n_objects), _carrier("f", n_features)
        box_pairs = [(a, x) for a in objects for x in features]
        dia_pairs = [(x, a) for x in features for a in objects]

        for incidence in _subsets_by_size(box_pairs):
            polarity = Polarity.build(objects, features, incidence)
            pools = [list(_subsets_by_size(box_pairs))] * len(box_roles) + \
                [list(_subsets_by_size(dia_pairs))] * len(dia_roles)
            for chosen in itertools.product(*pools):
                context = EnrichedContext(
                    base=polarity,
                    box_rels=dict(zip(box_roles, chosen[:len(box_roles)])),
                    dia_rels=dict(zip(dia_roles, chosen[len(box_roles):])),
                )
                if FcaService.check_i_compatibility(context).ok:
                    yield context

    @staticmethod
    def iter_atom_maps(polarity: Polarity, atom_names: Iterable[str]) -> Iterator[Dict[str, StableSetPair]]:
        names = sorted(atom_names)
        lattice = FcaService.concept_lattice(polarity, max_elements=max(len(polarity.objects),
                                                                        len(polarity.features)))
        for chosen in itertools.product(lattice, repeat=len(names)):
            yield dict(zip(names, chosen))

    @staticmethod
    def iter_individual_maps(polarity: Polarity, individuals: Iterable[Individual]) -> Iterator[Dict[Individual, str]]:
        """Every sort-respecting assignment of the individuals to elements"""
        individuals = list(individuals)
        carriers = [polarity.objects if i.sort is Sort.OBJECT else polarity.features for i in individuals]
        for chosen in itertools.product(*carriers):
            yield dict(zip(individuals, chosen))

    @staticmethod
    def enumerate_enriched_contexts(n_objects: int, n_features: int, box_roles: Iterable[str] = (),
                                    dia_roles: Iterable[str] = (), atom_names: Iterable[str] = (),
                                    individuals: Iterable[Individual] = (),
                                    max_carrier: Optional[int] = None) -> Iterator[Interpretation]:
        """
        Every interpretation over carriers of exactly the given sizes: all
        I-compatible relations, all stable atom pairs, all individual maps.
        """
        individuals = list(individuals)
        atom_names = sorted(atom_names)
        for context in OracleService.iter_contexts(n_objects, n_features, box_roles, dia_roles, max_carrier):
            for atom_map in OracleService.iter_atom_maps(context.base, atom_names):
                for individual_map in OracleService.iter_individual_maps(context.base, individuals):
                    yield Interpretation(context, individual_map, atom_map)

    # ------------------------------------------------------------------
    # Model search
    # ------------------------------------------------------------------

    @staticmethod
    def _holds(term: AboxTerm, values: Dict[Concept, StableSetPair], context: EnrichedContext,
               assignment: Dict[Individual, str]) -> bool:
        body = term.body
        if isinstance(body, MemberOf):
            holds = assignment[body.individual] in values[body.concept].extent
        elif isinstance(body, DescribedBy):
            holds = assignment[body.individual] in values[body.concept].intent
        elif isinstance(body, Incidence):
            holds = (assignment[body.obj], assignment[body.feature]) in context.base.incidence
        elif isinstance(body, BoxRel):
            holds = (assignment[body.obj], assignment[body.feature]) in context.box_rels[body.role]
        else:
            holds = (assignment[body.feature], assignment[body.obj]) in context.dia_rels[body.role]
        return holds if term.positive else not holds

    @staticmethod
    def brute_force_consistent(abox: Iterable[AboxTerm], max_carrier: Optional[int] = None,
                               signature: Optional[Signature] = None) -> OracleResult:
        """
        First interpretation (smallest carriers first) satisfying every term,
        or None after exhausting every carrier size up to the bound.
        """
        terms = list(dict.fromkeys(abox))
        bound = OracleService._max_carrier(max_carrier)
        signature = signature_of(terms).merged(signature) if signature is not None else signature_of(terms)

        individuals: List[Individual] = []
        for term in terms:
            for individual in individuals_of(term):
                if not isinstance(individual, Named):
                    raise PreconditionError("the oracle only interprets named individuals")
                if individual not in individuals:
                    individuals.append(individual)
        concepts = concepts_of_terms(terms)
        atom_names: Set[str] = set()
        for concept in concepts:
            atom_names |= atoms_of(concept)
        box_roles, dia_roles = sorted(signature.box_roles), sorted(signature.dia_roles)
        needs_object = any(i.sort is Sort.OBJECT for i in individuals)
        needs_feature = any(i.sort is Sort.FEATURE for i in individuals)

        sizes = sorted(
            ((n_a, n_x) for n_a in range(int(needs_object), bound + 1)
             for n_x in range(int(needs_feature), bound + 1)),
            key=lambda s: (s[0] + s[1], s),
        )
        searched = 0
        for n_a, n_x in sizes:
            for context in OracleService.iter_contexts(n_a, n_x, box_roles, dia_roles, bound):
                for atom_map in OracleService.iter_atom_maps(context.base, atom_names):
                    atoms_only = Interpretation(context, {}, atom_map)
                    values = {c: FcaService.eval_concept(atoms_only, c) for c in concepts}
                    for assignment in OracleService.iter_individual_maps(context.base, individuals):
                        searched += 1
                        if all(OracleService._holds(t, values, context, assignment) for t in terms):
                            model = Interpretation(context, assignment, atom_map)
                            if not FcaService.satisfies_all(model, terms):
                                logger.error("Oracle candidate rejected by the model checker")
                                continue
                            logger.info(f"Oracle found a model on {n_a}x{n_x} carriers after {searched} candidates")
                            return OracleResult(model, searched, bound)

        logger.info(f"Oracle exhausted {searched} candidates up to carrier size {bound}")
        return OracleResult(None, searched, bound)

    # ------------------------------------------------------------------
    # Cross check
    # ------------------------------------------------------------------

    @staticmethod
    def cross_check(abox: Iterable[AboxTerm], max_carrier: Optional[int] = None,
                    signature: Optional[Signature] = None) -> CrossCheckReport:
        """
        A consistent verdict agrees when the oracle finds a model or the
        extracted model verifies; an inconsistent one needs the oracle to
        find none within the bound. Without an explicit bound the search
        goes up to the size of the extracted model.
        """
        terms = list(dict.fromkeys(abox))
        verdict = tableau_service.saturate(terms, signature)
        verified: Optional[bool] = None
        if verdict.consistent:
            report = extraction_service.verify_extraction(verdict.tableau, verdict.model)
            verified = report.ok

        if max_carrier is None:
            max_carrier = OracleService.model_bound(verdict.model)
        oracle = OracleService.brute_force_consistent(terms, max_carrier, verdict.signature)
        if verdict.consistent:
            agree = oracle.found or bool(verified)
            note = "oracle found a model" if oracle.found else \
                f"no model up to carrier size {oracle.carrier_bound}; engine model verified={verified}"
        else:
            agree = not oracle.found
            note = f"engine clash on {verdict.clash[0]}" if agree else \
                "oracle found a model for an ABox the engine rejected"

        if not agree:
            logger.error(f"Oracle disagreement ({verdict.status.value}): {note}")
        return CrossCheckReport(
            agree=agree,
            engine_verdict=verdict.status,
            oracle_found_model=oracle.found,
            carrier_bound=oracle.carrier_bound,
            contexts_searched=oracle.searched,
            engine_model_verified=verified,
            abox=render_abox_lines(terms),
            witness=FcaService.to_document(oracle.model) if oracle.found else None,
            note=note,
        )


# Singleton instance
oracle_service = OracleService()
