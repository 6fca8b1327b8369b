"""
Model Extraction Service
Builds the enriched context of a clash-free completion and re-checks it
independently with the model checker
"""

import logging
from typing import Dict, Iterable, List, Optional

from lealc.core.exceptions import PreconditionError
from lealc.models.context import EnrichedContext, Interpretation, Polarity, StableSetPair
from lealc.models.schemas import VerificationReport
from lealc.syntax.concepts import Atom, atoms_of, render_concept
from lealc.syntax.individuals import (
    Individual, Sort, classifying_feature, classifying_object, render_individual,
)
from lealc.syntax.terms import AboxTerm, Signature, render_term
from .fca_service import FcaService
from .tableau import Tableau

logger = logging.getLogger(__name__)

TOP_OBJECT = "a_⊤"
BOTTOM_FEATURE = "x_⊥"


class ExtractionService:
    """Completion -> interpretation, and the soundness re-check"""

    @staticmethod
    def element_id(individual: Individual) -> str:
        return render_individual(individual)

    @staticmethod
    def extract_model(tableau: Tableau, signature: Optional[Signature] = None) -> Interpretation:
        """
        Carriers are the individuals of the completion plus a_⊤ and x_⊥;
        relations hold exactly where the completion asserts them; an atom D
        is interpreted by (x_D down, a_D up).
        """
        if tableau.has_clash:
            raise PreconditionError("cannot extract a model from a tableau with a clash")
        signature = signature or Signature()
        element = ExtractionService.element_id

        individual_map: Dict[Individual, str] = {i: element(i) for i in tableau.registry}
        objects = [e for i, e in individual_map.items() if i.sort is Sort.OBJECT] + [TOP_OBJECT]
        features = [e for i, e in individual_map.items() if i.sort is Sort.FEATURE] + [BOTTOM_FEATURE]
        incidence = {(element(b), element(y)) for b, y in tableau.incidences}
        polarity = Polarity.build(objects, features, incidence)

        box_roles = set(signature.box_roles) | set(tableau.box_pairs)
        dia_roles = set(signature.dia_roles) | set(tableau.dia_pairs)
        context = EnrichedContext(
            base=polarity,
            box_rels={
                r: frozenset((element(b), element(y)) for b, y in tableau.box_pairs.get(r, ()))
                for r in sorted(box_roles)
            },
            dia_rels={
                r: frozenset((element(y), element(b)) for y, b in tableau.dia_pairs.get(r, ()))
                for r in sorted(dia_roles)
            },
        )

        atom_names = set(signature.concepts)
        for concept in tableau.occurring:
            atom_names |= atoms_of(concept)
        atom_map: Dict[str, StableSetPair] = {}
        bottom = FcaService.bottom(polarity)
        for name in sorted(atom_names):
            a_d, x_d = classifying_object(Atom(name)), classifying_feature(Atom(name))
            if a_d in individual_map and x_d in individual_map:
                extent = FcaService.poly_down(polarity, {individual_map[x_d]})
                intent = FcaService.poly_up(polarity, {individual_map[a_d]})
                atom_map[name] = StableSetPair(extent, intent)
            else:
                atom_map[name] = bottom

        logger.info(f"Extracted model with {len(objects)} objects and {len(features)} features")
        return Interpretation(context, individual_map, atom_map)

    @staticmethod
    def verify_extraction(tableau: Tableau, interpretation: Interpretation,
                          terms: Optional[Iterable[AboxTerm]] = None) -> VerificationReport:
        """
        Input terms hold, membership is decided by the classifiers, atoms are
        stable and the relations are I-compatible.
        """
        if tableau.has_clash:
            raise PreconditionError("verification needs a clash-free completion")
        terms = list(tableau.initial if terms is None else terms)
        element = interpretation.individual_map
        polarity = interpretation.context.base

        unsatisfied = [render_term(t) for t in terms if not FcaService.satisfies(interpretation, t)]

        membership: List[str] = []
        for concept in sorted(tableau.occurring, key=render_concept):
            value = FcaService.eval_concept(interpretation, concept)
            x_c = element.get(classifying_feature(concept))
            a_c = element.get(classifying_object(concept))
            for e in polarity.objects:
                in_extent = e in value.extent
                incident = x_c is not None and (e, x_c) in polarity.incidence
                if in_extent != incident:
                    membership.append(
                        f"{e} : {render_concept(concept)} (extent {in_extent}, incidence with x_C {incident})"
                    )
            for e in polarity.features:
                in_intent = e in value.intent
                incident = a_c is not None and (a_c, e) in polarity.incidence
                if in_intent != incident:
                    membership.append(
                        f"{e} :: {render_concept(concept)} (intent {in_intent}, incidence with a_C {incident})"
                    )

        unstable = [name for name, pair in sorted(interpretation.atom_map.items())
                    if not FcaService.is_stable_pair(polarity, pair)]
        compatibility = FcaService.check_i_compatibility(interpretation.context)

        ok = not unsatisfied and not membership and not unstable and compatibility.ok
        if not ok:
            logger.warning(
                f"Extraction check failed: {len(unsatisfied)} unsatisfied, {len(membership)} membership, "
                f"{len(unstable)} unstable atoms, {len(compatibility.failures)} slice failures"
            )
        return VerificationReport(
            ok=ok,
            unsatisfied_terms=unsatisfied,
            membership_violations=membership,
            unstable_atoms=unstable,
            compatibility=compatibility,
        )




# Singleton instance
extraction_service = ExtractionService()
