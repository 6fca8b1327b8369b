"""
Audit Service
Re-checks a completion against the depth inequalities that bound the
expansion, and against the derived rules the calculus admits
"""

import logging
from typing import List, Optional, Tuple

from lealc.core.exceptions import PreconditionError
from lealc.models.schemas import (
    DepthBoundReport, DepthViolation, DerivedRuleReport, DerivedRuleViolation,
)
from lealc.syntax.concepts import And, Box, Dia, Or, render_concept
from lealc.syntax.individuals import ModalOp, Sort, as_prefixed, render_individual
from lealc.syntax.measures import (
    abox_depths, concept_box_depth, concept_dia_depth, individual_box_depth, individual_dia_depth,
)
from lealc.syntax.terms import (
    BoxRel, DescribedBy, DiaRel, Incidence, MemberOf, described, incidence, member, render_term,
)
from .tableau import Tableau

logger = logging.getLogger(__name__)


class AuditService:
    """Report-valued checks over a tableau; none of them raise on a failed check"""

    @staticmethod
    def check_depth_bounds(tableau: Tableau, base_depths: Optional[Tuple[int, int]] = None) -> DepthBoundReport:
        """
        For every term of the expansion, with B and D the box and diamond
        depth of the input ABox:

            b I y      box(b) - box(y) <= B+1        dia(y) - dia(b) <= D+1
            b R y      box(b) + 1 - box(y) <= B+1    dia(y) - dia(b) <= D+1
            y R b      box(b) - box(y) <= B+1        dia(y) + 1 - dia(b) <= D+1
            b : C      box(b) + box(C) <= B+1        -dia(b) - dia(C) <= 0
            y :: C     -box(y) - box(C) <= 0         dia(y) + dia(C) <= D+1

        plus the caps on every occurring concept and individual.
        """
        box_a, dia_a = base_depths if base_depths is not None else abox_depths(tableau.initial)
        box_cap, dia_cap = box_a + 1, dia_a + 1
        violations: List[DepthViolation] = []

        def _check(subject: str, clause: str, lhs: int, rhs: int) -> None:
            if lhs > rhs:
                violations.append(DepthViolation(term=subject, clause=clause, lhs=lhs, rhs=rhs))

        bd, dd = individual_box_depth, individual_dia_depth
        for term in tableau.order:
            body, text = term.body, render_term(term)
            if isinstance(body, Incidence):
                b, y = body.obj, body.feature
                _check(text, "incidence box", bd(b) - bd(y), box_cap)
                _check(text, "incidence dia", dd(y) - dd(b), dia_cap)
            elif isinstance(body, BoxRel):
                b, y = body.obj, body.feature
                _check(text, "box relation box", bd(b) + 1 - bd(y), box_cap)
                _check(text, "box relation dia", dd(y) - dd(b), dia_cap)
            elif isinstance(body, DiaRel):
                y, b = body.feature, body.obj
                _check(text, "dia relation box", bd(b) - bd(y), box_cap)
                _check(text, "dia relation dia", dd(y) + 1 - dd(b), dia_cap)
            elif isinstance(body, MemberOf):
                b, c = body.individual, body.concept
                _check(text, "membership box", bd(b) + concept_box_depth(c), box_cap)
                _check(text, "membership dia", -dd(b) - concept_dia_depth(c), 0)
            elif isinstance(body, DescribedBy):
                y, c = body.individual, body.concept
                _check(text, "description box", -bd(y) - concept_box_depth(c), 0)
                _check(text, "description dia", dd(y) + concept_dia_depth(c), dia_cap)

        for concept in tableau.occurring:
            text = render_concept(concept)
            _check(text, "concept box depth", concept_box_depth(concept), box_cap)
            _check(text, "concept dia depth", concept_dia_depth(concept), dia_cap)

        for individual in tableau.registry:
            text = render_individual(individual)
            if individual.sort is Sort.OBJECT:
                _check(text, "object dia depth", -dd(individual), dia_cap)
                _check(text, "object box depth", bd(individual), box_cap)
            else:
                _check(text, "feature box depth", -bd(individual), box_cap)
                _check(text, "feature dia depth", dd(individual), dia_cap)

        if violations:
            logger.warning(f"{len(violations)} depth bound violations (B={box_a}, D={dia_a})")
        return DepthBoundReport(ok=not violations, box_depth=box_a, dia_depth=dia_a, violations=violations)

    @staticmethod
    def check_derived_rules(tableau: Tableau) -> DerivedRuleReport:
        """
        Every instance of a derived rule whose premises are in a clash-free
        completion must have its conclusion there too:

            b : C1|C2, y :: C1, y :: C2  =>  b I y
            y :: C1&C2, b : C1, b : C2   =>  b I y
            bdia[R](b) : C               =>  b : [R]C
            bbox[R](y) :: C              =>  y :: <R>C
        """
        if tableau.has_clash:
            raise PreconditionError("derived rules are only checked on clash-free completions")
        violations: List[DerivedRuleViolation] = []
        checked = 0

        def _require(rule: str, premises, conclusion) -> None:
            nonlocal checked
            checked += 1
            if conclusion not in tableau:
                violations.append(DerivedRuleViolation(
                    rule=rule,
                    premises=[render_term(p) for p in premises],
                    missing=render_term(conclusion),
                ))

        for concept in list(tableau.occurring):
            if isinstance(concept, Or):
                ys = tableau.described_by.get(concept.left, set()) & tableau.described_by.get(concept.right, set())
                for b in tableau.members_of.get(concept, ()):
                    for y in ys:
                        _require("or_A", (member(b, concept), described(y, concept.left),
                                          described(y, concept.right)), incidence(b, y))
            elif isinstance(concept, And):
                bs = tableau.members_of.get(concept.left, set()) & tableau.members_of.get(concept.right, set())
                for y in tableau.described_by.get(concept, ()):
                    for b in bs:
                        _require("and_X", (described(y, concept), member(b, concept.left),
                                           member(b, concept.right)), incidence(b, y))

        for b, concepts in list(tableau.members.items()):
            prefixed = as_prefixed(b, ModalOp.BLACK_DIAMOND)
            if prefixed is None:
                continue
            role, inner = prefixed
            for concept in concepts:
                _require("adj_box", (member(b, concept),), member(inner, Box(role, concept)))

        for y, concepts in list(tableau.described.items()):
            prefixed = as_prefixed(y, ModalOp.BLACK_BOX)
            if prefixed is None:
                continue
            role, inner = prefixed
            for concept in concepts:
                _require("adj_dia", (described(y, concept),), described(inner, Dia(role, concept)))

        if violations:
            logger.warning(f"{len(violations)} of {checked} derived rule instances not closed")
        return DerivedRuleReport(ok=not violations, checked=checked, violations=violations)


# Singleton instance
audit_service = AuditService()
