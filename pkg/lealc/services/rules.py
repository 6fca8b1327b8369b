"""
Expansion rule catalogue
Every rule is non-branching. A binding fixes the premises of one rule
instance and the canonical conclusions it would add. Bindings are found
incrementally from the term or concept that last arrived, or by a full
scan of the tableau.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Tuple

from lealc.syntax.concepts import And, Box, Concept, Dia, Or
from lealc.syntax.individuals import (
    Classifier, Individual, ModalOp, Sort, apply_op, as_prefixed,
    classifying_feature, classifying_object,
)
from lealc.syntax.terms import (
    AboxTerm, BoxRel, DescribedBy, DiaRel, Incidence, MemberOf, neg, pos,
)
from .tableau import Tableau


class RuleName(str, Enum):
    NOT_B = "not_b"
    NOT_X = "not_x"
    CREATE = "create"
    BASIC = "I"
    AND_A = "and_A"
    OR_X = "or_X"
    BOX = "box"
    DIA = "dia"
    APPEND_X = "x_C"
    APPEND_A = "a_C"
    ADJ_BOX = "R_box"
    ADJ_DIA = "R_dia"
    COMPAT_BOX_Y = "box_y"
    COMPAT_BBOX_Y = "bbox_y"
    COMPAT_DIA_B = "dia_b"
    COMPAT_BDIA_B = "bdia_b"
    AND_A_INV = "and_A_inv"
    OR_X_INV = "or_X_inv"

    @property
    def rank(self) -> int:
        return _RANK[self]


# negative, creation, structural, appending, adjunction, I-compatibility, inverse
_GROUPS = (
    (RuleName.NOT_B, RuleName.NOT_X),
    (RuleName.CREATE,),
    (RuleName.BASIC, RuleName.AND_A, RuleName.OR_X, RuleName.BOX, RuleName.DIA),
    (RuleName.APPEND_X, RuleName.APPEND_A),
    (RuleName.ADJ_BOX, RuleName.ADJ_DIA),
    (RuleName.COMPAT_BOX_Y, RuleName.COMPAT_BBOX_Y, RuleName.COMPAT_DIA_B, RuleName.COMPAT_BDIA_B),
    (RuleName.AND_A_INV, RuleName.OR_X_INV),
)
_RANK = {rule: rank for rank, group in enumerate(_GROUPS) for rule in group}
RANK_COUNT = len(_GROUPS)


@dataclass(frozen=True)
class RuleBinding:
    rule: RuleName
    premises: Tuple[AboxTerm, ...]
    conclusions: Tuple[AboxTerm, ...]

    def new_conclusions(self, tableau: Tableau) -> List[AboxTerm]:
        return [c for c in self.conclusions if c not in tableau]

    def is_applicable(self, tableau: Tableau) -> bool:
        return any(c not in tableau for c in self.conclusions)


def _binding(tableau: Tableau, rule: RuleName, premises: Iterable[AboxTerm],
             conclusions: Iterable[AboxTerm]) -> RuleBinding:
    return RuleBinding(rule, tuple(premises), tuple(tableau.canonical(c) for c in conclusions))


# ============================================================================
# TRIGGERS
# ============================================================================

def triggered_by_concept(tableau: Tableau, concept: Concept) -> Iterator[RuleBinding]:
    """Bindings enabled by a concept that has just started to occur"""
    yield _binding(tableau, RuleName.CREATE, (), (
        pos(MemberOf(classifying_object(concept), concept)),
        pos(DescribedBy(classifying_feature(concept), concept)),
    ))
    if isinstance(concept, And):
        left = tableau.members_of.get(concept.left, set())
        right = tableau.members_of.get(concept.right, set())
        for b in left & right:
            yield _and_inverse(tableau, b, concept)
    elif isinstance(concept, Or):
        left = tableau.described_by.get(concept.left, set())
        right = tableau.described_by.get(concept.right, set())
        for y in left & right:
            yield _or_inverse(tableau, y, concept)


def _and_inverse(tableau: Tableau, b: Individual, concept: And) -> RuleBinding:
    return _binding(tableau, RuleName.AND_A_INV,
                    (pos(MemberOf(b, concept.left)), pos(MemberOf(b, concept.right))),
                    (pos(MemberOf(b, concept)),))


def _or_inverse(tableau: Tableau, y: Individual, concept: Or) -> RuleBinding:
    return _binding(tableau, RuleName.OR_X_INV,
                    (pos(DescribedBy(y, concept.left)), pos(DescribedBy(y, concept.right))),
                    (pos(DescribedBy(y, concept)),))


def triggered_by_term(tableau: Tableau, term: AboxTerm) -> Iterator[RuleBinding]:
    """Bindings in which the given (already added) term is one of the premises"""
    body = term.body
    if not term.positive:
        if isinstance(body, MemberOf):
            yield _binding(tableau, RuleName.NOT_B, (term,),
                           (neg(Incidence(body.individual, classifying_feature(body.concept))),))
        elif isinstance(body, DescribedBy):
            yield _binding(tableau, RuleName.NOT_X, (term,),
                           (neg(Incidence(classifying_object(body.concept), body.individual)),))
        return

    if isinstance(body, MemberOf):
        yield from _member_triggers(tableau, term, body.individual, body.concept)
    elif isinstance(body, DescribedBy):
        yield from _described_triggers(tableau, term, body.individual, body.concept)
    elif isinstance(body, Incidence):
        yield from _incidence_triggers(tableau, term, body.obj, body.feature)
    elif isinstance(body, BoxRel):
        b, y, role = body.obj, body.feature, body.role
        yield _binding(tableau, RuleName.ADJ_BOX, (term,), (
            pos(Incidence(apply_op(ModalOp.BLACK_DIAMOND, role, b), y)),
            pos(Incidence(b, apply_op(ModalOp.BOX, role, y))),
        ))
    elif isinstance(body, DiaRel):
        y, b, role = body.feature, body.obj, body.role
        yield _binding(tableau, RuleName.ADJ_DIA, (term,), (
            pos(Incidence(apply_op(ModalOp.DIAMOND, role, b), y)),
            pos(Incidence(b, apply_op(ModalOp.BLACK_BOX, role, y))),
        ))


def _member_triggers(tableau: Tableau, term: AboxTerm, b: Individual, concept: Concept) -> Iterator[RuleBinding]:
    for y in list(tableau.described_by.get(concept, ())):
        yield _binding(tableau, RuleName.BASIC, (term, pos(DescribedBy(y, concept))),
                       (pos(Incidence(b, y)),))
    if isinstance(concept, And):
        yield _binding(tableau, RuleName.AND_A, (term,),
                       (pos(MemberOf(b, concept.left)), pos(MemberOf(b, concept.right))))
    if isinstance(concept, Box):
        for y in list(tableau.described_by.get(concept.concept, ())):
            yield _binding(tableau, RuleName.BOX, (term, pos(DescribedBy(y, concept.concept))),
                           (pos(BoxRel(concept.role, b, y)),))
    for dia in list(tableau.dias_over.get(concept, ())):
        for y in list(tableau.described_by.get(dia, ())):
            yield _binding(tableau, RuleName.DIA, (pos(DescribedBy(y, dia)), term),
                           (pos(DiaRel(dia.role, y, b)),))
    owned = tableau.members.get(b, set())
    for conj in list(tableau.ands_with.get(concept, ())):
        if conj.left in owned and conj.right in owned:
            yield _and_inverse(tableau, b, conj)


def _described_triggers(tableau: Tableau, term: AboxTerm, y: Individual, concept: Concept) -> Iterator[RuleBinding]:
    for b in list(tableau.members_of.get(concept, ())):
        yield _binding(tableau, RuleName.BASIC, (pos(MemberOf(b, concept)), term),
                       (pos(Incidence(b, y)),))
    if isinstance(concept, Or):
        yield _binding(tableau, RuleName.OR_X, (term,),
                       (pos(DescribedBy(y, concept.left)), pos(DescribedBy(y, concept.right))))
    if isinstance(concept, Dia):
        for b in list(tableau.members_of.get(concept.concept, ())):
            yield _binding(tableau, RuleName.DIA, (term, pos(MemberOf(b, concept.concept))),
                           (pos(DiaRel(concept.role, y, b)),))
    for box in list(tableau.boxes_over.get(concept, ())):
        for b in list(tableau.members_of.get(box, ())):
            yield _binding(tableau, RuleName.BOX, (pos(MemberOf(b, box)), term),
                           (pos(BoxRel(box.role, b, y)),))
    owned = tableau.described.get(y, set())
    for disj in list(tableau.ors_with.get(concept, ())):
        if disj.left in owned and disj.right in owned:
            yield _or_inverse(tableau, y, disj)


def _incidence_triggers(tableau: Tableau, term: AboxTerm, b: Individual, y: Individual) -> Iterator[RuleBinding]:
    if isinstance(y, Classifier) and y.sort is Sort.FEATURE:
        yield _binding(tableau, RuleName.APPEND_X, (term,), (pos(MemberOf(b, y.concept)),))
    if isinstance(b, Classifier) and b.sort is Sort.OBJECT:
        yield _binding(tableau, RuleName.APPEND_A, (term,), (pos(DescribedBy(y, b.concept)),))

    boxed = as_prefixed(y, ModalOp.BOX)
    if boxed is not None:
        role, inner = boxed
        yield _binding(tableau, RuleName.COMPAT_BOX_Y, (term,), (pos(BoxRel(role, b, inner)),))
    black_boxed = as_prefixed(y, ModalOp.BLACK_BOX)
    if black_boxed is not None:
        role, inner = black_boxed
        yield _binding(tableau, RuleName.COMPAT_BBOX_Y, (term,), (pos(DiaRel(role, inner, b)),))
    diamonded = as_prefixed(b, ModalOp.DIAMOND)
    if diamonded is not None:
        role, inner = diamonded
        yield _binding(tableau, RuleName.COMPAT_DIA_B, (term,), (pos(DiaRel(role, y, inner)),))
    black_diamonded = as_prefixed(b, ModalOp.BLACK_DIAMOND)
    if black_diamonded is not None:
        role, inner = black_diamonded
        yield _binding(tableau, RuleName.COMPAT_BDIA_B, (term,), (pos(BoxRel(role, inner, y)),))


# ============================================================================
# FULL SCAN
# ============================================================================

def all_bindings(tableau: Tableau) -> Iterator[RuleBinding]:
    """Every rule instance whose premises are present, applicable or not"""
    for concept in list(tableau.occurring):
        yield from triggered_by_concept(tableau, concept)
    for term in list(tableau.order):
        yield from triggered_by_term(tableau, term)
