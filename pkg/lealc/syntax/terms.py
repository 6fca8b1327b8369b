"""
ABox and TBox terms
The five positive assertion shapes, their negations, TBox definitions and
the declared signature of a knowledge base.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, Iterable, Optional, Tuple, Union

from .concepts import Concept, atoms_of, render_concept, roles_of, subformulas
from .individuals import (
    Classifier, Individual, ModalOp, Named, Prefixed, Sort, apply_op, render_individual,
)


@dataclass(frozen=True)
class MemberOf:
    """a : C"""
    individual: Individual
    concept: Concept


@dataclass(frozen=True)
class DescribedBy:
    """x :: C"""
    individual: Individual
    concept: Concept


@dataclass(frozen=True)
class Incidence:
    """a I x"""
    obj: Individual
    feature: Individual


@dataclass(frozen=True)
class BoxRel:
    """a R x for a box role R"""
    role: str
    obj: Individual
    feature: Individual


@dataclass(frozen=True)
class DiaRel:
    """x R a for a diamond role R"""
    role: str
    feature: Individual
    obj: Individual


TermBody = Union[MemberOf, DescribedBy, Incidence, BoxRel, DiaRel]
RELATIONAL = (Incidence, BoxRel, DiaRel)
CONCEPTUAL = (MemberOf, DescribedBy)


@dataclass(frozen=True)
class AboxTerm:
    body: TermBody
    positive: bool = True

    @property
    def is_relational(self) -> bool:
        return isinstance(self.body, RELATIONAL)

    @property
    def concept(self) -> Optional[Concept]:
        if isinstance(self.body, CONCEPTUAL):
            return self.body.concept
        return None

    def negate(self) -> "AboxTerm":
        return AboxTerm(self.body, not self.positive)

    def __str__(self) -> str:
        return render_term(self)


def pos(body: TermBody) -> AboxTerm:
    return AboxTerm(body, True)


def neg(body: TermBody) -> AboxTerm:
    return AboxTerm(body, False)


def individuals_of(term: AboxTerm) -> Tuple[Individual, ...]:
    body = term.body
    if isinstance(body, CONCEPTUAL):
        return (body.individual,)
    if isinstance(body, DiaRel):
        return (body.feature, body.obj)
    return (body.obj, body.feature)


@lru_cache(maxsize=65536)
def render_term(term: AboxTerm) -> str:
    body = term.body
    if isinstance(body, MemberOf):
        text = f"{render_individual(body.individual)} : {render_concept(body.concept)}"
    elif isinstance(body, DescribedBy):
        text = f"{render_individual(body.individual)} :: {render_concept(body.concept)}"
    elif isinstance(body, Incidence):
        text = f"{render_individual(body.obj)} I {render_individual(body.feature)}"
    elif isinstance(body, BoxRel):
        text = f"{render_individual(body.obj)} {body.role} {render_individual(body.feature)}"
    else:
        text = f"{render_individual(body.feature)} {body.role} {render_individual(body.obj)}"
    return text if term.positive else f"not {text}"


def map_term_concepts(term: AboxTerm, fn) -> AboxTerm:
    """Apply fn to every concept of the term, including inside classifier names"""
    def _ind(individual: Individual) -> Individual:
        if isinstance(individual, Classifier):
            return Classifier(individual.sort, fn(individual.concept))
        if isinstance(individual, Prefixed):
            return apply_op(individual.op, individual.role, _ind(individual.inner))
        return individual

    body = term.body
    if isinstance(body, MemberOf):
        new_body = MemberOf(_ind(body.individual), fn(body.concept))
    elif isinstance(body, DescribedBy):
        new_body = DescribedBy(_ind(body.individual), fn(body.concept))
    elif isinstance(body, Incidence):
        new_body = Incidence(_ind(body.obj), _ind(body.feature))
    elif isinstance(body, BoxRel):
        new_body = BoxRel(body.role, _ind(body.obj), _ind(body.feature))
    else:
        new_body = DiaRel(body.role, _ind(body.feature), _ind(body.obj))
    return AboxTerm(new_body, term.positive)


# ============================================================================
# TBOX
# ============================================================================

@dataclass(frozen=True)
class TboxDefinition:
    """lhs == rhs with an atomic left-hand side"""
    lhs: str
    rhs: Concept

    def __str__(self) -> str:
        return f"{self.lhs} == {render_concept(self.rhs)}"


@dataclass(frozen=True)
class Gci:
    """lhs <= rhs, rewritten into a definition before use"""
    lhs: Concept
    rhs: Concept
    line: Optional[int] = None


# ============================================================================
# SIGNATURE AND KNOWLEDGE BASE
# ============================================================================

@dataclass(frozen=True)
class Signature:
    objects: FrozenSet[str] = frozenset()
    features: FrozenSet[str] = frozenset()
    box_roles: FrozenSet[str] = frozenset()
    dia_roles: FrozenSet[str] = frozenset()
    concepts: FrozenSet[str] = frozenset()

    def merged(self, other: "Signature") -> "Signature":
        return Signature(
            self.objects | other.objects,
            self.features | other.features,
            self.box_roles | other.box_roles,
            self.dia_roles | other.dia_roles,
            self.concepts | other.concepts,
        )

    @property
    def role_count(self) -> int:
        return len(self.box_roles) + len(self.dia_roles)

    def declaration_lines(self) -> list[str]:
        lines = []
        for keyword, names in (
            ("object", self.objects),
            ("feature", self.features),
            ("boxrel", self.box_roles),
            ("diarel", self.dia_roles),
            ("concept", self.concepts),
        ):
            lines.extend(f"{keyword} {name}" for name in sorted(names))
        return lines


def signature_of(terms: Iterable[AboxTerm], definitions: Iterable[TboxDefinition] = ()) -> Signature:
    """Smallest signature covering the base names, roles and atoms used"""
    objects, features, boxes, dias, atoms = set(), set(), set(), set(), set()

    def _visit_concept(concept: Concept) -> None:
        atoms.update(atoms_of(concept))
        b, d = roles_of(concept)
        boxes.update(b)
        dias.update(d)

    def _visit_individual(individual: Individual) -> None:
        while isinstance(individual, Prefixed):
            (boxes if individual.op in (ModalOp.BLACK_DIAMOND, ModalOp.BOX) else dias).add(individual.role)
            individual = individual.inner
        if isinstance(individual, Named):
            (objects if individual.sort is Sort.OBJECT else features).add(individual.name)
        elif isinstance(individual, Classifier):
            _visit_concept(individual.concept)

    for term in terms:
        for individual in individuals_of(term):
            _visit_individual(individual)
        if term.concept is not None:
            _visit_concept(term.concept)
        if isinstance(term.body, BoxRel):
            boxes.add(term.body.role)
        elif isinstance(term.body, DiaRel):
            dias.add(term.body.role)
    for definition in definitions:
        atoms.add(definition.lhs)
        _visit_concept(definition.rhs)

    return Signature(frozenset(objects), frozenset(features), frozenset(boxes),
                     frozenset(dias), frozenset(atoms))


@dataclass(frozen=True)
class KnowledgeBase:
    abox: Tuple[AboxTerm, ...] = ()
    tbox: Tuple[TboxDefinition, ...] = ()
    gcis: Tuple[Gci, ...] = ()
    signature: Signature = field(default_factory=Signature)
    # line number of each TBox statement, keyed by lhs name
    tbox_lines: Tuple[Tuple[str, int], ...] = ()

    @property
    def terms(self) -> FrozenSet[AboxTerm]:
        return frozenset(self.abox)


def concepts_of_terms(terms: Iterable[AboxTerm]) -> FrozenSet[Concept]:
    """Every concept occurring in the terms (sub-formula closed)"""
    result: set = set()
    for term in terms:
        if term.concept is not None:
            result |= subformulas(term.concept)
    return frozenset(result)


# convenience for tests and generators
def member(individual: Individual, concept: Concept) -> AboxTerm:
    return pos(MemberOf(individual, concept))


def described(individual: Individual, concept: Concept) -> AboxTerm:
    return pos(DescribedBy(individual, concept))


def incidence(obj_: Individual, feature: Individual) -> AboxTerm:
    return pos(Incidence(obj_, feature))


def box_rel(role: str, obj_: Individual, feature: Individual) -> AboxTerm:
    return pos(BoxRel(role, obj_, feature))


def dia_rel(role: str, feature: Individual, obj_: Individual) -> AboxTerm:
    return pos(DiaRel(role, feature, obj_))
