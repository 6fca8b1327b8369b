"""
Two-sorted individuals
Base names, classifying objects/features a{C}/x{C}, and the role-tagged
modal prefixes produced by the adjunction rules.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple, Union

from .concepts import Box, Concept, Dia, render_concept


class Sort(str, Enum):
    OBJECT = "object"
    FEATURE = "feature"


class ModalOp(str, Enum):
    """Prefix operators; the value is the keyword used in the KB grammar"""
    BLACK_DIAMOND = "bdia"   # object -> object, box role
    DIAMOND = "dia"          # object -> object, diamond role
    BOX = "box"              # feature -> feature, box role
    BLACK_BOX = "bbox"       # feature -> feature, diamond role

    @property
    def sort(self) -> Sort:
        if self in (ModalOp.BLACK_DIAMOND, ModalOp.DIAMOND):
            return Sort.OBJECT
        return Sort.FEATURE


@dataclass(frozen=True)
class Named:
    sort: Sort
    name: str


@dataclass(frozen=True)
class Classifier:
    sort: Sort
    concept: Concept


@dataclass(frozen=True)
class Prefixed:
    op: ModalOp
    role: str
    inner: "Individual"

    @property
    def sort(self) -> Sort:
        return self.op.sort


Individual = Union[Named, Classifier, Prefixed]


def obj(name: str) -> Named:
    return Named(Sort.OBJECT, name)


def feat(name: str) -> Named:
    return Named(Sort.FEATURE, name)


def classifying_object(concept: Concept) -> Classifier:
    return Classifier(Sort.OBJECT, concept)


def classifying_feature(concept: Concept) -> Classifier:
    return Classifier(Sort.FEATURE, concept)


def apply_op(op: ModalOp, role: str, inner: Individual) -> Individual:
    """
    Build op[role](inner) in canonical form.
    dia[R](a{C}) is a{<R>C} and box[R](x{C}) is x{[R]C}.
    """
    if inner.sort != op.sort:
        raise ValueError(f"{op.value} expects an individual of sort {op.sort.value}")
    if isinstance(inner, Classifier):
        if op is ModalOp.DIAMOND:
            return Classifier(Sort.OBJECT, Dia(role, inner.concept))
        if op is ModalOp.BOX:
            return Classifier(Sort.FEATURE, Box(role, inner.concept))
    return Prefixed(op, role, inner)


def canonicalize(individual: Individual) -> Individual:
    """Rewrite every dia/box redex bottom-up"""
    if isinstance(individual, Prefixed):
        return apply_op(individual.op, individual.role, canonicalize(individual.inner))
    return individual


def as_prefixed(individual: Individual, op: ModalOp) -> Optional[Tuple[str, Individual]]:
    """
    Read an individual as op[role](inner), seeing through classifier
    rewriting: a{<R>C} reads as dia[R](a{C}) and x{[R]C} as box[R](x{C}).
    """
    if isinstance(individual, Prefixed) and individual.op is op:
        return individual.role, individual.inner
    if isinstance(individual, Classifier):
        if op is ModalOp.DIAMOND and individual.sort is Sort.OBJECT and isinstance(individual.concept, Dia):
            return individual.concept.role, Classifier(Sort.OBJECT, individual.concept.concept)
        if op is ModalOp.BOX and individual.sort is Sort.FEATURE and isinstance(individual.concept, Box):
            return individual.concept.role, Classifier(Sort.FEATURE, individual.concept.concept)
    return None


@lru_cache(maxsize=65536)
def render_individual(individual: Individual) -> str:
    if isinstance(individual, Named):
        return individual.name
    if isinstance(individual, Classifier):
        prefix = "a" if individual.sort is Sort.OBJECT else "x"
        return f"{prefix}{{{render_concept(individual.concept)}}}"
    return f"{individual.op.value}[{individual.role}]({render_individual(individual.inner)})"


class IndividualRegistry:
    """
    Interning table for individuals seen during a run.
    Re-deriving an individual returns the stored instance.
    """

    def __init__(self):
        self._table: Dict[Individual, Individual] = {}

    def intern(self, individual: Individual) -> Individual:
        stored = self._table.get(individual)
        if stored is None:
            self._table[individual] = individual
            stored = individual
        return stored

    def __contains__(self, individual: Individual) -> bool:
        return individual in self._table

    def __iter__(self) -> Iterator[Individual]:
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)
