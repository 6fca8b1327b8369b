"""
Depth and size measures
Box/diamond depth of concepts, individuals and ABoxes, and the size
function the termination bound is stated in.
"""

from functools import lru_cache
from typing import FrozenSet, Iterable, Tuple

from .concepts import And, Box, Concept, Dia, Or, subformulas
from .individuals import Classifier, Individual, ModalOp, Prefixed, Sort
from .terms import AboxTerm, concepts_of_terms


def occurring_concepts(terms: Iterable[AboxTerm]) -> FrozenSet[Concept]:
    """Sub-formula closure of every concept asserted in the terms"""
    return concepts_of_terms(terms)


def occurs_in(concept: Concept, terms: Iterable[AboxTerm]) -> bool:
    for term in terms:
        if term.concept is not None and concept in subformulas(term.concept):
            return True
    return False


# ============================================================================
# CONCEPT DEPTH
# ============================================================================

@lru_cache(maxsize=65536)
def concept_box_depth(concept: Concept) -> int:
    if isinstance(concept, Box):
        return concept_box_depth(concept.concept) + 1
    if isinstance(concept, Dia):
        return concept_box_depth(concept.concept)
    if isinstance(concept, And):
        return max(concept_box_depth(concept.left), concept_box_depth(concept.right))
    if isinstance(concept, Or):
        return min(concept_box_depth(concept.left), concept_box_depth(concept.right))
    return 0


@lru_cache(maxsize=65536)
def concept_dia_depth(concept: Concept) -> int:
    if isinstance(concept, Dia):
        return concept_dia_depth(concept.concept) + 1
    if isinstance(concept, Box):
        return concept_dia_depth(concept.concept)
    if isinstance(concept, Or):
        return max(concept_dia_depth(concept.left), concept_dia_depth(concept.right))
    if isinstance(concept, And):
        return min(concept_dia_depth(concept.left), concept_dia_depth(concept.right))
    return 0


# ============================================================================
# INDIVIDUAL DEPTH
# ============================================================================

@lru_cache(maxsize=65536)
def individual_box_depth(individual: Individual) -> int:
    """Base names are 0; x{C} is -depth(C); bdia adds one, box removes one"""
    if isinstance(individual, Classifier):
        if individual.sort is Sort.FEATURE:
            return -concept_box_depth(individual.concept)
        return 0
    if isinstance(individual, Prefixed):
        inner = individual_box_depth(individual.inner)
        if individual.op is ModalOp.BLACK_DIAMOND:
            return inner + 1
        if individual.op is ModalOp.BOX:
            return inner - 1
        return inner
    return 0


@lru_cache(maxsize=65536)
def individual_dia_depth(individual: Individual) -> int:
    """Base names are 0; a{C} is -depth(C); bbox adds one, dia removes one"""
    if isinstance(individual, Classifier):
        if individual.sort is Sort.OBJECT:
            return -concept_dia_depth(individual.concept)
        return 0
    if isinstance(individual, Prefixed):
        inner = individual_dia_depth(individual.inner)
        if individual.op is ModalOp.BLACK_BOX:
            return inner + 1
        if individual.op is ModalOp.DIAMOND:
            return inner - 1
        return inner
    return 0


# ============================================================================
# ABOX DEPTH AND SIZE
# ============================================================================

def abox_depths(terms: Iterable[AboxTerm]) -> Tuple[int, int]:
    """(box depth, diamond depth); 0 when no concept occurs"""
    concepts = occurring_concepts(terms)
    box = max((concept_box_depth(c) for c in concepts), default=0)
    dia = max((concept_dia_depth(c) for c in concepts), default=0)
    return box, dia


def term_size(term: AboxTerm) -> int:
    """Relational terms count 2, concept terms 1+|sub(C)|, a negation adds 1"""
    if term.is_relational:
        size = 2
    else:
        size = 1 + len(subformulas(term.concept))
    return size if term.positive else size + 1


def abox_size(terms: Iterable[AboxTerm]) -> int:
    return sum(term_size(t) for t in terms)


def step_bound(terms: Iterable[AboxTerm], role_count: int) -> int:
    """(size * (box depth + dia depth + 2))^2 * (roles + 1)"""
    terms = list(terms)
    box, dia = abox_depths(terms)
    return (abox_size(terms) * (box + dia + 2)) ** 2 * (role_count + 1)
