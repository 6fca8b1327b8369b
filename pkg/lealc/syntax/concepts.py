"""
Concept language of LE-ALC
Atoms, top/bottom, meet, join, [R] box and <R> diamond, with printing
and sub-formula closure. Identity is syntactic: no AC-normalization.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Union


# ============================================================================
# CONCEPT AST
# ============================================================================

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Or:
    left: "Concept"
    right: "Concept"


@dataclass(frozen=True)
class Box:
    role: str
    concept: "Concept"


@dataclass(frozen=True)
class Dia:
    role: str
    concept: "Concept"


Concept = Union[Atom, Top, Bot, And, Or, Box, Dia]

TOP = Top()
BOT = Bot()

TOP_KEYWORD = "top"
BOT_KEYWORD = "bot"


def immediate_subterms(concept: Concept) -> tuple:
    if isinstance(concept, (And, Or)):
        return (concept.left, concept.right)
    if isinstance(concept, (Box, Dia)):
        return (concept.concept,)
    return ()


@lru_cache(maxsize=65536)
def subformulas(concept: Concept) -> FrozenSet[Concept]:
    """Reflexive-transitive closure of the immediate-subterm relation"""
    result = {concept}
    for sub in immediate_subterms(concept):
        result |= subformulas(sub)
    return frozenset(result)


def atoms_of(concept: Concept) -> FrozenSet[str]:
    return frozenset(c.name for c in subformulas(concept) if isinstance(c, Atom))


def roles_of(concept: Concept) -> tuple[FrozenSet[str], FrozenSet[str]]:
    """(box roles, diamond roles) mentioned in the concept"""
    subs = subformulas(concept)
    boxes = frozenset(c.role for c in subs if isinstance(c, Box))
    dias = frozenset(c.role for c in subs if isinstance(c, Dia))
    return boxes, dias


def map_atoms(concept: Concept, fn) -> Concept:
    """Rebuild a concept replacing every atom by fn(atom)"""
    if isinstance(concept, Atom):
        return fn(concept)
    if isinstance(concept, And):
        return And(map_atoms(concept.left, fn), map_atoms(concept.right, fn))
    if isinstance(concept, Or):
        return Or(map_atoms(concept.left, fn), map_atoms(concept.right, fn))
    if isinstance(concept, Box):
        return Box(concept.role, map_atoms(concept.concept, fn))
    if isinstance(concept, Dia):
        return Dia(concept.role, map_atoms(concept.concept, fn))
    return concept


# ============================================================================
# PRINTING
# ============================================================================

# modal > & > |
_PREC_OR = 1
_PREC_AND = 2
_PREC_UNARY = 3


def _precedence(concept: Concept) -> int:
    if isinstance(concept, Or):
        return _PREC_OR
    if isinstance(concept, And):
        return _PREC_AND
    return _PREC_UNARY


def _render(concept: Concept, min_prec: int) -> str:
    if isinstance(concept, Atom):
        text = concept.name
    elif isinstance(concept, Top):
        text = TOP_KEYWORD
    elif isinstance(concept, Bot):
        text = BOT_KEYWORD
    elif isinstance(concept, Or):
        # left-associative: only the right operand needs parentheses
        text = f"{_render(concept.left, _PREC_OR)} | {_render(concept.right, _PREC_AND)}"
    elif isinstance(concept, And):
        text = f"{_render(concept.left, _PREC_AND)} & {_render(concept.right, _PREC_UNARY)}"
    elif isinstance(concept, Box):
        text = f"[{concept.role}]{_render(concept.concept, _PREC_UNARY)}"
    elif isinstance(concept, Dia):
        text = f"<{concept.role}>{_render(concept.concept, _PREC_UNARY)}"
    else:
        raise TypeError(f"not a concept: {concept!r}")

    if _precedence(concept) < min_prec:
        return f"({text})"
    return text


@lru_cache(maxsize=65536)
def render_concept(concept: Concept) -> str:
    """Render in the knowledge-base grammar; output re-parses to the same AST"""
    return _render(concept, _PREC_OR)
