"""
Formal-context value types
Polarities with a boolean incidence matrix, stable set pairs, enriched
contexts carrying the box/diamond relations, and interpretations.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

import numpy as np

from lealc.core.exceptions import SemanticsError
from lealc.syntax.individuals import Individual

Pair = Tuple[str, str]


@dataclass(frozen=True)
class Polarity:
    """(A, X, I) with A and X kept sorted by element id"""
    objects: Tuple[str, ...]
    features: Tuple[str, ...]
    incidence: FrozenSet[Pair]

    matrix: np.ndarray = field(init=False, repr=False, compare=False)
    object_index: Dict[str, int] = field(init=False, repr=False, compare=False)
    feature_index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(set(self.objects))))
        object.__setattr__(self, "features", tuple(sorted(set(self.features))))
        object.__setattr__(self, "incidence", frozenset(self.incidence))
        if set(self.objects) & set(self.features):
            raise SemanticsError("object and feature carriers must be disjoint")

        object_index = {a: i for i, a in enumerate(self.objects)}
        feature_index = {x: j for j, x in enumerate(self.features)}
        matrix = np.zeros((len(self.objects), len(self.features)), dtype=bool)
        for a, x in self.incidence:
            if a not in object_index or x not in feature_index:
                raise SemanticsError(f"incidence pair ({a}, {x}) outside the carriers")
            matrix[object_index[a], feature_index[x]] = True
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "object_index", object_index)
        object.__setattr__(self, "feature_index", feature_index)

    @classmethod
    def build(cls, objects: Iterable[str], features: Iterable[str], incidence: Iterable[Pair]) -> "Polarity":
        return cls(tuple(objects), tuple(features), frozenset(incidence))

    def object_mask(self, subset: Iterable[str]) -> np.ndarray:
        mask = np.zeros(len(self.objects), dtype=bool)
        for a in subset:
            if a not in self.object_index:
                raise SemanticsError(f"unknown object {a!r}")
            mask[self.object_index[a]] = True
        return mask

    def feature_mask(self, subset: Iterable[str]) -> np.ndarray:
        mask = np.zeros(len(self.features), dtype=bool)
        for x in subset:
            if x not in self.feature_index:
                raise SemanticsError(f"unknown feature {x!r}")
            mask[self.feature_index[x]] = True
        return mask

    def objects_of(self, mask: np.ndarray) -> FrozenSet[str]:
        return frozenset(self.objects[i] for i in np.flatnonzero(mask))

    def features_of(self, mask: np.ndarray) -> FrozenSet[str]:
        return frozenset(self.features[j] for j in np.flatnonzero(mask))


@dataclass(frozen=True)
class StableSetPair:
    """A formal concept (extent, intent)"""
    extent: FrozenSet[str]
    intent: FrozenSet[str]

    def leq(self, other: "StableSetPair") -> bool:
        return self.extent <= other.extent


@dataclass(frozen=True)
class EnrichedContext:
    """
    A polarity with one relation per role.
    box_rels[R] is a set of (object, feature) pairs, dia_rels[R] a set of
    (feature, object) pairs.
    """
    base: Polarity
    box_rels: Mapping[str, FrozenSet[Pair]] = field(default_factory=dict)
    dia_rels: Mapping[str, FrozenSet[Pair]] = field(default_factory=dict)

    def __post_init__(self):
        objects, features = set(self.base.objects), set(self.base.features)
        for role, pairs in self.box_rels.items():
            for a, x in pairs:
                if a not in objects or x not in features:
                    raise SemanticsError(f"box relation {role} pair ({a}, {x}) outside the carriers")
        for role, pairs in self.dia_rels.items():
            for x, a in pairs:
                if a not in objects or x not in features:
                    raise SemanticsError(f"diamond relation {role} pair ({x}, {a}) outside the carriers")

    def __hash__(self) -> int:
        return hash((
            self.base,
            tuple(sorted((r, frozenset(p)) for r, p in self.box_rels.items())),
            tuple(sorted((r, frozenset(p)) for r, p in self.dia_rels.items())),
        ))

    def box_relation(self, role: str) -> FrozenSet[Pair]:
        if role not in self.box_rels:
            raise SemanticsError(f"unknown box role {role!r}")
        return self.box_rels[role]

    def dia_relation(self, role: str) -> FrozenSet[Pair]:
        if role not in self.dia_rels:
            raise SemanticsError(f"unknown diamond role {role!r}")
        return self.dia_rels[role]


@dataclass(frozen=True, eq=False)
class Interpretation:
    """An enriched context with the maps for individuals and atomic concepts"""
    context: EnrichedContext
    individual_map: Mapping[Individual, str]
    atom_map: Mapping[str, StableSetPair]

    def element_of(self, individual: Individual) -> str:
        element = self.individual_map.get(individual)
        if element is None:
            raise SemanticsError(f"individual {individual!r} is not interpreted")
        return element

    def atom(self, name: str) -> StableSetPair:
        pair = self.atom_map.get(name)
        if pair is None:
            raise SemanticsError(f"atomic concept {name!r} is not interpreted")
        return pair
