"""
ABox generators
Seeded random knowledge bases, the exhaustive small-ABox sweep, and
families of growing size for the termination checks
"""

import itertools
import logging
import random
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

from lealc.syntax.concepts import And, Atom, Box, Concept, Dia, Or
from lealc.syntax.individuals import feat, obj
from lealc.syntax.parser import render_kb
from lealc.syntax.terms import (
    AboxTerm, BoxRel, DescribedBy, DiaRel, Incidence, MemberOf, Signature, neg, pos,
)
from lealc.syntax.measures import abox_size

logger = logging.getLogger(__name__)

GeneratedKB = Tuple[List[AboxTerm], Signature]

OBJECT_NAMES = ("b", "c")
FEATURE_NAMES = ("y", "z")
BOX_ROLE_NAMES = ("R", "S")
DIA_ROLE_NAMES = ("Q", "P")
FAMILY_KINDS = ("blocks", "nested", "mixed")


def deterministic_seed(*parts: object) -> int:
    """Stable integer seed from arbitrary labels"""
    text = "|".join(str(p) for p in parts)
    seed = 0
    for ch in text:
        seed = (seed * 131 + ord(ch)) % (2 ** 31 - 1)
    return seed


# ============================================================================
# RANDOM
# ============================================================================

def random_concept(rng: random.Random, atoms: Sequence[str], box_roles: Sequence[str],
                   dia_roles: Sequence[str], depth: int) -> Concept:
    if depth <= 0 or rng.random() < 0.3:
        return Atom(rng.choice(atoms))
    shapes = ["and", "or"]
    if box_roles:
        shapes.append("box")
    if dia_roles:
        shapes.append("dia")
    shape = rng.choice(shapes)
    if shape == "box":
        return Box(rng.choice(box_roles), random_concept(rng, atoms, box_roles, dia_roles, depth - 1))
    if shape == "dia":
        return Dia(rng.choice(dia_roles), random_concept(rng, atoms, box_roles, dia_roles, depth - 1))
    left = random_concept(rng, atoms, box_roles, dia_roles, depth - 1)
    right = random_concept(rng, atoms, box_roles, dia_roles, depth - 1)
    return And(left, right) if shape == "and" else Or(left, right)


def random_abox(rng: random.Random, max_terms: int = 10, max_roles: int = 2, max_atoms: int = 3,
                max_depth: int = 2, negation_rate: float = 0.3) -> GeneratedKB:
    """
    A random ABox over two objects and two features, with up to max_roles
    roles split between box and diamond kinds. Concepts use declared atoms only.
    """
    n_roles = rng.randint(0, max_roles)
    n_box = rng.randint(0, n_roles)
    box_roles = list(BOX_ROLE_NAMES[:n_box])
    dia_roles = list(DIA_ROLE_NAMES[:n_roles - n_box])
    atoms = [f"D{i}" for i in range(1, rng.randint(1, max_atoms) + 1)]
    objects = [obj(n) for n in OBJECT_NAMES]
    features = [feat(n) for n in FEATURE_NAMES]

    shapes = ["member", "described", "incidence"]
    if box_roles:
        shapes.append("box")
    if dia_roles:
        shapes.append("dia")

    terms: List[AboxTerm] = []
    for _ in range(rng.randint(1, max_terms)):
        shape = rng.choice(shapes)
        if shape == "member":
            body = MemberOf(rng.choice(objects), random_concept(rng, atoms, box_roles, dia_roles, max_depth))
        elif shape == "described":
            body = DescribedBy(rng.choice(features), random_concept(rng, atoms, box_roles, dia_roles, max_depth))
        elif shape == "incidence":
            body = Incidence(rng.choice(objects), rng.choice(features))
        elif shape == "box":
            body = BoxRel(rng.choice(box_roles), rng.choice(objects), rng.choice(features))
        else:
            body = DiaRel(rng.choice(dia_roles), rng.choice(features), rng.choice(objects))
        term = neg(body) if rng.random() < negation_rate else pos(body)
        if term not in terms:
            terms.append(term)

    signature = Signature(frozenset(OBJECT_NAMES), frozenset(FEATURE_NAMES), frozenset(box_roles),
                          frozenset(dia_roles), frozenset(atoms))
    return terms, signature


def random_suite(seed: int, count: int, **kwargs) -> Iterator[GeneratedKB]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_abox(rng, **kwargs)


# ============================================================================
# EXHAUSTIVE
# ============================================================================

def small_term_pool(atom: str = "D", role: str = "R") -> List[AboxTerm]:
    """Every term over two objects, two features, concepts D and [R]D, both polarities"""
    concepts = [Atom(atom), Box(role, Atom(atom))]
    objects = [obj(n) for n in OBJECT_NAMES]
    features = [feat(n) for n in FEATURE_NAMES]
    bodies = []
    bodies += [MemberOf(b, c) for b in objects for c in concepts]
    bodies += [DescribedBy(y, c) for y in features for c in concepts]
    bodies += [Incidence(b, y) for b in objects for y in features]
    bodies += [BoxRel(role, b, y) for b in objects for y in features]
    return [t for body in bodies for t in (pos(body), neg(body))]


def exhaustive_aboxes(max_terms: int = 2, atom: str = "D", role: str = "R") -> Iterator[GeneratedKB]:
    """All ABoxes of at most max_terms distinct terms from the small pool, smallest first"""
    pool = small_term_pool(atom, role)
    signature = Signature(frozenset(OBJECT_NAMES), frozenset(FEATURE_NAMES), frozenset({role}),
                          frozenset(), frozenset({atom}))
    for k in range(max_terms + 1):
        for chosen in itertools.combinations(pool, k):
            yield list(chosen), signature


# ============================================================================
# GROWING FAMILIES
# ============================================================================

def abox_family(kind: str, n: int) -> GeneratedKB:
    """
    An ABox of size at least n.
    blocks: independent copies of {b_i R y_i, b_i : [R]D, y_i :: D}
    nested: b : [R]...[R]D against y :: D with growing box depth
    mixed:  seeded random terms until the size is reached
    """
    if kind == "blocks":
        terms: List[AboxTerm] = []
        objects, features = set(), set()
        i = 0
        while abox_size(terms) < n:
            i += 1
            b, y = obj(f"b{i}"), feat(f"y{i}")
            objects.add(b.name)
            features.add(y.name)
            terms += [pos(BoxRel("R", b, y)), pos(MemberOf(b, Box("R", Atom("D")))), pos(DescribedBy(y, Atom("D")))]
        return terms, Signature(frozenset(objects), frozenset(features), frozenset({"R"}),
                                frozenset(), frozenset({"D"}))

    if kind == "nested":
        b, y = obj("b"), feat("y")
        depth = 0
        while True:
            depth += 1
            concept: Concept = Atom("D")
            for _ in range(depth):
                concept = Box("R", concept)
            terms = [pos(MemberOf(b, concept)), pos(DescribedBy(y, Atom("D"))), pos(BoxRel("R", b, y))]
            if abox_size(terms) >= n:
                return terms, Signature(frozenset({"b"}), frozenset({"y"}), frozenset({"R"}),
                                        frozenset(), frozenset({"D"}))

    if kind == "mixed":
        rng = random.Random(deterministic_seed("mixed", n))
        terms = []
        signature = Signature()
        while abox_size(terms) < n:
            batch, batch_signature = random_abox(rng, max_terms=4, max_depth=1)
            for term in batch:
                if term not in terms:
                    terms.append(term)
            signature = signature.merged(batch_signature)
        return terms, signature

    raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")


def write_family(directory: Path, kind: str, sizes: Sequence[int], stem: Optional[str] = None) -> List[Path]:
    """Write one .kb file per size; returns the paths in size order"""
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for n in sizes:
        terms, signature = abox_family(kind, n)
        path = directory / f"{stem or kind}_{n:04d}.kb"
        path.write_text(render_kb(terms, signature), encoding="utf-8")
        paths.append(path)
    logger.info(f"Wrote {len(paths)} {kind} knowledge bases to {directory}")
    return paths
