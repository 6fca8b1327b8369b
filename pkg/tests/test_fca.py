"""
Tests for formal contexts: Galois derivations, concept lattices,
I-compatibility, the modal operators and the model checker.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from lealc.core.exceptions import LatticeTooLargeError, SemanticsError
from lealc.models.context import EnrichedContext, Interpretation, Polarity, StableSetPair
from lealc.models.schemas import ModelDocument, SliceFamily
from lealc.services.fca_service import fca_service
from lealc.syntax.concepts import And, Atom, Box, Or
from lealc.syntax.terms import TboxDefinition


def _subsets(items):
    return [frozenset(c) for k in range(len(items) + 1) for c in itertools.combinations(items, k)]


def _random_polarity(seed: int, n_objects: int, n_features: int) -> Polarity:
    rng = np.random.default_rng(seed)
    objects = [f"a{i}" for i in range(n_objects)]
    features = [f"x{j}" for j in range(n_features)]
    matrix = rng.random((n_objects, n_features)) < 0.5
    incidence = [(objects[i], features[j]) for i, j in zip(*np.nonzero(matrix))]
    return Polarity.build(objects, features, incidence)


@pytest.fixture
def staircase() -> Polarity:
    """a1 has x1 and x2, a2 has x2 only"""
    return Polarity.build(["a1", "a2"], ["x1", "x2"], [("a1", "x1"), ("a1", "x2"), ("a2", "x2")])


# ============================================================================
# Polarity
# ============================================================================


class TestPolarity:
    def test_carriers_are_sorted(self) -> None:
        polarity = Polarity.build(["b", "a"], ["y", "x"], [])
        assert polarity.objects == ("a", "b")
        assert polarity.features == ("x", "y")

    def test_carriers_must_be_disjoint(self) -> None:
        with pytest.raises(SemanticsError):
            Polarity.build(["e"], ["e"], [])

    def test_incidence_inside_carriers(self) -> None:
        with pytest.raises(SemanticsError):
            Polarity.build(["a"], ["x"], [("a", "z")])

    def test_unknown_element_in_derivation(self, staircase) -> None:
        with pytest.raises(SemanticsError):
            fca_service.poly_up(staircase, {"a9"})


# ============================================================================
# Galois connection
# ============================================================================


class TestDerivations:
    def test_up_and_down(self, staircase) -> None:
        assert fca_service.poly_up(staircase, {"a1", "a2"}) == {"x2"}
        assert fca_service.poly_up(staircase, {"a1"}) == {"x1", "x2"}
        assert fca_service.poly_down(staircase, {"x2"}) == {"a1", "a2"}
        assert fca_service.poly_down(staircase, {"x1"}) == {"a1"}

    def test_empty_set_derives_the_whole_carrier(self, staircase) -> None:
        assert fca_service.poly_up(staircase, set()) == {"x1", "x2"}
        assert fca_service.poly_down(staircase, set()) == {"a1", "a2"}

    def test_no_incidences(self) -> None:
        polarity = Polarity.build(["a"], ["x"], [])
        assert fca_service.poly_up(polarity, {"a"}) == frozenset()

    @pytest.mark.parametrize("seed", range(5))
    def test_galois_laws(self, seed: int) -> None:
        polarity = _random_polarity(seed, 4, 4)
        up, down = fca_service.poly_up, fca_service.poly_down
        for subset in _subsets(polarity.objects):
            closed = down(polarity, up(polarity, subset))
            assert subset <= closed
            assert down(polarity, up(polarity, closed)) == closed
            assert up(polarity, down(polarity, up(polarity, subset))) == up(polarity, subset)
        for small, large in itertools.combinations(_subsets(polarity.features), 2):
            if small <= large:
                assert down(polarity, large) <= down(polarity, small)


# ============================================================================
# Concept lattice
# ============================================================================


class TestConceptLattice:
    def test_staircase_lattice(self, staircase) -> None:
        assert fca_service.concept_lattice(staircase) == [
            StableSetPair(frozenset({"a1"}), frozenset({"x1", "x2"})),
            StableSetPair(frozenset({"a1", "a2"}), frozenset({"x2"})),
        ]

    def test_full_context_has_one_concept(self) -> None:
        polarity = Polarity.build(["a1", "a2"], ["x1"], [("a1", "x1"), ("a2", "x1")])
        assert fca_service.concept_lattice(polarity) == [
            StableSetPair(frozenset({"a1", "a2"}), frozenset({"x1"})),
        ]

    def test_empty_incidence_one_by_one(self) -> None:
        polarity = Polarity.build(["a"], ["x"], [])
        assert fca_service.concept_lattice(polarity) == [
            StableSetPair(frozenset(), frozenset({"x"})),
            StableSetPair(frozenset({"a"}), frozenset()),
        ]

    def test_diagonal_matches_brute_force(self) -> None:
        polarity = Polarity.build(["a1", "a2", "a3"], ["x1", "x2", "x3"],
                                  [("a1", "x1"), ("a2", "x2"), ("a3", "x3")])
        lattice = fca_service.concept_lattice(polarity)
        brute = {
            fca_service.close_objects(polarity, s) for s in _subsets(polarity.objects)
        }
        assert {c.extent for c in lattice} == brute
        assert len(lattice) == 5

    @pytest.mark.parametrize("seed", range(4))
    def test_random_lattice_is_every_stable_pair(self, seed: int) -> None:
        polarity = _random_polarity(100 + seed, 5, 4)
        lattice = fca_service.concept_lattice(polarity)
        assert all(fca_service.is_stable_pair(polarity, c) for c in lattice)
        brute = {fca_service.close_objects(polarity, s) for s in _subsets(polarity.objects)}
        assert sorted(sorted(c.extent) for c in lattice) == sorted(sorted(e) for e in brute)

    def test_size_guard(self, staircase) -> None:
        with pytest.raises(LatticeTooLargeError):
            fca_service.concept_lattice(staircase, max_elements=1)


# ============================================================================
# I-compatibility and modal operators
# ============================================================================


class TestCompatibility:
    def test_empty_relations_with_isolated_extras(self) -> None:
        polarity = Polarity.build(["a", "a_top"], ["x", "x_bot"], [("a", "x")])
        context = EnrichedContext(polarity, {"R": frozenset()}, {"Q": frozenset()})
        assert fca_service.check_i_compatibility(context).ok

    def test_non_stable_row_is_reported(self) -> None:
        polarity = Polarity.build(["a1", "a2"], ["x1", "x2"], [("a1", "x1")])
        context = EnrichedContext(polarity, {"R": frozenset({("a2", "x1")})})
        report = fca_service.check_i_compatibility(context)
        assert not report.ok
        assert len(report.failures) == 1
        failure = report.failures[0]
        assert failure.family is SliceFamily.BOX_OBJECTS
        assert failure.element == "x1"
        assert failure.members == ["a2"]
        assert failure.closure == ["a1", "a2"]

    def test_relation_outside_carriers(self, staircase) -> None:
        with pytest.raises(SemanticsError):
            EnrichedContext(staircase, {"R": frozenset({("a1", "x9")})})

    def test_incidence_as_relation_gives_identity_operators(self, staircase) -> None:
        context = EnrichedContext(
            staircase,
            box_rels={"R": staircase.incidence},
            dia_rels={"Q": frozenset((x, a) for a, x in staircase.incidence)},
        )
        assert fca_service.check_i_compatibility(context).ok
        for pair in fca_service.concept_lattice(staircase):
            assert fca_service.box_op(context, "R", pair) == pair
            assert fca_service.dia_op(context, "Q", pair) == pair

    def test_box_over_empty_relation(self, staircase) -> None:
        context = EnrichedContext(staircase, {"R": frozenset()})
        # the intent of top is {x2} and no object is R-related to x2
        assert fca_service.box_op(context, "R", fca_service.top(staircase)).extent == frozenset()

    def test_box_of_empty_intent_is_everything(self) -> None:
        polarity = Polarity.build(["a1", "a2"], ["x1"], [("a1", "x1")])
        context = EnrichedContext(polarity, {"R": frozenset()})
        top = fca_service.top(polarity)
        assert top.intent == frozenset()
        assert fca_service.box_op(context, "R", top).extent == {"a1", "a2"}

    def test_unknown_role(self, staircase) -> None:
        context = EnrichedContext(staircase)
        with pytest.raises(SemanticsError):
            fca_service.box_op(context, "R", fca_service.top(staircase))


# ============================================================================
# Model checking
# ============================================================================


@pytest.fixture
def staircase_interpretation(staircase) -> Interpretation:
    context = EnrichedContext(staircase, {"R": frozenset()}, {})
    atoms = {
        "D": StableSetPair(frozenset({"a1"}), frozenset({"x1", "x2"})),
        "E": StableSetPair(frozenset({"a1", "a2"}), frozenset({"x2"})),
    }
    return Interpretation(context, {}, atoms)


def test_meet_and_join(staircase_interpretation) -> None:
    interpretation = staircase_interpretation
    d, e = Atom("D"), Atom("E")
    meet = fca_service.eval_concept(interpretation, And(d, e))
    join = fca_service.eval_concept(interpretation, Or(d, e))
    assert meet.extent == {"a1"}
    assert join.extent == {"a1", "a2"}
    assert fca_service.eval_concept(interpretation, And(d, d)) == fca_service.eval_concept(interpretation, d)


def test_unmapped_atom(staircase_interpretation) -> None:
    with pytest.raises(SemanticsError):
        fca_service.eval_concept(staircase_interpretation, Atom("F"))


def test_definitions(staircase_interpretation) -> None:
    d, e = Atom("D"), Atom("E")
    assert fca_service.satisfies_tbox(staircase_interpretation, [TboxDefinition("D", d)])
    assert fca_service.satisfies_tbox(staircase_interpretation, [TboxDefinition("D", And(d, d))])
    # E is strictly above D
    assert not fca_service.satisfies_tbox(staircase_interpretation, [TboxDefinition("D", Or(d, e))])


def test_example2_model_satisfies_every_term_and_not_its_negation(saturate_kb, example2) -> None:
    model = saturate_kb(example2).model
    for term in example2.abox:
        assert fca_service.satisfies(model, term)
        assert not fca_service.satisfies(model, term.negate())
    assert fca_service.rel_slice(model.context.box_relation("R"), 0, "y") == {"b"}


def test_model_document_round_trip(saturate_kb, example2) -> None:
    model = saturate_kb(example2).model
    document = fca_service.to_document(model)
    assert document.objects == sorted(document.objects)
    assert document.box == {"R": [["b", "y"]]}

    restored = fca_service.from_document(ModelDocument.model_validate_json(document.model_dump_json()),
                                         example2.signature)
    assert fca_service.to_document(restored) == document
    assert fca_service.satisfies_all(restored, example2.abox)


def test_document_with_unstable_atom() -> None:
    document = ModelDocument(
        objects=["a1", "a2"],
        features=["x1", "x2"],
        incidence=[["a1", "x1"], ["a1", "x2"], ["a2", "x2"]],
        atoms={"D": {"extent": ["a2"], "intent": ["x2"]}},
    )
    with pytest.raises(SemanticsError):
        fca_service.from_document(document)


def test_example2_model_is_compatible(saturate_kb, example2) -> None:
    model = saturate_kb(example2).model
    assert fca_service.check_i_compatibility(model.context).ok


def test_concurrent_evaluation_matches_sequential(saturate_kb, example2) -> None:
    model = saturate_kb(example2).model
    c1, c2 = Atom("C1"), Atom("C2")
    concepts = [c1, c2, Or(c1, c2), And(c1, c2), Box("R", c1), Box("R", Or(c1, c2))]
    expected = {c: fca_service.eval_concept(model, c) for c in concepts}

    def _evaluate(_: int):
        fresh = Interpretation(model.context, model.individual_map, model.atom_map)
        return {c: fca_service.eval_concept(fresh, c) for c in concepts}

    with ThreadPoolExecutor(max_workers=8) as executor:
        results = list(executor.map(_evaluate, range(32)))
    assert all(result == expected for result in results)
