"""
Tests for TBox processing: acyclicity, unravelling, GCI rewriting, regimes
"""

import pytest

from lealc.core.exceptions import (
    CyclicTBoxError, FreshNameCollisionError, NonAtomicDefinitionError, TBoxError,
)
from lealc.models.schemas import Regime
from lealc.services.fca_service import fca_service
from lealc.services.oracle_service import oracle_service
from lealc.services.tbox_service import FreshNames, tbox_service
from lealc.syntax.concepts import And, Atom, Box, Dia
from lealc.syntax.individuals import classifying_object, feat, obj
from lealc.syntax.parser import parse_kb
from lealc.syntax.terms import TboxDefinition, described, incidence, member

A, B, C, D = Atom("A"), Atom("B"), Atom("C"), Atom("D")

CHAIN = [TboxDefinition("A", Box("R", B)), TboxDefinition("B", And(C, D))]


# ============================================================================
# Acyclicity
# ============================================================================


def test_uses_graph_edges() -> None:
    graph = tbox_service.uses_graph(CHAIN)
    assert set(graph.edges) == {("A", "B"), ("B", "C"), ("B", "D")}


def test_acyclic_chain_passes() -> None:
    assert tbox_service.check_acyclic(CHAIN) is None


def test_two_cycle_is_rejected() -> None:
    error = tbox_service.check_acyclic([TboxDefinition("A", B), TboxDefinition("B", A)])
    assert isinstance(error, CyclicTBoxError)
    assert set(error.cycle) == {"A", "B"}
    assert error.cycle[0] == error.cycle[-1]


def test_self_reference_is_a_cycle() -> None:
    assert isinstance(tbox_service.check_acyclic([TboxDefinition("A", Box("R", A))]), CyclicTBoxError)


def test_cyclic_kb_reports_a_line() -> None:
    kb = parse_kb("concept A B\ntbox A == B\ntbox B == A\n")
    with pytest.raises(CyclicTBoxError) as info:
        tbox_service.prepare(kb)
    assert info.value.exit_code == 3
    assert info.value.line in (2, 3)


def test_completely_unravelled() -> None:
    assert tbox_service.check_completely_unravelled([TboxDefinition("A", And(C, D))])
    assert not tbox_service.check_completely_unravelled(CHAIN)


# ============================================================================
# Unravelling
# ============================================================================


def test_unravel_replaces_to_a_fixpoint() -> None:
    b = obj("b")
    assert tbox_service.unravel([member(b, A)], CHAIN) == [member(b, Box("R", And(C, D)))]


def test_unravel_reaches_classifier_names() -> None:
    y = feat("y")
    term = member(classifying_object(A), B)
    assert tbox_service.unravel([term, described(y, C)], CHAIN) == [
        member(classifying_object(Box("R", And(C, D))), And(C, D)),
        described(y, C),
    ]


def test_unravel_merges_terms_that_become_equal() -> None:
    b = obj("b")
    definitions = [TboxDefinition("A", C), TboxDefinition("B", C)]
    assert tbox_service.unravel([member(b, A), member(b, B)], definitions) == [member(b, C)]


def test_unravel_rejects_cycles() -> None:
    with pytest.raises(TBoxError):
        tbox_service.unravel([member(obj("b"), A)], [TboxDefinition("A", B), TboxDefinition("B", A)])


# ============================================================================
# GCIs
# ============================================================================


class TestGciRewriting:
    def test_fresh_conjunct(self) -> None:
        fresh = FreshNames({"A", "B"})
        assert tbox_service.rewrite_gci(A, B, fresh) == [TboxDefinition("A", And(B, Atom("Gci1")))]

    def test_fresh_names_skip_used_ones(self) -> None:
        fresh = FreshNames({"Gci1", "Gci2"})
        assert fresh.next() == "Gci3"
        assert fresh.next() == "Gci4"

    def test_requested_name_must_be_unused(self) -> None:
        fresh = FreshNames({"A", "B"})
        with pytest.raises(FreshNameCollisionError):
            tbox_service.rewrite_gci(A, B, fresh, name="B")

    def test_non_atomic_left_side_reports_its_line(self) -> None:
        kb = parse_kb("concept A C D\ntbox C & D <= A\n")
        with pytest.raises(NonAtomicDefinitionError) as info:
            tbox_service.prepare(kb)
        assert info.value.line == 2

    def test_prepare_extends_the_signature(self, load_kb) -> None:
        kb = load_kb("tbox_demo.kb")
        abox, signature, regime = tbox_service.prepare(kb)
        assert "Gci1" in signature.concepts
        assert regime is Regime.ACYCLIC
        b, y = obj("b"), feat("y")
        assert abox[0] == member(b, Box("R", And(C, D)))
        assert abox[1] == described(y, And(C, D))
        assert abox[3] == described(y, And(Dia("Q", C), Atom("Gci1")))


@pytest.mark.parametrize("text, regime", [
    ("object b\nconcept C\nabox b : C", Regime.NO_TBOX),
    ("object b\nconcept A C D\ntbox A == C & D\nabox b : A", Regime.COMPLETELY_UNRAVELLED),
    ("boxrel R\nobject b\nconcept A B C D\ntbox A == [R]B\ntbox B == C & D\nabox b : A", Regime.ACYCLIC),
])
def test_regime(text: str, regime: Regime) -> None:
    assert tbox_service.regime(parse_kb(text)) is regime


# ============================================================================
# Unravelling invariants
# ============================================================================


def test_unravel_is_idempotent() -> None:
    b, y = obj("b"), feat("y")
    abox = [member(b, A), described(y, B), member(classifying_object(A), Dia("Q", B))]
    once = tbox_service.unravel(abox, CHAIN)
    assert tbox_service.unravel(once, CHAIN) == once


def test_unravelling_preserves_models() -> None:
    b, y = obj("b"), feat("y")
    abox = [member(b, A), described(y, B), incidence(b, y).negate()]
    unravelled = tbox_service.unravel(abox, CHAIN)
    checked = 0
    for n_objects, n_features in ((1, 1), (2, 1), (1, 2)):
        for interpretation in oracle_service.enumerate_enriched_contexts(
            n_objects, n_features, box_roles=["R"], atom_names=["A", "B", "C", "D"], individuals=[b, y],
        ):
            if not fca_service.satisfies_tbox(interpretation, CHAIN):
                continue
            checked += 1
            assert fca_service.satisfies_all(interpretation, abox) == \
                fca_service.satisfies_all(interpretation, unravelled)
    assert checked > 0
