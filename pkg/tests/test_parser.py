"""
Tests for the knowledge-base grammar: declarations, terms, individuals,
TBox statements, error reporting and printing.
"""

import pytest

from lealc.core.exceptions import (
    DuplicateDefinitionError, KBParseError, NonAtomicDefinitionError,
    SortError, UndeclaredNameError,
)
from lealc.syntax.concepts import And, Atom, Box, Dia, Or, render_concept
from lealc.syntax.individuals import (
    Classifier, ModalOp, Prefixed, Sort, classifying_feature, classifying_object, feat, obj,
)
from lealc.syntax.parser import (
    parse_concept, parse_individual, parse_kb, parse_term, render_kb,
)
from lealc.syntax.terms import (
    AboxTerm, BoxRel, Gci, Signature, TboxDefinition, box_rel, described, dia_rel,
    incidence, member, neg, render_term,
)

C1, C2 = Atom("C1"), Atom("C2")


@pytest.fixture
def signature() -> Signature:
    return Signature(
        objects=frozenset({"b", "c"}),
        features=frozenset({"y"}),
        box_roles=frozenset({"R"}),
        dia_roles=frozenset({"Q"}),
        concepts=frozenset({"C1", "C2"}),
    )


# ============================================================================
# Knowledge-base files
# ============================================================================


class TestParseKb:
    """Whole-file parsing"""

    def test_example1_terms_and_signature(self, example1) -> None:
        b, y = obj("b"), feat("y")
        assert example1.abox == (
            member(b, Box("R", Box("R", C1))),
            member(b, Box("R", Box("R", C2))),
            described(y, Box("R", And(C1, C2))),
            neg(BoxRel("R", b, y)),
        )
        assert example1.signature.box_roles == frozenset({"R"})
        assert example1.signature.concepts == frozenset({"C1", "C2"})
        assert example1.tbox == ()

    def test_empty_file_has_no_terms(self, load_kb) -> None:
        kb = load_kb("empty.kb")
        assert kb.abox == ()
        assert kb.signature == Signature()

    def test_comma_separated_declarations(self) -> None:
        kb = parse_kb("object b, c\nfeature y z\nconcept D\nabox c : D")
        assert kb.signature.objects == frozenset({"b", "c"})
        assert kb.signature.features == frozenset({"y", "z"})

    def test_duplicate_terms_are_dropped(self) -> None:
        kb = parse_kb("object b\nconcept D\nabox b : D\nabox b : D  # again")
        assert len(kb.abox) == 1

    def test_all_relational_shapes(self) -> None:
        kb = parse_kb(
            "object b\nfeature y\nboxrel R\ndiarel Q\n"
            "abox b I y\nabox b R y\nabox y Q b\nabox not y Q b"
        )
        b, y = obj("b"), feat("y")
        assert kb.abox == (
            incidence(b, y),
            box_rel("R", b, y),
            dia_rel("Q", y, b),
            dia_rel("Q", y, b).negate(),
        )

    def test_tbox_definition_and_gci(self, load_kb) -> None:
        kb = load_kb("tbox_demo.kb")
        assert kb.tbox == (
            TboxDefinition("A", Box("R", Atom("B"))),
            TboxDefinition("B", And(Atom("C"), Atom("D"))),
        )
        assert kb.gcis == (Gci(Atom("E"), Dia("Q", Atom("C")), 10),)
        assert dict(kb.tbox_lines) == {"A": 8, "B": 9}

    def test_rendered_kb_parses_back(self, example2) -> None:
        text = render_kb(example2.abox, example2.signature)
        again = parse_kb(text)
        assert again.abox == example2.abox
        assert again.signature == example2.signature


class TestParseErrors:
    """Errors carry the offending line"""

    def test_undeclared_concept(self) -> None:
        with pytest.raises(UndeclaredNameError) as info:
            parse_kb("object b\n\nabox b : Missing")
        assert info.value.line == 3
        assert str(info.value).startswith("line 3:")

    def test_feature_used_as_object(self) -> None:
        with pytest.raises(SortError) as info:
            parse_kb("feature y\nconcept D\nabox y : D")
        assert info.value.line == 3

    def test_object_used_as_feature(self) -> None:
        with pytest.raises(SortError):
            parse_kb("object b c\nabox b I c")

    def test_reserved_word_cannot_be_declared(self) -> None:
        with pytest.raises(KBParseError, match="reserved"):
            parse_kb("concept box")

    def test_name_declared_with_two_kinds(self) -> None:
        with pytest.raises(KBParseError, match="already declared"):
            parse_kb("object b\nfeature b")

    def test_unknown_statement(self) -> None:
        with pytest.raises(KBParseError, match="unknown statement"):
            parse_kb("assert b : D")

    def test_unexpected_character(self) -> None:
        with pytest.raises(KBParseError, match="unexpected character"):
            parse_kb("object b\nconcept D\nabox b : D ; D")

    def test_trailing_tokens(self) -> None:
        with pytest.raises(KBParseError):
            parse_kb("object b\nfeature y\nabox b I y y")

    def test_non_atomic_definition(self) -> None:
        with pytest.raises(NonAtomicDefinitionError) as info:
            parse_kb("concept C1 C2\ntbox C1 & C2 == C1")
        assert info.value.line == 2
        assert info.value.exit_code == 3

    def test_duplicate_definition(self) -> None:
        with pytest.raises(DuplicateDefinitionError) as info:
            parse_kb("concept A B C\ntbox A == B\ntbox A == C")
        assert info.value.line == 3

    def test_parse_errors_exit_with_two(self) -> None:
        with pytest.raises(KBParseError) as info:
            parse_kb("object")
        assert info.value.exit_code == 2


# ============================================================================
# Concepts, individuals and single terms
# ============================================================================


def test_meet_binds_tighter_than_join(signature) -> None:
    assert parse_concept("C1 | C2 & C1", signature) == Or(C1, And(C2, C1))
    assert parse_concept("(C1 | C2) & C1", signature) == And(Or(C1, C2), C1)


def test_modal_prefix_binds_tightest(signature) -> None:
    assert parse_concept("[R]C1 & <Q>C2", signature) == And(Box("R", C1), Dia("Q", C2))
    assert parse_concept("[R](C1 & C2)", signature) == Box("R", And(C1, C2))


def test_box_needs_a_box_role(signature) -> None:
    with pytest.raises(SortError):
        parse_concept("[Q]C1", signature)


def test_rendering_keeps_needed_parentheses() -> None:
    assert render_concept(And(Or(C1, C2), C1)) == "(C1 | C2) & C1"
    assert render_concept(Or(C1, Or(C2, C1))) == "C1 | (C2 | C1)"
    assert render_concept(Box("R", And(C1, C2))) == "[R](C1 & C2)"
    assert render_concept(Dia("Q", Box("R", C1))) == "<Q>[R]C1"


def test_classifier_individuals(signature) -> None:
    assert parse_individual("a{C1 | C2}", signature) == classifying_object(Or(C1, C2))
    assert parse_individual("x{[R]C1}", signature) == classifying_feature(Box("R", C1))


def test_modal_prefix_on_classifier_is_rewritten(signature) -> None:
    assert parse_individual("box[R](x{C1})", signature) == classifying_feature(Box("R", C1))
    assert parse_individual("dia[Q](a{C1})", signature) == classifying_object(Dia("Q", C1))


def test_black_modal_prefixes_stay_prefixed(signature) -> None:
    b, y = obj("b"), feat("y")
    assert parse_individual("bdia[R](b)", signature) == Prefixed(ModalOp.BLACK_DIAMOND, "R", b)
    assert parse_individual("bbox[Q](y)", signature) == Prefixed(ModalOp.BLACK_BOX, "Q", y)
    assert parse_individual("bdia[R](a{C1})", signature) == \
        Prefixed(ModalOp.BLACK_DIAMOND, "R", Classifier(Sort.OBJECT, C1))


def test_prefix_with_wrong_inner_sort(signature) -> None:
    with pytest.raises(SortError):
        parse_individual("bdia[R](y)", signature)


@pytest.mark.parametrize("text", [
    "b : C1 | C2",
    "not b : [R](C1 & C2)",
    "y :: <Q>C1",
    "bdia[R](b) I x{C1}",
    "not a{C2} I box[R](y)",
    "b R x{[R]C1}",
    "bbox[Q](y) Q dia[Q](b)",
])
def test_term_rendering_parses_back(signature, text: str) -> None:
    term = parse_term(text, signature)
    assert isinstance(term, AboxTerm)
    assert render_term(term) == text
    assert parse_term(render_term(term), signature) == term
