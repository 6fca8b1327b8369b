"""
Knowledge-base text format
One statement per line, '#' starts a comment.

    object b c          feature y          boxrel R      diarel S      concept C1 C2
    abox [not] b : C    abox [not] y :: C  abox [not] b I y
    abox [not] b R y    abox [not] y S b
    tbox A == C         tbox C1 <= C2

Individuals are base names, classifiers a{C} / x{C}, or modal prefixes
bdia[R](b), dia[S](b), box[R](y), bbox[S](y).
"""

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from lealc.core.exceptions import (
    DuplicateDefinitionError, KBParseError, NonAtomicDefinitionError,
    SortError, UndeclaredNameError,
)
from .concepts import BOT, BOT_KEYWORD, TOP, TOP_KEYWORD, And, Atom, Box, Concept, Dia, Or
from .individuals import Classifier, Individual, ModalOp, Named, Sort, apply_op, render_individual
from .terms import (
    AboxTerm, BoxRel, DescribedBy, DiaRel, Gci, Incidence, KnowledgeBase, MemberOf,
    Signature, TboxDefinition, render_term,
)

RESERVED = frozenset({
    "bdia", "dia", "box", "bbox", TOP_KEYWORD, BOT_KEYWORD, "not", "I",
    "object", "feature", "boxrel", "diarel", "concept", "abox", "tbox",
})

# classifier prefixes; usable as base names only when not followed by '{'
_CLASSIFIER_PREFIX = {"a": Sort.OBJECT, "x": Sort.FEATURE}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym>::|==|<=|[:\[\]<>(){}&|,])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

_DECLARATION_KEYWORDS = ("object", "feature", "boxrel", "diarel", "concept")


@dataclass(frozen=True)
class Token:
    kind: str  # "sym" or "ident"
    text: str
    column: int


def tokenize(line: str, line_no: Optional[int] = None) -> List[Token]:
    """Split one statement into tokens; comments must already be stripped"""
    tokens = []
    pos = 0
    while pos < len(line):
        match = _TOKEN_RE.match(line, pos)
        if match is None:
            raise KBParseError(f"unexpected character {line[pos]!r} at column {pos + 1}", line_no)
        if match.lastgroup != "ws":
            tokens.append(Token(match.lastgroup, match.group(), pos + 1))
        pos = match.end()
    return tokens


class _Declarations:
    """Name tables filled by declaration statements"""

    def __init__(self, signature: Optional[Signature] = None):
        self.kinds: Dict[str, str] = {}
        if signature is not None:
            for keyword, names in (
                ("object", signature.objects),
                ("feature", signature.features),
                ("boxrel", signature.box_roles),
                ("diarel", signature.dia_roles),
                ("concept", signature.concepts),
            ):
                for name in names:
                    self.kinds[name] = keyword

    def declare(self, keyword: str, name: str, line_no: Optional[int]) -> None:
        if name in RESERVED:
            raise KBParseError(f"{name!r} is a reserved word", line_no)
        known = self.kinds.get(name)
        if known is not None and known != keyword:
            raise KBParseError(f"{name!r} already declared as {known}", line_no)
        self.kinds[name] = keyword

    def kind_of(self, name: str) -> Optional[str]:
        return self.kinds.get(name)

    def signature(self) -> Signature:
        def _names(keyword: str) -> frozenset:
            return frozenset(n for n, k in self.kinds.items() if k == keyword)
        return Signature(_names("object"), _names("feature"), _names("boxrel"),
                         _names("diarel"), _names("concept"))


class _StatementParser:
    """Recursive-descent parser over the tokens of one statement"""

    def __init__(self, tokens: List[Token], decls: _Declarations, line_no: Optional[int]):
        self.tokens = tokens
        self.pos = 0
        self.decls = decls
        self.line_no = line_no

    # ------------------------------------------------------------------
    # token helpers
    # ------------------------------------------------------------------

    def peek(self, offset: int = 0) -> Optional[Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def next(self) -> Token:
        token = self.peek()
        if token is None:
            raise KBParseError("unexpected end of statement", self.line_no)
        self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.next()
        if token.text != text:
            raise KBParseError(f"expected {text!r} but found {token.text!r} at column {token.column}", self.line_no)
        return token

    def ident(self) -> Token:
        token = self.next()
        if token.kind != "ident":
            raise KBParseError(f"expected an identifier but found {token.text!r} at column {token.column}", self.line_no)
        return token

    def expect_end(self) -> None:
        token = self.peek()
        if token is not None:
            raise KBParseError(f"unexpected {token.text!r} at column {token.column}", self.line_no)

    def error(self, message: str) -> KBParseError:
        return KBParseError(message, self.line_no)

    # ------------------------------------------------------------------
    # concepts:  or := and ('|' and)* ; and := unary ('&' unary)*
    # ------------------------------------------------------------------

    def concept(self) -> Concept:
        result = self._and_expr()
        while self.peek() is not None and self.peek().text == "|":
            self.next()
            result = Or(result, self._and_expr())
        return result

    def _and_expr(self) -> Concept:
        result = self._unary()
        while self.peek() is not None and self.peek().text == "&":
            self.next()
            result = And(result, self._unary())
        return result

    def _unary(self) -> Concept:
        token = self.next()
        if token.text == "(":
            inner = self.concept()
            self.expect(")")
            return inner
        if token.text == "[":
            role = self._role("boxrel")
            self.expect("]")
            return Box(role, self._unary())
        if token.text == "<":
            role = self._role("diarel")
            self.expect(">")
            return Dia(role, self._unary())
        if token.kind != "ident":
            raise self.error(f"expected a concept but found {token.text!r} at column {token.column}")
        if token.text == TOP_KEYWORD:
            return TOP
        if token.text == BOT_KEYWORD:
            return BOT
        kind = self.decls.kind_of(token.text)
        if kind is None:
            raise UndeclaredNameError(f"undeclared concept {token.text!r}", self.line_no)
        if kind != "concept":
            raise SortError(f"{token.text!r} is a {kind}, not a concept", self.line_no)
        return Atom(token.text)

    def _role(self, expected: str) -> str:
        token = self.ident()
        kind = self.decls.kind_of(token.text)
        if kind is None:
            raise UndeclaredNameError(f"undeclared role {token.text!r}", self.line_no)
        if kind != expected:
            raise SortError(f"{token.text!r} is a {kind}, expected a {expected}", self.line_no)
        return token.text

    # ------------------------------------------------------------------
    # individuals
    # ------------------------------------------------------------------

    def individual(self) -> Individual:
        token = self.ident()
        nxt = self.peek()
        if token.text in _CLASSIFIER_PREFIX and nxt is not None and nxt.text == "{":
            self.next()
            concept = self.concept()
            self.expect("}")
            return Classifier(_CLASSIFIER_PREFIX[token.text], concept)
        try:
            op = ModalOp(token.text)
        except ValueError:
            op = None
        if op is not None:
            self.expect("[")
            role = self._role("boxrel" if op in (ModalOp.BLACK_DIAMOND, ModalOp.BOX) else "diarel")
            self.expect("]")
            self.expect("(")
            inner = self.individual()
            self.expect(")")
            if inner.sort is not op.sort:
                raise SortError(f"{op.value} expects a {op.sort.value}, got {render_individual(inner)!r}",
                                self.line_no)
            return apply_op(op, role, inner)
        kind = self.decls.kind_of(token.text)
        if kind is None:
            raise UndeclaredNameError(f"undeclared individual {token.text!r}", self.line_no)
        if kind == "object":
            return Named(Sort.OBJECT, token.text)
        if kind == "feature":
            return Named(Sort.FEATURE, token.text)
        raise SortError(f"{token.text!r} is a {kind}, not an individual", self.line_no)

    def _require(self, individual: Individual, sort: Sort) -> None:
        if individual.sort is not sort:
            raise SortError(
                f"{render_individual(individual)!r} is a {individual.sort.value}, expected a {sort.value}",
                self.line_no,
            )

    # ------------------------------------------------------------------
    # terms
    # ------------------------------------------------------------------

    def term(self) -> AboxTerm:
        positive = True
        nxt = self.peek()
        if nxt is not None and nxt.text == "not":
            self.next()
            positive = False
        first = self.individual()
        connective = self.next()
        if connective.text == ":":
            self._require(first, Sort.OBJECT)
            body = MemberOf(first, self.concept())
        elif connective.text == "::":
            self._require(first, Sort.FEATURE)
            body = DescribedBy(first, self.concept())
        elif connective.text == "I":
            self._require(first, Sort.OBJECT)
            second = self.individual()
            self._require(second, Sort.FEATURE)
            body = Incidence(first, second)
        elif connective.kind == "ident" and self.decls.kind_of(connective.text) == "boxrel":
            self._require(first, Sort.OBJECT)
            second = self.individual()
            self._require(second, Sort.FEATURE)
            body = BoxRel(connective.text, first, second)
        elif connective.kind == "ident" and self.decls.kind_of(connective.text) == "diarel":
            self._require(first, Sort.FEATURE)
            second = self.individual()
            self._require(second, Sort.OBJECT)
            body = DiaRel(connective.text, first, second)
        elif connective.kind == "ident" and self.decls.kind_of(connective.text) is None:
            raise UndeclaredNameError(f"undeclared role {connective.text!r}", self.line_no)
        else:
            raise self.error(f"expected ':', '::', 'I' or a role but found {connective.text!r}")
        self.expect_end()
        return AboxTerm(body, positive)


# ============================================================================
# ENTRY POINTS
# ============================================================================

def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


def parse_kb(text: str) -> KnowledgeBase:
    """
    Parse a knowledge-base file.
    Declarations may appear anywhere before their first use.
    """
    decls = _Declarations()
    abox: List[AboxTerm] = []
    seen_terms = set()
    definitions: List[TboxDefinition] = []
    definition_lines: Dict[str, int] = {}
    gcis: List[Gci] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = tokenize(_strip_comment(raw), line_no)
        if not tokens:
            continue
        keyword = tokens[0].text
        parser = _StatementParser(tokens[1:], decls, line_no)

        if keyword in _DECLARATION_KEYWORDS:
            if parser.at_end():
                raise KBParseError(f"{keyword} declaration needs at least one name", line_no)
            while not parser.at_end():
                name = parser.ident().text
                decls.declare(keyword, name, line_no)
                if not parser.at_end() and parser.peek().text == ",":
                    parser.next()
        elif keyword == "abox":
            term = parser.term()
            if term not in seen_terms:
                seen_terms.add(term)
                abox.append(term)
        elif keyword == "tbox":
            lhs = parser.concept()
            op = parser.next()
            if op.text not in ("==", "<="):
                raise KBParseError(f"expected '==' or '<=' but found {op.text!r}", line_no)
            rhs = parser.concept()
            parser.expect_end()
            if op.text == "<=":
                gcis.append(Gci(lhs, rhs, line_no))
                continue
            if not isinstance(lhs, Atom):
                raise NonAtomicDefinitionError("left-hand side of a definition must be a concept name", line_no)
            if lhs.name in definition_lines:
                raise DuplicateDefinitionError(lhs.name, line_no)
            definition_lines[lhs.name] = line_no
            definitions.append(TboxDefinition(lhs.name, rhs))
        else:
            raise KBParseError(f"unknown statement {keyword!r}", line_no)

    return KnowledgeBase(
        abox=tuple(abox),
        tbox=tuple(definitions),
        gcis=tuple(gcis),
        signature=decls.signature(),
        tbox_lines=tuple(definition_lines.items()),
    )


def parse_concept(text: str, signature: Signature) -> Concept:
    parser = _StatementParser(tokenize(text), _Declarations(signature), None)
    concept = parser.concept()
    parser.expect_end()
    return concept


def parse_individual(text: str, signature: Signature) -> Individual:
    parser = _StatementParser(tokenize(text), _Declarations(signature), None)
    individual = parser.individual()
    parser.expect_end()
    return individual


def parse_term(text: str, signature: Signature) -> AboxTerm:
    """Parse one term without the leading 'abox' keyword"""
    return _StatementParser(tokenize(_strip_comment(text)), _Declarations(signature), None).term()


# ============================================================================
# PRINTING
# ============================================================================

def render_abox_lines(terms: Iterable[AboxTerm]) -> List[str]:
    return [f"abox {render_term(t)}" for t in terms]


def render_kb(terms: Iterable[AboxTerm], signature: Signature,
              definitions: Iterable[TboxDefinition] = ()) -> str:
    """Render declarations, terms and definitions; the output re-parses"""
    lines = signature.declaration_lines()
    lines.extend(render_abox_lines(terms))
    lines.extend(f"tbox {d}" for d in definitions)
    return "\n".join(lines) + "\n"
