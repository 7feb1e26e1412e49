"""Front end for the FCL subset with the ``LING`` variable type.

Supported grammar (keywords are case-sensitive)::

    model     := { var_block | fuzzify }
    var_block := 'VAR_INPUT' { IDENT ':' 'LING' ';' } 'END_VAR'
    fuzzify   := 'FUZZIFY' IDENT { term } 'END_FUZZIFY'
    term      := 'TERM' IDENT ':=' 'ling' ( pairs | density ) ';'
    pairs     := ( '(' IDENT ',' NUMBER ')' )+
    density   := IDENT* '|' IDENT* '|' IDENT* ',' DENSITY DENSITY
    DENSITY   := 'middle' | 'extreme'

``//`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import FclSemanticError, FclSyntaxError, NotSupported, UnknownVariable
from .partition import UnbalancedPartition, build_partition

__all__ = [
    "VarDecl",
    "LingDeclPairs",
    "LingDeclDensity",
    "TermDecl",
    "FuzzifyBlock",
    "FclModel",
    "parse",
    "serialize",
    "to_partition",
]

KEYWORDS = frozenset({"VAR_INPUT", "END_VAR", "FUZZIFY", "END_FUZZIFY", "TERM", "LING", "ling"})
DENSITIES = ("middle", "extreme")


@dataclass(frozen=True)
class VarDecl:
    name: str
    type: str = "LING"
    line: int = field(default=0, compare=False, repr=False)
    column: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class LingDeclPairs:
    pairs: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class LingDeclDensity:
    left_terms: tuple[str, ...]
    center_term: str
    right_terms: tuple[str, ...]
    left_density: str = "extreme"
    right_density: str = "extreme"

    @property
    def description(self) -> tuple:
        """Size-based summary, e.g. ``((3, 'extreme'), 1, (1, 'extreme'))``."""
        return (
            (len(self.left_terms), self.left_density),
            1,
            (len(self.right_terms), self.right_density),
        )


@dataclass(frozen=True)
class TermDecl:
    name: str
    body: LingDeclPairs | LingDeclDensity
    line: int = field(default=0, compare=False, repr=False)
    column: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class FuzzifyBlock:
    variable: str
    terms: tuple[TermDecl, ...]
    line: int = field(default=0, compare=False, repr=False)
    column: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class FclModel:
    inputs: tuple[VarDecl, ...] = ()
    fuzzify_blocks: tuple[FuzzifyBlock, ...] = ()

    def variables(self) -> list[str]:
        return [v.name for v in self.inputs]

    def ling_decl(self, variable: str) -> LingDeclPairs | LingDeclDensity:
        if variable not in self.variables():
            raise UnknownVariable(f"unknown variable {variable!r}")
        for block in self.fuzzify_blocks:
            if block.variable == variable:
                return block.terms[0].body
        raise UnknownVariable(f"variable {variable!r} has no ling declaration")


# -- lexer -------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, SYM, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<number>[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<sym>:=|[:;(),|])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise FclSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "number":
            yield Token("NUMBER", m.group(), line, col)
        elif kind == "ident":
            yield Token("IDENT", m.group(), line, col)
        elif kind == "sym":
            yield Token("SYM", m.group(), line, col)
        pos = m.end()
    yield Token("EOF", "", line, pos - line_start + 1)


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def error(self, expected: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return FclSyntaxError(f"expected {expected}, found {found}", tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("IDENT", "SYM") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(repr(text))
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        tok = self.tok
        if tok.kind != "IDENT" or tok.text in KEYWORDS:
            raise self.error(what)
        return self.advance()

    def model(self) -> FclModel:
        inputs = []
        blocks = []
        while self.tok.kind != "EOF":
            if self.at("VAR_INPUT"):
                inputs.extend(self.var_block())
            elif self.at("FUZZIFY"):
                blocks.append(self.fuzzify())
            else:
                raise self.error("'VAR_INPUT' or 'FUZZIFY'")
        return FclModel(tuple(inputs), tuple(blocks))

    def var_block(self) -> list[VarDecl]:
        self.expect("VAR_INPUT")
        decls = []
        while not self.at("END_VAR"):
            name = self.ident("variable name or 'END_VAR'")
            self.expect(":")
            self.expect("LING")
            self.expect(";")
            decls.append(VarDecl(name.text, "LING", name.line, name.column))
        self.expect("END_VAR")
        return decls

    def fuzzify(self) -> FuzzifyBlock:
        self.expect("FUZZIFY")
        var = self.ident("variable name")
        terms = []
        while not self.at("END_FUZZIFY"):
            if not self.at("TERM"):
                raise self.error("'TERM' or 'END_FUZZIFY'")
            terms.append(self.term())
        self.expect("END_FUZZIFY")
        return FuzzifyBlock(var.text, tuple(terms), var.line, var.column)

    def term(self) -> TermDecl:
        self.expect("TERM")
        name = self.ident("term name")
        self.expect(":=")
        self.expect("ling")
        if self.at("("):
            body = self.pairs()
        else:
            body = self.density()
        self.expect(";")
        return TermDecl(name.text, body, name.line, name.column)

    def pairs(self) -> LingDeclPairs:
        pairs = []
        while self.at("("):
            self.advance()
            name = self.ident("term name")
            self.expect(",")
            num = self.tok
            if num.kind != "NUMBER":
                raise self.error("number")
            self.advance()
            self.expect(")")
            pairs.append((name.text, float(num.text)))
        return LingDeclPairs(tuple(pairs))

    def _idents(self) -> list[Token]:
        out = []
        while self.tok.kind == "IDENT" and self.tok.text not in KEYWORDS:
            out.append(self.advance())
        return out

    def density(self) -> LingDeclDensity:
        left = self._idents()
        self.expect("|")
        center = self._idents()
        bar = self.expect("|")
        right = self._idents()
        self.expect(",")
        dens = []
        for _ in range(2):
            tok = self.tok
            if tok.kind != "IDENT" or tok.text not in DENSITIES:
                raise self.error("'middle' or 'extreme'")
            dens.append(self.advance().text)
        if len(center) != 1:
            where = center[1] if len(center) > 1 else bar
            raise FclSemanticError(
                f"density form needs exactly one center term, found {len(center)}",
                where.line,
                where.column,
            )
        return LingDeclDensity(
            tuple(t.text for t in left),
            center[0].text,
            tuple(t.text for t in right),
            dens[0],
            dens[1],
        )


def _check(model: FclModel) -> None:
    declared = {}
    for v in model.inputs:
        if v.name in declared:
            raise FclSemanticError(f"variable {v.name!r} declared twice", v.line, v.column)
        declared[v.name] = v
    covered = set()
    for block in model.fuzzify_blocks:
        if block.variable not in declared:
            raise FclSemanticError(
                f"FUZZIFY over undeclared variable {block.variable!r}", block.line, block.column
            )
        if not block.terms:
            raise FclSemanticError(
                f"FUZZIFY {block.variable} declares no TERM", block.line, block.column
            )
        if block.variable in covered or len(block.terms) > 1:
            extra = block.terms[1] if len(block.terms) > 1 else block
            raise FclSemanticError(
                f"LING variable {block.variable!r} needs exactly one ling declaration",
                extra.line,
                extra.column,
            )
        covered.add(block.variable)
    for name, v in declared.items():
        if name not in covered:
            raise FclSemanticError(
                f"LING variable {name!r} has no ling declaration", v.line, v.column
            )


def parse(text: str) -> FclModel:
    """Parse FCL source; raises :class:`FclSyntaxError` or :class:`FclSemanticError`."""
    model = _Parser(text).model()
    _check(model)
    return model


# -- serializer --------------------------------------------------------------

def _num(x: float) -> str:
    return repr(float(x))


def _body(body) -> str:
    if isinstance(body, LingDeclPairs):
        return " ".join(f"({n}, {_num(v)})" for n, v in body.pairs)
    parts = [*body.left_terms, "|", body.center_term, "|", *body.right_terms]
    return " ".join(parts) + f", {body.left_density} {body.right_density}"


def serialize(model: FclModel) -> str:
    chunks = []
    if model.inputs:
        lines = ["VAR_INPUT"]
        lines += [f"    {v.name} : {v.type};" for v in model.inputs]
        lines.append("END_VAR")
        chunks.append("\n".join(lines))
    for block in model.fuzzify_blocks:
        lines = [f"FUZZIFY {block.variable}"]
        lines += [f"    TERM {t.name} := ling {_body(t.body)};" for t in block.terms]
        lines.append("END_FUZZIFY")
        chunks.append("\n".join(lines))
    if not chunks:
        return ""
    return "\n\n".join(chunks) + "\n"


def to_partition(model: FclModel, variable: str) -> UnbalancedPartition:
    decl = model.ling_decl(variable)
    if isinstance(decl, LingDeclDensity):
        raise NotSupported(
            f"variable {variable!r} uses the density description; building a partition "
            "from it requires the Herrera-Martinez unbalanced representation algorithm, "
            "which is not implemented (declare (term, value) pairs instead)"
        )
    return build_partition(decl.pairs)
