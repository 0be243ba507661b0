"""Concrete syntax: parse and print game terms.

Grammar (all binary operators associate to the left, loosest first):

    term    := choice1
    choice1 := choice2 { "+" choice2 }
    choice2 := par { "&" par }
    par     := seq { "||" seq }
    seq     := unary { ";" unary }
    unary   := primary { "^d" }
    primary := atomName | "1" | "(" term ")"

Atom names are a lowercase letter followed by letters, digits, or
underscores.  Whitespace between tokens is insignificant; the "^d" and
"||" tokens must be written without internal spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    IDLE,
    Atom,
    AtomGame,
    Choice1,
    Choice2,
    Compose,
    Dual,
    Idle,
    Parallel,
    Term,
)


@dataclass(frozen=True)
class SourcePosition:
    """1-based line and column of a character in the input."""

    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(Exception):
    """Raised on any lexical or syntactic error, with position and expectations."""

    def __init__(self, message: str, position: SourcePosition, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at {position}"
        if self.expected:
            detail += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(detail)


@dataclass(frozen=True)
class _Token:
    kind: str  # one of: + & || ; ^d ( ) 1 name end
    text: str
    position: SourcePosition


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        pos = SourcePosition(line, col)
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch in "+&;()":
            tokens.append(_Token(ch, ch, pos))
            i += 1
            col += 1
            continue
        if ch == "|":
            if i + 1 < n and text[i + 1] == "|":
                tokens.append(_Token("||", "||", pos))
                i += 2
                col += 2
                continue
            raise ParseError("unknown character '|'", pos, ("||",))
        if ch == "^":
            if i + 1 < n and text[i + 1] == "d":
                tokens.append(_Token("^d", "^d", pos))
                i += 2
                col += 2
                continue
            raise ParseError("unknown character '^'", pos, ("^d",))
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            run = text[i:j]
            if run == "1":
                tokens.append(_Token("1", "1", pos))
            else:
                raise ParseError(f"unknown token {run!r}", pos)
            col += j - i
            i = j
            continue
        if ch.islower() and ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            tokens.append(_Token("name", name, pos))
            col += j - i
            i = j
            continue
        raise ParseError(f"unknown character {ch!r}", pos)
    tokens.append(_Token("end", "", SourcePosition(line, col)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str, expected: tuple[str, ...]) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"unexpected {found!r}", tok.position, expected)
        return self.advance()

    def parse_choice1(self) -> Term:
        node = self.parse_choice2()
        while self.peek().kind == "+":
            self.advance()
            node = Choice1(node, self.parse_choice2())
        return node

    def parse_choice2(self) -> Term:
        node = self.parse_par()
        while self.peek().kind == "&":
            self.advance()
            node = Choice2(node, self.parse_par())
        return node

    def parse_par(self) -> Term:
        node = self.parse_seq()
        while self.peek().kind == "||":
            self.advance()
            node = Parallel(node, self.parse_seq())
        return node

    def parse_seq(self) -> Term:
        node = self.parse_unary()
        while self.peek().kind == ";":
            self.advance()
            node = Compose(node, self.parse_unary())
        return node

    def parse_unary(self) -> Term:
        node = self.parse_primary()
        while self.peek().kind == "^d":
            self.advance()
            node = Dual(node)
        return node

    def parse_primary(self) -> Term:
        tok = self.peek()
        if tok.kind == "name":
            self.advance()
            return AtomGame(Atom(tok.text))
        if tok.kind == "1":
            self.advance()
            return IDLE
        if tok.kind == "(":
            self.advance()
            node = self.parse_choice1()
            self.expect(")", (")",))
            return node
        found = tok.text or "end of input"
        raise ParseError(f"unexpected {found!r}", tok.position, ("atom name", "1", "("))


def parse_term(text: str) -> Term:
    """Parse a term from concrete syntax; raises ParseError on bad input."""
    parser = _Parser(_lex(text))
    node = parser.parse_choice1()
    parser.expect("end", ("operator", "end of input"))
    return node


# Binding strength of each node kind when printed: a child is
# parenthesized whenever its own level is below the level its context
# requires.  Left children of a binary operator may sit at the
# operator's level (left associativity); right children must bind
# strictly tighter.
_LEVEL_CHOICE1 = 1
_LEVEL_CHOICE2 = 2
_LEVEL_PAR = 3
_LEVEL_SEQ = 4
_LEVEL_DUAL = 5
_LEVEL_ATOM = 6


def _render(t: Term) -> tuple[str, int]:
    if isinstance(t, Idle):
        return "1", _LEVEL_ATOM
    if isinstance(t, AtomGame):
        return t.atom.name, _LEVEL_ATOM
    if isinstance(t, Dual):
        return f"{_child(t.inner, _LEVEL_DUAL)}^d", _LEVEL_DUAL
    if isinstance(t, Compose):
        left = _child(t.left, _LEVEL_SEQ)
        right = _child(t.right, _LEVEL_SEQ + 1)
        return f"{left} ; {right}", _LEVEL_SEQ
    if isinstance(t, Parallel):
        left = _child(t.left, _LEVEL_PAR)
        right = _child(t.right, _LEVEL_PAR + 1)
        return f"{left} || {right}", _LEVEL_PAR
    if isinstance(t, Choice2):
        left = _child(t.left, _LEVEL_CHOICE2)
        right = _child(t.right, _LEVEL_CHOICE2 + 1)
        return f"{left} & {right}", _LEVEL_CHOICE2
    if isinstance(t, Choice1):
        left = _child(t.left, _LEVEL_CHOICE1)
        right = _child(t.right, _LEVEL_CHOICE1 + 1)
        return f"{left} + {right}", _LEVEL_CHOICE1
    raise TypeError(f"not a term: {t!r}")


def _child(t: Term, min_level: int) -> str:
    text, level = _render(t)
    if level < min_level:
        return f"({text})"
    return text


def print_term(t: Term) -> str:
    """Render a term with the minimal parentheses the grammar needs."""
    return _render(t)[0]
