"""Recursive-descent parser for the surface wff language.

Grammar (whitespace-insensitive):

    wff  := "all" "(" VAR ")" "(" wff ")" | imp
    imp  := dis [ "=>" imp ]
    dis  := con { "or" con }
    con  := neg { "and" neg }
    neg  := "~" neg | "(" wff ")" | atom
    atom := IDENT "(" term { "," term } ")"
    term := IDENT | wffN | nested proposition
    IDENT := [A-Za-z][A-Za-z0-9_-]*

"all", "and", "or" are reserved words.  Identifiers are case-insensitive
and normalized to upper case.  In argument position, an identifier of the
form wffN refers to the already-interned proposition with that display
index, and a parenthesized wff (or a bare atom) denotes a nested
proposition, so meta-statements can talk about other statements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (
    And,
    Atom,
    Const,
    ForAll,
    Implies,
    Not,
    Or,
    Term,
    TermRef,
    TermStore,
    UnknownTermError,
    Var,
)

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_WFF_REF = re.compile(r"wff(\d+)$", re.IGNORECASE)
_KEYWORDS = {"ALL", "AND", "OR"}


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple = ()):
        at = f" at {line}:{col}"
        if expected:
            message = f"{message}{at} (expected {', '.join(expected)})"
        else:
            message = f"{message}{at}"
        super().__init__(message)
        self.line = line
        self.col = col
        self.expected = expected


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "(", ")", ",", "~", "=>", "end"
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "(),~":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        if text.startswith("=>", i):
            tokens.append(_Token("=>", "=>", line, col))
            col += 2
            i += 2
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(0), line, col))
            col += len(m.group(0))
            i += len(m.group(0))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list, store: TermStore):
        self.tokens = tokens
        self.store = store
        self.pos = 0
        self.scopes: list[list] = []       # [name, used] frames, innermost last
        self.bound_names: set = set()      # every variable quantified in this wff
        self.const_uses: list = []         # (name, line, col) of constant mentions

    # -- token helpers ----------------------------------------------------

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, *expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            names = expected or (kind,)
            raise ParseError(
                f"unexpected {tok.value or 'end of input'!r}", tok.line, tok.col, names
            )
        return self.take()

    def _is_keyword(self, tok: _Token, word: str) -> bool:
        return tok.kind == "ident" and tok.value.upper() == word

    # -- grammar ------------------------------------------------------------

    def wff(self) -> Term:
        tok = self.peek()
        if self._is_keyword(tok, "ALL"):
            self.take()
            self.expect("(", "'('")
            var_tok = self.expect("ident", "variable name")
            var = var_tok.value.upper()
            if var in _KEYWORDS:
                raise ParseError(f"{var!r} is reserved", var_tok.line, var_tok.col)
            self.expect(")", "')'")
            self.expect("(", "'('")
            self.scopes.append([var, False])
            self.bound_names.add(var)
            body = self.wff()
            frame = self.scopes.pop()
            self.expect(")", "')'")
            if not frame[1]:
                raise ParseError(
                    f"quantified variable {var} is never used",
                    var_tok.line,
                    var_tok.col,
                )
            return ForAll(var, body)
        return self.imp()

    def imp(self) -> Term:
        left = self.dis()
        if self.peek().kind == "=>":
            self.take()
            return Implies(left, self.imp())
        return left

    def dis(self) -> Term:
        parts = [self.con()]
        while self._is_keyword(self.peek(), "OR"):
            self.take()
            parts.append(self.con())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def con(self) -> Term:
        parts = [self.neg()]
        while self._is_keyword(self.peek(), "AND"):
            self.take()
            parts.append(self.neg())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def neg(self) -> Term:
        tok = self.peek()
        if tok.kind == "~":
            self.take()
            return Not(self.neg())
        if tok.kind == "(":
            self.take()
            inner = self.wff()
            self.expect(")", "')'")
            return inner
        if tok.kind == "ident":
            if self._is_keyword(tok, "ALL"):
                return self.wff()
            if tok.value.upper() in _KEYWORDS:
                raise ParseError(f"{tok.value!r} is reserved", tok.line, tok.col)
            return self.atom()
        raise ParseError(
            f"unexpected {tok.value or 'end of input'!r}",
            tok.line,
            tok.col,
            ("'~'", "'('", "atom"),
        )

    def atom(self) -> Term:
        name_tok = self.expect("ident", "predicate name")
        self.expect("(", "'('")
        args = [self.term()]
        while self.peek().kind == ",":
            self.take()
            args.append(self.term())
        self.expect(")", "')' or ','")
        return Atom(name_tok.value.upper(), tuple(args))

    def term(self):
        tok = self.peek()
        if tok.kind in ("~", "("):
            return self.neg()
        if self._is_keyword(tok, "ALL"):
            return self.wff()
        name_tok = self.expect("ident", "term")
        if name_tok.value.upper() in _KEYWORDS:
            raise ParseError(f"{name_tok.value!r} is reserved", name_tok.line, name_tok.col)
        if self.peek().kind == "(":
            self.pos -= 1  # nested atom such as SMART(FRAN)
            return self.atom()
        name = name_tok.value.upper()
        ref = _WFF_REF.match(name)
        if ref:
            try:
                return TermRef(self.store.resolve_label(name))
            except UnknownTermError:
                raise ParseError(
                    f"unknown proposition reference {name}", name_tok.line, name_tok.col
                ) from None
        for frame in reversed(self.scopes):
            if frame[0] == name:
                frame[1] = True
                return Var(name)
        self.const_uses.append((name, name_tok.line, name_tok.col))
        return Const(name)


def parse(text: str, store: TermStore) -> Term:
    """Parse a single wff; raises ParseError on anything else."""
    parser = _Parser(_tokenize(text), store)
    term = parser.wff()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(
            f"unexpected {tail.value!r} after complete formula", tail.line, tail.col
        )
    for name, line, col in parser.const_uses:
        if name in parser.bound_names:
            raise ParseError(
                f"unbound variable {name} outside its quantifier scope", line, col
            )
    return term


def parse_to_id(text: str, store: TermStore) -> int:
    return store.intern(parse(text, store))
