"""Tiny recursive-descent parser for element expressions.

One grammar serves ring elements, characters, K-classes and differential
forms; the caller supplies an atom resolver mapping names to values.  All
arithmetic is delegated to the values' own operators, so whatever algebra
the resolver hands back decides what `*`, `+` and `^` mean.
"""

from __future__ import annotations

import re
from typing import Any, Callable


class ParseError(ValueError):
    """Malformed element text; `position` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<int>\d+)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_']*(?:\[[A-Za-z0-9_']+\])?)"
    r"|(?P<op>[-+*^()])"
    r")"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, resolve_atom, make_int):
        self.tokens = tokens
        self.i = 0
        self.resolve_atom = resolve_atom
        self.make_int = make_int

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op, endpos):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos if pos >= 0 else endpos)

    def parse_expr(self, endpos):
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.parse_term(endpos)
        if negate:
            acc = -acc
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.parse_term(endpos)
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def parse_term(self, endpos):
        acc = self.parse_factor(endpos)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                acc = acc * self.parse_factor(endpos)
            else:
                return acc

    def parse_factor(self, endpos):
        base = self.parse_atom(endpos)
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            exp = self.parse_signed_int(endpos)
            try:
                return base ** exp
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), pos) from exc
        return base

    def parse_signed_int(self, endpos):
        kind, val, pos = self.next()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val, pos = self.next()
        if kind != "int":
            raise ParseError("expected integer exponent", pos if pos >= 0 else endpos)
        return sign * int(val)

    def parse_atom(self, endpos):
        kind, val, pos = self.next()
        if kind == "int":
            return self.make_int(int(val))
        if kind == "name":
            return self.resolve_atom(val, pos)
        if kind == "op" and val == "(":
            inner = self.parse_expr(endpos)
            self.expect_op(")", endpos)
            return inner
        raise ParseError("expected a value", pos if pos >= 0 else endpos)


def parse_expression(
    text: str,
    resolve_atom: Callable[[str, int], Any],
    make_int: Callable[[int], Any],
) -> Any:
    """Parse `text`, resolving names through `resolve_atom(name, pos)`."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens, resolve_atom, make_int)
    value = parser.parse_expr(len(text))
    kind, _, pos = parser.peek()
    if kind is not None:
        raise ParseError("trailing input", pos)
    return value
