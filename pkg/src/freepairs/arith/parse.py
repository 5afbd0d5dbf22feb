"""A small recursive-descent parser for the canonical string grammar.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom (("^" | "**") exponent)?
    exponent := ["-"] INT | "(" ["-"] INT ")"
    atom   := INT | NAME | "(" expr ")"

Names are looked up in an environment mapping, so the same parser reads
rational functions, extension-field elements, quaternions, cyclic-algebra
elements and Weyl/skew elements.  Division is ``x * y^-1``.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, env, const):
        self.tokens = tokens
        self.i = 0
        self.env = env
        self.const = const

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        left = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            right = self.unary()
            left = left * right if op == "*" else left / right
        return left

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        paren = self.peek() == ("op", "(")
        if paren:
            self.take()
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        e = sign * self.take("int")[1]
        if paren:
            self.take("op", ")")
        return e

    def atom(self):
        kind, value = self.peek()
        if kind == "int":
            self.take()
            return self.const(value)
        if kind == "name":
            self.take()
            if value not in self.env:
                raise ParseError(f"unknown name {value!r}")
            return self.env[value]
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {value!r}")


def parse_expression(text: str, env: Mapping[str, object], const: Callable[[int], object]):
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    p = _Parser(tokens, env, const)
    result = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result
