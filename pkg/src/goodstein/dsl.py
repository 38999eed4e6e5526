"""Text syntax for terms.

Grammar (whitespace-insensitive)::

    term  := sum
    sum   := prod ( "+" prod )*
    prod  := atom ( "*" atom )*
    atom  := "0" | "1" | "exp(" term ")" | "mul(" term ")"
           | "A(" term "," term ")" | "(" term ")"

``exp(t)`` is ``k**t``, ``mul(t)`` is ``k*t`` and ``A(a,b)`` is
``A_a(k, b)``; the base ``k`` is never written.  Sums are stored right-nested,
products left-nested.
"""

from __future__ import annotations

import re

from .errors import TermSyntaxError
from .terms import (
    ONE,
    ZERO,
    Ack,
    BaseExp,
    BaseMul,
    Mul,
    One,
    Plus,
    System,
    Term,
    Zero,
    plus,
    summands,
    validate,
)

_TOKEN = re.compile(r"(exp|mul|A)\s*\(|[01()+*,]")
_ANY_TOKEN = ("0", "1", "exp(", "mul(", "A(", "(", ")", "+", "*", ",")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos, _ANY_TOKEN)
        tok = m.group(1) + "(" if m.group(1) else m.group(0)
        tokens.append((tok, pos))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def advance(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        got, pos = self.advance()
        if got != tok:
            raise TermSyntaxError(f"unexpected token {got!r}", pos, (tok,))

    def parse_sum(self) -> Term:
        parts = [self.parse_prod()]
        while self.peek() == "+":
            self.advance()
            parts.append(self.parse_prod())
        return plus(*parts)

    def parse_prod(self) -> Term:
        acc = self.parse_atom()
        while self.peek() == "*":
            self.advance()
            acc = Mul(acc, self.parse_atom())
        return acc

    def parse_atom(self) -> Term:
        tok, pos = self.advance()
        if tok == "0":
            return ZERO
        if tok == "1":
            return ONE
        if tok == "exp(":
            arg = self.parse_sum()
            self.expect(")")
            return BaseExp(arg)
        if tok == "mul(":
            arg = self.parse_sum()
            self.expect(")")
            return BaseMul(arg)
        if tok == "A(":
            index = self.parse_sum()
            self.expect(",")
            arg = self.parse_sum()
            self.expect(")")
            return Ack(index, arg)
        if tok == "(":
            inner = self.parse_sum()
            self.expect(")")
            return inner
        raise TermSyntaxError(
            f"unexpected token {tok!r}", pos, ("0", "1", "exp(", "mul(", "A(", "(")
        )


def parse_term(text: str, system: System | str | None = None) -> Term:
    """Parse ``text``; if ``system`` is given, reject constructors it does not allow."""
    parser = _Parser(text)
    term = parser.parse_sum()
    tok, pos = parser.advance()
    if tok != "<end>":
        raise TermSyntaxError(f"trailing token {tok!r}", pos, ("+", "*", "<end>"))
    if system is not None:
        validate(term, system)
    return term


def print_term(t: Term) -> str:
    """Canonical rendering; ``parse_term(print_term(t))`` is ``t`` up to Plus association."""
    return " + ".join(_factor(s) for s in summands(t))


def _factor(t: Term) -> str:
    if isinstance(t, Mul):
        left = _factor(t.left) if isinstance(t.left, Mul) else _atom(t.left)
        return f"{left} * {_atom(t.right)}"
    return _atom(t)


def _atom(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, BaseExp):
        return f"exp({print_term(t.arg)})"
    if isinstance(t, BaseMul):
        return f"mul({print_term(t.arg)})"
    if isinstance(t, Ack):
        # a space after the comma only when the argument is compound
        sep = "," if isinstance(t.arg, (Zero, One)) else ", "
        return f"A({print_term(t.index)}{sep}{print_term(t.arg)})"
    if isinstance(t, (Plus, Mul)):
        return f"({print_term(t)})"
    raise TypeError(f"not a term: {t!r}")
