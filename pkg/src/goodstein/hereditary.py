"""Exact symbolic naturals in hereditary base-``b`` notation.

Capped evaluation only says "too big" once a value passes the cap.  Oracles
that must still *compare* two over-cap values (base-change maximality for E
and L, the A-system first step) evaluate both sides here instead.

An ``HNum`` in base ``b`` is a tuple of ``(exponent, coefficient)`` pairs with
exponents (themselves ``HNum``) strictly descending and ``1 <= coef < b``.
Zero is ``()``.  Because the representation is canonical, Python's native
tuple ordering is exactly the numeric ordering: the leading exponent decides,
then its coefficient, then the rest.
"""

from __future__ import annotations

from typing import Union

from .errors import GoodsteinError

HNum = tuple  # tuple[tuple[HNum, int], ...]

HZERO: HNum = ()
HONE: HNum = ((HZERO, 1),)


class SymbolicOverflow(GoodsteinError):
    """The value cannot be built within the symbolic iteration budget."""


def from_int(n: int, base: int) -> HNum:
    if n < 0:
        raise ValueError("negative value")
    out = []
    exp = 0
    while n:
        n, d = divmod(n, base)
        if d:
            out.append((from_int(exp, base), d))
        exp += 1
    return tuple(reversed(out))


def to_int(x: HNum, base: int, max_bits: int = 1 << 16) -> int | None:
    """The integer value, or ``None`` if it needs more than ``max_bits`` bits."""
    total = 0
    for e, c in x:
        ev = to_int(e, base, max_bits)
        if ev is None or ev * (base.bit_length() - 1) > max_bits:
            return None
        total += c * base**ev
    return total if total.bit_length() <= max_bits else None


def _normalize(coefs: dict, base: int) -> HNum:
    # carries can cascade into fresh exponents, so keep going until clean
    pending = [e for e, c in coefs.items() if c >= base]
    while pending:
        e = pending.pop()
        c = coefs.get(e, 0)
        if c < base:
            continue
        q, r = divmod(c, base)
        if r:
            coefs[e] = r
        else:
            del coefs[e]
        up = add(e, HONE, base)
        coefs[up] = coefs.get(up, 0) + q
        if coefs[up] >= base:
            pending.append(up)
    return tuple(sorted(((e, c) for e, c in coefs.items() if c), reverse=True))


def add(x: HNum, y: HNum, base: int) -> HNum:
    if not x:
        return y
    if not y:
        return x
    coefs: dict = dict(x)
    for e, c in y:
        coefs[e] = coefs.get(e, 0) + c
    return _normalize(coefs, base)


def mul(x: HNum, y: HNum, base: int) -> HNum:
    if not x or not y:
        return HZERO
    coefs: dict = {}
    for e1, c1 in x:
        for e2, c2 in y:
            e = add(e1, e2, base)
            coefs[e] = coefs.get(e, 0) + c1 * c2
    return _normalize(coefs, base)


def power_of_base(x: HNum) -> HNum:
    """``base ** x``."""
    return ((x, 1),)


def decrement(x: HNum, base: int) -> HNum:
    """``x - 1`` for ``x > 0``; the lowest exponent must be a small integer."""
    if not x:
        raise ValueError("cannot decrement zero")
    *head, (e, c) = x
    low = to_int(e, base, max_bits=20)
    if low is None:
        raise SymbolicOverflow("lowest exponent too large to borrow from")
    tail = [(e, c - 1)] if c > 1 else []
    # base**low - 1 = sum of (base - 1) * base**i for i < low
    borrow = [(from_int(i, base), base - 1) for i in range(low - 1, -1, -1)]
    return tuple(head) + tuple(tail) + tuple(borrow)


def compare(x: HNum, y: HNum) -> int:
    return (x > y) - (x < y)


DEFAULT_ITERATIONS = 10_000


def symbolic_value(term, base: int, budget: int = DEFAULT_ITERATIONS) -> HNum:
    """Exact value of ``term`` read in ``base`` as an ``HNum``.

    ``Ack`` nodes are supported only while the iteration count stays within
    ``budget``; otherwise :class:`SymbolicOverflow` is raised.
    """
    from .terms import Ack, BaseExp, BaseMul, Mul, One, Plus, Zero, summands

    if base < 2:
        raise ValueError("base must be >= 2")
    state = {"budget": budget}

    def ack(a: int, b: Union[int, HNum]) -> HNum:
        if isinstance(b, int):
            if b == -1:
                return HONE
            b_h = from_int(b, base)
        else:
            b_h = b
        if a == 0:
            return power_of_base(b_h)
        b_i = b if isinstance(b, int) else to_int(b, base, max_bits=32)
        if b_i is None:
            raise SymbolicOverflow("Ackermann argument too large to iterate")
        x = HONE
        for _ in range(b_i + 1):
            for _ in range(base):
                state["budget"] -= 1
                if state["budget"] < 0:
                    raise SymbolicOverflow("iteration budget exhausted")
                x = ack(a - 1, x)
        return x

    def go(t) -> HNum:
        if isinstance(t, Zero):
            return HZERO
        if isinstance(t, One):
            return HONE
        if isinstance(t, Plus):
            acc = HZERO
            for s in summands(t):
                acc = add(acc, go(s), base)
            return acc
        if isinstance(t, BaseMul):
            return mul(from_int(base, base), go(t.arg), base)
        if isinstance(t, BaseExp):
            return power_of_base(go(t.arg))
        if isinstance(t, Mul):
            return mul(go(t.left), go(t.right), base)
        if isinstance(t, Ack):
            index = to_int(go(t.index), base, max_bits=16)
            if index is None:
                raise SymbolicOverflow("Ackermann index too large")
            return ack(index, go(t.arg))
        raise TypeError(f"not a term: {t!r}")

    return go(term)


def to_exp_term(x: HNum):
    """The hereditary exponential normal form of ``x`` as an E-term.

    A coefficient ``c`` becomes ``c`` equal summands, so this is exactly what
    the E normal form produces for the same value.
    """
    from .terms import BaseExp, plus

    parts = []
    for e, c in x:
        parts.extend([BaseExp(to_exp_term(e))] * c)
    return plus(*parts)
