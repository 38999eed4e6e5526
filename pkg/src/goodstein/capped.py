"""Overflow-capped natural-number arithmetic.

Every function here returns either an exact ``int`` no larger than ``bound``
or the :data:`EXCEEDS` sentinel, meaning "strictly greater than ``bound``".
The sentinel carries no magnitude.

The Ackermann hierarchy is parametrised by a base function ``f`` and an
iteration count ``k``::

    A_a(-1) = 1
    A_0(b)  = f(b)
    A_{a+1}(b) = A_a^k(A_{a+1}(b - 1))

Two instances are provided: the exponential one used by the Ackermannian
notation system (``f = x -> k**x``, ``k`` the base) and the successor one
(``f = x -> x + 1``, ``k = 1``) used for lower bounds.
"""

from __future__ import annotations

from typing import Callable, Union

DEFAULT_CAP_BITS = 1 << 16


class _Exceeds:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EXCEEDS"

    def __reduce__(self):
        return (_Exceeds, ())


EXCEEDS = _Exceeds()

BoundedValue = Union[int, _Exceeds]


def bound_from_bits(cap_bits: int) -> int:
    """Largest value with at most ``cap_bits`` binary digits."""
    return (1 << cap_bits) - 1


DEFAULT_BOUND = bound_from_bits(DEFAULT_CAP_BITS)


def is_exact(v: BoundedValue) -> bool:
    return v is not EXCEEDS


def cap(v: int, bound: int) -> BoundedValue:
    return v if v <= bound else EXCEEDS


def capped_add(x: BoundedValue, y: BoundedValue, bound: int) -> BoundedValue:
    if x is EXCEEDS or y is EXCEEDS:
        return EXCEEDS
    return cap(x + y, bound)


def capped_mul(x: BoundedValue, y: BoundedValue, bound: int) -> BoundedValue:
    # 0 annihilates even an over-cap factor
    if x == 0 or y == 0:
        return 0
    if x is EXCEEDS or y is EXCEEDS:
        return EXCEEDS
    return cap(x * y, bound)


def capped_pow(k: int, x: BoundedValue, bound: int) -> BoundedValue:
    """``k**x`` for ``k >= 2``."""
    if x is EXCEEDS:
        return EXCEEDS
    if x == 0:
        return cap(1, bound)
    # k >= 2**(bit_length(k) - 1), so k**x >= 2**(x * (bl - 1)) > bound once
    # the exponent reaches bit_length(bound)
    if x * (k.bit_length() - 1) >= bound.bit_length():
        return EXCEEDS
    return cap(k**x, bound)


def _iterate_ack(
    a: int,
    b: int,
    base_fn: Callable[[int, int], BoundedValue],
    iterations: int,
    bound: int,
) -> BoundedValue:
    if b < -1:
        raise ValueError("Ackermann argument must be >= -1")
    if b == -1:
        return cap(1, bound)
    if a == 0:
        return base_fn(b, bound)
    x: BoundedValue = 1
    # every application strictly increases x, so the loop exits early once
    # the value passes the bound even when b is enormous
    for _ in range(b + 1):
        for _ in range(iterations):
            x = _iterate_ack(a - 1, x, base_fn, iterations, bound)
            if x is EXCEEDS:
                return EXCEEDS
    return cap(x, bound)


def ack_exp(a: BoundedValue, b: BoundedValue, k: int, bound: int) -> BoundedValue:
    """``A_a(k, b)`` with ``A_0(k, x) = k**x``; ``b = -1`` gives the auxiliary value 1."""
    if a is EXCEEDS or b is EXCEEDS:
        # A_a(b) > max(a, b) by strict monotonicity in both arguments
        return EXCEEDS
    if k < 2:
        raise ValueError("base must be >= 2")
    if a > 2 and b >= 0 and ack_exp(2, 0, k, bound) is EXCEEDS:
        return EXCEEDS
    return _iterate_ack(a, b, lambda x, bd: capped_pow(k, x, bd), k, bound)


def _succ(x: int, bound: int) -> BoundedValue:
    return cap(x + 1, bound)


def ack_succ_recursive(a: int, b: int, bound: int) -> BoundedValue:
    """Successor-based ``A_a(S, 1, b)`` straight from the recursion (slow; oracle use)."""
    return _iterate_ack(a, b, _succ, 1, bound)


def ack_succ(a: BoundedValue, b: BoundedValue, bound: int) -> BoundedValue:
    """Successor-based ``A_a b = A_a(S, 1, b)`` with closed forms for levels 0..3."""
    if a is EXCEEDS or b is EXCEEDS:
        return EXCEEDS
    if b == -1:
        return cap(1, bound)
    if a == 0:
        return cap(b + 1, bound)
    if a == 1:
        return cap(b + 2, bound)
    if a == 2:
        return cap(2 * b + 3, bound)
    if a == 3:
        if b + 3 > bound.bit_length() + 1:
            return EXCEEDS
        return cap((1 << (b + 3)) - 3, bound)
    if a > 6 and ack_succ(6, 0, bound) is EXCEEDS:
        return EXCEEDS
    x: BoundedValue = 1
    for _ in range(b + 1):
        x = ack_succ(a - 1, x, bound)
        if x is EXCEEDS:
            return EXCEEDS
    return x


def ack_succ_iter(a: int, times: int, x: BoundedValue, bound: int) -> BoundedValue:
    """``A_a^times(x)`` over the successor hierarchy."""
    for _ in range(times):
        x = ack_succ(a, x, bound)
        if x is EXCEEDS:
            break
    return x


def ack_exp_iter(a: int, times: int, x: BoundedValue, k: int, bound: int) -> BoundedValue:
    """``A_a^times(k, x)`` over the exponential hierarchy."""
    for _ in range(times):
        x = ack_exp(a, x, k, bound)
        if x is EXCEEDS:
            break
    return x
