"""Term AST for the base-parametric notation systems, with norm, capped
evaluation, base change and bounded enumeration.

A term never stores its base: the base ``k`` is supplied when evaluating.
``Plus`` chains are kept right-nested (``plus`` builds them that way) and every
comparison goes through :func:`canonical`, so re-associated chains compare
equal.  Addition is *not* treated as commutative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .capped import (
    DEFAULT_BOUND,
    EXCEEDS,
    BoundedValue,
    ack_exp,
    cap,
    capped_add,
    capped_mul,
    capped_pow,
)
from .errors import InvalidBase, ResourceLimit, SystemViolation


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class One:
    pass


@dataclass(frozen=True, slots=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class BaseMul:
    """``k * arg``"""

    arg: "Term"


@dataclass(frozen=True, slots=True)
class BaseExp:
    """``k ** arg``"""

    arg: "Term"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Ack:
    """``A_index(k, arg)`` over the exponential Ackermann hierarchy."""

    index: "Term"
    arg: "Term"


Term = Union[Zero, One, Plus, BaseMul, BaseExp, Mul, Ack]

ZERO = Zero()
ONE = One()

# enumeration order of constructors
CONSTRUCTORS: tuple[type, ...] = (Zero, One, Plus, BaseMul, BaseExp, Mul, Ack)


class System(enum.Enum):
    E = "E"
    M = "M"
    L = "L"
    A = "A"

    @property
    def constructors(self) -> frozenset[type]:
        return _ALLOWED[self]

    def allows(self, cls: type) -> bool:
        return cls in _ALLOWED[self]

    @classmethod
    def parse(cls, tag: "str | System") -> "System":
        if isinstance(tag, System):
            return tag
        try:
            return cls(tag.upper())
        except ValueError:
            raise ValueError(f"unknown notation system {tag!r}") from None


_ALLOWED = {
    System.E: frozenset({Zero, Plus, BaseExp}),
    System.M: frozenset({Zero, One, Plus, BaseMul}),
    System.L: frozenset({Zero, Plus, Mul, BaseExp}),
    System.A: frozenset({Zero, Plus, Ack}),
}


@dataclass(frozen=True, slots=True)
class GroundTerm:
    """A term together with the base it is read in."""

    term: Term
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise InvalidBase(f"base must be >= 2, got {self.base}")


# ---------------------------------------------------------------------------
# structure


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Zero, One)):
        return ()
    if isinstance(t, (BaseMul, BaseExp)):
        return (t.arg,)
    if isinstance(t, Ack):
        return (t.index, t.arg)
    return (t.left, t.right)


def summands(t: Term) -> list[Term]:
    """Flatten a Plus tree (any association) into its left-to-right summands."""
    out: list[Term] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Plus):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def plus(*terms: Term) -> Term:
    """Right-nested sum of ``terms``; nested sums are flattened first.

    ``plus()`` of nothing is ``Zero``.
    """
    flat: list[Term] = []
    for t in terms:
        flat.extend(summands(t))
    if not flat:
        return ZERO
    acc = flat[-1]
    for s in reversed(flat[:-1]):
        acc = Plus(s, acc)
    return acc


def repeat(t: Term, times: int) -> Term:
    """``t + t + ... + t``; ``Zero`` for ``times == 0``."""
    return plus(*([t] * times))


def canonical(t: Term) -> Term:
    """Re-associate every Plus chain to the right."""
    if isinstance(t, (Zero, One)):
        return t
    if isinstance(t, Plus):
        return plus(*(canonical(s) for s in summands(t)))
    if isinstance(t, BaseMul):
        return BaseMul(canonical(t.arg))
    if isinstance(t, BaseExp):
        return BaseExp(canonical(t.arg))
    if isinstance(t, Mul):
        return Mul(canonical(t.left), canonical(t.right))
    return Ack(canonical(t.index), canonical(t.arg))


def equivalent(a: Term, b: Term) -> bool:
    """Structural equality modulo associativity of ``+``."""
    return canonical(a) == canonical(b)


def norm(t: Term) -> int:
    # every symbol contributes one, so the norm is the node count
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        count += 1
        stack.extend(children(node))
    return count


def constructors_used(t: Term) -> set[type]:
    used = set()
    stack = [t]
    while stack:
        node = stack.pop()
        used.add(type(node))
        stack.extend(children(node))
    return used


def validate(t: Term, system: System | str) -> Term:
    system = System.parse(system)
    bad = constructors_used(t) - system.constructors
    if bad:
        names = ", ".join(sorted(c.__name__ for c in bad))
        raise SystemViolation(f"system {system.value} does not allow {names}")
    return t


def is_valid(t: Term, system: System | str) -> bool:
    return constructors_used(t) <= System.parse(system).constructors


# ---------------------------------------------------------------------------
# semantics


def evaluate(t: Term, base: int, bound: int = DEFAULT_BOUND) -> BoundedValue:
    """Value of ``t`` read in ``base``, or ``EXCEEDS`` if it is larger than ``bound``."""
    if base < 2:
        raise InvalidBase(f"base must be >= 2, got {base}")
    return _eval(t, base, bound)


def _eval(t: Term, k: int, bound: int) -> BoundedValue:
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return cap(1, bound)
    if isinstance(t, Plus):
        total: BoundedValue = 0
        for s in summands(t):
            total = capped_add(total, _eval(s, k, bound), bound)
            if total is EXCEEDS:
                return EXCEEDS
        return total
    if isinstance(t, BaseMul):
        return capped_mul(k, _eval(t.arg, k, bound), bound)
    if isinstance(t, BaseExp):
        return capped_pow(k, _eval(t.arg, k, bound), bound)
    if isinstance(t, Mul):
        left = _eval(t.left, k, bound)
        if left == 0:
            return 0
        return capped_mul(left, _eval(t.right, k, bound), bound)
    index = _eval(t.index, k, bound)
    if index is EXCEEDS:
        return EXCEEDS
    return ack_exp(index, _eval(t.arg, k, bound), k, bound)


def eval_ground(g: GroundTerm, bound: int = DEFAULT_BOUND) -> BoundedValue:
    return _eval(g.term, g.base, bound)


def base_change(g: GroundTerm, ell: int) -> GroundTerm:
    """Replace the base of every symbol by ``ell``; the tree itself is unchanged."""
    if ell < g.base:
        raise InvalidBase(f"cannot change base {g.base} down to {ell}")
    return GroundTerm(g.term, ell)


# ---------------------------------------------------------------------------
# enumeration

DEFAULT_ENUMERATION_LIMIT = 2_000_000


def enumerate_terms(
    system: System | str,
    base: int,
    max_norm: int,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> list[Term]:
    """Every term of ``system`` with norm <= ``max_norm``, one per Plus association.

    Only right-nested Plus chains are produced.  Order: by norm, then by
    constructor (``CONSTRUCTORS`` order), then recursively by the children's
    positions.  ``base`` does not influence the result (terms are
    base-free) but is validated.
    """
    system = System.parse(system)
    if base < 2:
        raise InvalidBase(f"base must be >= 2, got {base}")
    if max_norm < 1:
        raise ValueError("max_norm must be >= 1")
    count = _count_upto(system, max_norm)
    if count > limit:
        raise ResourceLimit(f"{count} terms of norm <= {max_norm} exceed the limit {limit}")
    out: list[Term] = []
    for n in range(1, max_norm + 1):
        out.extend(_all_of_norm(system, n))
    return out


def iter_terms(system: System | str, max_norm: int) -> Iterator[Term]:
    system = System.parse(system)
    for n in range(1, max_norm + 1):
        yield from _all_of_norm(system, n)


def count_terms(system: System | str, max_norm: int) -> int:
    return _count_upto(System.parse(system), max_norm)


@lru_cache(maxsize=None)
def _counts(system: System, n: int) -> tuple[int, int]:
    """(non-Plus count, total count) of terms with norm exactly ``n``."""
    if n < 1:
        return (0, 0)
    allowed = system.constructors
    nonplus = 0
    if n == 1:
        nonplus += (Zero in allowed) + (One in allowed)
    if n >= 2:
        nonplus += ((BaseMul in allowed) + (BaseExp in allowed)) * _counts(system, n - 1)[1]
    binary = (Mul in allowed) + (Ack in allowed)
    if binary and n >= 3:
        nonplus += binary * sum(
            _counts(system, a)[1] * _counts(system, n - 1 - a)[1] for a in range(1, n - 1)
        )
    total = nonplus
    if n >= 3:
        total += sum(_counts(system, a)[0] * _counts(system, n - 1 - a)[1] for a in range(1, n - 1))
    return (nonplus, total)


def _count_upto(system: System, max_norm: int) -> int:
    return sum(_counts(system, n)[1] for n in range(1, max_norm + 1))


@lru_cache(maxsize=None)
def _nonplus_of_norm(system: System, n: int) -> tuple[Term, ...]:
    # constructors other than Plus, in CONSTRUCTORS order
    allowed = system.constructors
    out: list[Term] = []
    if n == 1:
        if Zero in allowed:
            out.append(ZERO)
        if One in allowed:
            out.append(ONE)
        return tuple(out)
    for cls in (BaseMul, BaseExp):
        if cls in allowed:
            out.extend(cls(c) for c in _all_of_norm(system, n - 1))
    for cls in (Mul, Ack):
        if cls in allowed:
            for a in range(1, n - 1):
                for x in _all_of_norm(system, a):
                    for y in _all_of_norm(system, n - 1 - a):
                        out.append(cls(x, y))
    return tuple(out)


@lru_cache(maxsize=None)
def _all_of_norm(system: System, n: int) -> tuple[Term, ...]:
    nonplus = _nonplus_of_norm(system, n)
    leaves = [t for t in nonplus if isinstance(t, (Zero, One))]
    rest = [t for t in nonplus if not isinstance(t, (Zero, One))]
    sums: list[Term] = []
    if Plus in system.constructors:
        for a in range(1, n - 1):
            for x in _nonplus_of_norm(system, a):
                for y in _all_of_norm(system, n - 1 - a):
                    sums.append(Plus(x, y))
    return tuple(leaves + sums + rest)
