"""Goodstein sequences and Goodstein walks.

A run starts at ``m`` in base 2; step ``i`` holds a value written in base
``i + 2``.  The next value is the base change of that value's normal form to
base ``i + 3``, minus one.  A walk is the same process with the normal form
replaced by whatever term a strategy picks.

Values are exact integers up to the cap.  When a value would exceed it, the
step is still recorded (with its term when one can be produced) and the trace
stops with status ``cap_exceeded``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import hereditary as H
from .ack_system import nf_ack
from .capped import DEFAULT_BOUND, EXCEEDS, BoundedValue, ack_exp
from .dsl import print_term
from .errors import StepLimit, StrategyError
from .exp_system import _bch_exp_int, nf_exp
from .mult_system import bch_mult, nf_mult
from .terms import (
    ZERO,
    Ack,
    BaseExp,
    Mul,
    System,
    Term,
    evaluate,
    is_valid,
    iter_terms,
    plus,
    summands,
)

TERMINATED = "terminated"
CAP_EXCEEDED = "cap_exceeded"
STEP_LIMIT = "step_limit"

_NF = {System.E: nf_exp, System.M: nf_mult, System.A: nf_ack, System.L: nf_exp}


def normal_form(system: System | str, m: int, k: int) -> Term:
    """The canonical normal form used for ``system`` (L borrows the E normal form)."""
    return _NF[System.parse(system)](m, k)


@dataclass
class Step:
    i: int
    base: int
    value: BoundedValue
    term: Term | None = None

    def record(self) -> dict:
        exact = self.value is not EXCEEDS
        return {
            "i": self.i,
            "base": self.base,
            "term": print_term(self.term) if self.term is not None else None,
            "value": str(self.value) if exact else None,
            "value_status": "exact" if exact else "exceeds_cap",
        }


@dataclass
class Trace:
    """Append-only record of a run or walk."""

    system: System
    start: int
    steps: list[Step] = field(default_factory=list)
    status: str = STEP_LIMIT
    strategy: str = "canonical"

    @property
    def i_star(self) -> int | None:
        """Index of the first zero, when the trace terminated."""
        return self.steps[-1].i if self.status == TERMINATED else None

    @property
    def values(self) -> list[BoundedValue]:
        return [s.value for s in self.steps]

    def term_at(self, i: int) -> Term | None:
        """The term used at step ``i``; canonical traces compute it on demand."""
        step = self.steps[i]
        if step.term is None and step.value is not EXCEEDS:
            return normal_form(self.system, step.value, step.base)
        return step.term

    def records(self, with_terms: bool = True):
        for idx, step in enumerate(self.steps):
            rec = Step(step.i, step.base, step.value, self.term_at(idx) if with_terms else None)
            yield rec.record()

    def to_jsonl(self, with_terms: bool = True) -> str:
        return "".join(json.dumps(r) + "\n" for r in self.records(with_terms))


# ---------------------------------------------------------------------------
# canonical runs


def _next_value(system: System, v: int, k: int, bound: int) -> BoundedValue:
    """``ceil(v)_{k -> k+1} - 1`` (capped), for ``v > 0``."""
    if system in (System.E, System.L):
        w = _bch_exp_int(v, k, k + 1, bound)
    elif system is System.M:
        w = bch_mult(v, k, k + 1)
        if w > bound:
            w = EXCEEDS
    else:
        w = evaluate(nf_ack(v, k), k + 1, bound)
    return EXCEEDS if w is EXCEEDS else w - 1


def _over_cap_term(system: System, v: int, k: int, bound: int) -> Term | None:
    """A base-``k+1`` term for ``ceil(v) - 1`` when that value is over the cap."""
    t = normal_form(system, v, k)
    if system in (System.E, System.L):
        try:
            return H.to_exp_term(H.decrement(H.symbolic_value(t, k + 1), k + 1))
        except H.SymbolicOverflow:
            return None
    if system is System.A:
        return decrement_term(t, k + 1, bound)
    return None


def decrement_term(t: Term, base: int, bound: int = DEFAULT_BOUND) -> Term | None:
    """A base-``base`` A-term for ``val(t) - 1``.

    The longest suffix of summands with an exact positive value is replaced by
    the normal form of that value minus one.  ``None`` if no suffix fits.
    """
    parts = summands(t)
    for cut in range(len(parts)):
        tail = plus(*parts[cut:])
        v = evaluate(tail, base, bound)
        if v is not EXCEEDS and v > 0:
            return plus(*parts[:cut], nf_ack(v - 1, base))
    return None


def goodstein_run(
    system: System | str,
    m: int,
    step_limit: int = 10_000,
    bound: int = DEFAULT_BOUND,
) -> Trace:
    """The Goodstein sequence from ``m`` in ``system``; ``step_limit`` bounds the number of steps taken."""
    system = System.parse(system)
    if m < 0:
        raise ValueError("start must be non-negative")
    trace = Trace(system, m)
    if m > bound:
        trace.steps.append(Step(0, 2, EXCEEDS))
        trace.status = CAP_EXCEEDED
        return trace
    v, i = m, 0
    trace.steps.append(Step(0, 2, v))
    while True:
        k = i + 2
        if v == 0:
            trace.status = TERMINATED
            return trace
        if i >= step_limit:
            trace.status = STEP_LIMIT
            return trace
        nxt = _next_value(system, v, k, bound)
        if nxt is EXCEEDS:
            trace.steps.append(Step(i + 1, k + 1, EXCEEDS, _over_cap_term(system, v, k, bound)))
            trace.status = CAP_EXCEEDED
            return trace
        v, i = nxt, i + 1
        trace.steps.append(Step(i, i + 2, v))


# ---------------------------------------------------------------------------
# walks


@dataclass
class WalkStrategy:
    name: str
    system: System
    choose: Callable[[int, int], Term]

    def __call__(self, m: int, k: int) -> Term:
        return self.choose(m, k)


def strategy_canonical(system: System | str) -> WalkStrategy:
    system = System.parse(system)
    return WalkStrategy(f"canonical-{system.value}", system, lambda m, k: normal_form(system, m, k))


def _ilog(n: int, k: int) -> int:
    # largest r with k**r <= n, for n >= 1
    r = max(0, (n.bit_length() - 1) // max(1, k.bit_length()) - 1)
    while k ** (r + 1) <= n:
        r += 1
    return r


def _prime_factors(m: int) -> list[int]:
    from sympy import factorint

    out: list[int] = []
    for p, e in sorted(factorint(m).items()):
        out.extend([p] * e)
    return out


def _product(terms: list[Term]) -> Term:
    acc = terms[0]
    for t in terms[1:]:
        acc = Mul(acc, t)
    return acc


def strategy_prime_factor(variant: str = "example") -> WalkStrategy:
    """Primes (and 1) are split exponentially, composites become products of prime factors.

    ``variant="example"`` writes primes and factors in hereditary exponential
    normal form, which gives ``7 -> 3^1 + 3^1 + 1`` and ``8 -> 2*2*2`` in base 3.
    ``variant="literal"`` applies the same prime/composite split recursively to
    the exponent and the remainder of a prime, so ``7 -> 3^1 + 2*2`` in base 3.
    """
    if variant not in ("example", "literal"):
        raise ValueError(f"unknown variant {variant!r}")

    @lru_cache(maxsize=65536)
    def choose(m: int, k: int) -> Term:
        if m == 0:
            return ZERO
        factors = _prime_factors(m) if m > 1 else []
        if len(factors) <= 1:
            if variant == "example":
                return nf_exp(m, k)
            r = _ilog(m, k)
            b = m - k**r
            head = BaseExp(choose(r, k))
            return plus(head, choose(b, k)) if b else head
        if variant == "example":
            return _product([nf_exp(p, k) for p in factors])
        return _product([choose(p, k) for p in factors])

    return WalkStrategy(f"prime-factor-{variant}", System.L, choose)


def strategy_alt_ack() -> WalkStrategy:
    """``A_a(b) + c`` with ``a`` maximal such that ``A_a(0) <= m``, then ``b`` maximal."""

    @lru_cache(maxsize=65536)
    def choose(m: int, k: int) -> Term:
        parts = []
        while m:
            a = 0
            while ack_exp(a + 1, 0, k, m) is not EXCEEDS:
                a += 1
            lo, hi = 0, 1
            while ack_exp(a, hi, k, m) is not EXCEEDS:
                lo, hi = hi, 2 * hi
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if ack_exp(a, mid, k, m) is not EXCEEDS:
                    lo = mid
                else:
                    hi = mid
            parts.append(Ack(choose(a, k), choose(lo, k)))
            m -= ack_exp(a, lo, k, m)
        return plus(*parts)

    return WalkStrategy("alt-ack", System.A, choose)


def strategy_adversarial(
    system: System | str, max_norm: int, bound: int = DEFAULT_BOUND
) -> WalkStrategy:
    """Among terms of norm <= ``max_norm`` with value ``m``, the one whose base change is largest.

    Falls back to the normal form when no enumerated term has value ``m``.
    """
    system = System.parse(system)
    pool = list(iter_terms(system, max_norm))

    @lru_cache(maxsize=256)
    def by_value(k: int) -> dict[int, list[Term]]:
        index: dict[int, list[Term]] = {}
        for t in pool:
            v = evaluate(t, k, bound)
            if v is not EXCEEDS:
                index.setdefault(v, []).append(t)
        return index

    def choose(m: int, k: int) -> Term:
        best, best_val = None, -1
        for t in by_value(k).get(m, ()):
            w = evaluate(t, k + 1, bound)
            # an over-cap candidate beats every exact one
            score = float("inf") if w is EXCEEDS else w
            if score > best_val:
                best, best_val = t, score
        return best if best is not None else normal_form(system, m, k)

    return WalkStrategy(f"adversarial-{system.value}-{max_norm}", system, choose)


def walk_run(
    strategy: WalkStrategy,
    m: int,
    step_limit: int = 10_000,
    bound: int = DEFAULT_BOUND,
) -> Trace:
    if m < 0:
        raise ValueError("start must be non-negative")
    trace = Trace(strategy.system, m, strategy=strategy.name)
    v, i = m, 0
    while True:
        k = i + 2
        if v == 0:
            trace.steps.append(Step(i, k, 0, ZERO))
            trace.status = TERMINATED
            return trace
        t = strategy.choose(v, k)
        if not is_valid(t, strategy.system) or evaluate(t, k, v) != v:
            raise StrategyError(f"{strategy.name} chose {print_term(t)} for {v} in base {k}")
        trace.steps.append(Step(i, k, v, t))
        if i >= step_limit:
            trace.status = STEP_LIMIT
            return trace
        w = evaluate(t, k + 1, bound)
        if w is EXCEEDS:
            trace.steps.append(Step(i + 1, k + 1, EXCEEDS))
            trace.status = CAP_EXCEEDED
            return trace
        v, i = w - 1, i + 1


def strategy_by_name(name: str, system: System | str, max_norm: int = 7, variant: str = "example") -> WalkStrategy:
    if name == "canonical":
        return strategy_canonical(system)
    if name == "prime-factor":
        return strategy_prime_factor(variant)
    if name == "alt-ack":
        return strategy_alt_ack()
    if name == "adversarial":
        return strategy_adversarial(system, max_norm)
    raise ValueError(f"unknown strategy {name!r}")


# ---------------------------------------------------------------------------
# dominance


@dataclass
class Dominance:
    strategy: str
    start: int
    walk_status: str
    walk_length: int
    reference_status: str
    compared: int
    first_violation: int | None

    @property
    def dominated(self) -> bool:
        return self.first_violation is None


def walk_dominance(walk: Trace, reference: Trace) -> Dominance:
    """Check ``m_i <= G_i m`` over every step both traces reached.

    A walk still running when the reference has already hit zero is a
    violation as well.
    """
    first = None
    compared = 0
    for w, g in zip(walk.steps, reference.steps):
        if w.value is EXCEEDS or g.value is EXCEEDS:
            break
        compared += 1
        if w.value > g.value:
            first = w.i
            break
    if first is None and reference.status == TERMINATED and len(walk.steps) > len(reference.steps):
        first = reference.steps[-1].i + 1
    return Dominance(
        walk.strategy,
        walk.start,
        walk.status,
        len(walk.steps) - 1,
        reference.status,
        compared,
        first,
    )


def run_or_raise(system: System | str, m: int, step_limit: int, bound: int = DEFAULT_BOUND) -> Trace:
    trace = goodstein_run(system, m, step_limit, bound)
    if trace.status == STEP_LIMIT:
        raise StepLimit(f"run from {m} did not finish within {step_limit} steps")
    return trace
