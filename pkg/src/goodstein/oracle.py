"""Brute-force oracles shared by the notation-system modules.

Values are decided with capped evaluation first.  Only when both sides of a
comparison exceed the cap do we fall back to exact symbolic values in the
same base; if even that is out of reach (deep Ackermann terms) the pair is
counted as indeterminate rather than guessed.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable

from . import hereditary as H
from .capped import DEFAULT_BOUND, EXCEEDS
from .dsl import print_term
from .report import Report
from .terms import System, Term, evaluate, iter_terms, norm

ValueKey = Hashable  # int, or ("sym", HNum) when the value is over the cap


def value_key(t: Term, base: int, bound: int = DEFAULT_BOUND) -> ValueKey:
    """The value of ``t`` as a hashable key; raises ``SymbolicOverflow`` if unreachable."""
    v = evaluate(t, base, bound)
    if v is not EXCEEDS:
        return v
    return ("sym", H.symbolic_value(t, base))


def key_str(key: ValueKey) -> str:
    if isinstance(key, int):
        return str(key)
    return "symbolic:" + repr(key[1])


def compare_terms(x: Term, y: Term, base: int, bound: int = DEFAULT_BOUND) -> int | None:
    """Sign of ``val x - val y`` at ``base``; ``None`` when undecidable within budget."""
    vx = evaluate(x, base, bound)
    vy = evaluate(y, base, bound)
    if vx is not EXCEEDS and vy is not EXCEEDS:
        return (vx > vy) - (vx < vy)
    if vx is not EXCEEDS:
        return -1
    if vy is not EXCEEDS:
        return 1
    try:
        return H.compare(H.symbolic_value(x, base), H.symbolic_value(y, base))
    except H.SymbolicOverflow:
        return None


def display_value(t: Term, base: int, bound: int = DEFAULT_BOUND):
    v = evaluate(t, base, bound)
    return "exceeds_cap" if v is EXCEEDS else v


def norm_min_oracle(
    name: str,
    system: System,
    k: int,
    max_norm: int,
    nf_of_key: Callable[[ValueKey], Term],
    bound: int = DEFAULT_BOUND,
) -> Report:
    """Group all terms of norm <= max_norm by value and compare the nf norm to each group's minimum."""
    report = Report(name, {"system": system.value, "k": k, "max_norm": max_norm})
    with report.timed():
        groups: dict = defaultdict(list)
        for t in iter_terms(system, max_norm):
            try:
                key = value_key(t, k, bound)
            except H.SymbolicOverflow:
                report.indeterminate += 1
                continue
            groups[key].append(t)
        for key, members in groups.items():
            best = min(members, key=norm)
            nf = nf_of_key(key)
            report.checked += len(members)
            if norm(nf) > norm(best):
                report.violation(
                    input_term=print_term(best),
                    value=key_str(key),
                    nf_term=print_term(nf),
                    lhs=norm(nf),
                    rhs=norm(best),
                )
        report.notes["distinct_values"] = len(groups)
    return report


def bch_max_oracle(
    name: str,
    system: System,
    k: int,
    ell: int,
    max_norm: int,
    nf_of_key: Callable[[ValueKey], Term],
    bound: int = DEFAULT_BOUND,
    value_cap: int | None = None,
) -> Report:
    """For every term, the base change of the value's nf must dominate the term's own base change."""
    report = Report(name, {"system": system.value, "k": k, "ell": ell, "max_norm": max_norm})
    if value_cap is not None:
        report.params["value_cap"] = value_cap
    with report.timed():
        nf_cache: dict = {}
        for t in iter_terms(system, max_norm):
            if value_cap is not None:
                v = evaluate(t, k, value_cap)
                if v is EXCEEDS:
                    continue
                key: ValueKey = v
            else:
                try:
                    key = value_key(t, k, bound)
                except H.SymbolicOverflow:
                    report.indeterminate += 1
                    continue
            if key not in nf_cache:
                nf_cache[key] = nf_of_key(key)
            nf = nf_cache[key]
            report.checked += 1
            sign = compare_terms(nf, t, ell, bound)
            if sign is None:
                report.indeterminate += 1
            elif sign < 0:
                report.violation(
                    input_term=print_term(t),
                    value=key_str(key),
                    nf_term=print_term(nf),
                    lhs=display_value(nf, ell, bound),
                    rhs=display_value(t, ell, bound),
                )
    return report
