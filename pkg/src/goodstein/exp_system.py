"""Hereditary exponential notation (system E) and its elementary extension L.

``nf_exp(n, k)`` writes ``n`` as ``k^r + b`` with ``k^r <= n < k^(r+1)``,
recursively in both ``r`` and ``b``.  Unrolling the recursion on ``b`` just
walks the base-``k`` digits of ``n`` from the top, which is how it is computed
here; a digit ``d`` at position ``r`` becomes ``d`` copies of ``k^nf(r)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import hereditary as H
from .capped import DEFAULT_BOUND, EXCEEDS, capped_add, capped_mul, capped_pow
from .dsl import print_term
from .errors import InvalidBase
from .oracle import ValueKey, bch_max_oracle, compare_terms, norm_min_oracle
from .report import Report
from .terms import (
    ZERO,
    BaseExp,
    GroundTerm,
    System,
    Term,
    canonical,
    evaluate,
    iter_terms,
    norm,
    plus,
    repeat,
    summands,
)


@dataclass(frozen=True)
class ExpNF:
    term: Term
    base: int


def _check_base(k: int) -> None:
    if k < 2:
        raise InvalidBase(f"base must be >= 2, got {k}")


def nf_exp(n: int, k: int) -> Term:
    """Hereditary base-``k`` exponential normal form of ``n``."""
    _check_base(k)
    if n < 0:
        raise ValueError("n must be non-negative")
    return _nf_exp(n, k)


@lru_cache(maxsize=65536)
def _nf_exp(n: int, k: int) -> Term:
    parts: list[Term] = []
    digits = []
    while n:
        n, d = divmod(n, k)
        digits.append(d)
    for r in range(len(digits) - 1, -1, -1):
        if digits[r]:
            parts.extend([BaseExp(_nf_exp(r, k))] * digits[r])
    return plus(*parts)


def nf_exp_of_key(key: ValueKey, k: int) -> Term:
    if isinstance(key, int):
        return nf_exp(key, k)
    return H.to_exp_term(key[1])


def exp_nf(n: int, k: int) -> ExpNF:
    return ExpNF(nf_exp(n, k), k)


def is_exp_nf(t: Term, k: int) -> bool:
    """Structural normal-form test.

    Every summand is ``k^rho`` with ``rho`` in normal form, exponents are
    non-increasing, and no exponent repeats ``k`` times in a row (``k``
    copies of ``k^r`` would carry into ``k^(r+1)``).
    """
    _check_base(k)
    if t == ZERO:
        return True
    parts = summands(t)
    exps = []
    for s in parts:
        if not isinstance(s, BaseExp) or not is_exp_nf(s.arg, k):
            return False
        exps.append(H.symbolic_value(s.arg, k))
    for i in range(len(exps) - 1):
        if exps[i] < exps[i + 1]:
            return False
    for i in range(len(exps) - k + 1):
        if exps[i] == exps[i + k - 1]:
            return False
    return True


def agrees_with_nf(t: Term, k: int) -> bool:
    """``t`` is literally the normal form of its own value (modulo Plus association)."""
    return canonical(t) == H.to_exp_term(H.symbolic_value(t, k))


def bch_value(n: int, k: int, ell: int, bound: int = DEFAULT_BOUND):
    """``ceil(n)_{k -> ell}`` through the E normal form, capped."""
    return evaluate(nf_exp(n, k), ell, bound)


# ---------------------------------------------------------------------------
# oracles


def norm_min_oracle_exp(k: int, max_norm: int, bound: int = DEFAULT_BOUND) -> Report:
    _check_base(k)
    return norm_min_oracle(
        "norm-min/E", System.E, k, max_norm, lambda key: nf_exp_of_key(key, k), bound
    )


def bch_max_oracle_exp(k: int, ell: int, max_norm: int, bound: int = DEFAULT_BOUND) -> Report:
    _check_base(k)
    if ell <= k:
        raise InvalidBase("target base must exceed the source base")
    return bch_max_oracle(
        "bch-max/E", System.E, k, ell, max_norm, lambda key: nf_exp_of_key(key, k), bound
    )


def bch_max_oracle_elem(k: int, ell: int, max_norm: int, bound: int = DEFAULT_BOUND) -> Report:
    """Same contract as the E oracle, enumerating L-terms (with products)."""
    _check_base(k)
    if ell < k:
        raise InvalidBase("target base must not be below the source base")
    return bch_max_oracle(
        "bch-max/L", System.L, k, ell, max_norm, lambda key: nf_exp_of_key(key, k), bound
    )


def monotone_bch_exp(k: int, ell: int, upper: int, bound: int = DEFAULT_BOUND) -> Report:
    """``ceil(m) < ceil(m+1)`` for every ``m < upper``."""
    _check_base(k)
    if ell <= k:
        raise InvalidBase("target base must exceed the source base")
    report = Report("monotone/E", {"k": k, "ell": ell, "upper": upper})
    with report.timed():
        prev = nf_exp(0, k)
        for m in range(upper):
            cur = nf_exp(m + 1, k)
            report.checked += 1
            sign = compare_terms(prev, cur, ell, bound)
            if sign is None:
                report.indeterminate += 1
            elif sign >= 0:
                report.violation(input_term=print_term(cur), value=m, nf_term=print_term(prev))
            prev = cur
    return report


# ---------------------------------------------------------------------------
# structural lemmas


def plus_one_bound_check(upper: int, bases=(2, 3, 4)) -> Report:
    """``||m+1|| <= ||m|| + 3``."""
    report = Report("lemma/E-plus-one", {"upper": upper, "bases": list(bases)})
    with report.timed():
        for k in bases:
            for m in range(upper + 1):
                report.checked += 1
                lhs, rhs = norm(nf_exp(m + 1, k)), norm(nf_exp(m, k)) + 3
                if lhs > rhs:
                    report.violation(value=m, lhs=lhs, rhs=rhs, k=k)
    return report


def decomposition_bound_check(limit: int, bases=(2, 3)) -> Report:
    """``||k^a + b|| <= ||a|| + ||b|| + 2`` for every ``k^a + b <= limit``."""
    report = Report("lemma/E-decomposition", {"limit": limit, "bases": list(bases)})
    with report.timed():
        for k in bases:
            a = 0
            while k**a <= limit:
                for b in range(limit - k**a + 1):
                    report.checked += 1
                    m = k**a + b
                    lhs = norm(nf_exp(m, k))
                    rhs = norm(nf_exp(a, k)) + norm(nf_exp(b, k)) + 2
                    if lhs > rhs:
                        report.violation(value=m, lhs=lhs, rhs=rhs, k=k, a=a, b=b)
                a += 1
    return report


def subtraction_identity_check(limit: int, bases=(2, 3)) -> Report:
    """``nf(k^a - k^b)`` is ``(k-1)`` copies of each ``k^nf(i)``, ``i`` from ``a-1`` down to ``b``."""
    report = Report("lemma/E-subtraction", {"limit": limit, "bases": list(bases)})
    with report.timed():
        for k in bases:
            a = 0
            while k**a <= limit:
                for b in range(a):
                    report.checked += 1
                    expected = plus(
                        *(repeat(BaseExp(nf_exp(i, k)), k - 1) for i in range(a - 1, b - 1, -1))
                    )
                    got = nf_exp(k**a - k**b, k)
                    if canonical(got) != canonical(expected):
                        report.violation(
                            value=k**a - k**b,
                            nf_term=print_term(got),
                            input_term=print_term(expected),
                            k=k,
                        )
                a += 1
    return report


def sub_nf_closure_check(k: int, max_norm: int) -> Report:
    """Every split ``sigma + tau`` of a normal form has both halves in normal form."""
    report = Report("lemma/E-sub-nf", {"k": k, "max_norm": max_norm})
    with report.timed():
        for t in iter_terms(System.E, max_norm):
            if not is_exp_nf(t, k):
                continue
            parts = summands(t)
            for i in range(1, len(parts)):
                report.checked += 1
                left, right = plus(*parts[:i]), plus(*parts[i:])
                if not (is_exp_nf(left, k) and is_exp_nf(right, k)):
                    report.violation(input_term=print_term(t), lhs=print_term(left), rhs=print_term(right))
    return report


def agreement_check(k: int, max_norm: int) -> Report:
    """The structural test agrees with literal comparison against the normal form."""
    report = Report("lemma/E-agreement", {"k": k, "max_norm": max_norm})
    with report.timed():
        for t in iter_terms(System.E, max_norm):
            report.checked += 1
            if is_exp_nf(t, k) != agrees_with_nf(t, k):
                report.violation(input_term=print_term(t), lhs=is_exp_nf(t, k), rhs=agrees_with_nf(t, k))
    return report


def lemma_suite(upper: int = 512, max_norm: int = 9) -> list[Report]:
    reports = [
        plus_one_bound_check(upper),
        decomposition_bound_check(upper),
        subtraction_identity_check(upper),
    ]
    for k in (2, 3):
        reports.append(sub_nf_closure_check(k, max_norm))
        reports.append(agreement_check(k, max_norm))
    return reports


def ground(n: int, k: int) -> GroundTerm:
    return GroundTerm(nf_exp(n, k), k)


def bch_exp_int(n: int, k: int, ell: int, bound: int = DEFAULT_BOUND):
    """``ceil(n)_{k -> ell}`` computed on digits, without building the term."""
    _check_base(k)
    if ell < k:
        raise InvalidBase(f"cannot change base {k} down to {ell}")
    return _bch_exp_int(n, k, ell, bound)


def _bch_exp_int(n: int, k: int, ell: int, bound: int):
    total = 0
    r = 0
    while n:
        n, d = divmod(n, k)
        if d:
            e = _bch_exp_int(r, k, ell, bound) if r else 0
            total = capped_add(total, capped_mul(d, capped_pow(ell, e, bound), bound), bound)
            if total is EXCEEDS:
                return EXCEEDS
        r += 1
    return total
