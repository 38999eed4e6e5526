"""Multiplicative notation (system M): ``0``, ``1``, ``+`` and ``x -> k*x``.

``nf_mult(m, k)`` writes ``m = k*p + q`` with ``q < k`` and recurses on ``p``;
the result is ``k*nf(p) + bar(q)`` where ``bar(q)`` is ``1 + 1 + ... + 1``.
In other words the base-``k`` digits of ``m``, read Horner-style, so base
change on numbers is digit reinterpretation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capped import DEFAULT_BOUND
from .dsl import print_term
from .errors import BadDecomposition, InvalidBase
from .oracle import bch_max_oracle, norm_min_oracle
from .report import Report
from .terms import ONE, ZERO, BaseMul, System, Term, equivalent, evaluate, norm, plus, repeat


@dataclass(frozen=True)
class MultNF:
    term: Term
    base: int
    p: int
    q: int


def _check_base(k: int) -> None:
    if k < 2:
        raise InvalidBase(f"base must be >= 2, got {k}")


def bar(q: int) -> Term:
    """``q`` as a right-nested chain of ones; ``bar(0)`` is ``Zero``."""
    return repeat(ONE, q)


def digits(m: int, k: int) -> list[int]:
    """Base-``k`` digits, least significant first."""
    out = []
    while m:
        m, d = divmod(m, k)
        out.append(d)
    return out


def nf_mult(n: int, k: int) -> Term:
    _check_base(k)
    if n < 0:
        raise ValueError("n must be non-negative")
    ds = digits(n, k)
    if not ds:
        return ZERO
    # innermost first: the top digit is bar(d), then wrap k*(...) + bar(d)
    acc = bar(ds[-1])
    for d in reversed(ds[:-1]):
        acc = plus(BaseMul(acc), bar(d)) if d else BaseMul(acc)
    return acc


def mult_nf(n: int, k: int) -> MultNF:
    p, q = divmod(n, k)
    return MultNF(nf_mult(n, k), k, p, q)


def bch_mult(m: int, k: int, ell: int) -> int:
    """``ceil(m)_{k -> ell}``: reread the base-``k`` digits in base ``ell``."""
    _check_base(k)
    if ell < k:
        raise InvalidBase(f"cannot change base {k} down to {ell}")
    total = 0
    for d in reversed(digits(m, k)):
        total = total * ell + d
    return total


def bch_commutes_mult(m: int, k: int, ell: int) -> bool:
    """Base change of the nf is already the nf of the new value."""
    t = nf_mult(m, k)
    v = evaluate(t, ell)
    return equivalent(nf_mult(v, ell), t)


def mult_max_inequality(m: int, r: int, s: int, k: int, ell: int) -> tuple[int, int, bool]:
    """For ``m = k*r + s``: ``(ceil(m), ell*ceil(r) + s, equal)``; always ``lhs >= rhs``."""
    _check_base(k)
    if ell < k:
        raise InvalidBase(f"target base {ell} below source base {k}")
    if m != k * r + s or r < 0 or s < 0:
        raise BadDecomposition(f"{m} != {k}*{r} + {s}")
    lhs = bch_mult(m, k, ell)
    rhs = ell * bch_mult(r, k, ell) + s
    return lhs, rhs, lhs == rhs


# ---------------------------------------------------------------------------
# oracles


def norm_min_oracle_mult(k: int, max_norm: int, bound: int = DEFAULT_BOUND) -> Report:
    _check_base(k)
    return norm_min_oracle("norm-min/M", System.M, k, max_norm, lambda v: nf_mult(v, k), bound)


def bch_max_oracle_mult(k: int, ell: int, max_norm: int, bound: int = DEFAULT_BOUND) -> Report:
    _check_base(k)
    if ell <= k:
        raise InvalidBase("target base must exceed the source base")
    return bch_max_oracle(
        "bch-max/M", System.M, k, ell, max_norm, lambda v: nf_mult(v, k), bound
    )


def monotone_bch_mult(k: int, ell: int, upper: int) -> Report:
    """``ceil(m) < ceil(n)`` for all ``m < n <= upper``; consecutive pairs suffice by transitivity."""
    report = Report("monotone/M", {"k": k, "ell": ell, "upper": upper})
    with report.timed():
        prev = bch_mult(0, k, ell)
        for n in range(1, upper + 1):
            cur = bch_mult(n, k, ell)
            report.checked += 1
            if not prev < cur:
                report.violation(value=n, lhs=prev, rhs=cur)
            prev = cur
    return report


def lemma_suite(upper: int = 512) -> list[Report]:
    commute = Report("lemma/M-bch-commutes", {"upper": upper})
    with commute.timed():
        for k, ell in ((2, 3), (2, 5), (3, 4)):
            for m in range(upper + 1):
                commute.checked += 1
                if not bch_commutes_mult(m, k, ell):
                    commute.violation(value=m, k=k, ell=ell)

    identity = Report("lemma/M-norm-identity", {"upper": upper})
    with identity.timed():
        for k in (2, 3, 5):
            for m in range(1, upper + 1):
                p, q = divmod(m, k)
                if p == 0:
                    continue
                identity.checked += 1
                lhs, rhs = norm(nf_mult(m, k)), norm(nf_mult(p, k)) + 2 * q + 1
                if lhs != rhs:
                    identity.violation(value=m, lhs=lhs, rhs=rhs, k=k)

    idem = Report("lemma/M-idempotent", {"upper": upper})
    with idem.timed():
        for k in (2, 3, 5):
            for m in range(upper + 1):
                idem.checked += 1
                t = nf_mult(m, k)
                if not equivalent(nf_mult(evaluate(t, k), k), t):
                    idem.violation(value=m, nf_term=print_term(t), k=k)

    maxineq = Report("lemma/M-max-inequality", {"upper": 128})
    with maxineq.timed():
        for k, ell in ((2, 2), (2, 3), (3, 5)):
            for m in range(129):
                for r in range(m // k + 1):
                    s = m - k * r
                    maxineq.checked += 1
                    lhs, rhs, equal = mult_max_inequality(m, r, s, k, ell)
                    # with ell == k both sides are always equal, so the
                    # characterisation of equality only applies to ell > k
                    if lhs < rhs or (ell > k and equal != (s < k)):
                        maxineq.violation(value=m, lhs=lhs, rhs=rhs, r=r, s=s, k=k, ell=ell)

    return [commute, identity, idem, maxineq, monotone_bch_mult(2, 3, upper), monotone_bch_mult(3, 5, upper)]
