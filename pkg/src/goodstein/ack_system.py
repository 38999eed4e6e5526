"""Ackermannian notation (system A): ``0``, ``+`` and ``A_a(k, b)``.

Normal forms come from the sandwiching procedure: starting from ``m_0 = 0``,
pick the largest index ``a`` with ``A_a(m_i) <= m``, then the largest ``b``
with ``A_a(b) <= m``, set ``m_{i+1} = A_a(b)`` and repeat until
``A_0(m_n) > m``.  The last pair ``(a, b)`` is the head of the normal form.

Every comparison against ``m`` is a capped evaluation with bound ``m``, which
is sound because ``A`` is strictly increasing in both arguments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .capped import DEFAULT_BOUND, EXCEEDS, BoundedValue, ack_exp, ack_exp_iter
from .dsl import print_term
from .errors import CapExceeded, InvalidBase, InvalidInput
from .oracle import bch_max_oracle, compare_terms
from .report import Report
from .terms import ZERO, Ack, GroundTerm, System, Term, equivalent, evaluate, iter_terms, norm, plus, repeat


def _check_base(k: int) -> None:
    if k < 2:
        raise InvalidBase(f"base must be >= 2, got {k}")


def ack_eval(a: int, b: int, k: int, bound: int = DEFAULT_BOUND) -> BoundedValue:
    """``A_a(k, b)`` with ``A_0(k, x) = k**x``; ``b = -1`` yields the auxiliary value 1."""
    _check_base(k)
    if a < 0:
        raise ValueError("index must be non-negative")
    return ack_exp(a, b, k, bound)


# ---------------------------------------------------------------------------
# sandwiching


@dataclass(frozen=True)
class SandwichTrace:
    indices: tuple[int, ...]
    arguments: tuple[int, ...]
    values: tuple[int, ...]  # values[0] == 0

    @property
    def head(self) -> tuple[int, int]:
        return self.indices[-1], self.arguments[-1]

    @property
    def previous_value(self) -> int:
        """The sandwiching value before the last one (0 for a single step)."""
        return self.values[-2]

    def to_dict(self) -> dict:
        return {"indices": list(self.indices), "arguments": list(self.arguments), "values": list(self.values)}


def _le(a: int, b: int, k: int, m: int) -> bool:
    """``A_a(k, b) <= m``."""
    return ack_exp(a, b, k, m) is not EXCEEDS


def _max_argument(a: int, lo: int, k: int, m: int) -> int:
    # largest b >= lo with A_a(b) <= m; caller guarantees A_a(lo) <= m
    hi = lo + 1
    while _le(a, hi, k, m):
        lo, hi = hi, 2 * hi + 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _le(a, mid, k, m):
            lo = mid
        else:
            hi = mid
    return lo


def sandwich(m: int, k: int) -> SandwichTrace:
    _check_base(k)
    if m < 1:
        raise InvalidInput("the sandwiching sequence is defined for m >= 1")
    return _sandwich(m, k)


@lru_cache(maxsize=65536)
def _sandwich(m: int, k: int) -> SandwichTrace:
    indices, arguments, values = [], [], [0]
    cur = 0
    while _le(0, cur, k, m):
        a = 0
        while _le(a + 1, cur, k, m):
            a += 1
        b = _max_argument(a, cur, k, m)
        cur = ack_exp(a, b, k, m)
        indices.append(a)
        arguments.append(b)
        values.append(cur)
    return SandwichTrace(tuple(indices), tuple(arguments), tuple(values))


def nf_ack(m: int, k: int) -> Term:
    """``A_{nf a}(nf b) + nf c`` where ``(a, b)`` heads the sandwiching sequence."""
    _check_base(k)
    if m < 0:
        raise ValueError("m must be non-negative")
    return _nf_ack(m, k)


@lru_cache(maxsize=65536)
def _nf_ack(m: int, k: int) -> Term:
    parts = []
    # the tail c is handled by iteration, the head's index and argument by recursion
    while m:
        a, b = _sandwich(m, k).head
        parts.append(Ack(_nf_ack(a, k), _nf_ack(b, k)))
        m -= ack_exp(a, b, k, m)
    return plus(*parts)


def is_ack_nf(t: Term, k: int, bound: int = DEFAULT_BOUND) -> bool | None:
    """Agreement with the normal form of its value; ``None`` if the value is over ``bound``."""
    v = evaluate(t, k, bound)
    if v is EXCEEDS:
        return None
    return equivalent(t, nf_ack(v, k))


# ---------------------------------------------------------------------------
# extended and simplified normal forms


@dataclass(frozen=True)
class ExtendedNF:
    """``m = A_a(k, b) * p + q`` with ``0 <= q < A_a(k, b)``."""

    a: int
    b: int
    p: int
    q: int
    base: int

    @property
    def head_value(self) -> int:
        return ack_exp(self.a, self.b, self.base, DEFAULT_BOUND)

    @property
    def value(self) -> int:
        return self.head_value * self.p + self.q


def extended_nf(m: int, k: int) -> ExtendedNF:
    _check_base(k)
    if m < 1:
        raise InvalidInput("the extended normal form is defined for m >= 1")
    a, b = _sandwich(m, k).head
    d = ack_exp(a, b, k, m)
    p, q = divmod(m, d)
    return ExtendedNF(a, b, p, q, k)


def bch_extended(e: ExtendedNF, ell: int) -> GroundTerm:
    """``A_{ceil a}(ell, ceil b) * p + ceil q`` as a base-``ell`` term."""
    if ell < e.base:
        raise InvalidBase(f"cannot change base {e.base} down to {ell}")
    head = Ack(nf_ack(e.a, e.base), nf_ack(e.b, e.base))
    return GroundTerm(plus(repeat(head, e.p), nf_ack(e.q, e.base)), ell)


@dataclass(frozen=True)
class SimplifiedNF:
    """``head * multiplicity + tail``."""

    head: int
    multiplicity: int
    tail: int

    @property
    def value(self) -> int:
        return self.head * self.multiplicity + self.tail


# ---------------------------------------------------------------------------
# expansions


def left_expansion(a: int, b: int, k: int, bound: int = DEFAULT_BOUND) -> list[BoundedValue]:
    """``c_0 = A_a(b-1)``, ``c_i = A_{a-i}(A_{a-i}^{k-1}(c_{i-1}) - 1)``."""
    _check_base(k)
    if a <= 0:
        raise InvalidInput("left expansion needs a > 0")
    cs: list[BoundedValue] = [ack_exp(a, b - 1, k, bound)]
    for i in range(1, a + 1):
        prev = cs[-1]
        if prev is EXCEEDS:
            cs.append(EXCEEDS)
            continue
        inner = ack_exp_iter(a - i, k - 1, prev, k, bound)
        # A^{k-1}(x) - 1 >= x, so an over-cap inner value stays over cap
        cs.append(EXCEEDS if inner is EXCEEDS else ack_exp(a - i, inner - 1, k, bound))
    return cs


def minus_one_nf(m: int, k: int, bound: int = DEFAULT_BOUND) -> SimplifiedNF:
    """Simplified normal form of ``m - 1``.

    When ``m`` is exactly ``A_a(b)`` with ``a > 0`` this is
    ``(k-1) * c_a + (c_a - 1)`` with ``c_a`` the last left-expansion entry.
    A pure power ``k^b`` splits as ``(k-1) * k^(b-1) + (k^(b-1) - 1)``.
    Otherwise the normal form has a positive tail and only the tail moves.
    """
    _check_base(k)
    if m < 1:
        raise InvalidInput("m must be >= 1")
    if m == 1:
        return SimplifiedNF(0, 0, 0)
    e = extended_nf(m, k)
    if e.p == 1 and e.q == 0:
        if e.a > 0:
            c_a = left_expansion(e.a, e.b, k, bound)[-1]
            if c_a is EXCEEDS:
                raise CapExceeded(f"left expansion of A_{e.a}({e.b}) leaves the cap")
            out = SimplifiedNF(c_a, k - 1, c_a - 1)
        else:
            d = k ** (e.b - 1)
            out = SimplifiedNF(d, k - 1, d - 1)
    else:
        r = extended_nf(m - 1, k)
        out = SimplifiedNF(r.head_value, r.p, r.q)
    if out.value != m - 1:
        raise AssertionError(f"minus-one form of {m} evaluates to {out.value}")
    return out


@dataclass(frozen=True)
class RightExpansionResult:
    ok: bool
    mode: str  # "exact", "mismatch" or "proxy"
    proxy: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _right_expansion_exact(a: int, b: int, s: int, k: int, bound: int):
    lhs = ack_exp(a, b, k, bound)
    rhs = ack_exp_iter(a - 1, s * k, ack_exp(a, b - s, k, bound), k, bound)
    return lhs, rhs


def right_expansion_check(a: int, b: int, s: int, k: int, bound: int = DEFAULT_BOUND) -> RightExpansionResult:
    """``A_a(b) = A_{a-1}^{s*k}(A_a(b - s))`` under capped evaluation.

    If both sides leave the cap the identity is re-verified at the largest
    smaller instance that fits, and the result is marked ``"proxy"``.
    """
    _check_base(k)
    if a < 1 or b < 1 or not 1 <= s <= b + 1:
        raise InvalidInput("need a, b >= 1 and 1 <= s <= b + 1")
    lhs, rhs = _right_expansion_exact(a, b, s, k, bound)
    if lhs is not EXCEEDS and rhs is not EXCEEDS:
        return RightExpansionResult(lhs == rhs, "exact" if lhs == rhs else "mismatch")
    if (lhs is EXCEEDS) != (rhs is EXCEEDS):
        return RightExpansionResult(False, "mismatch")
    for b2 in range(b - 1, 0, -1):
        s2 = min(s, b2 + 1)
        l2, r2 = _right_expansion_exact(a, b2, s2, k, bound)
        if l2 is not EXCEEDS and r2 is not EXCEEDS:
            return RightExpansionResult(l2 == r2, "proxy", (a, b2, s2))
    return RightExpansionResult(False, "proxy")


# ---------------------------------------------------------------------------
# oracles


def bch_max_oracle_ack(
    k: int, ell: int, max_norm: int, value_cap: int, bound: int = DEFAULT_BOUND
) -> Report:
    _check_base(k)
    if ell <= k:
        raise InvalidBase("target base must exceed the source base")
    return bch_max_oracle(
        "bch-max/A", System.A, k, ell, max_norm, lambda v: nf_ack(v, k), bound, value_cap=value_cap
    )


def monotone_bch_ack(k: int, ell: int, upper: int, bound: int = DEFAULT_BOUND) -> Report:
    """``ceil(n) < ceil(n+1)`` for ``n < upper`` under capped-then-symbolic comparison."""
    report = Report("monotone/A", {"k": k, "ell": ell, "upper": upper})
    with report.timed():
        prev = nf_ack(0, k)
        for n in range(upper):
            cur = nf_ack(n + 1, k)
            report.checked += 1
            sign = compare_terms(prev, cur, ell, bound)
            if sign is None:
                report.indeterminate += 1
            elif sign >= 0:
                report.violation(value=n, nf_term=print_term(prev), input_term=print_term(cur))
            prev = cur
    return report


def min_norms(limit: int, k: int = 2) -> list[int]:
    """Least norm of any A-term with value ``v``, for every ``v <= limit``.

    Dynamic programming over the fact that a term is either ``0``, a single
    ``A_x(y)`` node, or ``s + rest`` with ``s`` a single node.
    """
    _check_base(k)
    best = [0] * (limit + 1)
    single: list[int | None] = [None] * (limit + 1)
    best[0] = 1
    singles: list[tuple[int, int]] = []
    for v in range(1, limit + 1):
        # single nodes A_x(y) = v need x, y < v, both already final
        cand = None
        for x in range(0, v):
            if ack_exp(x, 0, k, limit) is EXCEEDS and x > 0:
                break
            for y in range(0, v):
                w = ack_exp(x, y, k, v)
                if w is EXCEEDS:
                    break
                if w == v:
                    c = 1 + best[x] + best[y]
                    cand = c if cand is None else min(cand, c)
        single[v] = cand
        total = cand
        for u, c_u in singles:
            c = c_u + 1 + best[v - u]
            total = c if total is None else min(total, c)
        best[v] = total
        if cand is not None:
            singles.append((v, cand))
    return best


@dataclass
class NonMinReport:
    value: int
    base: int
    nf_norm: int
    alternative_norm: int
    exhaustive_bound: int
    exhaustive_min: int | None
    true_min: int
    first_gap_value: int | None
    search_limit: int
    details: dict = field(default_factory=dict)

    @property
    def strict(self) -> bool:
        return self.exhaustive_min is not None and self.exhaustive_min < self.nf_norm


def alternative_sum(count: int, k: int) -> Term:
    """``A_0(0) + A_0(1) + ... + A_0(count-1)`` with arguments in normal form."""
    return plus(*(Ack(ZERO, nf_ack(i, k)) for i in range(count)))


def non_min_witness(k: int = 2, max_norm: int = 13, search_limit: int = 4096) -> NonMinReport:
    """Compare the normal form of ``A_0(A_1(0)) - 1`` with shorter terms of the same value."""
    _check_base(k)
    head = ack_exp(1, 0, k, DEFAULT_BOUND)
    m = ack_exp(0, head, k, DEFAULT_BOUND) - 1
    nf_norm = norm(nf_ack(m, k))
    alt = alternative_sum(head, k)
    assert evaluate(alt, k) == m
    exhaustive = None
    for t in iter_terms(System.A, max_norm):
        if evaluate(t, k, m) == m:
            n = norm(t)
            exhaustive = n if exhaustive is None else min(exhaustive, n)
    table = min_norms(max(search_limit, m), k)
    gap = next((v for v in range(1, search_limit + 1) if norm(nf_ack(v, k)) > table[v]), None)
    return NonMinReport(
        value=m,
        base=k,
        nf_norm=nf_norm,
        alternative_norm=norm(alt),
        exhaustive_bound=max_norm,
        exhaustive_min=exhaustive,
        true_min=table[m],
        first_gap_value=gap,
        search_limit=search_limit,
        details={"nf_term": print_term(nf_ack(m, k)), "alternative_term": print_term(alt)},
    )


# ---------------------------------------------------------------------------
# lemma suites


def lemma_suite(upper: int = 512, bound: int = DEFAULT_BOUND) -> list[Report]:
    nesting = Report("lemma/A-sandwich-nesting", {"upper": upper, "bases": [2, 3]})
    with nesting.timed():
        for k in (2, 3):
            for m in range(1, upper + 1):
                tr = sandwich(m, k)
                prev = None
                for a, b in zip(tr.indices, tr.arguments):
                    lo = ack_exp(a, b, k, bound)
                    hi = ack_exp(a, b + 1, k, bound)
                    nesting.checked += 1
                    ok = lo <= m and (hi is EXCEEDS or m < hi)
                    if prev is not None:
                        plo, phi = prev
                        # strict nesting: [lo, hi) inside [plo, phi) and not equal
                        inside = plo <= lo and (phi is EXCEEDS or (hi is not EXCEEDS and hi <= phi))
                        ok = ok and inside and (plo, phi) != (lo, hi)
                    if not ok:
                        nesting.violation(value=m, k=k, lhs=[a, b], rhs=tr.to_dict())
                    prev = (lo, hi)
                if ack_exp(0, tr.values[-1], k, bound) is not EXCEEDS and ack_exp(0, tr.values[-1], k, bound) <= m:
                    nesting.violation(value=m, k=k, rhs="sequence stopped early")

    roundtrip = Report("lemma/A-nf-roundtrip", {"upper": upper})
    with roundtrip.timed():
        for k in (2, 3):
            for m in range(upper + 1):
                roundtrip.checked += 1
                if evaluate(nf_ack(m, k), k, bound) != m:
                    roundtrip.violation(value=m, k=k, nf_term=print_term(nf_ack(m, k)))

    small = Report("lemma/A-small-index", {"upper": upper})
    with small.timed():
        for k in (2, 3):
            for m in list(range(1, upper + 1)) + [ack_exp(1, 1, k, bound)]:
                if m is EXCEEDS:
                    continue
                tr = sandwich(m, k)
                a, b = tr.head
                if a == 0 or ack_exp(a, b, k, bound) != m:
                    continue
                t = Ack(nf_ack(a - 1, k), nf_ack(tr.previous_value, k))
                verdict = is_ack_nf(t, k, bound)
                small.checked += 1
                if verdict is None:
                    small.indeterminate += 1
                elif not verdict:
                    small.violation(value=m, k=k, input_term=print_term(t))

    extended = Report("lemma/A-extended-nf", {"upper": upper})
    with extended.timed():
        for k in (2, 3):
            for m in range(1, upper + 1):
                e = extended_nf(m, k)
                d = e.head_value
                extended.checked += 1
                if not (0 <= e.q < d and d * e.p + e.q == m and (e.p, e.q) == divmod(m, d)):
                    extended.violation(value=m, k=k, lhs=[e.p, e.q], rhs=d)

    minus = Report("lemma/A-minus-one", {"upper": upper})
    with minus.timed():
        for k in (2, 3):
            for m in range(2, upper + 1):
                minus.checked += 1
                try:
                    r = minus_one_nf(m, k, bound)
                except CapExceeded:
                    minus.indeterminate += 1
                    continue
                if r.value != m - 1:
                    minus.violation(value=m, k=k, lhs=r.value, rhs=m - 1)
        # the exact-head cases that exercise the left expansion
        for k in (2, 3):
            for a, b in ((1, 0), (1, 1), (2, 0)):
                m = ack_exp(a, b, k, bound)
                if m is EXCEEDS:
                    continue
                minus.checked += 1
                r = minus_one_nf(m, k, bound)
                cs = left_expansion(a, b, k, bound)
                if r.value != m - 1 or m != k * cs[-1]:
                    minus.violation(value=m, k=k, lhs=[r.head, r.multiplicity, r.tail], rhs=cs)

    left = Report("lemma/A-left-expansion", {})
    with left.timed():
        for k in (2, 3):
            for a, b in ((1, 0), (1, 1), (2, 0)):
                m = ack_exp(a, b, k, bound)
                if m is EXCEEDS:
                    continue
                cs = left_expansion(a, b, k, bound)
                for i in range(1, a + 1):
                    left.checked += 1
                    ci, cprev = cs[i], cs[i - 1]
                    chain = (
                        b < cprev < ci < m
                        and m == ack_exp_iter(a - i, k, cprev, k, bound)
                        and m < _ge_exceeds(ack_exp(a - i + 1, cprev, k, bound))
                    )
                    # m >= k * c_i, with equality exactly at i = a
                    kci = m >= k * ci and ((m == k * ci) == (i == a))
                    if not (chain and kci):
                        left.violation(value=m, k=k, lhs=i, rhs=cs)
                left.checked += 1
                if not m > k * cs[0]:
                    left.violation(value=m, k=k, lhs=0, rhs=cs)

    right = Report("lemma/A-right-expansion", {})
    with right.timed():
        for k in (2, 3):
            for a in (1, 2):
                for b in (1, 2, 3):
                    for s in range(1, b + 2):
                        right.checked += 1
                        res = right_expansion_check(a, b, s, k, bound)
                        if res.mode == "proxy" and res.proxy is None:
                            right.indeterminate += 1
                        elif not res.ok:
                            right.violation(value=[a, b, s], k=k, lhs=res.mode)

    coeff = Report("lemma/A-bch-coefficient", {"upper": 64, "k": 2, "ell": 3})
    with coeff.timed():
        k, ell = 2, 3
        for m in range(1, 65):
            e = extended_nf(m, k)
            lhs_term = GroundTerm(nf_ack(m, k), ell)
            rhs_term = bch_extended(e, ell)
            coeff.checked += 1
            sign = compare_terms(lhs_term.term, rhs_term.term, ell, bound)
            if sign is None:
                coeff.indeterminate += 1
            elif sign != 0:
                coeff.violation(value=m, input_term=print_term(lhs_term.term), nf_term=print_term(rhs_term.term))

    return [nesting, roundtrip, small, extended, minus, left, right, coeff]


def _ge_exceeds(v: BoundedValue):
    # an over-cap value compares above every exact one
    return float("inf") if v is EXCEEDS else v


def nf_preservation_survey(upper: int = 256, k: int = 2, ell: int = 3, bound: int = DEFAULT_BOUND) -> Report:
    """Is the base change of a normal form again in normal form?  Reported, not assumed."""
    report = Report("survey/A-nf-preservation", {"upper": upper, "k": k, "ell": ell})
    with report.timed():
        for m in range(upper + 1):
            verdict = is_ack_nf(nf_ack(m, k), ell, bound)
            if verdict is None:
                report.indeterminate += 1
                continue
            report.checked += 1
            if not verdict:
                report.violation(value=m, nf_term=print_term(nf_ack(m, k)))
    return report
