"""Ackermannian lower bounds for the length of multiplicative Goodstein runs.

Here ``A_a`` is the successor-based hierarchy (``A_0 b = b + 1``, iterated
once per level).  A number ``m`` with base-``k`` digits ``d_r ... d_0``
determines the composition ``alpha = A_r^{d_r} o ... o A_0^{d_0}``, and
``alpha(k)`` bounds from below how long the run still has to go.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .capped import DEFAULT_BOUND, EXCEEDS, BoundedValue, ack_succ, ack_succ_iter
from .goodstein import TERMINATED, goodstein_run
from .mult_system import digits
from .report import Report
from .terms import System


@dataclass(frozen=True)
class AckLowerBound:
    """``(level, multiplicity)`` pairs, outermost (highest level) first."""

    composition: tuple[tuple[int, int], ...] = ()

    def __str__(self) -> str:
        if not self.composition:
            return "id"
        return " o ".join(f"A_{r}" + (f"^{a}" if a > 1 else "") for r, a in self.composition)


def lower_bound_fn(m: int, k: int) -> AckLowerBound:
    if k < 2:
        raise ValueError("base must be >= 2")
    ds = digits(m, k)
    return AckLowerBound(tuple((r, d) for r, d in reversed(list(enumerate(ds))) if d))


def eval_lower_bound(f: AckLowerBound, x: BoundedValue, bound: int = DEFAULT_BOUND) -> BoundedValue:
    # innermost (lowest level) first
    for level, times in reversed(f.composition):
        x = ack_succ_iter(level, times, x, bound)
        if x is EXCEEDS:
            return EXCEEDS
    return x


def succ_ack(a: int, b: int, bound: int = DEFAULT_BOUND) -> BoundedValue:
    """``A_a b`` over the successor hierarchy."""
    return ack_succ(a, b, bound)


@dataclass
class LowerBoundResult:
    start: int
    terminated: bool
    i_star: int | None
    steps_reached: int
    conventions: dict = field(default_factory=dict)
    corollary: dict | None = None

    @property
    def passed(self) -> bool:
        ok = self.corollary is None or self.corollary["holds"]
        if self.terminated:
            ok = ok and any(c["holds"] for c in self.conventions.values())
        return ok


def lower_bound_check(m: int, step_limit: int = 100_000, bound: int = DEFAULT_BOUND) -> LowerBoundResult:
    """Run M from ``m`` and test the bound under both step/base conventions.

    ``base``: at step ``j`` (base ``j + 2``) require ``alpha(G_j, j+2)(j+2) <= i* + 2``,
    i.e. both sides measured as bases.  ``index``: for ``j >= 2`` require
    ``alpha(G_j, j)(j) <= i*`` with the step index itself used as the base.
    If ``m = 2^a`` the run must also last at least ``A_a 0`` steps; when the
    run does not finish, the number of steps reached is checked instead.
    """
    trace = goodstein_run(System.M, m, step_limit, bound)
    terminated = trace.status == TERMINATED
    reached = trace.steps[-1].i
    result = LowerBoundResult(m, terminated, trace.i_star, reached)
    if terminated:
        i_star = trace.i_star
        base_fail, index_fail = [], []
        for step in trace.steps:
            j, v = step.i, step.value
            k = j + 2
            w = eval_lower_bound(lower_bound_fn(v, k), k, bound)
            if w is EXCEEDS or w > i_star + 2:
                base_fail.append(j)
            if j >= 2:
                w = eval_lower_bound(lower_bound_fn(v, j), j, bound)
                if w is EXCEEDS or w > i_star:
                    index_fail.append(j)
        result.conventions = {
            "base": {"holds": not base_fail, "failures": base_fail},
            "index": {"holds": not index_fail, "failures": index_fail},
        }
    if m > 0 and m & (m - 1) == 0:
        a = m.bit_length() - 1
        need = ack_succ(a, 0, bound)
        length = result.i_star if terminated else reached
        result.corollary = {
            "a": a,
            "required": need,
            "length": length,
            "partial": not terminated,
            "holds": need is not EXCEEDS and length >= need,
        }
    return result


def lower_bound_report(starts, step_limit: int = 100_000, bound: int = DEFAULT_BOUND) -> Report:
    report = Report("lower-bound", {"starts": list(starts), "step_limit": step_limit})
    with report.timed():
        for m in starts:
            r = lower_bound_check(m, step_limit, bound)
            report.checked += 1
            report.notes[str(m)] = {
                "terminated": r.terminated,
                "i_star": r.i_star,
                "steps_reached": r.steps_reached,
                "conventions": r.conventions,
                "corollary": r.corollary,
            }
            if not r.passed:
                report.violation(value=m, lhs=r.conventions, rhs=r.corollary)
    return report
