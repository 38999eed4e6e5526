"""Polynomials in omega with natural coefficients, and termination
certificates for the multiplicative Goodstein process.

Replacing the base by ``omega`` in an M-term gives such a polynomial.  They
are ordered by the coefficient at the highest degree where they differ
(ordinals below ``omega^omega``); along an M-Goodstein run the images of the
successive normal forms strictly decrease.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import CertificateViolation, EmptySet, SystemViolation
from .terms import BaseMul, One, Plus, System, Term, Zero, is_valid, summands


@dataclass(frozen=True)
class OmegaPoly:
    """``coeffs[d]`` is the coefficient of ``omega^d``; trailing zeros are trimmed."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(self.coeffs)
        if any(x < 0 for x in c):
            raise ValueError("coefficients must be natural numbers")
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def const(cls, n: int) -> "OmegaPoly":
        return cls((n,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "OmegaPoly") -> "OmegaPoly":
        return poly_add(self, other)

    def __lt__(self, other: "OmegaPoly") -> bool:
        return poly_compare(self, other) < 0

    def __le__(self, other: "OmegaPoly") -> bool:
        return poly_compare(self, other) <= 0

    def at(self, n: int) -> int:
        """Numeric value with ``omega`` replaced by ``n``."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * n + c
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            if d == 0:
                parts.append(str(c))
            else:
                w = "w" if d == 1 else f"w^{d}"
                parts.append(w if c == 1 else f"{w}*{c}")
        return " + ".join(parts)


ZERO_POLY = OmegaPoly()


def poly_add(f: OmegaPoly, g: OmegaPoly) -> OmegaPoly:
    n = max(len(f.coeffs), len(g.coeffs))
    a = f.coeffs + (0,) * (n - len(f.coeffs))
    b = g.coeffs + (0,) * (n - len(g.coeffs))
    return OmegaPoly(tuple(x + y for x, y in zip(a, b)))


def poly_shift(f: OmegaPoly) -> OmegaPoly:
    """Multiply by omega."""
    if f.is_zero():
        return f
    return OmegaPoly((0,) + f.coeffs)


def poly_compare(f: OmegaPoly, g: OmegaPoly) -> int:
    """-1, 0 or 1 by the coefficient at the highest differing degree."""
    if len(f.coeffs) != len(g.coeffs):
        return -1 if len(f.coeffs) < len(g.coeffs) else 1
    for x, y in zip(reversed(f.coeffs), reversed(g.coeffs)):
        if x != y:
            return -1 if x < y else 1
    return 0


def to_omega(t: Term) -> OmegaPoly:
    if not is_valid(t, System.M):
        raise SystemViolation("omega substitution is defined on M-terms only")
    return _to_omega(t)


def _to_omega(t: Term) -> OmegaPoly:
    if isinstance(t, Zero):
        return ZERO_POLY
    if isinstance(t, One):
        return OmegaPoly((1,))
    if isinstance(t, Plus):
        acc = ZERO_POLY
        for s in summands(t):
            acc = poly_add(acc, _to_omega(s))
        return acc
    if isinstance(t, BaseMul):
        return poly_shift(_to_omega(t.arg))
    raise SystemViolation(f"unexpected constructor {type(t).__name__}")


def wf_least(polys: Iterable[OmegaPoly]) -> OmegaPoly:
    best = None
    for f in polys:
        if best is None or poly_compare(f, best) < 0:
            best = f
    if best is None:
        raise EmptySet("least element of an empty set")
    return best


# ---------------------------------------------------------------------------
# certificates


@dataclass
class CertificateStep:
    i: int
    base: int
    value: int
    poly: OmegaPoly

    def record(self) -> dict:
        return {"i": self.i, "base": self.base, "value": str(self.value), "omega_poly": list(self.poly.coeffs)}


@dataclass
class Certificate:
    steps: list[CertificateStep] = field(default_factory=list)
    valid: bool = True
    first_failure: int | None = None

    def polys(self) -> list[OmegaPoly]:
        return [s.poly for s in self.steps]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.record()) + "\n" for s in self.steps)


def decrease_certificate(trace, strict: bool = True) -> Certificate:
    """Check ``o(i+1) < o(i)`` along an M trace, where ``o(i)`` is the omega image of step ``i``'s nf.

    Raises :class:`CertificateViolation` at the first non-decreasing step
    unless ``strict`` is false, in which case the verdict is recorded.
    """
    from .mult_system import digits

    if getattr(trace, "system", System.M) is not System.M:
        raise SystemViolation("certificates are defined for M traces only")
    cert = Certificate()
    prev = None
    for step in trace.steps:
        if not isinstance(step.value, int):
            break
        # the omega image of nf_mult(v, k) has the base-k digits of v as
        # coefficients; building the term itself would cost O(digit sum)
        poly = OmegaPoly(tuple(digits(step.value, step.base)))
        cert.steps.append(CertificateStep(step.i, step.base, step.value, poly))
        if prev is not None and prev.value > 0 and not poly_compare(poly, prev.poly) < 0:
            if strict:
                raise CertificateViolation(step.i, f"o({step.i}) = {poly} is not below {prev.poly}")
            if cert.valid:
                cert.valid = False
                cert.first_failure = step.i
        prev = cert.steps[-1]
    return cert
