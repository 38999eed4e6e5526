"""Goodstein-style notation systems: terms, normal forms, base change,
Goodstein sequences and walks, and brute-force optimality oracles."""

from .capped import DEFAULT_BOUND, DEFAULT_CAP_BITS, EXCEEDS, bound_from_bits
from .dsl import parse_term, print_term
from .errors import GoodsteinError
from .terms import (
    ONE,
    ZERO,
    Ack,
    BaseExp,
    BaseMul,
    GroundTerm,
    Mul,
    One,
    Plus,
    System,
    Zero,
    base_change,
    enumerate_terms,
    eval_ground,
    evaluate,
    norm,
)

__all__ = [
    "ONE", "ZERO", "Ack", "BaseExp", "BaseMul", "GroundTerm", "Mul", "One", "Plus",
    "System", "Zero", "base_change", "enumerate_terms", "eval_ground", "evaluate", "norm",
    "parse_term", "print_term", "GoodsteinError", "EXCEEDS", "DEFAULT_BOUND",
    "DEFAULT_CAP_BITS", "bound_from_bits",
]
