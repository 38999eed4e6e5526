"""Oracle reports and their JSONL serialization."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator


VALUE_FIELDS = frozenset({"value", "lhs", "rhs", "n", "changed_value", "required", "length"})


def decimal(v: Any) -> Any:
    """Numeric values become decimal strings (they routinely exceed 64 bits)."""
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [decimal(x) for x in v]
    return v


def jsonable(v: Any) -> Any:
    """Counts and indices stay JSON numbers; fields named in ``VALUE_FIELDS`` become decimal strings."""
    if isinstance(v, (bool, int)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: decimal(jsonable(x)) if k in VALUE_FIELDS else jsonable(x) for k, x in v.items()}
    if isinstance(v, (str, float)):
        return v
    return repr(v)


@dataclass
class Report:
    name: str
    params: dict = field(default_factory=dict)
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    indeterminate: int = 0
    notes: dict = field(default_factory=dict)
    wall_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def violation(self, input_term=None, value=None, nf_term=None, lhs=None, rhs=None, **extra):
        rec = {"input_term": input_term, "value": value, "nf_term": nf_term, "lhs": lhs, "rhs": rhs}
        rec.update(extra)
        self.violations.append(rec)

    def summary(self) -> dict:
        out = {
            "suite": self.name,
            "params": self.params,
            "checked": self.checked,
            "violations": len(self.violations),
            "indeterminate": self.indeterminate,
            "passed": self.passed,
            "wall_ms": round(self.wall_ms, 3),
        }
        if self.notes:
            out["notes"] = self.notes
        return out

    def records(self) -> Iterator[dict]:
        for v in self.violations:
            yield {"type": "violation", **v}
        yield {"type": "summary", **self.summary()}

    def to_jsonl(self) -> str:
        return "".join(json.dumps(jsonable(r), sort_keys=True) + "\n" for r in self.records())

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.wall_ms = (time.perf_counter() - start) * 1000.0


def merge(name: str, reports: list[Report]) -> Report:
    out = Report(name)
    for r in reports:
        out.checked += r.checked
        out.indeterminate += r.indeterminate
        out.wall_ms += r.wall_ms
        out.violations.extend({"suite": r.name, **v} for v in r.violations)
        out.notes[r.name] = r.summary()
    return out
