"""Command-line front end.

Output is JSONL on stdout (one object per line, numbers as decimal strings)
unless ``--pretty`` asks for plain text.  Exit codes: 0 success, 1 a
verification suite found a violation, 2 usage or input error, 3 a run hit
the value cap, 4 a run hit the step limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .capped import DEFAULT_CAP_BITS, EXCEEDS, bound_from_bits
from .dsl import parse_term, print_term
from .errors import GoodsteinError
from .report import Report, jsonable, merge
from .terms import System, evaluate, norm

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP, EXIT_STEPS = 0, 1, 2, 3, 4

SUITES = ("norm-min", "bch-max", "monotone", "omega-cert", "walk-dominance", "lower-bound", "lemmas")


@dataclass
class Config:
    system: System
    base: int
    to: int | None
    cap_bits: int
    steps: int
    max_norm: int
    strategy: str
    variant: str
    pretty: bool
    output: str | None

    @property
    def bound(self) -> int:
        return bound_from_bits(self.cap_bits)

    def validate(self) -> None:
        if self.base < 2:
            raise GoodsteinError(f"--base must be >= 2, got {self.base}")
        if self.to is not None and self.to <= self.base:
            raise GoodsteinError(f"--to must exceed --base ({self.to} <= {self.base})")
        if self.cap_bits < 64:
            raise GoodsteinError("--cap-bits must be >= 64")


def _common(p: argparse.ArgumentParser, system_default: str = "E") -> None:
    p.add_argument("--system", default=system_default, type=str.upper, choices=[s.value for s in System])
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--to", type=int, default=None, help="target base for base change")
    p.add_argument("--cap-bits", type=int, default=DEFAULT_CAP_BITS)
    p.add_argument("--steps", type=int, default=10_000, help="step limit for runs and walks")
    p.add_argument("--max-norm", type=int, default=7)
    p.add_argument("--strategy", default="canonical", choices=["canonical", "prime-factor", "alt-ack", "adversarial"])
    p.add_argument("--variant", default="example", choices=["example", "literal"])
    p.add_argument("--pretty", action="store_true", help="plain text instead of JSONL")
    p.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goodstein", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of a number")
    _common(p)
    p.add_argument("n", type=int)

    p = sub.add_parser("eval", help="value of a term")
    _common(p)
    p.add_argument("term")

    p = sub.add_parser("bch", help="base change of a number (through its nf) or of a term")
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("n", type=int, nargs="?")
    g.add_argument("--term", default=None)

    p = sub.add_parser("run", help="Goodstein sequence as a JSONL trace")
    _common(p, "M")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--certificate", action="store_true", help="emit the omega certificate (system M)")

    p = sub.add_parser("walk", help="Goodstein walk under a strategy")
    _common(p, "M")
    p.add_argument("--start", type=int, required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--upper", type=int, default=None)
    p.add_argument("--value-cap", type=int, default=64)

    p = sub.add_parser("lower-bound", help="Ackermann lower bound for the M process")
    _common(p, "M")
    p.add_argument("m", type=int)
    p.add_argument("--at", type=int, default=None, help="evaluate the bound at this argument")
    p.add_argument("--check", action="store_true", help="run M from m and test the bound")
    return parser


def _config(args) -> Config:
    cfg = Config(
        System.parse(args.system),
        args.base,
        args.to,
        args.cap_bits,
        args.steps,
        args.max_norm,
        args.strategy,
        args.variant,
        args.pretty,
        args.output,
    )
    cfg.validate()
    return cfg


class _Out:
    def __init__(self, path: str | None):
        self.fh = open(path, "w", encoding="utf-8") if path else sys.stdout

    def json(self, obj) -> None:
        self.fh.write(json.dumps(jsonable(obj)) + "\n")

    def text(self, line: str) -> None:
        self.fh.write(line + "\n")

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def _nf(system: System, n: int, k: int):
    from .goodstein import normal_form

    return normal_form(system, n, k)


def cmd_nf(args, cfg: Config, out: _Out) -> int:
    t = _nf(cfg.system, args.n, cfg.base)
    rec = {"system": cfg.system.value, "base": cfg.base, "n": args.n, "term": print_term(t), "norm": norm(t)}
    if cfg.system is System.A and args.n > 0:
        from .ack_system import sandwich

        rec["sandwich"] = sandwich(args.n, cfg.base).to_dict()
    if cfg.pretty:
        out.text(rec["term"])
        out.text(f"norm {rec['norm']}")
        if "sandwich" in rec:
            out.text(f"sandwich {json.dumps(rec['sandwich'])}")
    else:
        out.json(rec)
    return EXIT_OK


def _value_out(v):
    return "exceeds_cap" if v is EXCEEDS else v


def cmd_eval(args, cfg: Config, out: _Out) -> int:
    t = parse_term(args.term, cfg.system)
    v = evaluate(t, cfg.base, cfg.bound)
    rec = {"term": print_term(t), "base": cfg.base, "norm": norm(t), "value": _value_out(v)}
    out.text(str(rec["value"])) if cfg.pretty else out.json(rec)
    return EXIT_OK


def cmd_bch(args, cfg: Config, out: _Out) -> int:
    ell = cfg.to if cfg.to is not None else cfg.base + 1
    if ell <= cfg.base:
        raise GoodsteinError("--to must exceed --base")
    t = parse_term(args.term, cfg.system) if args.term is not None else _nf(cfg.system, args.n, cfg.base)
    rec = {
        "term": print_term(t),
        "base": cfg.base,
        "to": ell,
        "value": _value_out(evaluate(t, cfg.base, cfg.bound)),
        "changed_value": _value_out(evaluate(t, ell, cfg.bound)),
    }
    out.text(str(rec["changed_value"])) if cfg.pretty else out.json(rec)
    return EXIT_OK


def _emit_trace(trace, cfg: Config, out: _Out) -> int:
    if cfg.pretty:
        for rec in trace.records():
            out.text(f"{rec['i']}\tbase {rec['base']}\t{rec['value'] or 'exceeds_cap'}\t{rec['term']}")
        out.text(f"status {trace.status}" + (f" i*={trace.i_star}" if trace.i_star is not None else ""))
    else:
        for rec in trace.records():
            out.json(rec)
    return _emit_trace_status(trace)


def cmd_run(args, cfg: Config, out: _Out) -> int:
    from .goodstein import goodstein_run

    trace = goodstein_run(cfg.system, args.start, cfg.steps, cfg.bound)
    if args.certificate:
        from .omega import decrease_certificate

        cert = decrease_certificate(trace, strict=False)
        for step in cert.steps:
            out.json(step.record())
        out.json({"certificate_valid": cert.valid, "first_failure": cert.first_failure, "status": trace.status})
        code = _emit_trace_status(trace)
        return EXIT_VIOLATION if not cert.valid else code
    return _emit_trace(trace, cfg, out)


def _emit_trace_status(trace) -> int:
    from .goodstein import CAP_EXCEEDED, TERMINATED

    return {TERMINATED: EXIT_OK, CAP_EXCEEDED: EXIT_CAP}.get(trace.status, EXIT_STEPS)


def cmd_walk(args, cfg: Config, out: _Out) -> int:
    from .goodstein import strategy_by_name, walk_run

    strategy = strategy_by_name(cfg.strategy, cfg.system, cfg.max_norm, cfg.variant)
    trace = walk_run(strategy, args.start, cfg.steps, cfg.bound)
    return _emit_trace(trace, cfg, out)


def _suite_reports(args, cfg: Config) -> list[Report]:
    from . import ack_system, exp_system, mult_system

    k, sysm = cfg.base, cfg.system
    ell = cfg.to if cfg.to is not None else k + 1
    suite = args.suite
    if suite == "norm-min":
        if sysm is System.E:
            return [exp_system.norm_min_oracle_exp(k, cfg.max_norm, cfg.bound)]
        if sysm is System.M:
            return [mult_system.norm_min_oracle_mult(k, cfg.max_norm, cfg.bound)]
        raise GoodsteinError(f"no norm-minimality suite for system {sysm.value}")
    if suite == "bch-max":
        if sysm is System.E:
            return [exp_system.bch_max_oracle_exp(k, ell, cfg.max_norm, cfg.bound)]
        if sysm is System.M:
            return [mult_system.bch_max_oracle_mult(k, ell, cfg.max_norm, cfg.bound)]
        if sysm is System.L:
            return [exp_system.bch_max_oracle_elem(k, ell, cfg.max_norm, cfg.bound)]
        return [ack_system.bch_max_oracle_ack(k, ell, cfg.max_norm, args.value_cap, cfg.bound)]
    if suite == "monotone":
        upper = args.upper or (64 if sysm is System.A else 512)
        if sysm in (System.E, System.L):
            return [exp_system.monotone_bch_exp(k, ell, upper, cfg.bound)]
        if sysm is System.M:
            return [mult_system.monotone_bch_mult(k, ell, upper)]
        return [ack_system.monotone_bch_ack(k, ell, upper, cfg.bound)]
    if suite == "omega-cert":
        return [omega_cert_report(args.upper or 7, cfg.steps, cfg.bound)]
    if suite == "walk-dominance":
        return [walk_dominance_report(sysm, args.upper or 12, cfg.max_norm, cfg.steps, cfg.bound)]
    if suite == "lower-bound":
        from .lower_bound import lower_bound_report

        return [lower_bound_report(range(args.upper or 7), cfg.steps, cfg.bound)]
    if suite == "lemmas":
        upper = args.upper or 512
        if sysm is System.E:
            return exp_system.lemma_suite(upper)
        if sysm is System.M:
            return mult_system.lemma_suite(upper)
        if sysm is System.A:
            return ack_system.lemma_suite(upper, cfg.bound)
        raise GoodsteinError(f"no lemma suite for system {sysm.value}")
    raise GoodsteinError(f"unknown suite {suite}")


def omega_cert_report(upper: int, step_limit: int, bound: int) -> Report:
    from .goodstein import TERMINATED, goodstein_run
    from .omega import decrease_certificate

    report = Report("omega-cert", {"upper": upper, "step_limit": step_limit})
    with report.timed():
        for m in range(upper + 1):
            trace = goodstein_run(System.M, m, step_limit, bound)
            cert = decrease_certificate(trace, strict=False)
            report.checked += 1
            report.notes[str(m)] = {"status": trace.status, "i_star": trace.i_star, "valid": cert.valid}
            if not cert.valid or trace.status != TERMINATED:
                report.violation(value=m, lhs=trace.status, rhs=cert.first_failure)
    return report


def walk_strategies(system: System, max_norm: int):
    from .goodstein import strategy_adversarial, strategy_canonical, strategy_prime_factor

    out = [strategy_canonical(system)]
    if system is System.L:
        out += [strategy_prime_factor("example"), strategy_prime_factor("literal")]
    out.append(strategy_adversarial(system, max_norm))
    return out


def walk_dominance_report(system: System, upper: int, max_norm: int, step_limit: int, bound: int) -> Report:
    """Every strategy stays below the canonical run and terminates, for starts ``0..upper``."""
    from .goodstein import TERMINATED, goodstein_run, walk_dominance, walk_run

    ref_system = System.E if system is System.L else system
    report = Report("walk-dominance", {"system": system.value, "upper": upper, "step_limit": step_limit})
    with report.timed():
        strategies = walk_strategies(system, max_norm)
        for m in range(upper + 1):
            ref = goodstein_run(ref_system, m, step_limit, bound)
            for strat in strategies:
                walk = walk_run(strat, m, step_limit, bound)
                dom = walk_dominance(walk, ref)
                report.checked += 1
                report.notes[f"{strat.name}/{m}"] = {
                    "walk_status": walk.status,
                    "walk_length": dom.walk_length,
                    "reference_status": ref.status,
                    "dominated": dom.dominated,
                }
                if not dom.dominated or walk.status != TERMINATED:
                    report.violation(
                        value=m,
                        input_term=strat.name,
                        lhs=walk.status,
                        rhs=dom.first_violation,
                    )
    return report


def cmd_verify(args, cfg: Config, out: _Out) -> int:
    reports = _suite_reports(args, cfg)
    report = reports[0] if len(reports) == 1 else merge(f"{args.suite}/{cfg.system.value}", reports)
    if cfg.pretty:
        for r in reports:
            verdict = "PASS" if r.passed else "FAIL"
            out.text(f"{verdict} {r.name} checked={r.checked} violations={len(r.violations)} indeterminate={r.indeterminate}")
    else:
        for rec in report.records():
            out.json(rec)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_lower_bound(args, cfg: Config, out: _Out) -> int:
    from .lower_bound import eval_lower_bound, lower_bound_check, lower_bound_fn

    f = lower_bound_fn(args.m, cfg.base)
    rec: dict = {"m": args.m, "base": cfg.base, "composition": [list(p) for p in f.composition], "text": str(f)}
    if args.at is not None:
        rec["at"] = args.at
        rec["value"] = _value_out(eval_lower_bound(f, args.at, cfg.bound))
    code = EXIT_OK
    if args.check:
        r = lower_bound_check(args.m, cfg.steps, cfg.bound)
        rec["check"] = {
            "terminated": r.terminated,
            "i_star": r.i_star,
            "steps_reached": r.steps_reached,
            "conventions": r.conventions,
            "corollary": r.corollary,
            "passed": r.passed,
        }
        code = EXIT_OK if r.passed else EXIT_VIOLATION
    if cfg.pretty:
        out.text(rec["text"] + (f" ({rec['at']}) = {rec['value']}" if "value" in rec else ""))
        if "check" in rec:
            out.text(json.dumps(jsonable(rec["check"])))
    else:
        out.json(rec)
    return code


COMMANDS = {
    "nf": cmd_nf,
    "eval": cmd_eval,
    "bch": cmd_bch,
    "run": cmd_run,
    "walk": cmd_walk,
    "verify": cmd_verify,
    "lower-bound": cmd_lower_bound,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except GoodsteinError as e:
        parser.error(str(e))
    out = _Out(cfg.output)
    try:
        return COMMANDS[args.command](args, cfg, out)
    except (GoodsteinError, ValueError) as e:
        print(f"goodstein: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        out.close()


if __name__ == "__main__":
    raise SystemExit(main())
