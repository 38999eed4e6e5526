import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goodstein import hereditary as H
from goodstein.capped import EXCEEDS
from goodstein.dsl import print_term
from goodstein.errors import StepLimit, StrategyError
from goodstein.exp_system import bch_exp_int, nf_exp
from goodstein.goodstein import (
    CAP_EXCEEDED,
    STEP_LIMIT,
    TERMINATED,
    WalkStrategy,
    goodstein_run,
    normal_form,
    run_or_raise,
    strategy_adversarial,
    strategy_alt_ack,
    strategy_canonical,
    strategy_prime_factor,
    walk_dominance,
    walk_run,
)
from goodstein.mult_system import bch_mult
from goodstein.omega import decrease_certificate
from goodstein.terms import ONE, ZERO, Ack, BaseExp, Mul, System, evaluate, is_valid

M_RUN_LENGTHS = [0, 1, 3, 5, 21, 61, 381, 2045]


def test_e_run_from_22():
    trace = goodstein_run(System.E, 22, 10, bound=10**13)
    assert trace.steps[1].value == 7_625_597_485_016
    assert print_term(trace.term_at(1)) == (
        "exp(exp(exp(exp(0)))) + exp(exp(exp(0))) + exp(0) + exp(0)"
    )
    assert trace.steps[2].value is EXCEEDS and trace.status == CAP_EXCEEDED


def test_small_runs():
    assert goodstein_run(System.M, 0).i_star == 0
    three = goodstein_run(System.M, 3)
    assert three.status == TERMINATED and three.i_star == 5
    assert decrease_certificate(three).valid
    one = goodstein_run(System.A, 1, 10, 100)
    assert one.status == TERMINATED and one.values == [1, 0]


def test_m_run_lengths_frozen():
    assert [goodstein_run(System.M, m).i_star for m in range(8)] == M_RUN_LENGTHS


def test_run_follows_definition():
    trace = goodstein_run(System.M, 6)
    for a, b in zip(trace.steps, trace.steps[1:]):
        assert a.base == a.i + 2
        assert b.value == bch_mult(a.value, a.base, a.base + 1) - 1
    trace = goodstein_run(System.E, 3)
    for a, b in zip(trace.steps, trace.steps[1:]):
        assert b.value == bch_exp_int(a.value, a.base, a.base + 1) - 1


def test_step_limit_and_run_or_raise():
    trace = goodstein_run(System.M, 8, step_limit=50)
    assert trace.status == STEP_LIMIT and trace.steps[-1].i == 50
    with pytest.raises(StepLimit):
        run_or_raise(System.M, 8, 50)


def test_trace_jsonl():
    recs = [json.loads(line) for line in goodstein_run(System.M, 4).to_jsonl().splitlines()]
    assert recs[0] == {"i": 0, "base": 2, "term": "mul(mul(1))", "value": "4", "value_status": "exact"}
    assert recs[-1]["value"] == "0"
    capped = goodstein_run(System.A, 20, 3).records()
    last = list(capped)[-1]
    assert last["value"] is None and last["value_status"] == "exceeds_cap"


def test_a_run_from_20_is_beyond_a_tower():
    trace = goodstein_run(System.A, 20, 5)
    assert trace.status == CAP_EXCEEDED
    step = trace.steps[1]
    assert step.value is EXCEEDS and step.base == 3
    assert print_term(step.term).startswith("A(0, A(A(0,0),0)) + ")
    # B_0^4 1 = 3^(3^27)
    tower = Ack(ZERO, Ack(ZERO, Ack(ZERO, Ack(ZERO, Ack(ZERO, ZERO)))))
    assert H.compare(H.symbolic_value(step.term, 3), H.symbolic_value(tower, 3)) == 1
    expected = H.add(
        H.power_of_base(H.power_of_base(H.from_int(27, 3))), H.from_int(3**27 - 1, 3), 3
    )
    assert H.symbolic_value(step.term, 3) == expected


def test_canonical_walk_equals_run():
    for system in (System.M, System.E, System.A):
        for m in range(6):
            run = goodstein_run(system, m, 40, 2**4096)
            walk = walk_run(strategy_canonical(system), m, 40, 2**4096)
            assert walk.values == run.values
            assert walk.status == run.status


def test_prime_factor_examples():
    ex = strategy_prime_factor("example")
    seven, eight = ex(7, 3), ex(8, 3)
    assert print_term(seven) == "exp(exp(0)) + exp(exp(0)) + exp(0)"
    assert evaluate(seven, 3) == 7 and evaluate(seven, 4) == 9
    assert isinstance(eight, Mul) and evaluate(eight, 4) == 8
    assert ex(1, 5) == BaseExp(ZERO)
    # a walk holding 8 at base 3 moves to 8 - 1 = 7
    assert evaluate(ex(8, 3), 4) - 1 == 7


def test_prime_factor_literal_variant():
    lit = strategy_prime_factor("literal")
    assert evaluate(lit(7, 3), 4) == 8
    images = [evaluate(lit(m, 3), 4) for m in range(1, 17)]
    # regression: first failure of strict monotonicity, and first strict inversion
    first_tie = next((m, m + 1) for m in range(1, 16) if images[m - 1] >= images[m])
    assert first_tie == (3, 4) and images[2] == images[3] == 4
    assert (images[8], images[9]) == (16, 12)
    with pytest.raises(ValueError):
        strategy_prime_factor("other")


def test_prime_factor_is_not_monotone_in_example_variant():
    ex = strategy_prime_factor("example")
    assert evaluate(ex(7, 3), 4) == 9 > 8 == evaluate(ex(8, 3), 4)


def test_alt_ack_examples():
    alt = strategy_alt_ack()
    assert print_term(alt(20, 2)) == " + ".join(["A(A(0,0),0)"] * 5)
    assert print_term(alt(4, 2)) == "A(A(0,0),0)"
    assert print_term(alt(1, 2)) == "A(0,0)"
    for m in range(1, 200):
        assert evaluate(alt(m, 3), 3) == m


def test_adversarial_matches_nf_base_change():
    adv_m = strategy_adversarial(System.M, 9)
    adv_l = strategy_adversarial(System.L, 9)
    for m in range(13):
        assert evaluate(adv_m(m, 2), 3) == bch_mult(m, 2, 3)
        assert evaluate(adv_l(m, 2), 3) <= bch_exp_int(m, 2, 3)
        assert evaluate(adv_l(m, 2), 2) == m
    fallback = strategy_adversarial(System.M, 1)
    assert fallback(5, 2) == normal_form(System.M, 5, 2)


def test_adversarial_walk_is_dominated():
    walk = walk_run(strategy_adversarial(System.M, 7), 5)
    ref = goodstein_run(System.M, 5)
    assert walk.status == TERMINATED
    assert walk.i_star <= ref.i_star
    assert walk_dominance(walk, ref).dominated


def test_walk_rejects_bad_strategy():
    bad = WalkStrategy("bad", System.M, lambda m, k: ONE)
    with pytest.raises(StrategyError):
        walk_run(bad, 3)


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 6), st.sampled_from(["example", "literal"]))
def test_prime_walks_dominated_by_e_run(m, variant):
    walk = walk_run(strategy_prime_factor(variant), m, 200)
    ref = goodstein_run(System.E, m, 200)
    assert walk_dominance(walk, ref).dominated
    for step in walk.steps:
        if step.term is not None:
            assert is_valid(step.term, System.L)


@given(st.integers(1, 10**6), st.integers(2, 9))
def test_every_strategy_names_its_value(m, k):
    for strat in (strategy_canonical(System.L), strategy_prime_factor(), strategy_prime_factor("literal")):
        assert evaluate(strat(m, k), k) == m


def test_nf_exp_used_for_l():
    assert normal_form(System.L, 22, 2) == nf_exp(22, 2)
