import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goodstein.ack_system import (
    ack_eval,
    bch_extended,
    bch_max_oracle_ack,
    extended_nf,
    is_ack_nf,
    left_expansion,
    lemma_suite,
    min_norms,
    minus_one_nf,
    monotone_bch_ack,
    nf_ack,
    nf_preservation_survey,
    non_min_witness,
    right_expansion_check,
    sandwich,
)
from goodstein.capped import EXCEEDS, ack_exp
from goodstein.dsl import parse_term, print_term
from goodstein.errors import InvalidInput
from goodstein.terms import ZERO, System, eval_ground, evaluate, iter_terms, norm


def test_ack_eval_examples():
    assert ack_eval(1, 0, 2, 100) == 4
    assert ack_eval(1, 1, 2, 10**6) == 65536
    assert ack_eval(2, 0, 2, 10**9) is EXCEEDS


def test_sandwich_examples():
    s = sandwich(20, 2)
    assert (s.indices, s.arguments, s.values) == ((1, 0), (0, 4), (0, 4, 16))
    assert s.to_dict() == {"indices": [1, 0], "arguments": [0, 4], "values": [0, 4, 16]}
    one = sandwich(1, 2)
    assert (one.indices, one.arguments, one.values) == ((0,), (0,), (0, 1))
    four = sandwich(4, 2)
    assert (four.indices, four.arguments, four.values) == ((1,), (0,), (0, 4))


def test_nf_examples():
    assert print_term(nf_ack(20, 2)) == "A(0, A(A(0,0),0)) + A(A(0,0),0)"
    assert norm(nf_ack(20, 2)) == 13
    assert nf_ack(0, 5) == ZERO
    assert print_term(nf_ack(3, 2)) == "A(0, A(0,0)) + A(0,0)"
    assert print_term(nf_ack(4, 2)) == "A(A(0,0),0)"
    assert print_term(nf_ack(1, 2)) == "A(0,0)"


def _inside(m, a, b, k):
    lo = ack_exp(a, b, k, m)
    hi = ack_exp(a, b + 1, k, m)
    return lo is not EXCEEDS and lo <= m and hi is EXCEEDS


@settings(max_examples=300)
@given(st.integers(1, 10**9), st.integers(2, 4))
def test_sandwich_invariants(m, k):
    s = sandwich(m, k)
    assert s.values[0] == 0
    for i, (a, b) in enumerate(zip(s.indices, s.arguments)):
        assert _inside(m, a, b, k)
        assert s.values[i + 1] == ack_exp(a, b, k, m)
        # the index is the largest one whose value at the previous stage fits
        assert ack_exp(a, s.values[i], k, m) is not EXCEEDS
        assert ack_exp(a + 1, s.values[i], k, m) is EXCEEDS
    assert ack_exp(0, s.values[-1], k, m) is EXCEEDS


# normal forms repeat their head p times, so large m makes huge terms
@settings(deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5))
def test_nf_round_trip(m, k):
    t = nf_ack(m, k)
    assert evaluate(t, k) == m
    assert is_ack_nf(t, k)


def test_is_nf_rejects_other_terms():
    assert not is_ack_nf(parse_term("A(0,0) + A(0,0)", System.A), 2)
    assert not is_ack_nf(parse_term("A(0,0) + 0", System.A), 2)
    assert is_ack_nf(ZERO, 2)


def test_extended_nf_examples():
    e = extended_nf(15, 2)
    assert (e.a, e.b, e.p, e.q, e.head_value) == (1, 0, 3, 3, 4)
    e = extended_nf(16, 2)
    assert (e.a, e.b, e.p, e.q) == (0, 4, 1, 0)
    e = extended_nf(4, 2)
    assert (e.a, e.b, e.p, e.q) == (1, 0, 1, 0)
    with pytest.raises(InvalidInput):
        extended_nf(0, 2)


@given(st.integers(1, 10**9), st.integers(2, 4))
def test_extended_nf_division(m, k):
    e = extended_nf(m, k)
    d = e.head_value
    assert 0 <= e.q < d and e.value == m
    assert (e.p, e.q) == divmod(m, d)


def test_bch_extended_examples():
    g = bch_extended(extended_nf(15, 2), 3)
    assert eval_ground(g, 2**64) == 3 * 3**27 + 4
    g = bch_extended(extended_nf(4, 2), 3)
    assert eval_ground(g, 10**6) is EXCEEDS
    assert eval_ground(g, 2**64) == 7_625_597_484_987
    e = extended_nf(13, 2)
    assert eval_ground(bch_extended(e, 2)) == 13


def test_left_expansion_example():
    cs = left_expansion(1, 1, 2, 10**6)
    assert cs == [4, 32768]
    m = ack_eval(1, 1, 2, 10**6)
    assert m == 65536 == 2 * cs[-1]
    assert 1 < cs[0] < cs[1] < m
    with pytest.raises(InvalidInput):
        left_expansion(0, 3, 2)


def test_minus_one_examples():
    r = minus_one_nf(65536, 2, 10**6)
    assert (r.head, r.multiplicity, r.tail, r.value) == (32768, 1, 32767, 65535)
    r = minus_one_nf(4, 2, 100)
    assert (r.head, r.multiplicity, r.tail, r.value) == (2, 1, 1, 3)
    assert minus_one_nf(1, 5, 10).value == 0


def test_minus_one_coherence():
    for k in (2, 3):
        for m in range(2, 513):
            assert minus_one_nf(m, k).value == m - 1


def test_right_expansion():
    r = right_expansion_check(1, 1, 1, 2, 10**6)
    assert r and r.mode == "exact"
    r = right_expansion_check(1, 1, 2, 2, 10**6)
    assert r and r.mode == "exact"
    r = right_expansion_check(1, 2, 2, 2, 10**6)
    assert r and r.mode == "proxy" and r.proxy == (1, 1, 2)
    with pytest.raises(InvalidInput):
        right_expansion_check(1, 1, 3, 2)


def test_bch_max_and_monotone():
    assert bch_max_oracle_ack(2, 3, 7, 64).passed
    assert bch_max_oracle_ack(2, 3, 9, 32).passed
    assert monotone_bch_ack(2, 3, 64).passed


def test_lemma_suites():
    for r in lemma_suite(256):
        assert r.passed, r.summary()


def test_nf_preservation_survey_reports_without_violation():
    r = nf_preservation_survey(64)
    assert r.passed
    assert r.checked + r.indeterminate == 65


def test_min_norms_against_enumeration():
    table = min_norms(64, 2)
    seen = {}
    for t in iter_terms(System.A, 11):
        v = evaluate(t, 2, 64)
        if v is not EXCEEDS:
            seen[v] = min(seen.get(v, 99), norm(t))
    for v, n in seen.items():
        assert table[v] <= n
        if n <= 9:
            assert table[v] == n


def test_non_min_small_value():
    assert norm(nf_ack(1, 2)) == 3 == min_norms(1, 2)[1]


def test_non_min_witness_at_fifteen():
    r = non_min_witness(2, max_norm=13)
    assert r.value == 15
    assert r.nf_norm == norm(nf_ack(15, 2)) == 27 == r.true_min
    assert r.alternative_norm == 29
    # every base-2 A-node is a power of two, so 15 needs four summands
    assert r.exhaustive_min is None
    assert r.first_gap_value is None  # none up to the default search limit


def test_first_non_minimal_normal_form_regression():
    table = min_norms(2**17, 2)
    gaps = [v for v in range(1, 2**17 + 1) if norm(nf_ack(v, 2)) > table[v]]
    assert gaps == [131072]
    assert norm(nf_ack(131072, 2)) == 15 and table[131072] == 13
    shorter = parse_term("A(0, A(0,A(A(0,0),0)) + A(0,0))", System.A)
    assert norm(shorter) == 13 and evaluate(shorter, 2) == 131072
