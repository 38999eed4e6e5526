from hypothesis import given
from hypothesis import strategies as st

from goodstein.capped import EXCEEDS
from goodstein.lower_bound import (
    AckLowerBound,
    eval_lower_bound,
    lower_bound_check,
    lower_bound_fn,
    lower_bound_report,
    succ_ack,
)
from goodstein.mult_system import bch_mult


def test_lower_bound_fn_examples():
    assert lower_bound_fn(6, 2).composition == ((2, 1), (1, 1))
    assert str(lower_bound_fn(6, 2)) == "A_2 o A_1"
    assert lower_bound_fn(0, 7) == AckLowerBound()
    assert str(lower_bound_fn(0, 7)) == "id"


@given(st.integers(0, 10**6), st.integers(2, 6), st.integers(0, 4))
def test_digit_stability(m, k, d):
    ell = k + d
    assert lower_bound_fn(m, k) == lower_bound_fn(bch_mult(m, k, ell), ell)


def test_eval_examples():
    assert [eval_lower_bound(AckLowerBound(((a, 1),)), 0) for a in (2, 3, 4)] == [3, 5, 13]
    assert [succ_ack(a, 0) for a in (2, 3, 4)] == [3, 5, 13]
    assert eval_lower_bound(AckLowerBound(), 9) == 9
    assert eval_lower_bound(lower_bound_fn(6, 2), 3) == 13
    assert eval_lower_bound(lower_bound_fn(2**10, 2), 5, bound=10**6) is EXCEEDS


def test_closed_forms():
    for y in range(50):
        assert succ_ack(1, y) == y + 2
        assert succ_ack(2, y) == 2 * y + 3


def test_small_starts():
    r = lower_bound_check(2, 10**6)
    assert r.terminated and r.i_star == 3 and r.passed
    assert set(r.conventions) == {"base", "index"}
    four = lower_bound_check(4)
    assert four.corollary["holds"] and four.i_star >= 3
    eight = lower_bound_check(8, 5000)
    assert not eight.terminated and eight.corollary["partial"]
    assert eight.steps_reached >= 5 and eight.corollary["holds"]


def test_conventions_frozen():
    # the base reading holds on every terminating start; the index reading
    # (step j read in base j) already fails at j = 2 once m >= 4
    report = lower_bound_report(range(8), 10_000)
    assert report.passed
    for m in range(8):
        conv = report.notes[str(m)]["conventions"]
        assert conv["base"]["holds"]
        assert conv["index"]["holds"] == (m < 4)
        if m >= 4:
            assert conv["index"]["failures"] == [2]
