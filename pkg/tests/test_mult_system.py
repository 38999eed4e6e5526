import pytest
from hypothesis import given
from hypothesis import strategies as st

from goodstein.dsl import parse_term, print_term
from goodstein.errors import BadDecomposition, InvalidBase
from goodstein.mult_system import (
    bar,
    bch_commutes_mult,
    bch_max_oracle_mult,
    bch_mult,
    digits,
    lemma_suite,
    monotone_bch_mult,
    mult_max_inequality,
    mult_nf,
    nf_mult,
    norm_min_oracle_mult,
)
from goodstein.terms import ZERO, System, canonical, equivalent, evaluate, norm


def M(text):
    return parse_term(text, System.M)


def test_nf_examples():
    assert equivalent(nf_mult(5, 2), M("mul(mul(1)) + 1"))
    assert nf_mult(0, 7) == ZERO
    assert equivalent(nf_mult(8, 3), M("mul(1 + 1) + 1 + 1"))
    assert print_term(nf_mult(8, 3)) == "mul(1 + 1) + 1 + 1"
    assert norm(nf_mult(2, 2)) == 2
    assert norm(bar(2)) == 3 > norm(nf_mult(2, 2))
    nf = mult_nf(8, 3)
    assert (nf.p, nf.q) == (2, 2)


def test_digits():
    assert digits(10, 2) == [0, 1, 0, 1]
    assert digits(0, 5) == []


def test_bch_commutes_examples():
    assert bch_commutes_mult(5, 2, 3)
    assert bch_mult(5, 2, 3) == 10
    assert equivalent(nf_mult(10, 3), M("mul(mul(1)) + 1"))
    assert bch_commutes_mult(0, 2, 9)
    for k, ell in ((2, 3), (2, 5), (3, 4)):
        assert all(bch_commutes_mult(m, k, ell) for m in range(257))


def test_bch_mult_agrees_with_terms():
    for k, ell in ((2, 3), (3, 7)):
        for m in range(500):
            assert bch_mult(m, k, ell) == evaluate(nf_mult(m, k), ell)
    with pytest.raises(InvalidBase):
        bch_mult(3, 3, 2)


def test_max_inequality_examples():
    lhs, rhs, equal = mult_max_inequality(10, 4, 2, 2, 3)
    assert (lhs, rhs) == (30, 29) and lhs > rhs and not equal
    assert mult_max_inequality(6, 3, 0, 2, 3)[2]
    assert mult_max_inequality(0, 0, 0, 2, 5) == (0, 0, True)
    with pytest.raises(BadDecomposition):
        mult_max_inequality(7, 3, 0, 2, 3)


@given(st.integers(0, 5000), st.integers(2, 6), st.integers(1, 4), st.data())
def test_max_inequality_property(m, k, d, data):
    ell = k + d
    r = data.draw(st.integers(0, m // k))
    s = m - k * r
    lhs, rhs, equal = mult_max_inequality(m, r, s, k, ell)
    assert lhs >= rhs
    assert equal == (s < k)


def test_oracles_small():
    assert norm_min_oracle_mult(3, 9).passed
    assert bch_max_oracle_mult(3, 4, 9).passed
    # witness: bar(4) at base 2 goes to 4 in base 3, the nf goes to 9
    assert evaluate(bar(4), 3) == 4 <= bch_mult(4, 2, 3) == 9


def test_monotone():
    assert monotone_bch_mult(2, 3, 512).passed
    assert monotone_bch_mult(3, 5, 512).passed


@given(st.integers(1, 10**6), st.integers(2, 9))
def test_norm_identity_and_idempotence(m, k):
    p, q = divmod(m, k)
    t = nf_mult(m, k)
    if p:
        assert norm(t) == norm(nf_mult(p, k)) + 2 * q + 1
    assert canonical(nf_mult(evaluate(t, k), k)) == canonical(t)


def test_lemma_suite():
    assert all(r.passed for r in lemma_suite())
