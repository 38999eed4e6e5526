import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goodstein.errors import CertificateViolation, EmptySet, SystemViolation
from goodstein.goodstein import Step, Trace, goodstein_run
from goodstein.mult_system import bar, bch_mult, nf_mult
from goodstein.omega import (
    ZERO_POLY,
    OmegaPoly,
    decrease_certificate,
    poly_add,
    poly_compare,
    poly_shift,
    to_omega,
    wf_least,
)
from goodstein.terms import ZERO, GroundTerm, System, base_change, iter_terms

polys = st.lists(st.integers(0, 6), max_size=5).map(lambda c: OmegaPoly(tuple(c)))


def P(*coeffs_high_first):
    return OmegaPoly(tuple(reversed(coeffs_high_first)))


def test_poly_arithmetic_examples():
    assert poly_add(P(1, 0, 1), P(1, 0)) == P(1, 1, 1)
    assert poly_add(ZERO_POLY, P(3, 4)) == P(3, 4)
    assert poly_add(P(2, 3), P(5, 4)) == P(7, 7)
    assert poly_shift(P(1)) == P(1, 0)
    assert poly_shift(P(1, 2)) == P(1, 2, 0)
    assert poly_shift(ZERO_POLY) == ZERO_POLY
    assert str(P(1, 2, 0)) == "w^2 + w*2"


def test_poly_compare_examples():
    assert poly_compare(P(5, 7), P(1, 0, 0)) == -1
    assert poly_compare(P(1, 0, 1), P(1, 0, 1)) == 0
    assert OmegaPoly((0, 0)) == ZERO_POLY and ZERO_POLY.degree == -1


@given(polys, polys)
def test_compare_agrees_with_large_evaluation(f, g):
    n = 1 + max(f.coeffs + g.coeffs + (0,))
    sign = (f.at(n) > g.at(n)) - (f.at(n) < g.at(n))
    assert poly_compare(f, g) == sign


@given(polys, polys, polys)
def test_compare_is_strict_total_order(f, g, h):
    assert sum([f < g, f == g, g < f]) == 1
    if f < g and g < h:
        assert f < h


def test_to_omega_examples():
    assert to_omega(nf_mult(5, 2)) == P(1, 0, 1)
    assert to_omega(ZERO) == ZERO_POLY
    assert to_omega(bar(3)) == P(3)


def test_to_omega_rejects_non_m_terms():
    from goodstein.exp_system import nf_exp

    with pytest.raises(SystemViolation):
        to_omega(nf_exp(3, 2))


def test_wf_least():
    assert wf_least([P(1, 0, 0), P(9, 0), P(5)]) == P(5)
    assert wf_least([ZERO_POLY]) == ZERO_POLY
    with pytest.raises(EmptySet):
        wf_least([])


@given(st.lists(polys, min_size=1, max_size=100))
def test_wf_least_matches_sort(ps):
    assert wf_least(ps) == sorted(ps)[0]


def test_omega_invariant_under_base_change():
    for t in iter_terms(System.M, 9):
        for k, ell in ((2, 3), (3, 7)):
            assert to_omega(base_change(GroundTerm(t, k), ell).term) == to_omega(t)


def test_omega_monotone_and_base_independent():
    for k in (2, 3):
        images = [to_omega(nf_mult(m, k)) for m in range(513)]
        assert all(a < b for a, b in zip(images, images[1:]))
    for k, ell in ((2, 3), (3, 4)):
        for m in range(513):
            assert to_omega(nf_mult(bch_mult(m, k, ell), ell)) == to_omega(nf_mult(m, k))


def test_certificates():
    cert = decrease_certificate(goodstein_run(System.M, 3))
    assert cert.valid and cert.polys()[-1] == ZERO_POLY
    assert all(b < a for a, b in zip(cert.polys(), cert.polys()[1:]))
    empty = decrease_certificate(goodstein_run(System.M, 0))
    assert empty.valid and all(p.is_zero() for p in empty.polys())
    four = decrease_certificate(goodstein_run(System.M, 4)).polys()
    assert four[0] == P(1, 0, 0) and four[1] == P(2, 2)
    rec = json.loads(decrease_certificate(goodstein_run(System.M, 4)).to_jsonl().splitlines()[1])
    assert rec == {"i": 1, "base": 3, "value": "8", "omega_poly": [2, 2]}


def test_certificate_detects_increase():
    bogus = Trace(System.M, 2, [Step(0, 2, 2, None), Step(1, 3, 5, None)])
    with pytest.raises(CertificateViolation):
        decrease_certificate(bogus)
    cert = decrease_certificate(bogus, strict=False)
    assert not cert.valid and cert.first_failure == 1
