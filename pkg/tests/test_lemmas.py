import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from opineq.errors import BadParams
from opineq.lemmas import LemmaId, check_vector_lemma, inner
from opineq.reports import InequalityParams as P

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])


def test_inner_is_linear_in_first_slot():
    a, b = np.array([1j, 0]), np.array([1, 0])
    assert inner(a, b) == 1j
    assert inner(b, a) == -1j


def test_buzano_equality_at_e1():
    r = check_vector_lemma(LemmaId.BUZANO, E1, E1, e=E1)
    assert r.lhs == 1.0 and r.rhs == 1.0 and r.slack == 0.0 and r.passed


def test_ds_upper_parallelogram_identity():
    r = check_vector_lemma(LemmaId.DS_UPPER, E1, E2, P(p=2))
    assert r.lhs == pytest.approx(4.0) and r.rhs == pytest.approx(4.0)
    assert r.passed


def test_grc_collinear_example():
    r = check_vector_lemma(LemmaId.GRC_VEC, 2 * E1, E1, P(r=2))
    # ||a||^4 + ||b||^4 - 2 ||a||^2 ||b||^2 = 16 + 1 - 8
    assert r.lhs == pytest.approx(9.0, abs=1e-14)
    # r^2 ||a||^(2r-2) ||a-b||^2 = 4 * 4 * 1
    assert r.rhs == pytest.approx(16.0, abs=1e-14)
    assert r.passed and r.preconditions_met


def test_grc_hypothesis_failure_is_vacuous():
    r = check_vector_lemma(LemmaId.GRC_VEC, E1, 2 * E1, P(r=2))
    assert r.vacuous and r.passed


def test_grc_fails_for_r_below_minus_one():
    # collinear a = e1, b = 0.9 e1 breaks the bound once r < -1
    a, b = E1, 0.9 * E1
    r = check_vector_lemma(LemmaId.GRC_VEC, a, b, P(r=-1.5))
    # 1 + 0.9^-3 - 2 * 0.9^-1.5 versus 0.9^-5 * 0.01
    assert r.lhs == pytest.approx(1 + 0.9**-3 - 2 * 0.9**-1.5, rel=1e-12)
    assert r.rhs == pytest.approx(0.9**-5 * 0.01, rel=1e-12)
    assert r.preconditions_met and r.slack < -0.5 * r.rhs
    assert not r.passed
    for ok_r in (-1.0, -0.5, 0.0, 0.5, 1.0, 2.0):
        assert check_vector_lemma(LemmaId.GRC_VEC, a, b, P(r=ok_r)).passed


def test_dunkl_williams_examples():
    r = check_vector_lemma(LemmaId.DUNKL_WILLIAMS_VEC, E1, -E1)
    assert r.lhs == pytest.approx(2.0) and r.rhs == pytest.approx(2.0)
    with pytest.raises(BadParams):
        check_vector_lemma(LemmaId.DUNKL_WILLIAMS_VEC, E1, 0 * E1)


def test_dragomir_reverse_examples():
    a = np.array([2.0, 0.0])
    y = np.array([2.0, 1.0])
    r = check_vector_lemma(LemmaId.DRAGOMIR_R, a, y, P(r=1.0))
    assert r.preconditions_met and r.passed
    r = check_vector_lemma(LemmaId.DRAGOMIR_RRR, a, y, P(r=1.0))
    assert r.preconditions_met and r.passed
    # ||y - a|| > r
    r = check_vector_lemma(LemmaId.DRAGOMIR_RRR, a, y, P(r=0.5))
    assert r.vacuous


@pytest.mark.parametrize(
    "lemma, params",
    [
        (LemmaId.GRC_VEC, P()),
        (LemmaId.DRAGOMIR_R, P(r=-1)),
        (LemmaId.DRAGOMIR_RRR, P()),
        (LemmaId.DS_UPPER, P(p=1.5)),
        (LemmaId.DS_LOWER_VEC, P(p=2.0)),
        (LemmaId.DS_LOWER_VEC, P(p=1.0)),
        (LemmaId.POWER_MEAN, P(p=0.5)),
        (LemmaId.DRAGOMIR_QUAD, P(lam=0)),
    ],
)
def test_bad_params(lemma, params):
    with pytest.raises(BadParams):
        check_vector_lemma(lemma, E1, E2, params)


def test_buzano_needs_unit_e():
    with pytest.raises(BadParams):
        check_vector_lemma(LemmaId.BUZANO, E1, E2)
    with pytest.raises(BadParams):
        check_vector_lemma(LemmaId.BUZANO, E1, E2, e=2 * E1)


def test_length_mismatch():
    with pytest.raises(BadParams):
        check_vector_lemma(LemmaId.DS_UPPER, E1, np.ones(3), P(p=2))


def cvec(n):
    el = st.floats(-2, 2, allow_nan=False)
    return st.lists(st.tuples(el, el), min_size=n, max_size=n).map(
        lambda xs: np.array([complex(x, y) for x, y in xs])
    )


@st.composite
def pairs(draw):
    n = draw(st.integers(1, 6))
    return draw(cvec(n)), draw(cvec(n))


@settings(max_examples=300)
@given(pairs(), st.floats(-1, 4))
def test_grc_property(ab, r):
    a, b = ab
    assume(np.linalg.norm(a) > 1e-3 and np.linalg.norm(b) > 1e-3)
    rep = check_vector_lemma(LemmaId.GRC_VEC, a, b, P(r=r))
    assert rep.slack >= -1e-10 * max(1.0, abs(rep.rhs)) or not rep.preconditions_met


@settings(max_examples=300)
@given(pairs(), st.floats(1.0001, 1.9999), st.floats(2, 6))
def test_norm_inequalities_property(ab, p_low, p_high):
    a, b = ab
    assert check_vector_lemma(LemmaId.DS_UPPER, a, b, P(p=p_high)).slack >= -1e-9
    assert check_vector_lemma(LemmaId.DS_LOWER_VEC, a, b, P(p=p_low)).slack >= -1e-10
    assert check_vector_lemma(LemmaId.POWER_MEAN, a, b, P(p=p_high)).slack >= -1e-10


@settings(max_examples=300)
@given(pairs())
def test_buzano_and_dunkl_williams_property(ab):
    a, b = ab
    e = np.zeros_like(a)
    e[0] = 1.0
    assert check_vector_lemma(LemmaId.BUZANO, a, b, e=e).slack >= -1e-10
    if np.linalg.norm(a) > 0 and np.linalg.norm(b) > 0:
        assert check_vector_lemma(LemmaId.DUNKL_WILLIAMS_VEC, a, b).slack >= -1e-10


def test_reports_use_corrected_mode():
    r = check_vector_lemma(LemmaId.POWER_MEAN, E1, E2, P(p=2))
    assert r.mode.value == "corrected"
    assert r.theorem == "POWER_MEAN"
