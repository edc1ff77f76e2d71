import pytest
from hypothesis import given
from hypothesis import strategies as st

from peterweyl.affine import (
    DENOMINATOR_SHIFT,
    E,
    Q,
    S0,
    S1,
    AffineHeckeElement,
    AffineWeylElement,
    bernstein_element,
    bernstein_quotient,
    bullet,
    decompose_translation,
    elements_up_to,
    hecke_inverse_of_T,
    parse_expression,
    star_affine,
    theta,
    theta_from_dominant_pair,
    to_bernstein,
    translation,
    verify_bernstein_relation,
    verify_bullet_star_relation,
)
from peterweyl.errors import InexactDivisionError
from peterweyl.scalars import LaurentScalar
from peterweyl.scenarios import affine_report

T = AffineHeckeElement.T
ELEMENTS = list(elements_up_to(6))
weyl = st.sampled_from(ELEMENTS)
laurent = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=2).map(LaurentScalar)
hecke = st.lists(st.tuples(weyl, laurent), max_size=3).map(lambda terms: sum((T(w) * c for w, c in terms), AffineHeckeElement()))


def test_weyl_group_words():
    assert str(translation(2)) == "s0s1s0s1"
    assert str(translation(-1)) == "s1s0"
    assert S0 * S0 == E and S1 * S1 == E
    w = AffineWeylElement.from_word([0, 1, 0])
    assert w.inverse() == w and w.length == 3
    for x in range(-4, 5):
        assert decompose_translation(translation(x)) == (x, E)
        assert decompose_translation(translation(x) * S1) == (x, S1)


def test_quadratic_relation_and_lengths():
    for s in (S0, S1):
        assert T(s) * T(s) == T(s) * (Q - 1) + Q
        assert T(s) * hecke_inverse_of_T(s) == 1
    assert T(S0) * T(S1) == T([0, 1])
    assert T(E) * T([1, 0, 1]) == T([1, 0, 1])


def test_theta_conventions():
    assert theta(0) == T(E)
    assert theta(1) == T([0, 1]) * LaurentScalar.q(-1)
    assert theta(2) * theta(-2) == 1
    assert theta_from_dominant_pair(3, 1) == theta(2)
    with pytest.raises(ValueError):
        theta_from_dominant_pair(-1, 0)


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_theta_commutative_and_additive(x, y):
    assert theta(x) * theta(y) == theta(y) * theta(x)
    if abs(x + y) <= 6:
        assert theta(x) * theta(y) == theta(x + y)


@pytest.mark.parametrize("x", range(-3, 4))
def test_bernstein_relation(x):
    assert verify_bernstein_relation(x)


def test_bernstein_relation_special_values():
    Ts = T(S1)
    assert theta(0) * Ts == Ts * theta(0)
    assert bernstein_quotient(0) == AffineHeckeElement()
    # with the coroot lattice the denominator is 1 - Theta_{-1}; the root-lattice
    # denominator 1 - Theta_{-2} still divides but gives the wrong correction term
    assert DENOMINATOR_SHIFT == 1
    assert bernstein_quotient(1, shift=2) == theta(1)
    assert not verify_bernstein_relation(1, shift=2)
    with pytest.raises(InexactDivisionError):
        bernstein_quotient(1, shift=3)


@given(hecke, hecke, hecke)
def test_hecke_algebra_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(hecke)
def test_bernstein_round_trip(a):
    assert bernstein_element(to_bernstein(a)) == a


@given(hecke, hecke)
def test_star_and_bullet_are_anti_involutions(a, b):
    for op in (star_affine, bullet):
        assert op(op(a)) == a
        assert op(a * b) == op(b) * op(a)


def test_bullet_on_generators():
    assert bullet(T(S1)) == T(S1)
    for x in range(-3, 4):
        assert bullet(theta(x)) == theta(x)
        assert bullet(theta(x) * T(S1)) == T(S1) * theta(x)


@pytest.mark.parametrize("w", list(elements_up_to(6)), ids=str)
def test_bullet_star_relation(w):
    assert verify_bullet_star_relation(T(w))


def test_bullet_star_relation_examples():
    assert verify_bullet_star_relation(T(E))
    assert verify_bullet_star_relation(theta(1) * T(S1))
    with pytest.raises(ValueError, match="length bound"):
        verify_bullet_star_relation(T(translation(5)), length_bound=8)


def test_specialization():
    x = (T(S1) * T(S1)).specialize(2)
    assert x == {E: 2, S1: 1}
    assert {k: v for k, v in theta(-1).specialize(3).items()}[AffineWeylElement(2, 1)] * 3 == 1


def test_expression_parser():
    assert parse_expression("T[s1]*T[s1]") == T(S1) * (Q - 1) + Q
    assert parse_expression("(q-1)*T[s1] + q^-1*Th[2]*T[s0s1] - 3") == T(S1) * (Q - 1) + T(translation(3)) * LaurentScalar.q(-3) - 3
    assert parse_expression("Th[-1]") == theta(-1)
    assert parse_expression("-2*T[e]") == AffineHeckeElement.scalar(-2)
    assert parse_expression("q*q") == AffineHeckeElement.scalar(Q * Q)
    for bad in ("T[s2]", "Th[1] +", "(q", "x"):
        with pytest.raises(ValueError):
            parse_expression(bad)


def test_printing():
    assert str(T(S1) * T(S1)) == "(1*q^1)*T[e] + (-1*q^0 + 1*q^1)*T[s1]"
    assert theta(-1).bernstein_str() == "(1*q^0)*Th[-1]T[e]"
    assert str(AffineHeckeElement()) == "0"


def test_affine_suite_report():
    report = affine_report()
    assert report["specialization"] == {2: True, 3: True}
    assert all(report["bernstein relation"].values())
    assert all(v for k, v in report.items() if isinstance(v, bool))
    assert report["seconds"] < 10
