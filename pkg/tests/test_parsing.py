from fractions import Fraction

import pytest

from ncdiv.algebra import AlgebraError, FreeAlgebra
from ncdiv.parsing import ParseError, parse_element, parse_tensor, parse_trace

T = FreeAlgebra("tensor", "uv")
G = FreeAlgebra("group", "st")


def test_powers_and_brackets():
    assert parse_element("(u+v)^2", T) == parse_element("uu + uv + vu + vv", T)
    assert parse_element("s^-2 s^2", G) == G.one()
    assert parse_element("(st)^-1", G) == parse_element("t^-1 s^-1", G)


def test_coefficient_glued_to_word():
    x = parse_element("3stst - 2tsst", G)
    assert x == parse_element("3 s t s t - 2 t s s t", G)
    assert parse_element("a b a^-1 b^-1", FreeAlgebra("group", "ab")).terms == {(1, 2, -1, -2): 1}


def test_rational_coefficients():
    x = parse_element("1/2 u - 3/4 uv", T)
    assert x.terms[(1,)] == Fraction(1, 2)
    assert x.terms[(1, 2)] == Fraction(-3, 4)


def test_zero_and_unit():
    assert not parse_element("0", T)
    assert parse_element("1", T) == T.one()
    assert not parse_tensor("0", G)


def test_tensor_needs_separator():
    assert parse_tensor("st (x) 1", G) == parse_tensor("ts (x) 1", G)
    with pytest.raises(AlgebraError):
        parse_tensor("st", G)


def test_multi_letter_names():
    A = FreeAlgebra("tensor", ["al", "be"])
    assert parse_element("al be", A) == A.gen("al") * A.gen("be")
    assert parse_trace("be al", A) == parse_trace("al be", A)


def test_unknown_generator_named():
    with pytest.raises(ParseError, match="unknown generator"):
        parse_element("ux", T)


@pytest.mark.parametrize("bad", ["u +* v", "(u", "u^", "x", "u^-1", "1/0 u"])
def test_errors_carry_position(bad):
    with pytest.raises(ParseError) as exc:
        parse_element(bad, T)
    assert "position" in str(exc.value)
