import random
from fractions import Fraction

import pytest

from ncdiv.algebra import FreeAlgebra
from ncdiv.calculus import derivation_bracket
from ncdiv.cohomology import (Cochain, c_cochain, ce_d_eval, div_alt, div_alt_cochain,
                              gl_restrict_check, matrix_mul, matrix_trace, mc_defect,
                              permutation_sign, phi_k_eval, random_derivation, random_gl,
                              shuffles, trace_of_c_power, twisted_trace_check)
from ncdiv.divergence import DefaultSetting, make_nabla_C, make_nabla_W
from ncdiv.suites import phi3_bruteforce

W = FreeAlgebra("tensor", "uv")
G = FreeAlgebra("group", "ab")


def settings():
    return [DefaultSetting(make_nabla_W(W)), DefaultSetting(make_nabla_C(G))]


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((1, 2, 0)) == 1


def test_shuffle_count():
    assert len(list(shuffles(2, 2))) == 6
    assert sum(s for s, _, _ in shuffles(1, 1)) == 0


def test_d_squared_zero_on_a_one_cochain():
    # d(d psi) = 0 for psi = Div_1
    rng = random.Random(0)
    s = DefaultSetting(make_nabla_W(W))
    psi = div_alt_cochain(s, 1)
    dpsi = Cochain(2, lambda fs: ce_d_eval(psi, fs), s.act_coeff, s.zero_coeff())
    for _ in range(5):
        fs = [random_derivation(rng, W, max_len=2) for _ in range(3)]
        assert not ce_d_eval(dpsi, fs)


@pytest.mark.parametrize("k", [1, 3])
def test_cocycle(k):
    rng = random.Random(k)
    for s in settings():
        alg = s.algebra
        psi = div_alt_cochain(s, k)
        for _ in range(3):
            fs = [random_derivation(rng, alg, max_len=2) for _ in range(k + 1)]
            assert not ce_d_eval(psi, fs)


@pytest.mark.parametrize("k", [2, 4])
def test_even_alternation_vanishes(k):
    rng = random.Random(k)
    for s in settings():
        fs = [random_derivation(rng, s.algebra, max_len=2) for _ in range(k)]
        assert not div_alt(s, fs)


def test_alternation_is_trace_of_power():
    rng = random.Random(9)
    for s in settings():
        for k in (1, 2, 3):
            fs = [random_derivation(rng, s.algebra) for _ in range(k)]
            assert div_alt(s, fs) == trace_of_c_power(s, fs)


def test_maurer_cartan_default():
    rng = random.Random(4)
    for s in settings():
        for _ in range(10):
            f, g = random_derivation(rng, s.algebra), random_derivation(rng, s.algebra)
            assert mc_defect(s, f, g).is_zero()


def test_twisted_trace():
    rng = random.Random(6)
    s = DefaultSetting(make_nabla_W(W))
    psi = c_cochain(s)
    for _ in range(5):
        f, g = random_derivation(rng, W), random_derivation(rng, W)
        assert twisted_trace_check(s, psi, f, g)


def test_phi_small_k():
    rng = random.Random(1)
    a, b, c = (random_gl(rng, 3) for _ in range(3))
    assert phi_k_eval([a]) == matrix_trace(a)
    assert phi_k_eval([a, b]) == 0
    assert phi_k_eval([a, b, c]) == phi3_bruteforce(a, b, c)
    assert phi_k_eval([a, b, c]) == 3 * (matrix_trace(matrix_mul(matrix_mul(a, b), c))
                                         - matrix_trace(matrix_mul(matrix_mul(b, a), c)))


def test_fuks_restriction_hand_value():
    # k = 1: Tr(c(f)) = -Tr(A)
    m = [[Fraction(2), Fraction(1)], [Fraction(0), Fraction(5)]]
    res = gl_restrict_check([m])
    assert res["ok"] and res["lhs"] == -7
    # k = 3 with elementary matrices: phi_3(E12, E21, E11) = 3 * (1 - 0)
    e12 = [[0, 1], [0, 0]]
    e21 = [[0, 0], [1, 0]]
    e11 = [[1, 0], [0, 0]]
    mats = [[[Fraction(x) for x in r] for r in m_] for m_ in (e12, e21, e11)]
    res = gl_restrict_check(mats)
    assert res["rhs"] == -3 and res["ok"]


def test_lie_bracket_of_derivations_in_d():
    rng = random.Random(12)
    s = DefaultSetting(make_nabla_W(W))
    f, g = random_derivation(rng, W), random_derivation(rng, W)
    psi = div_alt_cochain(s, 1)
    # (d psi)(f, g) = f.psi(g) - g.psi(f) - psi([f, g])
    expected = s.act_coeff(f, psi(g)) - s.act_coeff(g, psi(f)) - psi(derivation_bracket(f, g))
    assert ce_d_eval(psi, [f, g]) == expected
