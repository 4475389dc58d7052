import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncdiv.algebra import AlgebraError, FreeAlgebra, trace_project
from ncdiv.brackets import (DoubleBracket, PairingTable, derivation_from_ham, ham_apply,
                            induced_bracket, pairing_extend, surface_double_bracket)
from ncdiv.calculus import derivation_bracket
from ncdiv.parsing import parse_element, parse_trace
from ncdiv.suites import load_json, load_surface_bracket, random_skew_pairing

W = FreeAlgebra("tensor", "uvw")
P = PairingTable(W, {(1, 2): 1, (1, 3): Fraction(1, 2), (2, 3): -2}, skew=True)


def brute_extend(p, x, y):
    """Letter-by-letter sum over pairs of positions."""
    out = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for i in range(len(a)):
                for j in range(len(b)):
                    c = p(a[i], b[j]) * ca * cb
                    if c:
                        key = (b[:j] + a[i + 1:], a[:i] + b[j + 1:])
                        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def test_extension_examples():
    u, w1, w2 = W.gen("u"), W.gen("v"), W.gen("w")
    got = pairing_extend(P, u, w1 * w2)
    assert dict(got.terms) == {((), (3,)): 1, ((2,), ()): Fraction(1, 2)}
    assert not pairing_extend(P, u, u)
    q = PairingTable(W, {(1, 3): 1})
    assert dict(pairing_extend(q, W.parse("uv"), W.gen("w")).terms) == {((2,), ()): 1}


def test_group_input_rejected():
    G = FreeAlgebra("group", "ab")
    with pytest.raises(AlgebraError):
        PairingTable(G, {(1, 2): 1})


def test_skew_table_checks():
    with pytest.raises(AlgebraError):
        PairingTable(W, {(1, 1): 1}, skew=True)
    with pytest.raises(AlgebraError):
        PairingTable(W, {(1, 2): 1, (2, 1): 1}, skew=True)
    assert P.is_skew()
    assert PairingTable.from_json(P.to_json(), W).values == P.values


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_extension_matches_brute_force(seed):
    rng = random.Random(seed)
    p = random_skew_pairing(rng, W)
    x = W.word([rng.randint(1, 3) for _ in range(rng.randint(0, 5))])
    y = W.word([rng.randint(1, 3) for _ in range(rng.randint(0, 5))]) + W.gen("u")
    assert dict(pairing_extend(p, x, y).terms) == brute_extend(p, x, y)


def test_ham_examples():
    q = PairingTable(W, {(1, 2): 1}, skew=True)
    assert ham_apply(q, parse_trace("u", W), W.gen("v")) == W.one()
    assert induced_bracket(q, parse_trace("u", W), parse_trace("v", W)) == parse_trace("1", W)
    assert derivation_from_ham(q, parse_trace("1", W)).is_zero()
    # sum over positions s of <w_s, w> w_{s+1} ... w_{s-1}
    x = parse_trace("uvw", W)
    expected = W.parse("wu").scale(P(2, 1)) + W.parse("uv").scale(P(3, 1))
    assert ham_apply(P, x, W.gen("u")) == expected


def test_ham_is_lie_map():
    rng = random.Random(11)
    for _ in range(25):
        p = random_skew_pairing(rng, W)
        x = trace_project(W.word([rng.randint(1, 3) for _ in range(rng.randint(1, 4))]))
        y = trace_project(W.word([rng.randint(1, 3) for _ in range(rng.randint(1, 4))]))
        lhs = derivation_from_ham(p, induced_bracket(p, x, y))
        rhs = derivation_bracket(derivation_from_ham(p, x), derivation_from_ham(p, y))
        assert lhs == rhs
        assert not induced_bracket(p, x, x)


def test_surface_bracket_leibniz_rules():
    br = load_surface_bracket()
    alg = br.algebra
    rng = random.Random(2)
    gens = list(alg.letters) + [-c for c in alg.letters]

    def word():
        return alg.normalize([rng.choice(gens) for _ in range(rng.randint(1, 3))])

    for _ in range(40):
        x, y, z = word(), word(), word()
        X, Y, Z = alg.word(x), alg.word(y), alg.word(z)
        # outer derivation in the second argument
        assert br(X, Y * Z) == br(X, Y).outer((), z) + br(X, Z).outer(y, ())
        # inner derivation in the first argument
        assert br(X * Y, Z) == br(X, Z).inner((), y) + br(Y, Z).inner(x, ())


def test_pairing_bracket_antisymmetric():
    rng = random.Random(5)
    for _ in range(30):
        x = W.word([rng.randint(1, 3) for _ in range(rng.randint(1, 4))])
        y = W.word([rng.randint(1, 3) for _ in range(rng.randint(1, 4))])
        a, b = pairing_extend(P, x, y), pairing_extend(P, y, x)
        assert {(r, l): -c for (l, r), c in b.terms.items()} == dict(a.terms)


def test_bundled_surface_matches_construction():
    data = load_json("surface_g2_n4.json")
    built = surface_double_bracket(2, 4)
    loaded = DoubleBracket.from_json(data)
    assert loaded.algebra == built.algebra
    for i in built.algebra.letters:
        for j in built.algebra.letters:
            assert loaded.letters(i, j) == built.letters(i, j)


def test_surface_ham_rotation_invariant():
    br = load_surface_bracket()
    alg = br.algebra
    x = parse_element("s t u^-1 a", alg)
    rot = parse_element("a s t u^-1", alg)
    for c in alg.letters:
        b = alg.word((c,))
        assert br(x, b).mu() == br(rot, b).mu()
