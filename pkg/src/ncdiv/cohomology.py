"""Chevalley-Eilenberg cochains evaluated pointwise.

Derivation Lie algebras are infinite dimensional, so a cochain is a black-box
evaluator ``(f_1, ..., f_k) -> value`` together with the module action
``(f, value) -> f . value`` on its coefficients.  All identities are checked
by evaluating both sides on sampled tuples.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from ncdiv.algebra import AlgebraError, FreeAlgebra
from ncdiv.calculus import Derivation, derivation_bracket, gl_derivation
from ncdiv.divergence import compose


class Cochain:
    """A k-cochain: ``evaluate(fs)`` with ``len(fs) == arity``; ``act(f, v)`` is the module action."""

    def __init__(self, arity: int, evaluate: Callable, act: Callable, zero=None, name: str = ""):
        self.arity = arity
        self.evaluate = evaluate
        self.act = act
        self.zero = zero
        self.name = name

    def __call__(self, *fs):
        if len(fs) != self.arity:
            raise AlgebraError(f"{self.name or 'cochain'} takes {self.arity} arguments, got {len(fs)}")
        return self.evaluate(list(fs))


def _sum(values, zero):
    acc = zero
    for v in values:
        acc = v if acc is None else acc + v
    return acc


def ce_d_eval(psi: Cochain, fs: Sequence[Derivation], bracket=derivation_bracket):
    """``(d psi)(x_0, ..., x_n)`` by the standard alternating formula."""
    fs = list(fs)
    if len(fs) != psi.arity + 1:
        raise AlgebraError(f"d of a {psi.arity}-cochain takes {psi.arity + 1} arguments")
    terms = []
    for i, f in enumerate(fs):
        rest = fs[:i] + fs[i + 1:]
        v = psi.act(f, psi.evaluate(rest))
        terms.append(-v if i % 2 else v)
    for i, j in itertools.combinations(range(len(fs)), 2):
        rest = [x for k, x in enumerate(fs) if k not in (i, j)]
        v = psi.evaluate([bracket(fs[i], fs[j])] + rest)
        terms.append(-v if (i + j) % 2 else v)
    return _sum(terms, psi.zero)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def alt_apply(fs: Sequence) -> List[Tuple[int, tuple]]:
    """All permutations of ``fs`` with their signs, identity first."""
    out = []
    for perm in itertools.permutations(range(len(fs))):
        out.append((permutation_sign(perm), tuple(fs[p] for p in perm)))
    return out


def div_alt(setting, fs: Sequence[Derivation]):
    """``Div_k o alt`` evaluated directly as a signed sum over ``S_k``."""
    mats = [setting.c_matrix(f) for f in fs]
    acc = setting.zero_coeff()
    for sign, perm in alt_apply(list(range(len(fs)))):
        v = setting.trace(compose(*[mats[p] for p in perm]))
        acc = acc + (v if sign > 0 else -v)
    return acc


def div_alt_cochain(setting, k: int) -> Cochain:
    return Cochain(k, lambda fs: div_alt(setting, fs), setting.act_coeff,
                   setting.zero_coeff(), name=f"Div_{k} o alt")


def c_cochain(setting) -> Cochain:
    """``c_nabla`` as an End-valued 1-cochain."""
    return Cochain(1, lambda fs: setting.c_matrix(fs[0]), setting.act_end,
                   setting.zero_matrix(), name="c")


def shuffles(p: int, q: int):
    """(p, q)-shuffles as index tuples with their signs."""
    n = p + q
    for first in itertools.combinations(range(n), p):
        rest = tuple(i for i in range(n) if i not in first)
        yield permutation_sign(first + rest), first, rest


def shuffle_product(psi: Cochain, chi: Cochain, mult: Callable, zero=None) -> Cochain:
    """``(psi . chi)(f_1..f_{p+q}) = sum sgn psi(f_I) mult chi(f_J)`` over shuffles."""
    p, q = psi.arity, chi.arity

    def ev(fs):
        acc = zero
        for sign, first, rest in shuffles(p, q):
            v = mult(psi.evaluate([fs[i] for i in first]), chi.evaluate([fs[i] for i in rest]))
            v = v if sign > 0 else -v
            acc = v if acc is None else acc + v
        return acc
    return Cochain(p + q, ev, psi.act, zero, name=f"({psi.name}).({chi.name})")


def shuffle_power(c: Cochain, k: int, mult: Callable, zero=None) -> Cochain:
    """``c^k = c . c^{k-1}`` for a 1-cochain ``c``."""
    if k < 1:
        raise AlgebraError("shuffle_power needs k >= 1")
    out = c
    for _ in range(k - 1):
        out = shuffle_product(c, out, mult, zero)
    return out


def trace_of_c_power(setting, fs: Sequence[Derivation]):
    """``Tr(c^k)(f_1, ..., f_k)`` via the shuffle power in the CE algebra."""
    k = len(fs)
    power = shuffle_power(c_cochain(setting), k, compose, setting.zero_matrix())
    return setting.trace(power.evaluate(list(fs)))


def mc_defect(setting, f: Derivation, g: Derivation):
    """``(d c)(f, g) + (c . c)(f, g) - iota(R)(f, g)``; zero for every connection."""
    c = c_cochain(setting)
    cf, cg = setting.c_matrix(f), setting.c_matrix(g)
    square = compose(cf, cg) - compose(cg, cf)
    return ce_d_eval(c, [f, g]) + square - setting.iota_curvature(f, g)


def twisted_trace_check(setting, psi: Cochain, f: Derivation, g: Derivation) -> bool:
    """``Tr((d + [c, .]) psi) = d Tr(psi)`` for an End-valued 1-cochain ``psi``."""
    cf, cg = setting.c_matrix(f), setting.c_matrix(g)
    pf, pg = psi.evaluate([f]), psi.evaluate([g])
    # [c, psi] for two odd elements is c . psi + psi . c
    comm = (compose(cf, pg) - compose(cg, pf)) + (compose(pf, cg) - compose(pg, cf))
    lhs = setting.trace(ce_d_eval(psi, [f, g]) + comm)
    tr_psi = Cochain(1, lambda fs: setting.trace(psi.evaluate(fs)), setting.act_coeff,
                     setting.zero_coeff())
    rhs = ce_d_eval(tr_psi, [f, g])
    return lhs == rhs


# ---------------------------------------------------------------------------
# gl(W) and the Fuks generators


def matrix_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)]


def matrix_trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def phi_k_eval(mats: Sequence) -> Fraction:
    """``sum_s sgn(s) Tr(A_{s(1)} ... A_{s(k)})``."""
    k = len(mats)
    if k < 1:
        raise AlgebraError("phi_k needs k >= 1")
    total = Fraction(0)
    for sign, perm in alt_apply(list(mats)):
        prod = perm[0]
        for m in perm[1:]:
            prod = matrix_mul(prod, m)
        total += sign * matrix_trace(prod)
    return total


def gl_trace_value(mats: Sequence, names=None) -> Tuple[Fraction, object]:
    """Scalar coefficient of ``|1| (x) |1|`` in ``Tr(c^k)`` on degree-0 derivations."""
    from ncdiv.divergence import DefaultSetting, make_nabla_W
    n = len(mats[0])
    alg = FreeAlgebra("tensor", names or [f"w{i}" for i in range(1, n + 1)])
    setting = DefaultSetting(make_nabla_W(alg))
    fs = [gl_derivation(alg, m) for m in mats]
    val = div_alt(setting, fs)
    return val.terms.get(((), ()), Fraction(0)), val


def gl_restrict_check(mats: Sequence) -> dict:
    """Compare ``Tr(c_{nabla_W}^k)`` on ``gl(W)`` with ``(-1)^k phi_k``."""
    k = len(mats)
    scalar, full = gl_trace_value(mats)
    expected = (-1) ** k * phi_k_eval(mats)
    only_scalar = set(full.terms) <= {((), ())}
    return {"k": k, "lhs": scalar, "rhs": expected,
            "ok": scalar == expected and only_scalar, "nonzero": expected != 0}


# ---------------------------------------------------------------------------
# random sampling


COEFFS = (-2, -1, 1, 2, Fraction(1, 2), 3)


def random_word(rng, alg: FreeAlgebra, max_len: int = 3, min_len: int = 0):
    n = rng.randint(min_len, max_len)
    out = []
    for _ in range(n):
        x = rng.randint(1, alg.rank)
        if alg.is_group and rng.random() < 0.3:
            x = -x
        out.append(x)
    return alg.normalize(out)


def random_element(rng, alg: FreeAlgebra, max_len: int = 3, terms: int = 2, min_len: int = 0):
    acc = alg.zero()
    for _ in range(rng.randint(1, terms)):
        acc = acc + alg.word(random_word(rng, alg, max_len, min_len), rng.choice(COEFFS))
    return acc


def random_derivation(rng, alg: FreeAlgebra, max_len: int = 3, terms: int = 2,
                      density: float = 0.7) -> Derivation:
    """Generator values are random combinations of words of length <= ``max_len``."""
    vals = {}
    for c in alg.letters:
        if rng.random() < density:
            vals[c] = random_element(rng, alg, max_len, terms)
    return Derivation(alg, vals, name="random")


def random_gl(rng, n: int, lo: int = -3, hi: int = 3):
    return [[Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2))) for _ in range(n)]
            for _ in range(n)]
