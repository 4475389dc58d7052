"""Double brackets, Hamiltonian flows and the induced bracket on cyclic words.

A double bracket ``{{x, y}}`` takes values in ``A (x) A`` (:class:`DoubleTensor`).
It is a derivation in the second argument for the outer bimodule structure,
``{{a, bc}} = b {{a, c}} + {{a, b}} c``, and in the first argument for the inner
one, ``{{ab, c}} = a * {{b, c}} + {{a, c}} * b`` where
``a * (x' (x) x'') = x' (x) a x''`` and ``(x' (x) x'') * b = x' b (x) x''``.
With ``{{u, w}} = <u, w> 1 (x) 1`` on letters this reproduces the extended
pairing on a tensor algebra term by term.

``Ham(|x|)(b) = mu {{x, b}}`` with ``mu(x' (x) x'') = x' x''``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from ncdiv.algebra import (EMPTY, AlgebraError, Element, FreeAlgebra,
                           TraceElement, Word, _Linear, format_terms,
                           word_key)
from ncdiv.calculus import Derivation


class DoubleTensor(_Linear):
    """Element of ``A (x) A`` (no cyclic identification)."""

    __slots__ = ()

    def _sort_key(self, key):
        return (word_key(key[0]), word_key(key[1]))

    def outer(self, left: Word, right: Word) -> "DoubleTensor":
        """``left . (x' (x) x'') . right = left x' (x) x'' right``."""
        mw = self.algebra.mul_words
        return DoubleTensor(self.algebra, {(mw(left, a), mw(b, right)): c
                                           for (a, b), c in self.terms.items()})

    def inner(self, left: Word, right: Word) -> "DoubleTensor":
        """``left * (x' (x) x'') * right = x' right (x) left x''``."""
        mw = self.algebra.mul_words
        return DoubleTensor(self.algebra, {(mw(a, right), mw(left, b)): c
                                           for (a, b), c in self.terms.items()})

    def mu(self) -> Element:
        mw = self.algebra.mul_words
        out: Dict[Word, Fraction] = {}
        for (a, b), c in self.terms.items():
            w = mw(a, b)
            out[w] = out.get(w, 0) + c
        return Element(self.algebra, out)

    def __str__(self):
        ws = self.algebra.word_str
        return format_terms(self.sorted_items(), lambda k: f"{ws(k[0])} (x) {ws(k[1])}")


def _add_into(acc: Dict, t: DoubleTensor, c=1):
    for k, v in t.terms.items():
        acc[k] = acc.get(k, 0) + c * v


class DoubleBracket:
    """Double bracket given by its values on pairs of generators."""

    def __init__(self, algebra: FreeAlgebra, values: Mapping[Tuple[int, int], DoubleTensor],
                 name: str = ""):
        self.algebra = algebra
        self.values = {k: v for k, v in values.items() if v}
        self.name = name
        self._letter_cache: Dict[Tuple[int, int], DoubleTensor] = {}
        self._zero = DoubleTensor(algebra, {})

    def letters(self, x: int, y: int) -> DoubleTensor:
        """``{{x, y}}`` for letters, inverses included."""
        key = (x, y)
        hit = self._letter_cache.get(key)
        if hit is not None:
            return hit
        if x > 0 and y > 0:
            hit = self.values.get(key, self._zero)
        elif y < 0:
            # {{x, y^-1}} = -y^-1 {{x, y}} y^-1
            hit = -self.letters(x, -y).outer((y,), (y,))
        else:
            # {{x^-1, y}} = -x^-1 * {{x, y}} * x^-1
            hit = -self.letters(-x, y).inner((x,), (x,))
        self._letter_cache[key] = hit
        return hit

    def words(self, u: Word, w: Word) -> DoubleTensor:
        acc: Dict = {}
        for j, y in enumerate(w):
            for i, x in enumerate(u):
                t = self.letters(x, y)
                if not t:
                    continue
                t = t.inner(u[:i], u[i + 1:]).outer(w[:j], w[j + 1:])
                _add_into(acc, t)
        return DoubleTensor(self.algebra, acc)

    def __call__(self, x: Element, y: Element) -> DoubleTensor:
        acc: Dict = {}
        for u, a in x.terms.items():
            for w, b in y.terms.items():
                _add_into(acc, self.words(u, w), a * b)
        return DoubleTensor(self.algebra, acc)

    def ham_word(self, u: Word, c: int) -> Element:
        return self.words(u, (c,)).mu()

    def to_json(self) -> dict:
        names = self.algebra.names
        return {"algebra": self.algebra.to_json(), "name": self.name,
                "values": {f"{names[i - 1]},{names[j - 1]}": str(v)
                           for (i, j), v in sorted(self.values.items())}}

    @classmethod
    def from_json(cls, data: Mapping, algebra: Optional[FreeAlgebra] = None) -> "DoubleBracket":
        if algebra is None:
            if "algebra" not in data:
                raise AlgebraError("double bracket file needs an 'algebra' entry")
            algebra = FreeAlgebra.from_json(data["algebra"])
        vals = {}
        for key, expr in data.get("values", {}).items():
            t = DoubleTensor(algebra, _plain_pairs(expr, algebra))
            if t:
                vals[_pair_key(key, algebra)] = t
        return cls(algebra, vals, data.get("name", ""))


def _plain_pairs(expr: str, algebra: FreeAlgebra) -> Dict:
    from ncdiv.parsing import _parse
    val = _parse(expr, algebra)
    if val.terms and val.arity != 2:
        raise AlgebraError(f"{expr!r} is not a two-factor tensor")
    return dict(val.terms)


def _pair_key(key: str, algebra: FreeAlgebra) -> Tuple[int, int]:
    parts = [p.strip() for p in key.split(",")]
    if len(parts) != 2 or any(p not in algebra.index for p in parts):
        raise AlgebraError(f"bad generator pair {key!r}")
    return algebra.index[parts[0]], algebra.index[parts[1]]


class PairingTable:
    """Scalar pairing ``<u, w>`` on generators of a tensor algebra."""

    def __init__(self, algebra: FreeAlgebra, values: Mapping[Tuple[int, int], object],
                 skew: bool = False):
        if algebra.is_group:
            raise AlgebraError("pairings are defined on tensor algebras")
        vals: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in values.items():
            c = Fraction(c)
            if skew and i == j and c:
                raise AlgebraError("a skew pairing vanishes on the diagonal")
            if skew and (j, i) in values and Fraction(values[(j, i)]) != -c:
                raise AlgebraError(f"skew pairing has inconsistent values for {(i, j)}")
            if c:
                vals[(i, j)] = c
                if skew:
                    vals[(j, i)] = -c
        self.algebra = algebra
        self.values = vals
        self.skew = skew
        self._bracket = DoubleBracket(algebra, {
            k: DoubleTensor(algebra, {(EMPTY, EMPTY): v}) for k, v in vals.items()})

    def __call__(self, i: int, j: int) -> Fraction:
        return self.values.get((i, j), Fraction(0))

    def is_skew(self) -> bool:
        return all(self(j, i) == -c for (i, j), c in self.values.items())

    def as_double_bracket(self) -> DoubleBracket:
        return self._bracket

    def to_json(self) -> dict:
        names = self.algebra.names
        out = {}
        for (i, j), c in sorted(self.values.items()):
            if self.skew and i > j:
                continue
            out[f"{names[i - 1]},{names[j - 1]}"] = str(c)
        return {"skew": self.skew, "values": out}

    @classmethod
    def from_json(cls, data: Mapping, algebra: FreeAlgebra) -> "PairingTable":
        vals = {}
        for key, c in data.get("values", {}).items():
            vals[_pair_key(key, algebra)] = Fraction(str(c))
        return cls(algebra, vals, bool(data.get("skew", False)))


def as_bracket(pi) -> DoubleBracket:
    if isinstance(pi, PairingTable):
        return pi.as_double_bracket()
    if isinstance(pi, DoubleBracket):
        return pi
    raise TypeError(f"expected a pairing or double bracket, got {type(pi).__name__}")


def pairing_extend(p: PairingTable, x: Element, y: Element) -> DoubleTensor:
    """Bilinear extension of a letter pairing to ``T(W) (x) T(W)``."""
    if x.algebra.is_group or y.algebra.is_group:
        raise AlgebraError("pairing_extend needs a tensor algebra; use a DoubleBracket")
    return p.as_double_bracket()(x, y)


def ham_apply(pi, x: TraceElement, b: Element) -> Element:
    """``Ham(x)(b)``; ``x`` is read on its canonical cyclic representative."""
    br = as_bracket(pi)
    return br(x.representative(), b).mu()


def derivation_from_ham(pi, x: TraceElement, name: str = "") -> Derivation:
    br = as_bracket(pi)
    alg = br.algebra
    vals = {}
    for c in alg.letters:
        acc: Dict[Word, Fraction] = {}
        for u, a in x.terms.items():
            for w, v in br.ham_word(u, c).terms.items():
                acc[w] = acc.get(w, 0) + a * v
        val = Element(alg, acc)
        if val:
            vals[c] = val
    return Derivation(alg, vals, name=name)


def hamiltonian(pi):
    """``psi = Ham`` as a callable trace element -> derivation."""
    return lambda x: derivation_from_ham(pi, x)


def induced_bracket(pi, x: TraceElement, y: TraceElement) -> TraceElement:
    """``{x, y} = |Ham(x)(y)|``."""
    return ham_apply(pi, x, y.representative()).trace()


# ---------------------------------------------------------------------------
# surfaces


def surface_generators(genus: int, boundary: int) -> Tuple[str, ...]:
    """Generator names in the order alpha_1, beta_1, ..., gamma_1, ...

    For genus <= 2 and boundary <= 4 these are ``a b c d`` and ``s t u v``.
    """
    pair_names = "abcdefgh"
    loop_names = "stuvwxyz"
    if genus > len(pair_names) // 2 or boundary > len(loop_names):
        names = [f"{p}{i}" for i in range(1, genus + 1) for p in ("al", "be")]
        names += [f"ga{j}" for j in range(1, boundary + 1)]
        return tuple(names)
    return tuple(pair_names[:2 * genus]) + tuple(loop_names[:boundary])


def surface_attachment_order(genus: int, boundary: int):
    """Order in which the band ends sit along the boundary arc of the disk.

    A genus pair ``(a, b)`` contributes ``a_out, b_in, a_in, b_out``; a
    boundary generator contributes ``out, in``.  Reading the arc from the base
    point spells ``a b a^-1 b^-1 ... s t ...``.
    """
    order = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        order += [(a, "out"), (b, "in"), (a, "in"), (b, "out")]
    for j in range(boundary):
        c = 2 * genus + j + 1
        order += [(c, "out"), (c, "in")]
    return order


def surface_double_bracket(genus: int, boundary: int) -> DoubleBracket:
    """Double bracket of the homotopy intersection pairing on the one-vertex model.

    The surface is a disk with one band per generator glued along an arc that
    contains the base point.  A free loop on the letter ``l`` runs along the
    left side of its band, from just after the exit end to just before the
    entry end (reversed for ``l^-1``).  Comparing these endpoints with the
    band ends of a based generator ``c`` gives the four possible crossings.
    """
    names = surface_generators(genus, boundary)
    alg = FreeAlgebra("group", names)
    pos = {}
    for k, (c, end) in enumerate(surface_attachment_order(genus, boundary), start=1):
        pos[(c, end)] = Fraction(k)
    eps = Fraction(1, 4)
    values = {}
    for l in alg.letters:
        start, stop = pos[(l, "out")] + eps, pos[(l, "in")] - eps
        for c in alg.letters:
            p, q = pos[(c, "out")], pos[(c, "in")]
            terms: Dict = {}

            def put(key, v):
                terms[key] = terms.get(key, 0) + v
            if start < p:
                put(((l,), (c,)), 1)
            if stop < p:
                put((EMPTY, (l, c)), -1)
            if stop < q:
                put(((c,), (l,)), 1)
            if start < q:
                put(((c, l), EMPTY), -1)
            t = DoubleTensor(alg, terms)
            if t:
                values[(l, c)] = t
    return DoubleBracket(alg, values, name=f"surface_g{genus}_n{boundary}")


def boundary_word(genus: int, boundary: int, alg: FreeAlgebra) -> Word:
    w = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        w += [a, b, -a, -b]
    w += [2 * genus + j + 1 for j in range(boundary)]
    return alg.normalize(w)


def load_double_bracket(path) -> DoubleBracket:
    with open(path, encoding="utf-8") as fh:
        return DoubleBracket.from_json(json.load(fh))
