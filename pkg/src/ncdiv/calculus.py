"""Derivations and non-commutative differential forms.

Two pictures live here.

``OneForm`` is an element of Omega^1 A written in a free left ``A^e`` basis:
``dw`` for a tensor algebra and ``eta_c = (dc) c^-1`` for a free group
algebra.  Coordinates are :class:`EnvElement` values, ``(a (x) b) . beta``
meaning ``a beta b``.

``Form`` is an element of Omega^* B for a free (tensor) algebra ``B``.  Since
Omega^* T(U) is itself the free algebra on ``U`` and ``dU``, a form monomial is
just a word whose letters are either ``+i`` (the generator ``u_i``) or ``-i``
(the differential ``du_i``).  Degree is the number of differential letters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from ncdiv.algebra import (AlgebraError, Element, EnvElement, FreeAlgebra,
                           TraceElement, Word, _Linear, env_from, format_terms,
                           word_key)


class Derivation:
    """K-linear derivation of a free algebra given by its generator values."""

    def __init__(self, algebra: FreeAlgebra, values: Mapping, name: str = "",
                 degree: Optional[int] = None):
        self.algebra = algebra
        vals: Dict[int, Element] = {}
        for key, v in values.items():
            letter = algebra.index[key] if isinstance(key, str) else key
            if not 1 <= letter <= algebra.rank:
                raise AlgebraError(f"derivation value for bad letter {key!r}")
            if not isinstance(v, Element):
                v = algebra.parse(v) if isinstance(v, str) else algebra.element(v)
            if v.algebra != algebra:
                raise AlgebraError("derivation value over another algebra")
            if v:
                vals[letter] = v
        self.values = vals
        self.name = name
        self.degree = degree
        self._cache: Dict[int, Element] = {}

    def __repr__(self):
        inner = ", ".join(f"{self.algebra.names[k - 1]} -> {v}"
                          for k, v in sorted(self.values.items()))
        return f"Derivation({inner})"

    def __eq__(self, other):
        return (isinstance(other, Derivation) and self.algebra == other.algebra
                and self.values == other.values)

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def value(self, letter: int) -> Element:
        """Value on a letter; ``f(c^-1) = -c^-1 f(c) c^-1``."""
        if letter > 0:
            return self.values.get(letter, self.algebra.zero())
        hit = self._cache.get(letter)
        if hit is None:
            inv = self.algebra.word((letter,))
            hit = -(inv * self.value(-letter) * inv)
            self._cache[letter] = hit
        return hit

    def apply_word(self, word: Word) -> Element:
        alg = self.algebra
        mw = alg.mul_words
        out: Dict[Word, Fraction] = {}
        for i, x in enumerate(word):
            fx = self.value(x)
            if not fx:
                continue
            pre, post = word[:i], word[i + 1:]
            for w, c in fx.terms.items():
                k = mw(mw(pre, w), post)
                out[k] = out.get(k, 0) + c
        return Element(alg, out)

    def __call__(self, x):
        if isinstance(x, Element):
            return derivation_apply(self, x)
        if isinstance(x, TraceElement):
            return derivation_apply(self, x.representative()).trace()
        if isinstance(x, EnvElement):
            return env_derivation(self, x)
        raise TypeError(f"cannot apply a derivation to {type(x).__name__}")

    # vector space structure
    def __add__(self, other: "Derivation") -> "Derivation":
        keys = set(self.values) | set(other.values)
        return Derivation(self.algebra, {k: self.value(k) + other.value(k) for k in keys})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Derivation":
        return Derivation(self.algebra, {k: v.scale(c) for k, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def to_json(self) -> dict:
        return {"name": self.name,
                "values": {self.algebra.names[k - 1]: str(v)
                           for k, v in sorted(self.values.items())}}

    @classmethod
    def from_json(cls, algebra: FreeAlgebra, data: Mapping) -> "Derivation":
        return cls(algebra, dict(data.get("values", {})), name=data.get("name", ""))


def derivation_apply(f: Derivation, x: Element) -> Element:
    if f.algebra != x.algebra:
        raise AlgebraError("derivation and element over different generator sets")
    out = f.algebra.zero()
    for w, c in x.terms.items():
        out = out + f.apply_word(w).scale(c)
    return out


def derivation_bracket(f: Derivation, g: Derivation) -> Derivation:
    """``[f, g](c) = f(g(c)) - g(f(c))`` on generators."""
    alg = f.algebra
    vals = {}
    for c in alg.letters:
        v = derivation_apply(f, g.value(c)) - derivation_apply(g, f.value(c))
        if v:
            vals[c] = v
    return Derivation(alg, vals)


def zero_derivation(alg: FreeAlgebra) -> Derivation:
    return Derivation(alg, {})


def euler_derivation(alg: FreeAlgebra) -> Derivation:
    if alg.is_group:
        raise AlgebraError("the Euler operator is defined on tensor algebras")
    return Derivation(alg, {c: alg.word((c,)) for c in alg.letters}, name="eu", degree=0)


def gl_derivation(alg: FreeAlgebra, matrix) -> Derivation:
    """Degree-0 derivation ``w_j -> sum_i A[i][j] w_i`` (column convention)."""
    n = alg.rank
    vals = {}
    for j in range(n):
        vals[j + 1] = alg.element({(i + 1,): matrix[i][j] for i in range(n)
                                   if matrix[i][j] != 0})
    return Derivation(alg, vals, degree=0)


def env_derivation(f: Derivation, e: EnvElement) -> EnvElement:
    """Action of ``f (x) id + id (x) f`` on the enveloping algebra."""
    alg = e.algebra
    out: Dict[Tuple[Word, Word], Fraction] = {}
    for (a, b), c in e.terms.items():
        for w, x in f.apply_word(a).terms.items():
            out[(w, b)] = out.get((w, b), 0) + c * x
        for w, x in f.apply_word(b).terms.items():
            out[(a, w)] = out.get((a, w), 0) + c * x
    return EnvElement(alg, out)


# ---------------------------------------------------------------------------
# Omega^1 A in a free A^e basis


class OneForm:
    """Element of Omega^1 A: mapping basis letter -> EnvElement coordinate."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: FreeAlgebra, coords: Mapping[int, EnvElement]):
        self.algebra = algebra
        self.coords = {k: v for k, v in coords.items() if v}

    @classmethod
    def basis(cls, alg: FreeAlgebra, letter: int) -> "OneForm":
        from ncdiv.algebra import env_one
        return cls(alg, {letter: env_one(alg)})

    def coord(self, letter: int) -> EnvElement:
        return self.coords.get(letter, EnvElement(self.algebra, {}))

    def __add__(self, other: "OneForm") -> "OneForm":
        keys = set(self.coords) | set(other.coords)
        return OneForm(self.algebra, {k: self.coord(k) + other.coord(k) for k in keys})

    def __neg__(self):
        return OneForm(self.algebra, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, OneForm) and self.algebra == other.algebra
                and self.coords == other.coords)

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def act(self, e: EnvElement) -> "OneForm":
        """Left ``A^e`` action: ``(a (x) b) . omega = a omega b``."""
        return OneForm(self.algebra, {k: e * v for k, v in self.coords.items()})

    def lmul(self, a: Element) -> "OneForm":
        return self.act(env_from(a, self.algebra.one()))

    def rmul(self, b: Element) -> "OneForm":
        return self.act(env_from(self.algebra.one(), b))

    def basis_label(self, letter: int) -> str:
        name = self.algebra.names[letter - 1]
        return f"eta_{name}" if self.algebra.is_group else f"d{name}"

    def __str__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"({v}).{self.basis_label(k)}"
                          for k, v in sorted(self.coords.items()))

    __repr__ = __str__


def fox_expand(x: Element) -> OneForm:
    """``dx`` in the free basis (``dw`` or ``eta_c``) with ``A^e`` coordinates."""
    alg = x.algebra
    coords: Dict[int, Dict[Tuple[Word, Word], Fraction]] = {}
    for w, c in x.terms.items():
        for i, letter in enumerate(w):
            if letter > 0:
                # a . dc . b = a . eta_c . (c b) in the group case
                key = (w[:i], w[i + 1:]) if not alg.is_group else (w[:i], w[i:])
                coef = c
            else:
                # d(c^-1) = -c^-1 eta_c
                key = (w[:i + 1], w[i + 1:])
                coef = -c
            slot = coords.setdefault(abs(letter), {})
            slot[key] = slot.get(key, 0) + coef
    return OneForm(alg, {k: EnvElement(alg, v) for k, v in coords.items()})


def lie_derivative_basis(f: Derivation, letter: int) -> OneForm:
    """``L_f`` of the basis one-form attached to ``letter``."""
    alg = f.algebra
    fc = f.value(letter)
    if not alg.is_group:
        return fox_expand(fc)
    # L_f((dc) c^-1) = d(f(c)) c^-1 - eta_c f(c) c^-1
    cinv = alg.word((-letter,))
    first = fox_expand(fc).rmul(cinv)
    second = OneForm.basis(alg, letter).rmul(fc * cinv)
    return first - second


def lie_derivative(f: Derivation, omega: OneForm) -> OneForm:
    out = OneForm(f.algebra, {})
    for k, e in omega.coords.items():
        out = out + OneForm(f.algebra, {k: env_derivation(f, e)})
        out = out + lie_derivative_basis(f, k).act(e)
    return out


def one_form_of(alg: FreeAlgebra, a: Element, x: Element, b: Element) -> OneForm:
    """The one-form ``a (dx) b``."""
    return fox_expand(x).act(env_from(a, b))


# ---------------------------------------------------------------------------
# Omega^* B and DR^* B for a free tensor algebra B


def form_degree(word: Word) -> int:
    return sum(1 for x in word if x < 0)


class Form(_Linear):
    """Non-commutative differential form over a free tensor algebra.

    Keys are words in letters ``+i`` (``u_i``) and ``-i`` (``du_i``).
    """

    __slots__ = ()

    def __init__(self, algebra, terms):
        if algebra.is_group:
            raise AlgebraError("differential forms are only supported over tensor algebras")
        super().__init__(algebra, terms)

    @classmethod
    def from_element(cls, x: Element) -> "Form":
        return cls(x.algebra, x.terms)

    @classmethod
    def d_gen(cls, alg: FreeAlgebra, letter: int) -> "Form":
        return cls(alg, {(-letter,): Fraction(1)})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Element):
            other = Form.from_element(other)
        if not self._check(other):
            return NotImplemented
        out: Dict[Word, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out[u + v] = out.get(u + v, 0) + a * b
        return Form(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Element):
            return Form.from_element(other) * self
        return NotImplemented

    def degrees(self):
        return {form_degree(w) for w in self.terms}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise AlgebraError("inhomogeneous form")
        return degs.pop() if degs else 0

    def homogeneous(self, n: int) -> "Form":
        return Form(self.algebra, {w: c for w, c in self.terms.items()
                                   if form_degree(w) == n})

    def to_element(self) -> Element:
        if any(x < 0 for w in self.terms for x in w):
            raise AlgebraError("form has positive degree")
        return Element(self.algebra, self.terms)

    def _render(self, w):
        if not w:
            return "1"
        names = self.algebra.names
        return " ".join(("d" if x < 0 else "") + names[abs(x) - 1] for x in w)

    def __str__(self):
        return format_terms(self.sorted_items(), self._render)


def form_d(x: Form) -> Form:
    """Exterior derivative: graded derivation with ``d(u) = du``, ``d(du) = 0``."""
    out: Dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        ndiff = 0
        for i, letter in enumerate(w):
            if letter < 0:
                ndiff += 1
                continue
            k = w[:i] + (-letter,) + w[i + 1:]
            out[k] = out.get(k, 0) + (-c if ndiff % 2 else c)
    return Form(x.algebra, out)


def contract(f: Derivation, x: Form) -> Form:
    """Contraction ``i_f``: degree -1 graded derivation, ``i_f(du) = f(u)``."""
    out: Dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        ndiff = 0
        for i, letter in enumerate(w):
            if letter > 0:
                continue
            sign = -c if ndiff % 2 else c
            ndiff += 1
            pre, post = w[:i], w[i + 1:]
            for v, a in f.value(-letter).terms.items():
                k = pre + v + post
                out[k] = out.get(k, 0) + sign * a
    return Form(x.algebra, out)


def form_lie(f: Derivation, x: Form) -> Form:
    """Lie derivative on forms: ``L_f(u) = f(u)``, ``L_f(du) = d f(u)``."""
    out: Dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        for i, letter in enumerate(w):
            pre, post = w[:i], w[i + 1:]
            val = Form.from_element(f.value(abs(letter)))
            if letter < 0:
                val = form_d(val)
            for v, a in val.terms.items():
                k = pre + v + post
                out[k] = out.get(k, 0) + c * a
    return Form(x.algebra, out)


def form_derivation(f: Derivation, x: Form) -> Form:
    """Apply ``f`` to the scalar letters only (``f`` acting on coefficients of ``du``)."""
    out: Dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        for i, letter in enumerate(w):
            if letter < 0:
                continue
            pre, post = w[:i], w[i + 1:]
            for v, a in f.value(letter).terms.items():
                k = pre + v + post
                out[k] = out.get(k, 0) + c * a
    return Form(x.algebra, out)


def _dr_canonical(word: Word) -> Tuple[Optional[Word], int]:
    """Canonical graded-cyclic rotation and its sign; ``(None, 0)`` if it vanishes.

    ``|p q| = (-1)^{|p||q|} |q p|``.  Positive-degree words are rotated so
    that a differential letter comes last, then the least such rotation is taken.
    """
    n = len(word)
    total = form_degree(word)
    best = None
    signs = set()
    deg_prefix = 0
    for i in range(n if n else 1):
        if i:
            deg_prefix += word[i - 1] < 0
        rot = word[i:] + word[:i]
        if total and rot[-1] > 0:
            continue
        sign = -1 if (deg_prefix * (total - deg_prefix)) % 2 else 1
        k = word_key(rot)
        if best is None or k < best[0]:
            best = (k, rot)
            signs = {sign}
        elif k == best[0]:
            signs.add(sign)
    if len(signs) > 1:
        return None, 0
    return best[1], signs.pop()


class DRElement(_Linear):
    """Element of the de Rham space ``DR^* B`` (graded cyclic quotient of forms)."""

    __slots__ = ()

    def __init__(self, algebra, terms):
        canon: Dict[Word, Fraction] = {}
        for w, c in dict(terms).items():
            rep, sign = _dr_canonical(tuple(w))
            if rep is None:
                continue
            canon[rep] = canon.get(rep, 0) + sign * c
        super().__init__(algebra, canon)

    def representative(self) -> Form:
        return Form(self.algebra, self.terms)

    def dr1_coefficients(self) -> Dict[str, Element]:
        """Degree-1 view ``sum_u b_u du`` with left coefficients ``b_u``."""
        out: Dict[str, Element] = {}
        for w, c in self.terms.items():
            if form_degree(w) != 1:
                raise AlgebraError("dr1_coefficients needs a degree-1 element")
            name = self.algebra.names[-w[-1] - 1]
            out[name] = out.get(name, self.algebra.zero()) + self.algebra.word(w[:-1], c)
        return out

    def _render(self, w):
        return "|" + Form(self.algebra, {})._render(w) + "|"

    def __str__(self):
        return format_terms(self.sorted_items(), self._render)


def dr_project(x: Form) -> DRElement:
    return DRElement(x.algebra, x.terms)


def dr1_normalize(x: Form) -> DRElement:
    """``a du a' = (a' a) du`` in DR^1 B."""
    if x.terms and x.degree() != 1:
        raise AlgebraError("dr1_normalize expects a one-form")
    return dr_project(x)


def de_rham_d(x) -> DRElement:
    """``d`` on ``DR^* B``; accepts a trace element (degree 0) or a DR element."""
    if isinstance(x, TraceElement):
        if x.algebra.is_group:
            raise AlgebraError("de Rham forms over group algebras are not supported")
        rep = Form(x.algebra, x.terms)
    else:
        rep = x.representative()
    return dr_project(form_d(rep))


def dr_contract(f: Derivation, x: DRElement) -> DRElement:
    return dr_project(contract(f, x.representative()))


def iterated_contract(fs: Iterable[Derivation], x: Form) -> Form:
    """``i_{f_n} ... i_{f_1} x`` for ``fs = (f_1, ..., f_n)`` (``f_1`` applied first)."""
    for f in fs:
        x = contract(f, x)
    return x


def random_form(rng, alg: FreeAlgebra, degree: int, max_len: int = 3, terms: int = 2) -> Form:
    """Random homogeneous form for property tests."""
    out = {}
    for _ in range(terms):
        n_scalar = rng.randint(0, max_len)
        letters = [rng.randint(1, alg.rank) for _ in range(n_scalar)]
        for _ in range(degree):
            pos = rng.randint(0, len(letters))
            letters.insert(pos, -rng.randint(1, alg.rank))
        w = tuple(letters)
        out[w] = out.get(w, 0) + Fraction(rng.choice([-2, -1, 1, 2, 3]))
    return Form(alg, out)

