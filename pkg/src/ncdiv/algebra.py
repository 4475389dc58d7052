"""Free algebras with exact rational coefficients.

A :class:`FreeAlgebra` is either the tensor algebra ``T(W)`` on a finite set
of generators or the group algebra ``Q[F]`` of the free group on them.  Words
are tuples of nonzero ints: generator ``i`` (0-based declaration index) is the
letter ``i + 1`` and its inverse is ``-(i + 1)``.  Letters are ordered by
declaration order with ``c < c^-1``; that order drives every canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Word = Tuple[int, ...]
EMPTY: Word = ()


class AlgebraError(ValueError):
    """Raised on malformed input or mixing elements of different algebras."""


def letter_key(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (letter < 0)


def word_key(word: Word) -> Tuple[int, ...]:
    return tuple(letter_key(x) for x in word)


def reduce_word(word: Iterable[int]) -> Word:
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def rotations(word: Word) -> Iterator[Word]:
    for i in range(len(word)):
        yield word[i:] + word[:i]


def least_rotation(word: Word) -> Word:
    if not word:
        return word
    return min(rotations(word), key=word_key)


def cyclic_reduce(word: Word) -> Word:
    word = reduce_word(word)
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == -word[j - 1]:
        i += 1
        j -= 1
    return word[i:j]


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise AlgebraError("floating point coefficients are not allowed")
    return Fraction(c)


class FreeAlgebra:
    """Tensor algebra or free group algebra on named generators."""

    def __init__(self, kind: str, names: Sequence[str]):
        if kind not in ("tensor", "group"):
            raise AlgebraError(f"unknown algebra kind {kind!r}")
        names = tuple(names)
        if not names:
            raise AlgebraError("generator list is empty")
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {names}")
        self.kind = kind
        self.names = names
        self.index = {n: i + 1 for i, n in enumerate(names)}

    def __repr__(self):
        return f"FreeAlgebra({self.kind!r}, {list(self.names)!r})"

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra) and self.kind == other.kind
                and self.names == other.names)

    def __hash__(self):
        return hash((self.kind, self.names))

    @property
    def is_group(self) -> bool:
        return self.kind == "group"

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def letters(self) -> Tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @classmethod
    def from_json(cls, data: Mapping) -> "FreeAlgebra":
        try:
            return cls(data["kind"], data["generators"])
        except KeyError as exc:
            raise AlgebraError(f"algebra spec is missing {exc}") from None

    def to_json(self) -> dict:
        return {"kind": self.kind, "generators": list(self.names)}

    # -- words ---------------------------------------------------------
    def normalize(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for x in word:
            if x == 0 or abs(x) > self.rank:
                raise AlgebraError(f"letter {x} out of range for {self}")
            if x < 0 and not self.is_group:
                raise AlgebraError("inverse letters need a group algebra")
        return reduce_word(word) if self.is_group else word

    def mul_words(self, u: Word, v: Word) -> Word:
        if not self.is_group or not u or not v or u[-1] != -v[0]:
            return u + v
        return reduce_word(u + v)

    def cyclic(self, word: Word) -> Word:
        """Canonical representative of the conjugacy/rotation class."""
        if self.is_group:
            word = cyclic_reduce(word)
        return least_rotation(word)

    def word_str(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        for x in word:
            name = self.names[abs(x) - 1]
            parts.append(name if x > 0 else name + "^-1")
        sep = "" if all(len(n) == 1 for n in self.names) else " "
        out = []
        for i, p in enumerate(parts):
            if i and (sep or "^" in parts[i - 1]):
                out.append(" ")
            out.append(p)
        return "".join(out)

    def parse_word(self, text: str) -> Word:
        from ncdiv.parsing import parse_element
        el = parse_element(text, self)
        if len(el.terms) != 1 or next(iter(el.terms.values())) != 1:
            raise AlgebraError(f"{text!r} is not a single word")
        return next(iter(el.terms))

    # -- constructors --------------------------------------------------
    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {EMPTY: Fraction(1)})

    def gen(self, name: str) -> "Element":
        return Element(self, {(self.index[name],): Fraction(1)})

    def word(self, word: Iterable[int], coeff=1) -> "Element":
        return Element(self, {self.normalize(word): _coerce(coeff)})

    def element(self, terms: Mapping[Word, object]) -> "Element":
        out: Dict[Word, Fraction] = {}
        for w, c in terms.items():
            w = self.normalize(w)
            out[w] = out.get(w, 0) + _coerce(c)
        return Element(self, out)

    def parse(self, text: str) -> "Element":
        from ncdiv.parsing import parse_element
        return parse_element(text, self)


def _clean(terms: Dict) -> Dict:
    return {k: v for k, v in terms.items() if v != 0}


class _Linear:
    """Shared vector-space behaviour for finite Q-linear combinations."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: Mapping):
        self.algebra = algebra
        self.terms = _clean(dict(terms))

    def _new(self, terms):
        return type(self)(self.algebra, terms)

    def _check(self, other):
        if not isinstance(other, type(self)):
            return False
        if other.algebra != self.algebra:
            raise AlgebraError("elements live over different generator sets")
        return True

    def __add__(self, other):
        if not self._check(other):
            if other == 0:
                return self
            return NotImplemented
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "_Linear":
        c = _coerce(c)
        if c == 0:
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def _sort_key(self, key):
        return word_key(key)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class Element(_Linear):
    """Element of the free (group) algebra: mapping word -> Fraction."""

    __slots__ = ()

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not self._check(other):
            return NotImplemented
        alg = self.algebra
        out: Dict[Word, Fraction] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = alg.mul_words(u, v)
                out[w] = out.get(w, 0) + a * b
        return Element(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        base = self
        if n < 0:
            base, n = self.inverse_word(), -n
        out = self.algebra.one()
        for _ in range(n):
            out = out * base
        return out

    def inverse_word(self) -> "Element":
        """Inverse of a single group word."""
        if not self.algebra.is_group or len(self.terms) != 1:
            raise AlgebraError("only single group words are invertible here")
        (w, c), = self.terms.items()
        return Element(self.algebra, {invert_word(w): 1 / c})

    def trace(self) -> "TraceElement":
        return trace_project(self)

    def __str__(self):
        return format_terms(self.sorted_items(), self.algebra.word_str)


class EnvElement(_Linear):
    """Element of ``A (x) A^op``: mapping (left word, right word) -> Fraction.

    The product is ``(a (x) b)(a' (x) b') = aa' (x) b'b``, so the pair acts on a
    bimodule by ``(a (x) b) . m = a m b``.
    """

    __slots__ = ()

    def _sort_key(self, key):
        return (word_key(key[0]), word_key(key[1]))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not self._check(other):
            return NotImplemented
        mw = self.algebra.mul_words
        out: Dict[Tuple[Word, Word], Fraction] = {}
        for (a, b), x in self.terms.items():
            for (a2, b2), y in other.terms.items():
                key = (mw(a, a2), mw(b2, b))
                out[key] = out.get(key, 0) + x * y
        return EnvElement(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def lmul(self, left: Element) -> "EnvElement":
        """Multiply the left slot by ``left`` from the left."""
        return env_from(left, self.algebra.one()) * self

    def rmul(self, right: Element) -> "EnvElement":
        """Multiply the right slot by ``right`` from the right (the outer side)."""
        return env_from(self.algebra.one(), right) * self

    def __str__(self):
        ws = self.algebra.word_str
        return format_terms(self.sorted_items(),
                            lambda k: f"{ws(k[0])} (x) {ws(k[1])}")


def env_from(a: Element, b: Element) -> EnvElement:
    """The pure tensor ``a (x) b`` in the enveloping algebra."""
    if a.algebra != b.algebra:
        raise AlgebraError("factors over different generator sets")
    out = {}
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            out[(u, v)] = out.get((u, v), 0) + x * y
    return EnvElement(a.algebra, out)


def env_one(alg: FreeAlgebra) -> EnvElement:
    return EnvElement(alg, {(EMPTY, EMPTY): Fraction(1)})


def env_multiply(x: EnvElement, y: EnvElement) -> EnvElement:
    return x * y


def algebra_multiply(x: Element, y: Element) -> Element:
    return x * y


class TraceElement(_Linear):
    """Element of ``|A|``: mapping canonical cyclic word -> Fraction."""

    __slots__ = ()

    def __init__(self, algebra, terms):
        canon: Dict[Word, Fraction] = {}
        for w, c in dict(terms).items():
            w = algebra.cyclic(w)
            canon[w] = canon.get(w, 0) + c
        super().__init__(algebra, canon)

    def representative(self) -> Element:
        return Element(self.algebra, self.terms)

    def __str__(self):
        return format_terms(self.sorted_items(),
                            lambda w: "|" + self.algebra.word_str(w) + "|")


class TraceTensor(_Linear):
    """Element of ``|A|^{(x) m}``: mapping m-tuples of cyclic words -> Fraction.

    Arity 2 is the codomain of the divergence maps; ribbon graph operations
    produce arbitrary arity.
    """

    __slots__ = ("arity",)

    def __init__(self, algebra, terms, arity: int = 2):
        canon: Dict[Tuple[Word, ...], Fraction] = {}
        for key, c in dict(terms).items():
            if len(key) != arity:
                raise AlgebraError(f"expected {arity}-tuples, got {key}")
            key = tuple(algebra.cyclic(w) for w in key)
            canon[key] = canon.get(key, 0) + c
        self.arity = arity
        super().__init__(algebra, canon)

    def _new(self, terms):
        return TraceTensor(self.algebra, terms, self.arity)

    def __add__(self, other):
        if isinstance(other, TraceTensor) and other.terms and self.terms \
                and other.arity != self.arity:
            raise AlgebraError("adding trace tensors of different arity")
        if isinstance(other, TraceTensor) and not self.terms:
            return other
        return super().__add__(other)

    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, TraceTensor) and not self.terms and not other.terms:
            return self.algebra == other.algebra
        return super().__eq__(other)

    __hash__ = _Linear.__hash__

    def _sort_key(self, key):
        return tuple(word_key(w) for w in key)

    def flip(self) -> "TraceTensor":
        return self._new({tuple(reversed(k)): v for k, v in self.terms.items()})

    def permute(self, perm: Sequence[int]) -> "TraceTensor":
        """Factor ``i`` of the result is factor ``perm[i]`` of ``self``."""
        return self._new({tuple(k[p] for p in perm): v
                          for k, v in self.terms.items()})

    def __str__(self):
        ws = self.algebra.word_str
        return format_terms(self.sorted_items(),
                            lambda k: " (x) ".join(ws(w) for w in k))


def trace_project(x: Element) -> TraceElement:
    return TraceElement(x.algebra, x.terms)


def env_trace_split(x: EnvElement) -> TraceTensor:
    """``|a (x) b| -> |a| (x) |b|``: left slot first, right slot second."""
    return TraceTensor(x.algebra, x.terms, 2)


def tensor2_equal(x: TraceTensor, y: TraceTensor) -> bool:
    return x == y


def tensor_product(*factors: TraceElement) -> TraceTensor:
    alg = factors[0].algebra
    out = {(): Fraction(1)}
    for f in factors:
        nxt = {}
        for key, c in out.items():
            for w, d in f.terms.items():
                k = key + (w,)
                nxt[k] = nxt.get(k, 0) + c * d
        out = nxt
    return TraceTensor(alg, out, len(factors))


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(items, render) -> str:
    if not items:
        return "0"
    out = []
    for i, (key, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = render(key)
        if mag != 1:
            body = f"{format_coeff(mag)} {body}"
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
