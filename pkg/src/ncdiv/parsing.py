"""Recursive-descent parser for algebra, trace and tensor expressions.

Grammar (whitespace is insignificant except to separate generator names)::

    sum    := [+|-] tprod ((+|-) tprod)*
    tprod  := prod ("(x)" prod)*
    prod   := atom+
    atom   := NUMBER ["/" NUMBER]
            | GEN ["^" ["-"] INT]
            | "(" sum ")" ["^" INT]
            | "[" sum "," sum "]"          commutator xy - yx
            | "|" sum "|"                  trace-space marker

``⊗``, ``⁻¹`` and ``−`` are accepted as spellings of ``(x)``, ``^-1`` and ``-``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Tuple

from ncdiv.algebra import (AlgebraError, Element, FreeAlgebra, TraceElement,
                           TraceTensor, Word, invert_word)


class ParseError(AlgebraError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


_SUBST = (("⊗", "(x)"), ("⁻¹", "^-1"), ("−", "-"), ("·", " "))


class _Tensor:
    """Intermediate value: tensor of fixed arity with word tuples as keys."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Dict[Tuple[Word, ...], Fraction]):
        self.arity = arity
        self.terms = terms


class _Parser:
    def __init__(self, text: str, alg: FreeAlgebra):
        self.src = text
        for a, b in _SUBST:
            text = text.replace(a, b)
        self.text = text
        self.alg = alg
        self.pos = 0
        self.names = sorted(alg.names, key=len, reverse=True)

    def error(self, msg):
        raise ParseError(msg, self.src, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            self.error(f"expected {s!r}")

    # -- arithmetic on intermediate tensors -----------------------------
    def add(self, x: _Tensor, y: _Tensor, sign=1) -> _Tensor:
        if x.arity != y.arity and x.terms and y.terms:
            self.error("adding terms with different numbers of tensor factors")
        arity = x.arity if x.terms else y.arity
        out = dict(x.terms)
        for k, v in y.terms.items():
            out[k] = out.get(k, 0) + sign * v
        return _Tensor(arity, {k: v for k, v in out.items() if v})

    def mul(self, x: _Tensor, y: _Tensor) -> _Tensor:
        if x.arity != 1 or y.arity != 1:
            self.error("juxtaposition of tensor-valued factors")
        mw = self.alg.mul_words
        out = {}
        for (u,), a in x.terms.items():
            for (v,), b in y.terms.items():
                k = (mw(u, v),)
                out[k] = out.get(k, 0) + a * b
        return _Tensor(1, {k: v for k, v in out.items() if v})

    def tensor(self, x: _Tensor, y: _Tensor) -> _Tensor:
        out = {}
        for u, a in x.terms.items():
            for v, b in y.terms.items():
                k = u + v
                out[k] = out.get(k, 0) + a * b
        return _Tensor(x.arity + y.arity, out)

    # -- grammar --------------------------------------------------------
    def parse_sum(self) -> _Tensor:
        sign = -1 if self.eat("-") else (self.eat("+") and 1) or 1
        acc = self.parse_tprod()
        if sign < 0:
            acc = _Tensor(acc.arity, {k: -v for k, v in acc.terms.items()})
        while True:
            if self.eat("+"):
                acc = self.add(acc, self.parse_tprod())
            elif self.eat("-"):
                acc = self.add(acc, self.parse_tprod(), -1)
            else:
                return acc

    def parse_tprod(self) -> _Tensor:
        acc = self.parse_prod()
        while self.eat("(x)"):
            acc = self.tensor(acc, self.parse_prod())
        return acc

    def at_atom(self) -> bool:
        self.skip()
        if self.pos >= len(self.text):
            return False
        ch = self.text[self.pos]
        if self.text.startswith("(x)", self.pos):
            return False
        if ch.isdigit() or ch in "([":
            return True
        if ch == "|":
            return not self.in_bars
        return any(self.text.startswith(n, self.pos) for n in self.names)

    in_bars = False

    def parse_prod(self) -> _Tensor:
        if not self.at_atom():
            self.error("expected a term")
        acc = self.parse_atom()
        while self.at_atom():
            acc = self.mul(acc, self.parse_atom())
        return acc

    def parse_int(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def parse_atom(self) -> _Tensor:
        self.skip()
        t = self.text
        if t[self.pos].isdigit():
            num = Fraction(self.parse_int())
            if self.eat("/"):
                den = self.parse_int()
                if den == 0:
                    self.error("zero denominator")
                num /= den
            return _Tensor(1, {((),): num})
        if self.eat("("):
            inner = self.parse_sum()
            self.expect(")")
            return self.power(inner)
        if self.eat("["):
            x = self.parse_sum()
            self.expect(",")
            y = self.parse_sum()
            self.expect("]")
            return self.add(self.mul(x, y), self.mul(y, x), -1)
        if self.eat("|"):
            self.in_bars = True
            inner = self.parse_sum()
            self.in_bars = False
            self.expect("|")
            return inner
        for name in self.names:
            if t.startswith(name, self.pos):
                self.pos += len(name)
                letter = self.alg.index[name]
                return self.power(_Tensor(1, {((letter,),): Fraction(1)}))
        self.error("unknown generator")

    def power(self, base: _Tensor) -> _Tensor:
        if not self.eat("^"):
            return base
        neg = self.eat("-")
        n = self.parse_int()
        if neg:
            if not self.alg.is_group:
                self.error("inverses need a group algebra")
            if len(base.terms) != 1:
                self.error("only single words can be inverted")
            ((w,), c), = base.terms.items()
            if c not in (1, -1):
                self.error("only words with coefficient +-1 can be inverted")
            base = _Tensor(1, {(invert_word(w),): c})
        out = _Tensor(1, {((),): Fraction(1)})
        for _ in range(n):
            out = self.mul(out, base)
        return out

    def parse(self) -> _Tensor:
        if not self.text.strip():
            self.error("empty expression")
        if self.text.strip() == "0":
            self.pos = len(self.text)
            return _Tensor(0, {})
        val = self.parse_sum()
        self.skip()
        if self.pos != len(self.text):
            if self.text[self.pos].isalpha():
                self.error("unknown generator")
            self.error("unexpected input")
        return val


def _parse(text: str, alg: FreeAlgebra) -> _Tensor:
    return _Parser(text, alg).parse()


def parse_element(text: str, alg: FreeAlgebra) -> Element:
    val = _parse(text, alg)
    if val.terms and val.arity != 1:
        raise AlgebraError(f"{text!r} is a tensor, expected an algebra element")
    return alg.element({k[0]: v for k, v in val.terms.items()})


def parse_trace(text: str, alg: FreeAlgebra) -> TraceElement:
    return parse_element(text, alg).trace()


def parse_tensor(text: str, alg: FreeAlgebra, arity: int = 2) -> TraceTensor:
    val = _parse(text, alg)
    if val.terms and val.arity != arity:
        raise AlgebraError(f"{text!r} has {val.arity} tensor factors, expected {arity}")
    return TraceTensor(alg, val.terms, arity)
