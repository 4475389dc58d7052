"""Connections, the endomorphism c_nabla(f), traces and k-divergences.

Matrix convention
-----------------
Every module here is free with an ordered basis ``beta_1, ..., beta_n`` and an
endomorphism ``mu`` is stored as the matrix ``M`` with
``mu(beta_i) = sum_j M[i][j] beta_j`` (row vectors, scalars on the left).
Consequently the matrix of ``mu o nu`` is ``N @ M``.  :func:`compose` hides
this reversal; everything downstream goes through it.

Two concrete settings are provided.

* :class:`DefaultSetting` -- ``B = A^e``, ``M = Omega^1 A`` with the default
  derivation action ``phi(f) = f (x) id + id (x) f``, ``rho(f) = L_f`` and a
  basis-killing connection (``nabla_W`` on a tensor algebra, ``nabla_C`` on a
  free group algebra).  Traces land in ``|A| (x) |A|``.
* :class:`FreeModuleSetting` -- ``B`` a free tensor algebra, ``M = B^n`` with a
  connection form ``omega`` (n x n one-forms) and ``rho(f)`` acting on
  coordinates, optionally conjugated by a unipotent gauge matrix.  Traces land
  in ``DR^* B``.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from ncdiv.algebra import (AlgebraError, EnvElement, FreeAlgebra,
                           TraceElement, TraceTensor, env_trace_split)
from ncdiv.calculus import (Derivation, DRElement, Form, OneForm, contract,
                            derivation_bracket, dr_project, env_derivation,
                            form_d, form_derivation, form_lie,
                            lie_derivative_basis)


class GenMatrix:
    """Square matrix over a non-commutative ring (EnvElement or Form entries)."""

    __slots__ = ("rows", "zero")

    def __init__(self, rows, zero):
        self.rows = [list(r) for r in rows]
        self.zero = zero
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise AlgebraError("GenMatrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, fn) -> "GenMatrix":
        return GenMatrix([[fn(x) for x in r] for r in self.rows], self.zero)

    def __add__(self, other: "GenMatrix") -> "GenMatrix":
        return GenMatrix([[a + b for a, b in zip(r, s)]
                          for r, s in zip(self.rows, other.rows)], self.zero)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GenMatrix":
        return self.map(lambda x: x.scale(c))

    def __matmul__(self, other: "GenMatrix") -> "GenMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.zero
                for k in range(n):
                    a = self.rows[i][k]
                    if not a:
                        continue
                    b = other.rows[k][j]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GenMatrix(out, self.zero)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, GenMatrix) and self.rows == other.rows

    def diagonal_sum(self):
        acc = self.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)

    __repr__ = __str__


def compose(*endos: GenMatrix) -> GenMatrix:
    """Matrix of ``endos[0] o endos[1] o ... o endos[-1]``."""
    if not endos:
        raise AlgebraError("compose needs at least one endomorphism")
    out = endos[-1]
    for m in reversed(endos[:-1]):
        out = out @ m
    return out


def identity_matrix(n: int, one, zero) -> GenMatrix:
    return GenMatrix([[one if i == j else zero for j in range(n)] for i in range(n)], zero)


# ---------------------------------------------------------------------------
# default derivation action on Omega^1 A


class Connection:
    """A connection together with the module it lives on.

    ``kind`` is ``"nabla_W"`` (tensor algebra, ``nabla(dw) = 0``), ``"nabla_C"``
    (free group algebra, ``nabla((dc) c^-1) = 0``) or ``"free_module"``.
    """

    def __init__(self, kind: str, algebra: FreeAlgebra, omega: Optional[GenMatrix] = None):
        if kind == "nabla_W" and algebra.is_group:
            raise AlgebraError("nabla_W needs a tensor algebra")
        if kind == "nabla_C" and not algebra.is_group:
            raise AlgebraError("nabla_C needs a free group algebra")
        if kind == "free_module":
            if omega is None:
                raise AlgebraError("free_module connection needs a connection form")
            if algebra.is_group:
                raise AlgebraError("free_module connections need a tensor algebra")
        elif kind not in ("nabla_W", "nabla_C"):
            raise AlgebraError(f"unknown connection kind {kind!r}")
        self.kind = kind
        self.algebra = algebra
        self.omega = omega

    @property
    def rank(self) -> int:
        return self.omega.n if self.omega is not None else self.algebra.rank

    def basis_value(self, letter: int) -> OneForm:
        """``nabla`` of a basis element of Omega^1 A; zero for both default kinds."""
        return OneForm(self.algebra, {})

    @classmethod
    def from_json(cls, data, algebra: FreeAlgebra) -> "Connection":
        kind = data.get("kind")
        if kind != "free_module":
            return cls(kind, algebra)
        n = int(data["rank"])
        rows = data["omega"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise AlgebraError("omega must be rank x rank")
        return cls(kind, algebra, GenMatrix(
            [[parse_form(s, algebra) for s in r] for r in rows], Form(algebra, {})))


def make_nabla_W(algebra: FreeAlgebra) -> Connection:
    return Connection("nabla_W", algebra)


def make_nabla_C(algebra: FreeAlgebra) -> Connection:
    return Connection("nabla_C", algebra)


def parse_form(text: str, algebra: FreeAlgebra) -> Form:
    """Parse a form written with ``d<gen>`` letters, e.g. ``"u dv - dv u"``."""
    from ncdiv.parsing import parse_element
    dnames = ["d" + n for n in algebra.names]
    clash = set(dnames) & set(algebra.names)
    if clash:
        raise AlgebraError(f"generator names clash with differentials: {clash}")
    aux = FreeAlgebra("tensor", list(algebra.names) + dnames)
    el = parse_element(text, aux)
    n = algebra.rank
    return Form(algebra, {tuple(x if x <= n else -(x - n) for x in w): c
                          for w, c in el.terms.items()})


class DefaultSetting:
    """Default derivation action on Omega^1 A with a basis-killing connection."""

    def __init__(self, connection: Connection):
        if connection.kind not in ("nabla_W", "nabla_C"):
            raise AlgebraError("DefaultSetting needs nabla_W or nabla_C")
        self.connection = connection
        self.algebra = connection.algebra
        self.zero = EnvElement(self.algebra, {})

    @property
    def rank(self):
        return self.algebra.rank

    def bracket(self, f, g):
        return derivation_bracket(f, g)

    def _rows_of(self, forms: Sequence[OneForm]) -> GenMatrix:
        letters = self.algebra.letters
        return GenMatrix([[om.coord(c) for c in letters] for om in forms], self.zero)

    def lie_matrix(self, f: Derivation) -> GenMatrix:
        """Matrix of ``rho(f) = L_f`` on the basis."""
        return self._rows_of([lie_derivative_basis(f, c) for c in self.algebra.letters])

    def c_matrix(self, f: Derivation) -> GenMatrix:
        """``c(f)(beta) = i_{phi(f)} nabla(beta) - L_f(beta) = -L_f(beta)``."""
        return -self.lie_matrix(f)

    def act_end(self, f: Derivation, m: GenMatrix) -> GenMatrix:
        """``f . mu = [L_f, mu]``."""
        lf = self.lie_matrix(f)
        return m.map(lambda e: env_derivation(f, e)) + m @ lf - lf @ m

    def trace(self, m: GenMatrix) -> TraceTensor:
        return env_trace_split(m.diagonal_sum())

    def act_coeff(self, f: Derivation, v: TraceTensor) -> TraceTensor:
        """``f`` acting on ``|A| (x) |A|`` as ``f (x) id + id (x) f``."""
        out = {}
        for (a, b), c in v.terms.items():
            for w, x in f.apply_word(a).terms.items():
                out[(w, b)] = out.get((w, b), 0) + c * x
            for w, x in f.apply_word(b).terms.items():
                out[(a, w)] = out.get((a, w), 0) + c * x
        return TraceTensor(self.algebra, out, 2)

    def zero_coeff(self) -> TraceTensor:
        return TraceTensor(self.algebra, {}, 2)

    def zero_matrix(self) -> GenMatrix:
        n = self.rank
        return GenMatrix([[self.zero] * n for _ in range(n)], self.zero)

    def iota_curvature(self, f, g) -> GenMatrix:
        """``i_g i_f R``; basis-killing connections on Omega^1 A are flat."""
        return self.zero_matrix()


# ---------------------------------------------------------------------------
# free modules over a free tensor algebra


class ModuleAction:
    """Derivation action on ``B^n``: ``rho(f)(e_i) = sum_j lam(f)[i][j] e_j``.

    With ``gauge = P`` (unipotent, ``P^-1`` computed exactly) the action is
    ``rho(f) = Phi o f o Phi^-1`` for ``Phi(b) = b P``, giving
    ``lam(f) = f(P^-1) P``.  This is a Lie algebra map for every ``P``.
    """

    def __init__(self, algebra: FreeAlgebra, rank: int, gauge: Optional[GenMatrix] = None):
        self.algebra = algebra
        self.rank = rank
        self.gauge = gauge
        self.gauge_inv = unipotent_inverse(gauge) if gauge is not None else None

    def lam(self, f: Derivation) -> GenMatrix:
        zero = Form(self.algebra, {})
        if self.gauge is None:
            return GenMatrix([[zero] * self.rank for _ in range(self.rank)], zero)
        return self.gauge_inv.map(lambda x: form_derivation(f, x)) @ self.gauge


def unipotent_inverse(p: GenMatrix) -> GenMatrix:
    n = p.n
    one = Form.from_element(p.zero.algebra.one())
    ident = identity_matrix(n, one, p.zero)
    nil = p - ident
    for i in range(n):
        for j in range(i + 1):
            if p.rows[i][j] != (one if i == j else p.zero):
                raise AlgebraError("gauge matrix must be upper unitriangular")
    out = ident
    power = ident
    for k in range(1, n):
        power = power @ (-nil)
        out = out + power
    return out


class FreeModuleSetting:
    """Free module ``B^n`` over a free tensor algebra with connection form ``omega``.

    ``nabla(sum b_i e_i) = sum db_i e_i + b_i omega[i][j] e_j``; its curvature
    is ``R = d omega - omega @ omega`` in the row convention.
    """

    def __init__(self, connection: Connection, action: Optional[ModuleAction] = None):
        if connection.kind != "free_module":
            raise AlgebraError("FreeModuleSetting needs a free_module connection")
        self.connection = connection
        self.algebra = connection.algebra
        self.omega = connection.omega
        self.zero = Form(self.algebra, {})
        self.action = action or ModuleAction(self.algebra, self.omega.n)

    @property
    def rank(self):
        return self.omega.n

    def bracket(self, f, g):
        return derivation_bracket(f, g)

    def c_matrix(self, f: Derivation) -> GenMatrix:
        """``c(f) = i_f omega - lam(f)``."""
        return self.omega.map(lambda x: contract(f, x)) - self.action.lam(f)

    def act_end(self, f: Derivation, m: GenMatrix) -> GenMatrix:
        """``[rho(f), mu] = f(M) + M lam - lam M``."""
        lam = self.action.lam(f)
        return m.map(lambda x: form_derivation(f, x)) + m @ lam - lam @ m

    def trace(self, m: GenMatrix) -> DRElement:
        return dr_project(m.diagonal_sum())

    def act_coeff(self, f: Derivation, v: DRElement) -> DRElement:
        return dr_project(form_lie(f, v.representative()))

    def zero_coeff(self) -> DRElement:
        return DRElement(self.algebra, {})

    def zero_matrix(self) -> GenMatrix:
        n = self.rank
        return GenMatrix([[self.zero] * n for _ in range(n)], self.zero)

    def curvature(self) -> GenMatrix:
        return curvature(self.connection)

    def iota_curvature(self, f, g) -> GenMatrix:
        """``iota(R)(f ^ g) = i_g i_f R``."""
        return self.curvature().map(lambda x: contract(g, contract(f, x)))

    def covariant_derivative(self, xi: GenMatrix, degree: int) -> GenMatrix:
        """``D xi = d xi + (-1)^q xi omega - omega xi`` for ``xi`` of degree ``q``."""
        sign = -1 if degree % 2 else 1
        return xi.map(form_d) + (xi @ self.omega).scale(sign) - self.omega @ xi


def curvature(connection: Connection) -> GenMatrix:
    if connection.kind != "free_module":
        raise AlgebraError("curvature is computed for free-module connections; "
                           "nabla_W and nabla_C are flat")
    om = connection.omega
    return om.map(form_d) - om @ om


def is_flat(connection: Connection) -> bool:
    if connection.kind in ("nabla_W", "nabla_C"):
        return True
    return curvature(connection).is_zero()


def setting_for(connection: Connection, action: Optional[ModuleAction] = None):
    if connection.kind == "free_module":
        return FreeModuleSetting(connection, action)
    if action is not None:
        raise AlgebraError("the default action is fixed for nabla_W / nabla_C")
    return DefaultSetting(connection)


def c_matrix(setting, f: Derivation) -> GenMatrix:
    return setting.c_matrix(f)


def trace_endo(setting, m: GenMatrix):
    return setting.trace(m)


def div_k_matrices(setting, mats: Sequence[GenMatrix]):
    if not mats:
        raise AlgebraError("Div_k needs k >= 1")
    return setting.trace(compose(*mats))


def div_k(setting, fs: Sequence[Derivation]):
    """``Tr(c(f_1) o ... o c(f_k))``."""
    if not fs:
        raise AlgebraError("Div_k needs k >= 1")
    return div_k_matrices(setting, [setting.c_matrix(f) for f in fs])


def delta_k(setting, psi: Callable[[TraceElement], Derivation], xs: Sequence[TraceElement]):
    """``Div_k(psi(x_1), ..., psi(x_k))``."""
    return div_k(setting, [psi(x) for x in xs])
