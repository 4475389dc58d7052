"""Adjoint action of a derivation on a connection over a free module.

For ``M = B^n`` with connection form ``omega`` and lift ``lambda[f] = rho(f)``
acting by ``rho(f)(e_i) = sum_j lam[i][j] e_j``, the adjoint action

    ad_f nabla = (L_f (x) id + id (x) lambda[f]) o nabla - nabla o lambda[f]

is ``B``-linear, so it is a matrix of one-forms.  On the basis it reads
``L_f(omega) + omega lam - d lam - lam omega``.
"""

from __future__ import annotations

from typing import Optional

from ncdiv.algebra import AlgebraError
from ncdiv.calculus import (Derivation, DRElement, contract, de_rham_d,
                            derivation_bracket, dr_project, form_d, form_lie)
from ncdiv.divergence import FreeModuleSetting, GenMatrix


def adjoint_eval(setting: FreeModuleSetting, f: Derivation,
                 perturbation: Optional[GenMatrix] = None) -> GenMatrix:
    """Matrix of ``ad_f nabla``; ``perturbation`` is added to the lift's matrix."""
    omega = setting.omega
    lam = setting.action.lam(f)
    if perturbation is not None:
        lam = lam + perturbation
    return omega.map(lambda x: form_lie(f, x)) + omega @ lam - lam.map(form_d) - lam @ omega


def adjoint_trace(m: GenMatrix) -> DRElement:
    return dr_project(m.diagonal_sum())


def prop_a3_defect(setting: FreeModuleSetting, f: Derivation) -> GenMatrix:
    """``ad_f nabla - (D(c(f)) + i_f R)``."""
    c = setting.c_matrix(f)
    rhs = setting.covariant_derivative(c, 0) + setting.curvature().map(lambda x: contract(f, x))
    return adjoint_eval(setting, f) - rhs


def trace_curvature(setting: FreeModuleSetting) -> DRElement:
    return dr_project(setting.curvature().diagonal_sum())


def is_trace_flat(setting: FreeModuleSetting) -> bool:
    return not trace_curvature(setting)


def cor_a4_check(setting: FreeModuleSetting, f: Derivation) -> dict:
    """``Tr(ad_f nabla) = d(Div_1(f))`` in DR^1, asserted only when ``Tr(R) = 0``."""
    trace_flat = is_trace_flat(setting)
    lhs = adjoint_trace(adjoint_eval(setting, f))
    div1 = setting.trace(setting.c_matrix(f))
    rhs = de_rham_d(div1)
    return {"trace_flat": trace_flat, "lhs": lhs, "rhs": rhs,
            "ok": (lhs == rhs) if trace_flat else None}


def prop_a5_defect(setting: FreeModuleSetting, f: Derivation, g: Derivation) -> GenMatrix:
    """``i_g(ad_f nabla) - ([lambda[f], c(g)] - c([f, g]))`` with no homotopy term."""
    lhs = adjoint_eval(setting, f).map(lambda x: contract(g, x))
    rhs = setting.act_end(f, setting.c_matrix(g)) - setting.c_matrix(derivation_bracket(f, g))
    return lhs - rhs


def lift_independence_check(setting: FreeModuleSetting, f: Derivation,
                            mu: Optional[GenMatrix] = None) -> dict:
    """Compare ``Tr(ad_f nabla)`` for the lift and for the lift plus ``mu``.

    With the identity resolution the lift of ``rho(f)`` is ``rho(f)`` itself,
    so only ``mu = 0`` is an admissible change; any other ``mu`` shifts the
    trace by ``-d Tr(mu)``, which is reported alongside.
    """
    base = adjoint_trace(adjoint_eval(setting, f))
    if mu is None:
        mu = setting.zero_matrix()
    if mu.n != setting.rank:
        raise AlgebraError("perturbation has the wrong size")
    moved = adjoint_trace(adjoint_eval(setting, f, mu))
    expected = -de_rham_d(dr_project(mu.diagonal_sum()))
    return {"equal": base == moved, "difference": moved - base,
            "matches_expected_shift": (moved - base) == expected,
            "admissible": mu.is_zero()}
