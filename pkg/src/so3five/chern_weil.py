"""Characteristic polynomials of the formal so(3) curvature and the first
Pontryagin form in each representation.

The curvature 2-form ``K = r1 E1 + r2 E2 + r3 E3`` is modelled with commuting
polynomial variables r1, r2, r3, which is exact for the even-degree forms
that enter p1.  Pontryagin representatives are bare coefficients of
``det(lam I + K)``; the usual ``1/(2 pi)^2`` factor is dropped since only the
ratio between representations matters here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistencyError
from .matrix import PolyMatrix
from .poly import MultiPoly, VarEnv
from .representations import Representation, make_rho3, make_rho5

CURVATURE_ENV = VarEnv(("lam", "r1", "r2", "r3"))
R_NAMES = ("r1", "r2", "r3")

NOT_PROPORTIONAL = "not proportional"


def curvature_matrix(rep: Representation) -> PolyMatrix:
    env = CURVATURE_ENV
    acc = PolyMatrix.zeros(env, rep.dim)
    for name, gen in zip(R_NAMES, rep.generators):
        acc = acc + gen.embed(env).scale(MultiPoly.var(env, name))
    return acc


def r_squared() -> MultiPoly:
    r1, r2, r3 = (MultiPoly.var(CURVATURE_ENV, n) for n in R_NAMES)
    return r1 * r1 + r2 * r2 + r3 * r3


def proportionality(form: MultiPoly, base: MultiPoly) -> Fraction | None:
    """The rational k with ``form == k * base``, or None."""
    if base.is_zero():
        return None
    mono, c = next(iter(base.items()))
    k = form.coefficient(mono) / c
    if not k.is_rational() or form != base * k:
        return None
    return k.a


@dataclass(frozen=True)
class CharPolyReport:
    rep_dim: int
    char_poly: MultiPoly
    p1_form: MultiPoly
    ratio_to_base: int | str

    def lam_coefficient(self, power: int) -> MultiPoly:
        return self.char_poly.coeff_of("lam", power)

    def to_dict(self) -> dict:
        return {
            "dim": self.rep_dim,
            "char_poly": str(self.char_poly),
            "p1_form": str(self.p1_form),
            "ratio_to_base": self.ratio_to_base,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _ratio(form: MultiPoly, base: MultiPoly) -> int | str:
    k = proportionality(form, base)
    if k is None or k.denominator != 1:
        return NOT_PROPORTIONAL
    return int(k)


def char_poly(rep: Representation, base: Representation | None = None) -> CharPolyReport:
    """``det(lam I + K)`` with ``K`` the formal curvature in ``rep``.

    The p1 form is the coefficient of ``lam^(dim-2)``.  ``ratio_to_base``
    compares it with the p1 form of ``base`` (rho3 by default).
    """
    k = curvature_matrix(rep)
    lam = MultiPoly.var(CURVATURE_ENV, "lam")
    full = (PolyMatrix.identity(CURVATURE_ENV, rep.dim).scale(lam) + k).det()
    p1 = full.coeff_of("lam", rep.dim - 2)
    if base is None:
        base = make_rho3()
    if base is rep or (base.dim == rep.dim and base.generators == rep.generators):
        base_p1 = p1
    else:
        bk = curvature_matrix(base)
        base_full = (PolyMatrix.identity(CURVATURE_ENV, base.dim).scale(lam) + bk).det()
        base_p1 = base_full.coeff_of("lam", base.dim - 2)
    return CharPolyReport(rep.dim, full, p1, _ratio(p1, base_p1))


def pontryagin_ratio(rep: Representation | None = None, base: Representation | None = None) -> int:
    """Integer k with ``p1(rep) = k p1(base)``; for rho5 against rho3 this is 5."""
    rep = rep or make_rho5()
    base = base or make_rho3()
    report = char_poly(rep, base)
    if report.ratio_to_base == NOT_PROPORTIONAL:
        raise InconsistencyError(
            f"p1 form {report.p1_form} of the dim-{rep.dim} representation is not an integer"
            f" multiple of the base form"
        )
    return int(report.ratio_to_base)


def lambda_coefficient_rho5(rep: Representation | None = None) -> MultiPoly:
    """Coefficient of ``lam^1`` in ``det(lam I + K)`` for rho5: a quartic in r."""
    return char_poly(rep or make_rho5()).lam_coefficient(1)
