import json
from pathlib import Path

import pytest
import sympy as sp

from so3five.chern_weil import (
    CURVATURE_ENV,
    NOT_PROPORTIONAL,
    char_poly,
    curvature_matrix,
    lambda_coefficient_rho5,
    pontryagin_ratio,
    proportionality,
    r_squared,
)
from so3five.errors import InconsistencyError
from so3five.field import SQRT3
from so3five.poly import MultiPoly, parse_poly
from so3five.representations import make_rho3, make_rho5

from . import oracles

GOLDEN = Path(__file__).parent / "golden"
lam, r1, r2, r3 = CURVATURE_ENV.gens()


def from_sympy(poly: sp.Poly) -> MultiPoly:
    return parse_poly(str(poly.as_expr()).replace("sqrt(3)", "s3"), CURVATURE_ENV)


def test_curvature_rho3():
    k = curvature_matrix(make_rho3())
    assert k.is_antisymmetric()
    assert k[1, 2] == r1 and k[0, 2] == r2 and k[0, 1] == r3
    assert k[2, 1] == -r1


def test_curvature_rho5_entry():
    k = curvature_matrix(make_rho5())
    assert k[0, 4] == r1 * SQRT3
    assert k.substitute({"r1": 0, "r2": 0, "r3": 0}).is_zero()


def test_char_poly_rho3():
    rep = char_poly(make_rho3())
    assert rep.char_poly == lam**3 + lam * r_squared()
    assert len(rep.char_poly) == 4
    assert rep.ratio_to_base == 1


def test_char_poly_rho5():
    rep = char_poly(make_rho5())
    assert rep.lam_coefficient(5) == 1
    assert rep.lam_coefficient(4).is_zero()
    assert rep.lam_coefficient(3) == r_squared() * 5
    assert rep.lam_coefficient(2).is_zero()
    assert rep.lam_coefficient(0).is_zero()
    assert rep.p1_form.is_homogeneous(2)


@pytest.mark.parametrize("make, ref", [(make_rho3, oracles.RHO3), (make_rho5, oracles.RHO5)])
def test_char_poly_against_sympy(make, ref):
    assert char_poly(make()).char_poly == from_sympy(oracles.char_poly(ref))


def test_odd_r_forms_vanish():
    for mono, _ in char_poly(make_rho5()).char_poly.items():
        assert sum(mono[1:]) % 2 == 0


def test_p1_forms_invariant():
    for rep in (make_rho3(), make_rho5()):
        p1 = char_poly(rep).p1_form
        vals = {p1.evaluate({"lam": 0, "r1": a, "r2": b, "r3": c}) for a, b, c in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]}
        assert len(vals) == 1
        assert proportionality(p1, r_squared()) is not None


def test_ratio():
    assert pontryagin_ratio() == 5
    assert pontryagin_ratio(make_rho3(), make_rho3()) == 1
    assert pontryagin_ratio(make_rho5(), make_rho5()) == 1


def test_specialization():
    point = {"lam": 0, "r1": 1, "r2": 0, "r3": 0}
    assert char_poly(make_rho5()).p1_form.evaluate(point) == 5
    assert char_poly(make_rho3()).p1_form.evaluate(point) == 1


def test_ratio_not_proportional():
    bad = make_rho5().with_entry(0, 0, 4, 2)
    rep = char_poly(bad)
    assert rep.ratio_to_base == NOT_PROPORTIONAL
    with pytest.raises(InconsistencyError):
        pontryagin_ratio(bad)


def test_lambda_one_coefficient():
    q = lambda_coefficient_rho5()
    assert q.is_homogeneous(4)
    vals = [q.evaluate({"lam": 0, "r1": a, "r2": b, "r3": c}) for a, b, c in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    assert vals[0] == vals[1] == vals[2]
    golden = (GOLDEN / "rho5_lambda1.txt").read_text().strip()
    assert str(q) == golden
    assert vals[0] == 4
    # whole quartic depends on |r|^2 only
    assert q == r_squared() * r_squared() * 4


def test_report_json():
    doc = json.loads(char_poly(make_rho5()).to_json())
    assert doc == {
        "dim": 5,
        "char_poly": str(char_poly(make_rho5()).char_poly),
        "p1_form": "5*r1^2 + 5*r2^2 + 5*r3^2",
        "ratio_to_base": 5,
    }
