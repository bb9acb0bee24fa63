import itertools

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from so3five.errors import StructureError
from so3five.field import ONE, ZERO, QSqrt3
from so3five.matrix import CONST_ENV, PolyMatrix
from so3five.poly import MultiPoly
from so3five.representations import RationalQuaternion, Rotation3, rotation_from_quaternion
from so3five.upsilon import (
    UpsilonTensor,
    V_ENV,
    build_upsilon,
    defining_identity_holds,
    format_upsilon,
    is_invariant_under,
    recover_metric,
    solve_normalization,
    symbolic_vector,
    upsilon_endomorphism,
    verify_defining_identity,
    verify_equivariance,
)

from . import oracles

HALF_S3 = QSqrt3(0, "1/2")


def test_solved_normalization(basis):
    assert solve_normalization(basis) == HALF_S3


def test_cubic_on_basis_vector_is_three_c_det(basis, ups):
    # Cayley-Hamilton for trace-free A: tr(A^3) = 3 det A
    a1 = oracles.to_sympy(basis.matrices()[0])
    det_a1 = sp.nsimplify(a1.det())
    c = ups.normalization
    expected = 3 * (sp.Rational(c.a) + sp.Rational(c.b) * oracles.S3) * det_a1
    got = ups[0, 0, 0]
    assert sp.simplify(sp.Rational(got.a) + sp.Rational(got.b) * oracles.S3 - expected) == 0


def test_total_symmetry(ups):
    assert ups[0, 1, 2] == ups[2, 0, 1] == ups[1, 0, 2]
    for ijk in itertools.product(range(5), repeat=3):
        for p in itertools.permutations(ijk):
            assert ups[p] == ups[ijk]
    assert ups.is_totally_symmetric()


def test_trace_free(ups):
    assert ups.traces() == [ZERO] * 5


def test_defining_identity(ups):
    assert all(r.is_zero() for r in verify_defining_identity(ups))


def test_negative_normalization_also_works(basis, ups):
    neg = build_upsilon(basis, -ups.normalization)
    assert defining_identity_holds(neg)
    assert neg != ups


def test_double_normalization_fails(basis, ups):
    res = verify_defining_identity(build_upsilon(basis, ups.normalization * 2))
    assert any(not r.is_zero() for r in res)


def test_zero_normalization_rejected(basis):
    with pytest.raises(ValueError):
        build_upsilon(basis, 0)


@pytest.mark.parametrize("k", range(5))
def test_identity_at_unit_vectors(ups, k):
    point = {f"v{i + 1}": int(i == k) for i in range(5)}
    res = [r.evaluate(point) for r in verify_defining_identity(ups)]
    assert res == [ZERO] * 5
    # direct evaluation: Y_e(Y_e e) = e
    e = [MultiPoly.constant(CONST_ENV, int(i == k)) for i in range(5)]
    ye = upsilon_endomorphism(ups, e)
    assert [x.constant_value() for x in ye.apply(ye.apply(e))] == [int(i == k) for i in range(5)]


def test_endomorphism(ups):
    v = symbolic_vector()
    yv = upsilon_endomorphism(ups, v)
    assert yv.trace().is_zero()
    assert (yv - yv.T).is_zero()
    assert upsilon_endomorphism(ups, [MultiPoly.zero(V_ENV)] * 5).is_zero()


def test_endomorphism_linear(ups):
    v = symbolic_vector()
    w = [x * 3 + 1 for x in v]
    lhs = upsilon_endomorphism(ups, w)
    rhs = upsilon_endomorphism(ups, v).scale(3) + upsilon_endomorphism(ups, [MultiPoly.constant(V_ENV, 1)] * 5)
    assert lhs == rhs


def test_equivariance_examples(basis, ups):
    assert verify_equivariance(ups, Rotation3.identity(), basis)
    assert verify_equivariance(ups, rotation_from_quaternion(RationalQuaternion(1, 1, 0, 0)), basis)


def test_reflection_not_a_symmetry(ups):
    refl = PolyMatrix.constant([[-1 if i == j == 0 else int(i == j) for j in range(5)] for i in range(5)])
    assert not is_invariant_under(ups, refl)


def test_coordinate_permutation_not_a_symmetry(ups):
    # orthogonal, det 1, but not in the image of SO(3)
    perm = [1, 2, 0, 3, 4]
    p = PolyMatrix.constant([[int(perm[i] == j) for j in range(5)] for i in range(5)])
    assert not is_invariant_under(ups, p)


@settings(max_examples=25, deadline=None)
@given(st.tuples(*(st.integers(-7, 7) for _ in range(4))).filter(any))
def test_equivariance_property(basis, ups, q):
    assert verify_equivariance(ups, rotation_from_quaternion(RationalQuaternion(*q)), basis)


def test_recover_metric(ups):
    g = recover_metric(ups)
    assert g.is_identity()


@pytest.mark.parametrize("s", [2, -3, QSqrt3("1/2")])
def test_recover_metric_scaled(ups, s):
    g = recover_metric(ups.scaled(s))
    s = QSqrt3.coerce(s)
    assert g.gram == PolyMatrix.identity(CONST_ENV, 5).scale(s * s)


def test_recover_metric_zero_tensor():
    zero = UpsilonTensor(tuple(tuple(tuple(ZERO for _ in range(5)) for _ in range(5)) for _ in range(5)), ONE)
    with pytest.raises(StructureError):
        recover_metric(zero)


def test_recover_metric_not_proportional():
    comps = [[[ZERO] * 5 for _ in range(5)] for _ in range(5)]
    comps[0][0][1] = comps[0][1][0] = comps[1][0][0] = ONE
    t = UpsilonTensor(tuple(tuple(tuple(r) for r in p) for p in comps), ONE)
    with pytest.raises(StructureError):
        recover_metric(t)


def test_format_is_permutation_closed(ups):
    text = format_upsilon(ups)
    assert text.splitlines()[0] == "# normalization c = 1/2*s3"
    entries = {}
    for line in text.splitlines()[1:]:
        idx, val = line.split(" : ")
        entries[tuple(int(x) for x in idx.split())] = val
    for ijk, val in entries.items():
        for p in itertools.permutations(ijk):
            assert entries[p] == val
    assert format_upsilon(ups) == text
