from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from so3five.errors import InconsistencyError
from so3five.field import ONE, SQRT3, QSqrt3
from so3five.matrix import CONST_ENV, PolyMatrix, det
from so3five.poly import MultiPoly, VarEnv
from so3five.representations import (
    RationalQuaternion,
    Rotation3,
    coordinates_to_matrix,
    derive_m5_basis,
    induced_generator,
    inner,
    make_rho3,
    make_rho5,
    matrix_to_coordinates,
    rho5_of_rotation,
    rotation_from_quaternion,
)

from . import oracles

quaternions = st.tuples(*(st.integers(-6, 6) for _ in range(4))).filter(any).map(lambda t: RationalQuaternion(*t))


def test_rho3_entries():
    rho3 = make_rho3()
    assert [rho3["E1"].scalar(1, j) for j in range(3)] == [0, 0, 1]
    assert (rho3["E2"] + rho3["E2"].T).is_zero()


def test_rho5_entries():
    rho5 = make_rho5()
    assert rho5["E1"].scalar(0, 4) == SQRT3
    assert rho5["E3"].scalar(1, 3) == 2


@pytest.mark.parametrize("make, ref", [(make_rho3, oracles.RHO3), (make_rho5, oracles.RHO5)])
def test_matches_independent_transcription(make, ref):
    rep = make()
    for ours, theirs in zip(rep.generators, ref):
        assert sp.simplify(oracles.to_sympy(ours) - theirs) == sp.zeros(rep.dim)


@pytest.mark.parametrize("ref", [oracles.RHO3, oracles.RHO5])
def test_oracle_commutators(ref):
    # oracle side: the commutation relations hold for the transcribed matrices
    for i in range(3):
        a, b, c = ref[i], ref[(i + 1) % 3], ref[(i + 2) % 3]
        assert sp.expand(a * b - b * a - c) == sp.zeros(a.shape[0])


def test_commutators():
    rho3, rho5 = make_rho3(), make_rho5()
    assert rho3[1].commutator(rho3[2]) == rho3[0]
    assert rho3[0].commutator(rho3[1]) == rho3[2]
    assert rho5[2].commutator(rho5[0]) == rho5[1]
    assert rho5[0].commutator(rho5[1]) == rho5[2]
    assert rho3.satisfies_commutation() and rho5.satisfies_commutation()
    assert rho3.is_antisymmetric() and rho5.is_antisymmetric()


def test_corrupted_rho5_detected():
    bad = make_rho5().with_entry(0, 0, 4, 2)
    assert not bad.satisfies_commutation()
    with pytest.raises(InconsistencyError):
        derive_m5_basis(make_rho3(), bad)


def test_basis_orthonormal(basis):
    mats = basis.matrices()
    for i in range(5):
        for j in range(5):
            assert inner(mats[i], mats[j]) == (1 if i == j else 0)
            # plain trace is twice the inner product
            assert (mats[i] @ mats[j]).trace() == (2 if i == j else 0)


def test_basis_reproduces_rho5(basis):
    rho3, rho5 = make_rho3(), make_rho5()
    for k in range(3):
        assert induced_generator(rho3[k], basis) == rho5[k]


def test_basis_is_symmetric_traceless(basis):
    for m in basis.matrices():
        assert m.is_symmetric()
        assert m.trace().is_zero()


def test_basis_deterministic(basis):
    again = derive_m5_basis(make_rho3(), make_rho5())
    assert again.matrices() == basis.matrices()
    assert basis.signs[0] == 1


V = VarEnv(("v1", "v2", "v3", "v4", "v5"))


def test_coordinates_round_trip_symbolic(basis):
    v = list(V.gens())
    a = coordinates_to_matrix(v, basis)
    assert matrix_to_coordinates(a, basis) == v


def test_zero_vector(basis):
    zero = [MultiPoly.zero(V)] * 5
    assert coordinates_to_matrix(zero, basis).matrix().is_zero()


def test_metric_normalization(basis):
    v = list(V.gens())
    a = coordinates_to_matrix(v, basis).matrix()
    expected = sum((x * x for x in v[1:]), v[0] * v[0])
    assert (a @ a).trace() == expected * 2
    assert inner(a, a) == expected


def test_basis_vector_coordinates(basis):
    coords = matrix_to_coordinates(basis[1], basis)
    assert [c.constant_value() for c in coords] == [0, 1, 0, 0, 0]


@given(st.lists(st.fractions(-10, 10, max_denominator=7), min_size=5, max_size=5))
def test_coordinates_round_trip_rational(basis, xs):
    v = [MultiPoly.constant(CONST_ENV, x) for x in xs]
    back = matrix_to_coordinates(coordinates_to_matrix(v, basis), basis)
    assert [b.constant_value() for b in back] == xs


def test_rotation_identity():
    assert rotation_from_quaternion(RationalQuaternion(1, 0, 0, 0)) == Rotation3.identity()


def test_rotation_quarter_turn():
    h = rotation_from_quaternion(RationalQuaternion(1, 1, 0, 0))
    assert h.rows == ((1, 0, 0), (0, 0, -1), (0, 1, 0))


def test_zero_quaternion():
    with pytest.raises(ValueError):
        rotation_from_quaternion(RationalQuaternion(0, 0, 0, 0))


def test_invalid_rotation():
    with pytest.raises(ValueError):
        Rotation3(((Fraction(-1), 0, 0), (0, 1, 0), (0, 0, 1)))


@given(quaternions)
def test_rotation_orthogonal(q):
    m = rotation_from_quaternion(q).matrix()
    assert m.T @ m == PolyMatrix.identity(CONST_ENV, 3)
    assert det(m) == 1


def test_rho5_of_identity(basis):
    assert rho5_of_rotation(Rotation3.identity(), basis) == PolyMatrix.identity(CONST_ENV, 5)


def test_rho5_of_rotation_det(basis):
    r = rho5_of_rotation(rotation_from_quaternion(RationalQuaternion(1, 1, 0, 0)), basis)
    assert oracles.to_sympy(r).det() == 1
    assert r.T @ r == PolyMatrix.identity(CONST_ENV, 5)


def test_homomorphism_example(basis):
    q1, q2 = RationalQuaternion(1, 1, 0, 0), RationalQuaternion(1, 0, 1, 0)
    # quaternion product as the oracle for h1 h2
    h12 = rotation_from_quaternion(q1 * q2)
    h1, h2 = rotation_from_quaternion(q1), rotation_from_quaternion(q2)
    assert h12 == h1 @ h2
    assert rho5_of_rotation(h12, basis) == rho5_of_rotation(h1, basis) @ rho5_of_rotation(h2, basis)


@settings(max_examples=50, deadline=None)
@given(quaternions, quaternions)
def test_homomorphism_property(basis, q1, q2):
    h1, h2 = rotation_from_quaternion(q1), rotation_from_quaternion(q2)
    r = rho5_of_rotation(h1 @ h2, basis)
    assert r == rho5_of_rotation(h1, basis) @ rho5_of_rotation(h2, basis)
    assert r.T @ r == PolyMatrix.identity(CONST_ENV, 5)
