"""The totally symmetric trace-free cubic tensor of the irreducible SO(3)
structure, built from the cubic invariant of symmetric trace-free matrices.

Components are ``c * tr(A_i A_j A_k)`` in an orthonormal basis of the matrix
model.  For trace-free 3x3 ``A`` Cayley-Hamilton gives ``tr(A^3) = 3 det A``,
so this is the polarization of the determinant up to the constant ``c``; the
constant is solved for so that ``Y_v(Y_v v) = |v|^2 v`` holds identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InconsistencyError, ShapeError, StructureError
from .field import ONE, ZERO, QSqrt3, Scalar
from .matrix import PolyMatrix, det
from .poly import MultiPoly, VarEnv
from .representations import M5Basis, Rotation3, derive_m5_basis, rho5_of_rotation

V_ENV = VarEnv(("v1", "v2", "v3", "v4", "v5"))

Components = tuple[tuple[tuple[QSqrt3, ...], ...], ...]


@dataclass(frozen=True)
class UpsilonTensor:
    components: Components
    normalization: QSqrt3

    def __getitem__(self, ijk: tuple[int, int, int]) -> QSqrt3:
        i, j, k = ijk
        return self.components[i][j][k]

    @property
    def dim(self) -> int:
        return len(self.components)

    def scaled(self, s: Scalar) -> UpsilonTensor:
        s = QSqrt3.coerce(s)
        comps = tuple(tuple(tuple(x * s for x in row) for row in plane) for plane in self.components)
        return UpsilonTensor(comps, self.normalization * s)

    def is_totally_symmetric(self) -> bool:
        n = self.dim
        for ijk in itertools.combinations_with_replacement(range(n), 3):
            ref = self[ijk]
            if any(self[p] != ref for p in itertools.permutations(ijk)):
                return False
        return True

    def traces(self) -> list[QSqrt3]:
        """``sum_i Y_iik`` for each k."""
        n = self.dim
        out = []
        for k in range(n):
            acc = ZERO
            for i in range(n):
                acc = acc + self[i, i, k]
            out.append(acc)
        return out

    def is_trace_free(self) -> bool:
        return all(t.is_zero() for t in self.traces())

    def nonzero_components(self) -> list[tuple[tuple[int, int, int], QSqrt3]]:
        n = self.dim
        return [
            ((i, j, k), self[i, j, k])
            for i in range(n) for j in range(n) for k in range(n)
            if self[i, j, k]
        ]


@dataclass(frozen=True)
class Metric5:
    gram: PolyMatrix

    def is_identity(self) -> bool:
        return self.gram == PolyMatrix.identity(self.gram.env, self.gram.rows)


def _unit_components(basis: M5Basis) -> list[list[list[QSqrt3]]]:
    mats = basis.matrices()
    n = len(mats)
    # every entry computed independently so symmetry is checked, not imposed
    pairs = [[mats[i] @ mats[j] for j in range(n)] for i in range(n)]
    return [
        [[(pairs[i][j] @ mats[k]).trace().constant_value() for k in range(n)] for j in range(n)]
        for i in range(n)
    ]


def build_upsilon(basis: M5Basis | None = None, c: Scalar | None = None) -> UpsilonTensor:
    """``Y_ijk = c tr(A_i A_j A_k)``; ``c`` defaults to the solved normalization."""
    basis = basis or derive_m5_basis()
    if c is None:
        c = solve_normalization(basis)
    c = QSqrt3.coerce(c)
    if not c:
        raise ValueError("normalization constant must be nonzero")
    comps = _unit_components(basis)
    frozen = tuple(tuple(tuple(x * c for x in row) for row in plane) for plane in comps)
    return UpsilonTensor(frozen, c)


def symbolic_vector(env: VarEnv = V_ENV) -> list[MultiPoly]:
    return list(env.gens())


def upsilon_endomorphism(t: UpsilonTensor, v: Sequence[MultiPoly]) -> PolyMatrix:
    """``(Y_v)_jk = sum_i v_i Y_ijk``."""
    n = t.dim
    if len(v) != n:
        raise ShapeError(f"vector of length {len(v)} for a rank-{n} tensor")
    env = v[0].env

    def entry(j: int, k: int) -> MultiPoly:
        acc = MultiPoly.zero(env)
        for i in range(n):
            c = t[i, j, k]
            if c and v[i]:
                acc = acc + v[i] * c
        return acc

    return PolyMatrix.build(env, n, n, entry)


def square_norm(v: Sequence[MultiPoly]) -> MultiPoly:
    acc = MultiPoly.zero(v[0].env)
    for x in v:
        acc = acc + x * x
    return acc


def _cubed(t: UpsilonTensor, v: Sequence[MultiPoly]) -> list[MultiPoly]:
    yv = upsilon_endomorphism(t, v)
    return yv.apply(yv.apply(list(v)))


def verify_defining_identity(t: UpsilonTensor, env: VarEnv = V_ENV) -> list[MultiPoly]:
    """Residual ``Y_v(Y_v v) - g(v,v) v`` with symbolic v; zero iff the identity holds."""
    v = symbolic_vector(env)
    g = square_norm(v)
    return [w - g * x for w, x in zip(_cubed(t, v), v)]


def defining_identity_holds(t: UpsilonTensor) -> bool:
    return all(r.is_zero() for r in verify_defining_identity(t))


def solve_normalization(basis: M5Basis | None = None) -> QSqrt3:
    """The positive constant c making ``c tr(A_i A_j A_k)`` satisfy the cubic identity.

    With ``c`` symbolic the residual is ``c^2 P(v) - |v|^2 v``; every monomial
    coefficient must vanish, which pins ``c^2``.  Of the two roots the one with
    positive value is returned.
    """
    basis = basis or derive_m5_basis()
    unit = build_upsilon(basis, ONE)
    v = symbolic_vector()
    p = _cubed(unit, v)
    g = square_norm(v)
    target = [g * x for x in v]
    c_squared: QSqrt3 | None = None
    for pk, qk in zip(p, target):
        for mono in set(pk.terms) | set(qk.terms):
            a, b = pk.coefficient(mono), qk.coefficient(mono)
            if not a:
                if b:
                    raise InconsistencyError(f"monomial {mono}: cubic term vanishes but |v|^2 v does not")
                continue
            ratio = b / a
            if c_squared is None:
                c_squared = ratio
            elif ratio != c_squared:
                raise InconsistencyError(f"incompatible constraints on c^2: {c_squared} vs {ratio}")
    if c_squared is None or not c_squared:
        raise InconsistencyError("cubic identity places no constraint on c")
    root = c_squared.sqrt()
    if root is None:
        raise InconsistencyError(f"c^2 = {c_squared} has no square root in Q(sqrt 3)")
    return root


def is_invariant_under(t: UpsilonTensor, r: PolyMatrix, env: VarEnv = V_ENV) -> bool:
    """Whether ``Y_{Rv} = R Y_v R^T`` holds identically in v."""
    r = r.embed(env)
    v = symbolic_vector(env)
    rv = r.apply(v)
    return upsilon_endomorphism(t, rv) == r @ upsilon_endomorphism(t, v) @ r.T


def verify_equivariance(t: UpsilonTensor, h: Rotation3, basis: M5Basis | None = None) -> bool:
    return is_invariant_under(t, rho5_of_rotation(h, basis or derive_m5_basis()))


def recover_metric(t: UpsilonTensor) -> Metric5:
    """Read the metric off the cubic identity: ``Y_v^2 v`` must equal ``q(v) v``.

    Raises StructureError unless every component is ``v_k`` times one common
    positive definite quadratic form ``q``.
    """
    v = symbolic_vector()
    w = _cubed(t, v)
    forms = []
    for name, wk in zip(V_ENV.names, w):
        qk = wk.divide_by_var(name)
        if qk is None:
            raise StructureError(f"component along {name} is not divisible by {name}")
        forms.append(qk)
    q = forms[0]
    if any(f != q for f in forms[1:]):
        raise StructureError("vectors are not eigenvectors of Y_v^2 with a common eigenvalue form")
    if q.is_zero() or not q.is_homogeneous(2):
        raise StructureError(f"eigenvalue form {q} is not a nonzero quadratic form")
    n = len(V_ENV)

    def gram(i: int, j: int) -> QSqrt3:
        mono = [0] * n
        mono[i] += 1
        mono[j] += 1
        c = q.coefficient(tuple(mono))
        return c if i == j else c * Fraction(1, 2)

    g = PolyMatrix.constant([[gram(i, j) for j in range(n)] for i in range(n)])
    for size in range(1, n + 1):
        minor = PolyMatrix.constant([[gram(i, j) for j in range(size)] for i in range(size)])
        if det(minor).constant_value().sign() <= 0:
            raise StructureError(f"eigenvalue form is not positive definite (minor {size})")
    return Metric5(g)


def format_upsilon(t: UpsilonTensor) -> str:
    lines = [f"# normalization c = {t.normalization}"]
    for (i, j, k), val in t.nonzero_components():
        lines.append(f"{i + 1} {j + 1} {k + 1} : {val}")
    return "\n".join(lines) + "\n"
