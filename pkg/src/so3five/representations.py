"""The 3- and 5-dimensional irreducible representations of so(3).

The 5-dimensional one is realized on the space of symmetric trace-free real
3x3 matrices, on which SO(3) acts by conjugation ``A -> h A h^T``.  The
coordinates on that space come from a basis that is solved for, so that the
induced Lie algebra action ``A -> [rho3(E_k), A]`` reproduces the hard-coded
``rho5`` generators entry for entry.

Inner product on the matrix model is ``<A, B> = tr(AB) / 2``.  The basis that
matches ``rho5`` has ``tr(A_i A_j) = 2 delta_ij``, and rescaling it to unit
plain trace would need sqrt(2), which is not in Q(sqrt 3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InconsistencyError, ShapeError
from .field import ONE, SQRT3, ZERO, QSqrt3
from .matrix import CONST_ENV, PolyMatrix, nullspace
from .poly import MultiPoly, VarEnv

GENERATOR_NAMES = ("E1", "E2", "E3")


@dataclass(frozen=True)
class Representation:
    dim: int
    generators: tuple[PolyMatrix, PolyMatrix, PolyMatrix]
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.generators) != 3:
            raise ShapeError("a representation of so(3) needs exactly three generators")
        for g in self.generators:
            if g.shape != (self.dim, self.dim):
                raise ShapeError(f"generator of shape {g.shape} in a dim-{self.dim} representation")
            if not g.is_constant():
                raise ShapeError("generators must have constant entries")

    def __getitem__(self, k: int | str) -> PolyMatrix:
        if isinstance(k, str):
            k = GENERATOR_NAMES.index(k)
        return self.generators[k]

    def commutation_residuals(self) -> dict[str, PolyMatrix]:
        """``[rho(E_i), rho(E_j)] - rho(E_k)`` for the three cyclic triples."""
        out = {}
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            a, b, c = self.generators[i], self.generators[j], self.generators[k]
            out[f"[E{i + 1},E{j + 1}]=E{k + 1}"] = a.commutator(b) - c
        return out

    def satisfies_commutation(self) -> bool:
        return all(r.is_zero() for r in self.commutation_residuals().values())

    def is_antisymmetric(self) -> bool:
        return all(g.is_antisymmetric() for g in self.generators)

    def with_entry(self, gen: int, i: int, j: int, value) -> Representation:
        """Copy with one generator entry replaced (fault injection in tests)."""
        g = self.generators[gen]
        rows = [[g.scalar(r, c) for c in range(self.dim)] for r in range(self.dim)]
        rows[i][j] = QSqrt3.coerce(value)
        gens = list(self.generators)
        gens[gen] = PolyMatrix.constant(rows)
        return Representation(self.dim, tuple(gens), self.name)


def make_rho3() -> Representation:
    e1 = PolyMatrix.constant([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    e2 = PolyMatrix.constant([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
    e3 = PolyMatrix.constant([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    return Representation(3, (e1, e2, e3), "rho3")


def make_rho5() -> Representation:
    s = SQRT3
    e1 = PolyMatrix.constant([
        [0, 0, 0, 0, s],
        [0, 0, 1, 0, 0],
        [0, -1, 0, 0, 0],
        [0, 0, 0, 0, 1],
        [-s, 0, 0, -1, 0],
    ])
    e2 = PolyMatrix.constant([
        [0, 0, s, 0, 0],
        [0, 0, 0, 0, 1],
        [-s, 0, 0, 1, 0],
        [0, 0, -1, 0, 0],
        [0, -1, 0, 0, 0],
    ])
    e3 = PolyMatrix.constant([
        [0, 0, 0, 0, 0],
        [0, 0, 0, 2, 0],
        [0, 0, 0, 0, 1],
        [0, -2, 0, 0, 0],
        [0, 0, -1, 0, 0],
    ])
    return Representation(5, (e1, e2, e3), "rho5")


# symmetric trace-free 3x3 matrices ------------------------------------------

# independent entries (a11, a12, a13, a22, a23); a33 = -a11 - a22
_FREE_SLOTS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2))


@dataclass(frozen=True)
class SymTraceless3:
    """Symmetric 3x3 matrix with zero trace, stored by its five free entries."""

    a11: MultiPoly
    a12: MultiPoly
    a13: MultiPoly
    a22: MultiPoly
    a23: MultiPoly

    @property
    def env(self) -> VarEnv:
        return self.a11.env

    def matrix(self) -> PolyMatrix:
        a33 = -self.a11 - self.a22
        return PolyMatrix.from_rows(self.env, [
            [self.a11, self.a12, self.a13],
            [self.a12, self.a22, self.a23],
            [self.a13, self.a23, a33],
        ])

    @classmethod
    def from_matrix(cls, m: PolyMatrix) -> SymTraceless3:
        if m.shape != (3, 3):
            raise ShapeError(f"expected a 3x3 matrix, got {m.shape}")
        if not m.is_symmetric():
            raise ShapeError("matrix is not symmetric")
        if not m.trace().is_zero():
            raise ShapeError("matrix is not trace-free")
        return cls(*(m[i, j] for i, j in _FREE_SLOTS))

    def free_entries(self) -> tuple[MultiPoly, ...]:
        return (self.a11, self.a12, self.a13, self.a22, self.a23)


def inner(a: PolyMatrix, b: PolyMatrix) -> MultiPoly:
    """Invariant inner product tr(AB)/2 on the matrix model."""
    return (a @ b).trace() * Fraction(1, 2)


@dataclass(frozen=True)
class M5Basis:
    elements: tuple[SymTraceless3, ...]
    signs: tuple[int, ...]

    def matrices(self) -> list[PolyMatrix]:
        return [e.matrix() for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> SymTraceless3:
        return self.elements[i]


def _embed_generic(x: Sequence[QSqrt3]) -> PolyMatrix:
    a11, a12, a13, a22, a23 = x
    return PolyMatrix.constant([
        [a11, a12, a13],
        [a12, a22, a23],
        [a13, a23, -a11 - a22],
    ])


def _sign_vector(mats: Sequence[PolyMatrix]) -> tuple[int, ...]:
    out = []
    for m in mats:
        first = next(e.constant_value() for e in m.entries if e)
        out.append(first.sign())
    return tuple(out)


def induced_action(generator: PolyMatrix, a: PolyMatrix) -> PolyMatrix:
    """Derivative of conjugation: ``A -> X A - A X`` for X in so(3)."""
    return generator.embed(a.env).commutator(a)


def _solve_m5_basis(rho3: Representation, rho5: Representation) -> M5Basis:
    n_unknowns = 25

    def residual(x: Sequence[QSqrt3]) -> list[QSqrt3]:
        mats = [_embed_generic(x[5 * i:5 * i + 5]) for i in range(5)]
        out: list[QSqrt3] = []
        for k in range(3):
            E, F = rho3[k], rho5[k]
            for j in range(5):
                lhs = induced_action(E, mats[j])
                rhs = PolyMatrix.zeros(CONST_ENV, 3)
                for i in range(5):
                    f = F.scalar(i, j)
                    if f:
                        rhs = rhs + mats[i].scale(f)
                out.extend(e.constant_value() for e in (lhs - rhs).entries)
        return out

    # the compatibility system is linear; assemble it column by column
    columns = []
    for u in range(n_unknowns):
        unit = [ONE if t == u else ZERO for t in range(n_unknowns)]
        columns.append(residual(unit))
    rows = [[columns[u][r] for u in range(n_unknowns)] for r in range(len(columns[0]))]
    kernel = nullspace(rows, n_unknowns)
    if not kernel:
        raise InconsistencyError("no basis of symmetric trace-free matrices intertwines rho3 and rho5")
    if len(kernel) > 1:
        raise InconsistencyError(
            f"intertwiner space has dimension {len(kernel)}; rho5 is not irreducible as transcribed"
        )
    raw = kernel[0]
    raw_mats = [_embed_generic(raw[5 * i:5 * i + 5]) for i in range(5)]
    mu = inner(raw_mats[0], raw_mats[0]).constant_value()
    root = mu.sqrt()
    if root is None or not root:
        raise InconsistencyError(f"basis cannot be normalized inside Q(sqrt 3): <A1,A1> = {mu}")
    scale = root.inverse()

    candidates = []
    for s in (scale, -scale):
        mats = [m.scale(s) for m in raw_mats]
        candidates.append((_sign_vector(mats), mats))
    # +1 before -1 in every slot
    signs, mats = min(candidates, key=lambda c: tuple(-x for x in c[0]))
    basis = M5Basis(tuple(SymTraceless3.from_matrix(m) for m in mats), signs)
    _check_basis(basis, rho3, rho5)
    return basis


def _check_basis(basis: M5Basis, rho3: Representation, rho5: Representation) -> None:
    mats = basis.matrices()
    for i in range(5):
        for j in range(5):
            want = ONE if i == j else ZERO
            if inner(mats[i], mats[j]).constant_value() != want:
                raise InconsistencyError(f"basis not orthonormal at ({i + 1},{j + 1})")
    for k in range(3):
        if induced_generator(rho3[k], basis) != rho5[k]:
            raise InconsistencyError(f"induced action of E{k + 1} does not reproduce rho5(E{k + 1})")


def derive_m5_basis(rho3: Representation | None = None, rho5: Representation | None = None) -> M5Basis:
    """Orthonormal basis of the matrix model compatible with the rho5 generators.

    Raises InconsistencyError when no such basis exists, which means one of the
    generator matrices is wrong.
    """
    if rho3 is None and rho5 is None:
        return _default_basis()
    return _solve_m5_basis(rho3 or make_rho3(), rho5 or make_rho5())


@lru_cache(maxsize=1)
def _default_basis() -> M5Basis:
    return _solve_m5_basis(make_rho3(), make_rho5())


def coordinates_to_matrix(v: Sequence[MultiPoly], basis: M5Basis) -> SymTraceless3:
    if len(v) != 5:
        raise ShapeError(f"expected 5 coordinates, got {len(v)}")
    env = v[0].env
    acc = PolyMatrix.zeros(env, 3)
    for vi, a in zip(v, basis.matrices()):
        acc = acc + a.embed(env).scale(vi)
    return SymTraceless3.from_matrix(acc)


def matrix_to_coordinates(a: SymTraceless3 | PolyMatrix, basis: M5Basis) -> list[MultiPoly]:
    m = a.matrix() if isinstance(a, SymTraceless3) else a
    return [inner(m, b.embed(m.env)) for b in basis.matrices()]


def induced_generator(generator: PolyMatrix, basis: M5Basis) -> PolyMatrix:
    """Matrix of ``A -> [X, A]`` in the coordinates given by ``basis``."""
    mats = basis.matrices()
    cols = [matrix_to_coordinates(induced_action(generator, a), basis) for a in mats]
    return PolyMatrix.build(CONST_ENV, 5, 5, lambda i, j: cols[j][i])


# exact rotations ------------------------------------------------------------


@dataclass(frozen=True)
class RationalQuaternion:
    q0: Fraction
    q1: Fraction
    q2: Fraction
    q3: Fraction

    def __init__(self, q0, q1=0, q2=0, q3=0) -> None:
        for name, val in zip(("q0", "q1", "q2", "q3"), (q0, q1, q2, q3)):
            object.__setattr__(self, name, Fraction(val))

    def norm_squared(self) -> Fraction:
        return self.q0**2 + self.q1**2 + self.q2**2 + self.q3**2

    def __mul__(self, other: RationalQuaternion) -> RationalQuaternion:
        a0, a1, a2, a3 = self.q0, self.q1, self.q2, self.q3
        b0, b1, b2, b3 = other.q0, other.q1, other.q2, other.q3
        return RationalQuaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )


@dataclass(frozen=True)
class Rotation3:
    """Exact element of SO(3) with rational entries."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        m = self.matrix()
        if m.shape != (3, 3):
            raise ShapeError("rotation must be 3x3")
        if m.T @ m != PolyMatrix.identity(CONST_ENV, 3):
            raise ValueError("matrix is not orthogonal")
        if m.det().constant_value() != ONE:
            raise ValueError("matrix does not have determinant 1")

    def matrix(self, env: VarEnv = CONST_ENV) -> PolyMatrix:
        return PolyMatrix.constant(self.rows, env)

    def __matmul__(self, other: Rotation3) -> Rotation3:
        prod = self.matrix() @ other.matrix()
        return Rotation3(tuple(tuple(prod.scalar(i, j).a for j in range(3)) for i in range(3)))

    @classmethod
    def identity(cls) -> Rotation3:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)))


def rotation_from_quaternion(q: RationalQuaternion) -> Rotation3:
    """Euler-Rodrigues formula, divided by |q|^2 so any nonzero q works."""
    n = q.norm_squared()
    if n == 0:
        raise ValueError("zero quaternion does not define a rotation")
    a, b, c, d = q.q0, q.q1, q.q2, q.q3
    rows = (
        (a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)),
        (2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)),
        (2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d),
    )
    return Rotation3(tuple(tuple(x / n for x in r) for r in rows))


def rho5_of_rotation(h: Rotation3, basis: M5Basis | None = None) -> PolyMatrix:
    """Matrix of ``A -> h A h^T`` in the basis coordinates."""
    basis = basis or derive_m5_basis()
    hm = h.matrix()
    mats = basis.matrices()
    images = [hm @ a @ hm.T for a in mats]
    return PolyMatrix.build(CONST_ENV, 5, 5, lambda i, j: inner(mats[i], images[j]))
