"""Dense matrices of :class:`MultiPoly` entries, plus exact linear algebra over
Q(sqrt 3) for constant systems."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import EnvironmentMismatch, ShapeError
from .field import ONE, ZERO, QSqrt3, Scalar
from .poly import MultiPoly, VarEnv

CONST_ENV = VarEnv(())
MAX_DET_SIZE = 8


class PolyMatrix:
    __slots__ = ("env", "rows", "cols", "entries")

    def __init__(self, env: VarEnv, rows: int, cols: int, entries: Iterable[MultiPoly | Scalar]) -> None:
        if rows <= 0 or cols <= 0:
            raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
        ents = []
        for e in entries:
            if isinstance(e, MultiPoly):
                if e.env != env:
                    raise EnvironmentMismatch(f"entry over {e.env!r}, matrix over {env!r}")
                ents.append(e)
            else:
                ents.append(MultiPoly.constant(env, e))
        if len(ents) != rows * cols:
            raise ShapeError(f"{len(ents)} entries for a {rows}x{cols} matrix")
        self.env = env
        self.rows = rows
        self.cols = cols
        self.entries = tuple(ents)

    @classmethod
    def from_rows(cls, env: VarEnv, rows: Sequence[Sequence[MultiPoly | Scalar]]) -> PolyMatrix:
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(env, len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def constant(cls, rows: Sequence[Sequence[Scalar]], env: VarEnv = CONST_ENV) -> PolyMatrix:
        return cls.from_rows(env, rows)

    @classmethod
    def zeros(cls, env: VarEnv, rows: int, cols: int | None = None) -> PolyMatrix:
        cols = rows if cols is None else cols
        z = MultiPoly.zero(env)
        return cls(env, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, env: VarEnv, n: int) -> PolyMatrix:
        return cls.from_rows(env, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def build(cls, env: VarEnv, rows: int, cols: int, fn: Callable[[int, int], MultiPoly | Scalar]) -> PolyMatrix:
        return cls(env, rows, cols, [fn(i, j) for i in range(rows) for j in range(cols)])

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for shape {self.shape}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[MultiPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[MultiPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def scalar(self, i: int, j: int) -> QSqrt3:
        """Entry (i, j) as a field element; the entry must be constant."""
        return self[i, j].constant_value()

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_constant(self) -> bool:
        return all(e.is_constant() for e in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.env == other.env and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.env, self.shape, self.entries))

    # structural ---------------------------------------------------------

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> PolyMatrix:
        return PolyMatrix(self.env, self.rows, self.cols, [fn(e) for e in self.entries])

    def transpose(self) -> PolyMatrix:
        return PolyMatrix.build(self.env, self.cols, self.rows, lambda i, j: self[j, i])

    @property
    def T(self) -> PolyMatrix:
        return self.transpose()

    def embed(self, env: VarEnv) -> PolyMatrix:
        """Re-express the matrix over a larger environment (matching by name)."""
        if env == self.env:
            return self
        missing = [n for n in self.env.names if n not in env]
        if missing:
            raise EnvironmentMismatch(f"variables {missing} not present in {env!r}")
        pos = [env.index(n) for n in self.env.names]

        def lift(p: MultiPoly) -> MultiPoly:
            terms = {}
            for mono, c in p.items():
                m = [0] * len(env)
                for k, e in zip(pos, mono):
                    m[k] = e
                terms[tuple(m)] = c
            return MultiPoly(env, terms)

        return PolyMatrix(env, self.rows, self.cols, [lift(e) for e in self.entries])

    def substitute(self, bindings) -> PolyMatrix:
        return self.map(lambda e: e.substitute(bindings))

    def trace(self) -> MultiPoly:
        if not self.is_square():
            raise ShapeError(f"trace of non-square {self.shape} matrix")
        acc = MultiPoly.zero(self.env)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def is_antisymmetric(self) -> bool:
        return self.is_square() and (self + self.T).is_zero()

    def is_symmetric(self) -> bool:
        return self.is_square() and (self - self.T).is_zero()

    # arithmetic ---------------------------------------------------------

    def _check_env(self, other: PolyMatrix) -> None:
        if other.env != self.env:
            raise EnvironmentMismatch(f"{self.env!r} vs {other.env!r}")

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_env(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(self.env, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_env(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return PolyMatrix(self.env, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> PolyMatrix:
        return self.map(lambda e: -e)

    def scale(self, s: MultiPoly | Scalar) -> PolyMatrix:
        return self.map(lambda e: e * s)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_env(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        zero = MultiPoly.zero(self.env)
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = r[k]
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.env, self.rows, other.cols, out)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, vec: Sequence[MultiPoly]) -> list[MultiPoly]:
        """Matrix times a column vector given as a list of polynomials."""
        if len(vec) != self.cols:
            raise ShapeError(f"vector of length {len(vec)} for {self.shape} matrix")
        zero = MultiPoly.zero(self.env)
        out = []
        for i in range(self.rows):
            acc = zero
            for a, x in zip(self.row(i), vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def commutator(self, other: PolyMatrix) -> PolyMatrix:
        return self @ other - other @ self

    def det(self) -> MultiPoly:
        return det(self)

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, env={list(self.env.names)})"


def mat_arith(a: PolyMatrix, b: PolyMatrix, op: str) -> PolyMatrix:
    if op == "add":
        return a + b
    if op == "mul":
        return a @ b
    if op == "commutator":
        return a.commutator(b)
    raise ValueError(f"unknown matrix operation {op!r}")


def det(m: PolyMatrix) -> MultiPoly:
    """Determinant by cofactor expansion along the first row.

    Minors are memoized on (first row, remaining columns), so an n x n
    determinant costs O(n 2^n) products instead of n!.
    """
    if not m.is_square():
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n > MAX_DET_SIZE:
        raise ShapeError(f"determinant limited to size <= {MAX_DET_SIZE}, got {n}")

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]) -> MultiPoly:
        if row == n:
            return MultiPoly.constant(m.env, ONE)
        acc = MultiPoly.zero(m.env)
        for pos, c in enumerate(cols):
            a = m[row, c]
            if not a:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = a * sub
            acc = acc - term if pos % 2 else acc + term
        return acc

    return minor(0, tuple(range(n)))


def format_matrix(m: PolyMatrix) -> str:
    cells = [[str(e) for e in m.row(i)] for i in range(m.rows)]
    width = max(len(c) for r in cells for c in r)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def nullspace(rows: Sequence[Sequence[QSqrt3]], ncols: int) -> list[list[QSqrt3]]:
    """Basis of the right nullspace of a constant matrix over Q(sqrt 3).

    Gauss-Jordan elimination to reduced row echelon form; one basis vector per
    free column, with that column set to 1.
    """
    work = [[QSqrt3.coerce(x) for x in r] for r in rows]
    for r in work:
        if len(r) != ncols:
            raise ShapeError(f"row of length {len(r)}, expected {ncols}")
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * ncols
        vec[fc] = ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis
