"""Independent reference computations in sympy, transcribed separately from
the package sources."""

import sympy as sp

S3 = sp.sqrt(3)

RHO3 = [
    sp.Matrix([[0, 0, 0], [0, 0, 1], [0, -1, 0]]),
    sp.Matrix([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
    sp.Matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]),
]

RHO5 = [
    sp.Matrix([[0, 0, 0, 0, S3], [0, 0, 1, 0, 0], [0, -1, 0, 0, 0], [0, 0, 0, 0, 1], [-S3, 0, 0, -1, 0]]),
    sp.Matrix([[0, 0, S3, 0, 0], [0, 0, 0, 0, 1], [-S3, 0, 0, 1, 0], [0, 0, -1, 0, 0], [0, -1, 0, 0, 0]]),
    sp.Matrix([[0, 0, 0, 0, 0], [0, 0, 0, 2, 0], [0, 0, 0, 0, 1], [0, -2, 0, 0, 0], [0, 0, -1, 0, 0]]),
]


def to_sympy(m):
    """PolyMatrix with constant entries -> sympy Matrix with sqrt(3)."""
    def conv(e):
        x = e.constant_value()
        return sp.Rational(x.a.numerator, x.a.denominator) + sp.Rational(x.b.numerator, x.b.denominator) * S3

    return sp.Matrix(m.rows, m.cols, [conv(e) for e in m.entries])


def char_poly(gens):
    lam = sp.Symbol("lam")
    r = sp.symbols("r1:4")
    n = gens[0].shape[0]
    k = sum((ri * g for ri, g in zip(r, gens)), sp.zeros(n))
    return sp.Poly(sp.expand((lam * sp.eye(n) + k).det(method="berkowitz")), lam, *r)
