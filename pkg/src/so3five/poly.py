"""Sparse multivariate polynomials with coefficients in Q(sqrt 3).

A polynomial lives over a fixed, ordered :class:`VarEnv`; its terms are a map
from exponent tuples to nonzero :class:`~so3five.field.QSqrt3` coefficients, so
two polynomials over the same environment are equal exactly when their term
maps are equal.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import DegreeLimitExceeded, EnvironmentMismatch
from .field import ONE, ZERO, QSqrt3, Scalar, format_scalar

MAX_DEGREE = 24

Monomial = tuple[int, ...]


class VarEnv:
    """Ordered tuple of distinct variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]) -> None:
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not n.isidentifier() or n == "s3":
                raise ValueError(f"invalid variable name {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarEnv) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarEnv({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise EnvironmentMismatch(
                f"unknown variable {name!r}; environment is {list(self.names)}"
            ) from None

    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.names)

    def gens(self) -> tuple["MultiPoly", ...]:
        return tuple(MultiPoly.var(self, n) for n in self.names)


class MultiPoly:
    __slots__ = ("env", "_terms")

    def __init__(self, env: VarEnv, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        self.env = env
        clean: dict[Monomial, QSqrt3] = {}
        if terms:
            n = len(env)
            for mono, c in terms.items():
                if len(mono) != n:
                    raise EnvironmentMismatch(
                        f"exponent vector {mono} does not fit environment {env!r}"
                    )
                c = QSqrt3.coerce(c)
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, env: VarEnv, terms: dict[Monomial, QSqrt3]) -> MultiPoly:
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.env = env
        p._terms = terms
        return p

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, env: VarEnv) -> MultiPoly:
        return cls._raw(env, {})

    @classmethod
    def constant(cls, env: VarEnv, c: Scalar) -> MultiPoly:
        c = QSqrt3.coerce(c)
        return cls._raw(env, {env.zero_monomial(): c} if c else {})

    @classmethod
    def var(cls, env: VarEnv, name: str) -> MultiPoly:
        mono = [0] * len(env)
        mono[env.index(name)] = 1
        return cls._raw(env, {tuple(mono): ONE})

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, QSqrt3]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.env.zero_monomial() in self._terms)

    def constant_value(self) -> QSqrt3:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(self.env.zero_monomial(), ZERO)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.env.index(name)
        return max((m[i] for m in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def coefficient(self, mono: Monomial) -> QSqrt3:
        return self._terms.get(tuple(mono), ZERO)

    def coeff_of(self, name: str, power: int) -> MultiPoly:
        """Coefficient of ``name**power``, as a polynomial over the same env."""
        i = self.env.index(name)
        out: dict[Monomial, QSqrt3] = {}
        for m, c in self._terms.items():
            if m[i] == power:
                out[m[:i] + (0,) + m[i + 1:]] = c
        return MultiPoly._raw(self.env, out)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.env != self.env:
                raise EnvironmentMismatch(f"{self.env!r} vs {other.env!r}")
            return other
        if isinstance(other, (int, Fraction, QSqrt3)):
            return MultiPoly.constant(self.env, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.env == other.env and self._terms == other._terms
        if isinstance(other, (int, Fraction, QSqrt3)):
            return self._terms == MultiPoly.constant(self.env, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.env, frozenset(self._terms.items())))

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.env, {m: -c for m, c in self._terms.items()})

    def __pos__(self) -> MultiPoly:
        return self

    def _add(self, other: MultiPoly, sign: int) -> MultiPoly:
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, ZERO) + c if sign > 0 else out.get(m, ZERO) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(self.env, out)

    def __add__(self, other) -> MultiPoly:
        return self._add(self._coerce(other), 1)

    def __radd__(self, other) -> MultiPoly:
        return self._coerce(other)._add(self, 1)

    def __sub__(self, other) -> MultiPoly:
        return self._add(self._coerce(other), -1)

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other)._add(self, -1)

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction, QSqrt3)):
            c = QSqrt3.coerce(other)
            if not c:
                return MultiPoly.zero(self.env)
            return MultiPoly._raw(self.env, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return MultiPoly.zero(self.env)
        if self.total_degree() + other.total_degree() > MAX_DEGREE:
            raise DegreeLimitExceeded(
                f"product would reach degree {self.total_degree() + other.total_degree()}"
                f" > {MAX_DEGREE}"
            )
        out: dict[Monomial, QSqrt3] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, ZERO) + c1 * c2
        return MultiPoly._raw(self.env, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.env != self.env:
                raise EnvironmentMismatch(f"{self.env!r} vs {other.env!r}")
            other = other.constant_value()
        return self * QSqrt3.coerce(other).inverse()

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.env, ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # substitution -------------------------------------------------------

    def substitute(self, bindings: Mapping[str, MultiPoly | Scalar]) -> MultiPoly:
        """Replace variables by polynomials over the same env (or by scalars)."""
        idx: dict[int, MultiPoly] = {}
        for name, val in bindings.items():
            i = self.env.index(name)
            idx[i] = self._coerce(val)
        if not idx:
            return self
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in powers:
                powers[key] = idx[i] ** e
            return powers[key]

        result = MultiPoly.zero(self.env)
        for m, c in self._terms.items():
            kept = tuple(0 if i in idx else e for i, e in enumerate(m))
            term = MultiPoly._raw(self.env, {kept: c})
            for i, e in enumerate(m):
                if i in idx and e:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> QSqrt3:
        """Value at a point; every variable of the env must be bound."""
        values = [QSqrt3.coerce(point[n]) if n in point else None for n in self.env.names]
        missing = [n for n, v in zip(self.env.names, values) if v is None]
        if missing:
            raise EnvironmentMismatch(f"no value for variables {missing}")
        total = ZERO
        for m, c in self._terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def divide_by_var(self, name: str) -> MultiPoly | None:
        """Exact quotient by the variable ``name``, or None if not divisible."""
        i = self.env.index(name)
        out = {}
        for m, c in self._terms.items():
            if m[i] == 0:
                return None
            out[m[:i] + (m[i] - 1,) + m[i + 1:]] = c
        return MultiPoly._raw(self.env, out)

    # text ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, QSqrt3]]:
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)!r}, env={list(self.env.names)})"


def _fmt_monomial(env: VarEnv, mono: Monomial) -> str:
    parts = []
    for name, e in zip(env.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form; terms in descending lexicographic exponent order."""
    terms = p.sorted_terms()
    if not terms:
        return "0"
    pieces = []
    for mono, c in terms:
        mtxt = _fmt_monomial(p.env, mono)
        mixed = bool(c.a) and bool(c.b)
        if not mtxt:
            ctxt = format_scalar(c)
            txt = f"({ctxt})" if mixed and len(terms) > 1 else ctxt
        elif c == 1:
            txt = mtxt
        elif c == -1:
            txt = "-" + mtxt
        else:
            ctxt = format_scalar(c)
            txt = f"({ctxt})*{mtxt}" if mixed else f"{ctxt}*{mtxt}"
        pieces.append(txt)
    out = pieces[0]
    for txt in pieces[1:]:
        out += f" - {txt[1:]}" if txt.startswith("-") else f" + {txt}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(\*\*|[-+*/^()]))")


def parse_poly(text: str, env: VarEnv) -> MultiPoly:
    """Parse the canonical text form (and ordinary infix input) over ``env``."""
    tokens: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        tokens.append(m.group(1) or m.group(2) or ("^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise ValueError("empty polynomial text")
    parser = _Parser(tokens, env)
    result = parser.expr()
    if parser.i != len(tokens):
        raise ValueError(f"trailing input in {text!r}: {tokens[parser.i:]}")
    return result


class _Parser:
    def __init__(self, tokens: list[str], env: VarEnv) -> None:
        self.tokens = tokens
        self.env = env
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of polynomial text")
        self.i += 1
        return tok

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def unary(self) -> MultiPoly:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ValueError(f"exponent must be a non-negative integer, got {exp!r}")
            return base ** int(exp)
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        if tok.isdigit():
            return MultiPoly.constant(self.env, int(tok))
        if tok == "s3":
            return MultiPoly.constant(self.env, QSqrt3(0, 1))
        if tok[0].isalpha() or tok[0] == "_":
            return MultiPoly.var(self.env, tok)
        raise ValueError(f"unexpected token {tok!r}")


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if p.env != q.env:
        raise EnvironmentMismatch(f"{p.env!r} vs {q.env!r}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_substitute(p: MultiPoly, bindings: Mapping[str, MultiPoly | Scalar]) -> MultiPoly:
    return p.substitute(bindings)
