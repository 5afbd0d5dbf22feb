"""Simple algebraic extensions ``k(a, b)[θ]/(m(θ))`` of low degree.

Elements are coefficient vectors on ``1, θ, ..., θ^(d-1)`` with
:class:`RatFunc` entries.  Three extensions are used by the scenarios:

* ``L = F(i)`` with ``i^2 = a`` over ``F = Q(a, b)``;
* ``K = F(j)`` with ``j^2 = b``;
* ``K(i)`` with ``i^3 - i = a`` over ``GF(3)(a, b)``.

Residue fields of places are also built as extensions of this kind (with
generator a bar-variable), so degree 1 is allowed too.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from numbers import Integral, Rational
from typing import Sequence

from ..errors import DescriptorMismatch, DivisionByZero
from .fields import VARIABLES, BaseField, RatFunc, format_fraction, poly_lcm
from .upoly import UniPoly


class ExtDescriptor:
    """A monic minimal polynomial over the rational function field."""

    def __init__(self, field: BaseField, generator: str, minpoly: Sequence):
        coeffs = [c if isinstance(c, RatFunc) else field.const(c) for c in minpoly]
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if generator in VARIABLES:
            raise ValueError(f"generator name {generator!r} clashes with a field variable")
        self.field = field
        self.generator = generator
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        d = self.degree
        # theta^(d+k) for k = 0..d-2 as coefficient vectors
        table = []
        current = [-c for c in coeffs[:-1]]
        for _ in range(max(d - 1, 1)):
            table.append(tuple(current))
            top = current[-1]
            shifted = [field.zero] + current[:-1]
            current = [s - top * m for s, m in zip(shifted, coeffs[:-1])]
        self._reduction = tuple(table)

    def __eq__(self, other):
        return (
            isinstance(other, ExtDescriptor)
            and self.field == other.field
            and self.generator == other.generator
            and self.minpoly == other.minpoly
        )

    def __hash__(self):
        return hash((self.field, self.generator, self.minpoly))

    def __repr__(self):
        return f"ExtDescriptor({self.generator}: {self.minpoly_upoly()} over {self.field})"

    def minpoly_upoly(self, var: str | None = None) -> UniPoly:
        return UniPoly(self.minpoly, self.field.zero, var or self.generator)

    # -- element constructors ------------------------------------------------------
    def element(self, coeffs: Sequence) -> "ExtElem":
        cs = [c if isinstance(c, RatFunc) else self.field.const(c) for c in coeffs]
        if len(cs) > self.degree:
            return ExtElem(self, _reduce(self, cs))
        cs += [self.field.zero] * (self.degree - len(cs))
        return ExtElem(self, tuple(cs))

    def __call__(self, value) -> "ExtElem":
        if isinstance(value, ExtElem):
            if value.desc != self:
                raise DescriptorMismatch(f"{value.desc!r} vs {self!r}")
            return value
        if isinstance(value, (Integral, Rational)):
            value = self.field.const(value)
        if isinstance(value, RatFunc):
            return self.element([value])
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    @property
    def zero(self) -> "ExtElem":
        return self.element([])

    @property
    def one(self) -> "ExtElem":
        return self.element([1])

    def gen(self) -> "ExtElem":
        if self.degree == 1:
            return self.element([-self.minpoly[0]])
        return self.element([0, 1])

    def env(self) -> dict:
        env = {name: self(g) for name, g in self.field.gens().items()}
        env[self.generator] = self.gen()
        return env

    def parse(self, text: str) -> "ExtElem":
        from .parse import parse_expression

        return parse_expression(text, self.env(), lambda n: self(n))


def _reduce(desc: ExtDescriptor, cs: list) -> tuple:
    d = desc.degree
    zero = desc.field.zero
    if len(cs) > 2 * d - 1:
        cs = list((UniPoly(cs, zero) % desc.minpoly_upoly()).coeffs)
    out = list(cs[:d]) + [zero] * max(0, d - len(cs))
    for k in range(d, len(cs)):
        c = cs[k]
        if c != 0:
            out = [o + c * r for o, r in zip(out, desc._reduction[k - d])]
    return tuple(out)


class ExtElem:
    """An element of a simple algebraic extension (immutable)."""

    __slots__ = ("desc", "coeffs", "_hash")

    def __init__(self, desc: ExtDescriptor, coeffs: tuple):
        self.desc = desc
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.desc is not self.desc and other.desc != self.desc:
                raise DescriptorMismatch(f"{self.desc!r} vs {other.desc!r}")
            return other
        if isinstance(other, (RatFunc, Integral, Rational)):
            return self.desc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.desc, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.desc, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.desc, tuple(x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (RatFunc, Integral, Rational)):
            return ExtElem(self.desc, tuple(x * other for x in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.desc.degree
        zero = self.desc.field.zero
        prod = [zero] * (2 * d - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(o.coeffs):
                if y == 0:
                    continue
                prod[i + j] = prod[i + j] + x * y
        return ExtElem(self.desc, _reduce(self.desc, prod))

    __rmul__ = __mul__

    def inverse(self) -> "ExtElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in an extension field")
        zero = self.desc.field.zero
        g, s, _ = UniPoly(self.coeffs, zero).xgcd(self.desc.minpoly_upoly("t"))
        if g.degree != 0:
            raise DivisionByZero(f"{self} is a zero divisor (minimal polynomial is reducible)")
        return self.desc.element(list(s.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (RatFunc, Integral, Rational)):
            if other == 0:
                raise DivisionByZero("division by zero")
            inv = 1 / other if isinstance(other, RatFunc) else self.desc.field.const(Fraction(1) / Fraction(other))
            return self * inv
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, Integral):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.desc.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.desc == other.desc and self.coeffs == other.coeffs
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.desc.generator, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_scalar(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def scalar(self) -> RatFunc:
        if not self.is_scalar():
            raise ValueError(f"{self} is not in the base field")
        return self.coeffs[0]

    def substitute_generator(self, value: "ExtElem") -> "ExtElem":
        """``f(θ) -> f(value)``; used for the Artin-Schreier shift ``i -> i+2``."""
        acc = self.desc.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def map_coefficients(self, fn) -> "ExtElem":
        return ExtElem(self.desc, tuple(fn(c) for c in self.coeffs))

    def multiplication_matrix(self):
        """Matrix of ``y -> y*x`` on the basis ``1, θ, ...`` (rows = images)."""
        from .matrix import SqMatrix

        rows = []
        basis = self.desc.gen()
        power = self.desc.one
        for _ in range(self.desc.degree):
            rows.append(list((power * self).coeffs))
            power = power * basis
        return SqMatrix(rows)

    def norm(self) -> RatFunc:
        return self.multiplication_matrix().det()

    def trace(self) -> RatFunc:
        return self.multiplication_matrix().trace()

    def __str__(self):
        return format_coefficients(self.coeffs, self.desc.generator, self.desc.field)

    def __repr__(self):
        return f"ExtElem({self})"


def format_coefficients(coeffs: Sequence[RatFunc], generator: str, field: BaseField) -> str:
    """Canonical string for ``sum c_k g^k`` with a common denominator."""
    nonzero = [c for c in coeffs if c != 0]
    if not nonzero:
        return "0"
    den = poly_lcm(field, (c.den for c in nonzero))
    num_terms: dict[tuple, object] = {}
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        scaled = c.num * (den / c.den)
        for exps, v in scaled.terms():
            num_terms[tuple(exps) + (k,)] = field.coeff_to_python(v)
    den_terms = {tuple(exps) + (0,): field.coeff_to_python(v) for exps, v in den.terms()}
    return format_fraction(num_terms, den_terms, VARIABLES + (generator,), field.characteristic)


# -- named extensions --------------------------------------------------------------------


@cache
def quadratic_a(field: BaseField = BaseField(0), generator: str = "i") -> ExtDescriptor:
    """``L = F(i)``, ``i^2 = a``."""
    return ExtDescriptor(field, generator, [-field.gen("a"), 0, 1])


@cache
def quadratic_b(field: BaseField = BaseField(0), generator: str = "j") -> ExtDescriptor:
    """``K = F(j)``, ``j^2 = b``."""
    return ExtDescriptor(field, generator, [-field.gen("b"), 0, 1])


@cache
def artin_schreier(field: BaseField = BaseField(3), generator: str = "i") -> ExtDescriptor:
    """``K(i)``, ``i^3 - i = a``."""
    return ExtDescriptor(field, generator, [-field.gen("a"), -1, 0, 1])


# -- operations ------------------------------------------------------------------------------


def ext_arith(op: str, x: ExtElem, y: ExtElem | None = None) -> ExtElem:
    op = op.upper()
    if op == "ADD":
        return x + y
    if op == "MUL":
        return x * y
    if op == "INV":
        return x.inverse()
    raise ValueError(f"unknown op {op!r}")


def _solve(columns: list[list], rhs: list):
    """Solve ``sum_k c_k * columns[k] == rhs`` exactly; None if inconsistent."""
    n_rows = len(rhs)
    n_cols = len(columns)
    rows = [[columns[k][r] for k in range(n_cols)] + [rhs[r]] for r in range(n_rows)]
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n_rows):
        if rows[i][-1] != 0:
            return None
    zero = rhs[0] * 0
    sol = [zero] * n_cols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


def min_poly_of(x: ExtElem, var: str = "t") -> UniPoly:
    """Monic minimal polynomial of ``x`` over the base field."""
    field = x.desc.field
    powers = [x.desc.one]
    while True:
        nxt = powers[-1] * x
        sol = _solve([list(p.coeffs) for p in powers], list(nxt.coeffs))
        if sol is not None:
            return UniPoly([-s for s in sol] + [field.one], field.zero, var)
        powers.append(nxt)
