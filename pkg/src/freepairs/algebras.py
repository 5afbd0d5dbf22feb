"""The quaternion algebra ``(a, b / F)`` and the degree-3 cyclic algebra.

``QuatElem`` stores coordinates on ``1, i, j, ij`` with ``i^2 = a``,
``j^2 = b``, ``ij = -ji``.  ``CycElem`` stores ``sum_q c_q j^q`` with
``c_q`` in ``K(i)`` (``i^3 - i = a`` over GF(3)), ``j^3 = b`` and
``j f(i) = f(i + 2) j``.

Both come with right regular representations (``x_k r = sum a_kl x_l``)
and with semilinear anti-automorphisms used to transport involutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral, Rational
from typing import Mapping

from .arith.ext import ExtDescriptor, ExtElem, artin_schreier, quadratic_a, quadratic_b
from .arith.fields import GF3, QQ, VARIABLES, BaseField, RatFunc, format_fraction, poly_lcm
from .arith.matrix import SqMatrix
from .arith.parse import parse_expression
from .errors import DescriptorMismatch, NotInvertible, SingularMatrix, ZeroNorm

_QUAT_BASIS = ((0, 0), (1, 0), (0, 1), (1, 1))


def _format_basis(items, field: BaseField, basis_names=("i", "j")) -> str:
    """Common-denominator string for ``sum coeff * basis_monomial``."""
    nonzero = [(c, e) for c, e in items if c != 0]
    if not nonzero:
        return "0"
    den = poly_lcm(field, (c.den for c, _ in nonzero))
    num_terms: dict = {}
    for c, basis_exps in nonzero:
        scaled = c.num * (den / c.den)
        for exps, v in scaled.terms():
            key = tuple(int(e) for e in exps) + tuple(basis_exps)
            num_terms[key] = field.coeff_to_python(v)
    den_terms = {tuple(int(e) for e in exps) + (0,) * len(basis_names): field.coeff_to_python(v) for exps, v in den.terms()}
    return format_fraction(num_terms, den_terms, VARIABLES + tuple(basis_names), field.characteristic)


# -- quaternions ------------------------------------------------------------------------------


class QuatElem:
    __slots__ = ("field", "c")

    def __init__(self, field: BaseField, coords):
        cs = tuple(x if isinstance(x, RatFunc) else field.const(x) for x in coords)
        if len(cs) != 4:
            raise ValueError("a quaternion has four coordinates")
        self.field = field
        self.c = cs

    # constructors
    @classmethod
    def scalar(cls, field: BaseField, x) -> "QuatElem":
        return cls(field, [x, 0, 0, 0])

    @classmethod
    def basis(cls, field: BaseField = QQ) -> tuple["QuatElem", "QuatElem", "QuatElem", "QuatElem"]:
        return tuple(cls(field, [1 if k == n else 0 for k in range(4)]) for n in range(4))

    @property
    def a(self) -> RatFunc:
        return self.field.gen("a")

    @property
    def b(self) -> RatFunc:
        return self.field.gen("b")

    def _coerce(self, other):
        if isinstance(other, QuatElem):
            if other.field != self.field:
                raise DescriptorMismatch("quaternions over different fields")
            return other
        if isinstance(other, (RatFunc, Integral, Rational)):
            return QuatElem.scalar(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuatElem(self.field, [x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.field, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (RatFunc, Integral, Rational)):
            return QuatElem(self.field, [x * other for x in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.a, self.b
        c0, c1, c2, c3 = self.c
        d0, d1, d2, d3 = o.c
        return QuatElem(
            self.field,
            [
                c0 * d0 + a * c1 * d1 + b * c2 * d2 - a * b * c3 * d3,
                c0 * d1 + c1 * d0 - b * c2 * d3 + b * c3 * d2,
                c0 * d2 + c2 * d0 + a * c1 * d3 - a * c3 * d1,
                c0 * d3 + c3 * d0 + c1 * d2 - c2 * d1,
            ],
        )

    def __rmul__(self, other):
        if isinstance(other, (RatFunc, Integral, Rational)):
            return self * other
        return NotImplemented

    def conj(self) -> "QuatElem":
        c0, c1, c2, c3 = self.c
        return QuatElem(self.field, [c0, -c1, -c2, -c3])

    def norm(self) -> RatFunc:
        c0, c1, c2, c3 = self.c
        a, b = self.a, self.b
        return c0 * c0 - a * c1 * c1 - b * c2 * c2 + a * b * c3 * c3

    def inverse(self) -> "QuatElem":
        n = self.norm()
        if n == 0:
            raise ZeroNorm(f"{self} has zero reduced norm")
        return self.conj() * (1 / n)

    def __truediv__(self, other):
        if isinstance(other, (RatFunc, Integral, Rational)):
            return self * (1 / self.field.const(other) if not isinstance(other, RatFunc) else 1 / other)
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
        if e < 0:
            return self.inverse() ** (-e)
        result = QuatElem.scalar(self.field, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def map_coefficients(self, fn) -> "QuatElem":
        return QuatElem(self.field, [fn(x) for x in self.c])

    def __str__(self):
        return _format_basis(zip(self.c, _QUAT_BASIS), self.field)

    def __repr__(self):
        return f"QuatElem({self})"


def quat_env(field: BaseField = QQ) -> dict:
    one, i, j, k = QuatElem.basis(field)
    env = {name: QuatElem.scalar(field, g) for name, g in field.gens().items()}
    env.update(i=i, j=j, k=k)
    return env


def parse_quat(text: str, field: BaseField = QQ) -> QuatElem:
    return parse_expression(text, quat_env(field), lambda n: QuatElem.scalar(field, n))


def quat_mul(x: QuatElem, y: QuatElem) -> QuatElem:
    return x * y


def quat_inv(x: QuatElem) -> QuatElem:
    return x.inverse()


def quat_conj(x: QuatElem) -> QuatElem:
    return x.conj()


def quat_reg_rep(x: QuatElem, over: str = "L") -> SqMatrix:
    """Right regular representation over ``L = F(i)`` (basis 1, j) or ``K = F(j)`` (basis 1, i)."""
    al, be, ga, de = x.c
    if over == "L":
        L = quadratic_a(x.field)
        i = L.gen()
        return SqMatrix([[al + be * i, ga + de * i], [(ga - de * i) * x.b, al - be * i]])
    if over == "K":
        K = quadratic_b(x.field)
        j = K.gen()
        return SqMatrix([[al + ga * j, be - de * j], [(be + de * j) * x.a, al - ga * j]])
    raise ValueError(f"unknown subfield {over!r}")


def quat_from_L(z: ExtElem) -> QuatElem:
    """Embed ``z`` in ``F(i)`` into the quaternions."""
    return QuatElem(z.desc.field, [z.coeffs[0], z.coeffs[1], 0, 0])


def quat_from_K(z: ExtElem) -> QuatElem:
    return QuatElem(z.desc.field, [z.coeffs[0], 0, z.coeffs[1], 0])


# -- the cyclic algebra -----------------------------------------------------------------------


def cyclic_field(field: BaseField = GF3) -> ExtDescriptor:
    return artin_schreier(field)


def sigma(z: ExtElem, times: int = 1) -> ExtElem:
    """``f(i) -> f(i + 2)``, the automorphism realised by conjugation with j."""
    times %= 3
    if times == 0:
        return z
    shift = z.desc.gen() + 2 * times
    return z.substitute_generator(shift)


class CycElem:
    __slots__ = ("desc", "c")

    def __init__(self, desc: ExtDescriptor, coords):
        cs = tuple(desc(x) for x in coords)
        if len(cs) != 3:
            raise ValueError("a cyclic-algebra element has three K(i)-coordinates")
        self.desc = desc
        self.c = cs

    @classmethod
    def scalar(cls, desc: ExtDescriptor, x) -> "CycElem":
        return cls(desc, [desc(x), desc.zero, desc.zero])

    @classmethod
    def gens(cls, desc: ExtDescriptor | None = None) -> tuple["CycElem", "CycElem"]:
        desc = desc or cyclic_field()
        i = cls(desc, [desc.gen(), desc.zero, desc.zero])
        j = cls(desc, [desc.zero, desc.one, desc.zero])
        return i, j

    @property
    def b(self) -> RatFunc:
        return self.desc.field.gen("b")

    def _coerce(self, other):
        if isinstance(other, CycElem):
            if other.desc != self.desc:
                raise DescriptorMismatch("cyclic algebras differ")
            return other
        if isinstance(other, (ExtElem, RatFunc, Integral, Rational)):
            return CycElem.scalar(self.desc, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.desc, [x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.desc, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (RatFunc, Integral, Rational)):
            return CycElem(self.desc, [x * other for x in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [self.desc.zero] * 3
        b = self.b
        for q, cq in enumerate(self.c):
            if cq.is_zero():
                continue
            for r, dr in enumerate(o.c):
                if dr.is_zero():
                    continue
                term = cq * sigma(dr, q)
                if q + r >= 3:
                    term = term * b
                out[(q + r) % 3] = out[(q + r) % 3] + term
        return CycElem(self.desc, out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def reg_rep(self) -> SqMatrix:
        """Rows are the coordinates of ``j^k * x`` on the left K(i)-basis ``1, j, j^2``."""
        rows = []
        b = self.b
        for k in range(3):
            row = [self.desc.zero] * 3
            for q, cq in enumerate(self.c):
                entry = sigma(cq, k)
                if k + q >= 3:
                    entry = entry * b
                row[(k + q) % 3] = entry
            rows.append(row)
        return SqMatrix(rows)

    def inverse(self) -> "CycElem":
        try:
            inv = self.reg_rep().inverse()
        except SingularMatrix as exc:
            raise NotInvertible(f"{self} is not invertible") from exc
        return CycElem(self.desc, inv.rows[0])

    def __truediv__(self, other):
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
        if e < 0:
            return self.inverse() ** (-e)
        result = CycElem.scalar(self.desc, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def coordinates(self) -> dict[tuple[int, int], RatFunc]:
        """Coordinates on ``i^p j^q`` over K."""
        return {(p, q): cq.coeffs[p] for q, cq in enumerate(self.c) for p in range(3)}

    @classmethod
    def from_coordinates(cls, desc: ExtDescriptor, coords: Mapping[tuple[int, int], RatFunc]) -> "CycElem":
        zero = desc.field.zero
        return cls(desc, [desc.element([coords.get((p, q), zero) for p in range(3)]) for q in range(3)])

    def __str__(self):
        return _format_basis(((c, e) for e, c in self.coordinates().items()), self.desc.field)

    def __repr__(self):
        return f"CycElem({self})"


def cyc_env(desc: ExtDescriptor | None = None) -> dict:
    desc = desc or cyclic_field()
    i, j = CycElem.gens(desc)
    env = {name: CycElem.scalar(desc, g) for name, g in desc.field.gens().items()}
    env.update(i=i, j=j)
    return env


def parse_cyc(text: str, desc: ExtDescriptor | None = None) -> CycElem:
    desc = desc or cyclic_field()
    return parse_expression(text, cyc_env(desc), lambda n: CycElem.scalar(desc, n))


def cyc_mul(x: CycElem, y: CycElem) -> CycElem:
    return x * y


def cyc_inv(x: CycElem) -> CycElem:
    return x.inverse()


def cyc_reg_rep(x: CycElem) -> SqMatrix:
    return x.reg_rep()


def cayley(r):
    """``(1 - r)(1 + r)^-1``."""
    try:
        return (1 - r) * (1 + r).inverse()
    except (ZeroNorm, NotInvertible, SingularMatrix, ZeroDivisionError) as exc:
        raise NotInvertible(f"1 + ({r}) is not invertible") from exc


# -- transported involutions -------------------------------------------------------------------


@dataclass(frozen=True)
class QuatInvolution:
    """Anti-automorphism ``q -> q*`` of the quaternions, semilinear over θ on the centre."""

    theta: Mapping[str, RatFunc]
    i_star: QuatElem
    j_star: QuatElem

    def theta_of(self, x: RatFunc) -> RatFunc:
        return x.subs(self.theta)

    def __call__(self, q: QuatElem) -> QuatElem:
        c0, c1, c2, c3 = (self.theta_of(x) for x in q.c)
        return c0 + self.i_star * c1 + self.j_star * c2 + (self.j_star * self.i_star) * c3

    def check(self, field: BaseField = QQ) -> list[str]:
        """Defining relations and order two; returns failure descriptions."""
        problems = []
        one, i, j, _ = QuatElem.basis(field)
        a, b = field.gen("a"), field.gen("b")
        if self.i_star * self.i_star != self.theta_of(a):
            problems.append("(i*)^2 != θ(a)")
        if self.j_star * self.j_star != self.theta_of(b):
            problems.append("(j*)^2 != θ(b)")
        if self.j_star * self.i_star != -(self.i_star * self.j_star):
            problems.append("i*, j* do not anticommute")
        if self(self(i)) != i or self(self(j)) != j:
            problems.append("not of order two on i, j")
        if self.theta_of(self.theta_of(a)) != a or self.theta_of(self.theta_of(b)) != b:
            problems.append("θ is not of order two")
        return problems


@dataclass(frozen=True)
class CycInvolution:
    theta: Mapping[str, RatFunc]
    i_star: CycElem
    j_star: CycElem

    def theta_of(self, x: RatFunc) -> RatFunc:
        return x.subs(self.theta)

    def __call__(self, x: CycElem) -> CycElem:
        desc = x.desc
        out = CycElem.scalar(desc, 0)
        i_pows = [CycElem.scalar(desc, 1), self.i_star, self.i_star * self.i_star]
        j_pows = [CycElem.scalar(desc, 1), self.j_star, self.j_star * self.j_star]
        for (p, q), c in x.coordinates().items():
            if c != 0:
                out = out + (j_pows[q] * i_pows[p]) * self.theta_of(c)
        return out

    def check(self) -> list[str]:
        problems = []
        desc = self.i_star.desc
        i, j = CycElem.gens(desc)
        a, b = desc.field.gen("a"), desc.field.gen("b")
        if self.i_star**3 - self.i_star != CycElem.scalar(desc, self.theta_of(a)):
            problems.append("(i*)^3 - i* != θ(a)")
        if self.j_star**3 != CycElem.scalar(desc, self.theta_of(b)):
            problems.append("(j*)^3 != θ(b)")
        # (ij)* = (j(i+1))*  ->  j* i* = (i* + 1) j*
        if self.j_star * self.i_star != (self.i_star + 1) * self.j_star:
            problems.append("relation ij = j(i+1) not respected")
        if self(self(i)) != i or self(self(j)) != j:
            problems.append("not of order two on i, j")
        return problems
