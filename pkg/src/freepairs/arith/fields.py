"""Base fields and exact multivariate rational functions.

A :class:`BaseField` is either the rationals or a prime field GF(p).  Every
rational function lives in the field of fractions of ``k[a, b, X]``: the
coefficient fields ``k(a, b)`` of the quaternion and cyclic algebras and the
field ``Q(X)`` of the skew-Laurent model are all subfields of it, so one
ambient representation serves them all.

Polynomials are python-flint ``fmpq_mpoly`` / ``nmod_mpoly`` objects; this
module only adds the fraction layer on top (gcd normalisation, canonical
strings, substitution).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import gcd, lcm
from numbers import Integral, Rational
from typing import Iterable, Mapping

import flint

from ..errors import DescriptorMismatch, DivisionByZero

#: Global variable order.  Fixed so that canonical strings are byte-stable.
VARIABLES = ("a", "b", "X")
VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@cache
def _context(characteristic: int):
    if characteristic == 0:
        return flint.fmpq_mpoly_ctx.get(VARIABLES, ordering="deglex")
    return flint.nmod_mpoly_ctx.get(VARIABLES, ordering="deglex", modulus=characteristic)


@dataclass(frozen=True)
class BaseField:
    """The field of constants: ``characteristic == 0`` means Q, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.characteristic}")

    @property
    def ctx(self):
        return _context(self.characteristic)

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def coeff(self, c):
        """Convert an int / Fraction into a flint coefficient of this field."""
        c = Fraction(c)
        p = self.characteristic
        if p == 0:
            return flint.fmpq(c.numerator, c.denominator)
        if c.denominator % p == 0:
            raise DivisionByZero(f"{c} has no image in GF({p})")
        return flint.nmod(c.numerator * pow(c.denominator, -1, p), p)

    def coeff_to_python(self, c):
        """Flint coefficient -> Fraction (over Q) or int in ``range(p)``."""
        if self.characteristic == 0:
            return Fraction(int(c.p), int(c.q))
        return int(c)

    def poly(self, value) -> "flint.fmpq_mpoly":
        return self.ctx.constant(self.coeff(value))

    def const(self, value) -> "RatFunc":
        return RatFunc(self, self.poly(value), _normalized=True)

    def gen(self, name: str) -> "RatFunc":
        return RatFunc(self, self.ctx.gens()[VAR_INDEX[name]], _normalized=True)

    def gens(self) -> dict[str, "RatFunc"]:
        return {name: self.gen(name) for name in VARIABLES}

    @property
    def zero(self) -> "RatFunc":
        return self.const(0)

    @property
    def one(self) -> "RatFunc":
        return self.const(1)

    def parse(self, text: str) -> "RatFunc":
        from .parse import parse_expression

        return parse_expression(text, self.gens(), self.const)


QQ = BaseField(0)
GF3 = BaseField(3)


def _normalize(field: BaseField, num, den):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num, field.ctx.constant(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return num, den


class RatFunc:
    """An exact rational function ``num/den`` in canonical form.

    ``gcd(num, den) == 1`` and ``den`` has leading coefficient 1 in the
    deglex order, so equality is representational equality.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: BaseField, num, den=None, *, _normalized: bool = False):
        if den is None:
            den = field.ctx.constant(1)
            _normalized = True
        if not _normalized:
            num, den = _normalize(field, num, den)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # -- coercion -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise DescriptorMismatch(f"cannot mix {self.field} and {other.field}")
            return other
        if isinstance(other, (Integral, Rational)):
            return self.field.const(other)
        return None

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, _normalized=True)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero
        return _mul_cancel(self, o)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFunc(self.field, self.den, self.num)

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
        if not isinstance(e, Integral):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.field, self.num**e, self.den**e, _normalized=True)

    # -- predicates -------------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.field == o.field and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        """The value of a constant function as Fraction / int."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0) if self.field.characteristic == 0 else 0
        return self.field.coeff_to_python(self.num.leading_coefficient())

    def variables(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for exps in poly.monoms():
                used.update(VARIABLES[i] for i, e in enumerate(exps) if e)
        return used

    # -- substitution ------------------------------------------------------------
    def subs(self, mapping: Mapping[str, "RatFunc"]) -> "RatFunc":
        """Substitute rational functions for variables (simultaneously)."""
        return eval_poly(self.num, mapping, self.field) / eval_poly(self.den, mapping, self.field)

    def shift(self, name: str, c) -> "RatFunc":
        """``f(v) -> f(v + c)`` for a single variable."""
        ctx = self.field.ctx
        gens = list(ctx.gens())
        i = VAR_INDEX[name]
        gens[i] = gens[i] + self.field.coeff(c)
        return RatFunc(self.field, self.num.compose(*gens), self.den.compose(*gens))

    # -- formatting ---------------------------------------------------------------
    def terms(self) -> tuple[dict, dict]:
        """(numerator terms, denominator terms) as ``{exps: python coeff}``."""
        conv = self.field.coeff_to_python
        return (
            {e: conv(c) for e, c in self.num.terms()},
            {e: conv(c) for e, c in self.den.terms()},
        )

    def __str__(self):
        num, den = self.terms()
        return format_fraction(num, den, VARIABLES, self.field.characteristic)

    def __repr__(self):
        return f"RatFunc({self})"


def _mul_cancel(x: RatFunc, y: RatFunc) -> RatFunc:
    # cross-cancellation keeps intermediate degrees down
    f = x.field
    n1, d1, n2, d2 = x.num, x.den, y.num, y.den
    if not d2.is_one():
        g = n1.gcd(d2)
        if not g.is_constant():
            n1, d2 = n1 / g, d2 / g
    if not d1.is_one():
        g = n2.gcd(d1)
        if not g.is_constant():
            n2, d1 = n2 / g, d1 / g
    num, den = n1 * n2, d1 * d2
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num, den = num * inv, den * inv
    return RatFunc(f, num, den, _normalized=True)


def eval_poly(poly, mapping: Mapping[str, object], field: BaseField):
    """Evaluate a flint polynomial with values for (some of) its variables.

    Unmapped variables stay symbolic.  Values may be any ring elements that
    accept multiplication by a :class:`RatFunc`.
    """
    gens = field.gens()
    values = [mapping.get(name, gens[name]) for name in VARIABLES]
    total = field.zero
    power_cache: dict[tuple[int, int], object] = {}
    for exps, c in poly.terms():
        term = field.const(field.coeff_to_python(c))
        for i, e in enumerate(exps):
            if e:
                key = (i, int(e))
                if key not in power_cache:
                    power_cache[key] = values[i] ** key[1]
                term = term * power_cache[key]
        total = total + term
    return total


# -- canonical string form ------------------------------------------------------------


def _monomial(exps, names) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _order_key(exps):
    return (sum(exps), tuple(exps))


def format_poly(terms: Mapping[tuple, int], names) -> str:
    """Integer-coefficient polynomial, terms in descending deglex order."""
    if not terms:
        return "0"
    out = []
    for exps in sorted(terms, key=_order_key, reverse=True):
        c = terms[exps]
        mono = _monomial(exps, names)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if mono:
            body = mono if c == 1 else f"{c}*{mono}"
        else:
            body = str(c)
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += sign + body
    return s


def integerize(num: Mapping[tuple, Fraction], den: Mapping[tuple, Fraction]):
    """Scale a Q-fraction so both parts have coprime integer coefficients."""
    coeffs = list(num.values()) + list(den.values())
    scale = lcm(*(Fraction(c).denominator for c in coeffs))
    g = 0
    for c in coeffs:
        g = gcd(g, int(Fraction(c) * scale))
    scale = Fraction(scale, g or 1)
    return (
        {e: int(Fraction(c) * scale) for e, c in num.items()},
        {e: int(Fraction(c) * scale) for e, c in den.items()},
    )


def _needs_parens_den(terms) -> bool:
    if len(terms) != 1:
        return True
    (exps, c), = terms.items()
    nonzero = sum(1 for e in exps if e)
    if nonzero == 0:
        return False
    return c != 1 or nonzero > 1


def format_fraction(num: Mapping[tuple, object], den: Mapping[tuple, object], names, characteristic: int) -> str:
    if not num:
        return "0"
    if characteristic == 0:
        num, den = integerize(num, den)
        # denominator sign: leading term positive
        lead = max(den, key=_order_key)
        if den[lead] < 0:
            num = {e: -c for e, c in num.items()}
            den = {e: -c for e, c in den.items()}
    num_s = format_poly(num, names)
    zero = tuple(0 for _ in names)
    if den == {zero: 1}:
        return num_s
    if len(num) > 1:
        num_s = f"({num_s})"
    den_s = format_poly(den, names)
    if _needs_parens_den(den):
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"


def poly_lcm(field: BaseField, polys: Iterable):
    result = field.ctx.constant(1)
    for p in polys:
        if p.is_one():
            continue
        g = result.gcd(p)
        result = result * (p / g) if not g.is_constant() else result * p
    lc = result.leading_coefficient()
    if lc != 1:
        result = result * (1 / lc)
    return result


# -- spec-level operation ------------------------------------------------------------


def ratfunc_arith(op: str, x: RatFunc, y: RatFunc | None = None) -> RatFunc:
    """ADD / MUL / DIV / NEG on rational functions."""
    op = op.upper()
    if op == "ADD":
        return x + y
    if op == "MUL":
        return x * y
    if op == "DIV":
        return x / y
    if op == "NEG":
        return -x
    raise ValueError(f"unknown op {op!r}")
