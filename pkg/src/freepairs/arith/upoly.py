"""Dense univariate polynomials over an exact field.

Coefficients are any field elements supporting ``+ - * /`` (usually
:class:`RatFunc`).  Only what the extension, place and minimal-polynomial
code needs is here: division with remainder, extended Euclid, Horner
evaluation.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DivisionByZero


class UniPoly:
    __slots__ = ("coeffs", "zero", "var")

    def __init__(self, coeffs: Sequence, zero, var: str = "t"):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.zero = zero
        self.var = var

    @classmethod
    def constant(cls, c, zero, var="t"):
        return cls([c], zero, var)

    @classmethod
    def monomial(cls, c, k: int, zero, var="t"):
        return cls([zero] * k + [c], zero, var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.zero

    def _new(self, coeffs):
        return UniPoly(coeffs, self.zero, self.var)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = self._new([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = self._new([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self._new([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return self._new([])
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j, d in enumerate(other.coeffs):
                out[i + j] = out[i + j] + c * d
        return self._new(out)

    def __rmul__(self, other):
        return self._new([other * c for c in self.coeffs])

    def __truediv__(self, scalar):
        inv = 1 / scalar
        return self._new([c * inv for c in self.coeffs])

    def __pow__(self, e: int):
        result = self._new([self.zero + 1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = self._new([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [self.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lc = 1 / other.lc if not _is_one(other.lc) else None
        d = other.degree
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c * inv_lc if inv_lc is not None else c
            quot[k - d] = q
            for j, oc in enumerate(other.coeffs):
                rem[k - d + j] = rem[k - d + j] - q * oc
        return self._new(quot), self._new(rem[:d] if d > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "UniPoly":
        if self.is_zero() or _is_one(self.lc):
            return self
        inv = 1 / self.lc
        return self._new([c * inv for c in self.coeffs])

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.zero
        # a constant polynomial evaluated at a ring element lands in that ring
        return acc + x * 0 if len(self.coeffs) == 1 else acc

    def derivative(self) -> "UniPoly":
        return self._new([c * k for k, c in enumerate(self.coeffs)][1:])

    def xgcd(self, other: "UniPoly"):
        """Return ``(g, s, t)`` with ``s*self + t*other == g`` and g monic."""
        one = self.zero + 1
        r0, r1 = self, other
        s0, s1 = self._new([one]), self._new([])
        t0, t1 = self._new([]), self._new([one])
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = 1 / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    def __str__(self):
        from .fields import RatFunc
        from .ext import format_coefficients

        if self.coeffs and all(isinstance(c, RatFunc) for c in self.coeffs):
            return format_coefficients(self.coeffs, self.var, self.coeffs[0].field)
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.var}^{k}" for k, c in reversed(list(enumerate(self.coeffs))) if c != 0)

    def __repr__(self):
        return f"UniPoly({self})"


def _is_one(c) -> bool:
    try:
        return c == 1
    except TypeError:
        return False
