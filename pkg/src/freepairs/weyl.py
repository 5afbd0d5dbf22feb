"""The first Weyl algebra ``Q<s, t : st - ts = 1>`` and its images.

Elements are kept in normal order ``sum c_mn t^m s^n`` (all t to the left).
Reordering uses

    s^b t^c = sum_k k! C(b, k) C(c, k) t^(c-k) s^(b-k).

``phi`` maps into the skew-Laurent ring ``Q(X)[Y, Y^-1; X -> X + 1]``
(``s -> Y^-1 X``, ``t -> Y``); composing with ``X -> i``, ``Y -> j`` and
reducing mod 3 gives the map into the cyclic algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from numbers import Integral, Rational
from typing import Mapping, Sequence

from .algebras import CycElem, CycInvolution, cyclic_field
from .arith.ext import ExtDescriptor
from .arith.fields import GF3, QQ, RatFunc, eval_poly
from .arith.parse import parse_expression
from .errors import DegreeOverflow, InvalidSpec, Not3Integral


class WeylElem:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def scalar(cls, c) -> "WeylElem":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, m: int, n: int, c=1) -> "WeylElem":
        return cls({(m, n): c})

    @classmethod
    def gens(cls) -> tuple["WeylElem", "WeylElem"]:
        """(s, t)."""
        return cls.monomial(0, 1), cls.monomial(1, 0)

    def _coerce(self, other):
        if isinstance(other, WeylElem):
            return other
        if isinstance(other, (Integral, Rational)):
            return WeylElem.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return WeylElem(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElem({k: -v for k, v in self.terms.items()})

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
        out: dict[tuple[int, int], Fraction] = {}
        for (m1, n1), c1 in self.terms.items():
            for (m2, n2), c2 in o.terms.items():
                # t^m1 (s^n1 t^m2) s^n2
                for k in range(min(n1, m2) + 1):
                    w = factorial(k) * comb(n1, k) * comb(m2, k)
                    key = (m1 + m2 - k, n1 + n2 - k)
                    out[key] = out.get(key, 0) + c1 * c2 * w
        return WeylElem(out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("Weyl algebra elements are not invertible")
        out = WeylElem.scalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def t_degree(self) -> int:
        return max((m for m, _ in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, n) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(m, n)]
            mono = []
            if m:
                mono.append("t" if m == 1 else f"t^{m}")
            if n:
                mono.append("s" if n == 1 else f"s^{n}")
            parts.append(f"{c} * {' * '.join(mono)}" if mono else f"{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"WeylElem({self})"


def parse_weyl(text: str) -> WeylElem:
    s, t = WeylElem.gens()
    return parse_expression(text, {"s": s, "t": t}, WeylElem.scalar)


def weyl_mul(u: WeylElem, v: WeylElem) -> WeylElem:
    return u * v


# -- linear involutions -----------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylInvolutionSpec:
    """``s* = α s + β t``, ``t* = γ s - α t`` with ``α^2 + βγ = 1``."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.alpha**2 + self.beta * self.gamma != 1:
            raise InvalidSpec(f"α^2 + βγ = {self.alpha**2 + self.beta * self.gamma}, expected 1")

    @classmethod
    def named(cls, name: str) -> "WeylInvolutionSpec":
        if name == "SWAP":
            return cls(0, 1, 1)
        if name == "SIGN":
            return cls(1, 0, 0)
        raise InvalidSpec(f"unknown named involution {name!r}")

    @property
    def s_star(self) -> WeylElem:
        return WeylElem({(0, 1): self.alpha, (1, 0): self.beta})

    @property
    def t_star(self) -> WeylElem:
        return WeylElem({(0, 1): self.gamma, (1, 0): -self.alpha})

    def apply(self, u: WeylElem) -> WeylElem:
        """``(t^m s^n)* = (s*)^n (t*)^m``, extended linearly."""
        out = WeylElem()
        s_pows = [WeylElem.scalar(1)]
        t_pows = [WeylElem.scalar(1)]
        for m, n in u.terms:
            while len(s_pows) <= n:
                s_pows.append(s_pows[-1] * self.s_star)
            while len(t_pows) <= m:
                t_pows.append(t_pows[-1] * self.t_star)
        for (m, n), c in u.terms.items():
            out = out + s_pows[n] * t_pows[m] * c
        return out

    def to_json(self) -> dict:
        return {"alpha": str(self.alpha), "beta": str(self.beta), "gamma": str(self.gamma)}


def weyl_involution(spec: WeylInvolutionSpec, u: WeylElem) -> WeylElem:
    return spec.apply(u)


# -- differential-operator oracle ---------------------------------------------------------------------


def weyl_action_oracle(u: WeylElem, f: Sequence, N: int) -> list[Fraction]:
    """Apply u to a polynomial (ascending coefficients) with s = d/dX, t = X·."""
    f = [Fraction(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    if len(f) - 1 + u.t_degree() >= N:
        raise DegreeOverflow(f"degree would reach {len(f) - 1 + u.t_degree()} >= {N}")
    out = [Fraction(0)] * N
    for (m, n), c in u.terms.items():
        g = list(f)
        for _ in range(n):
            g = [k * g[k] for k in range(1, len(g))]
        for k, gk in enumerate(g):
            out[k + m] += c * gk
    while out and out[-1] == 0:
        out.pop()
    return out


# -- skew-Laurent model -----------------------------------------------------------------------------


class SkewLaurentElem:
    """``sum_n Y^n f_n(X)`` with ``f(X) Y = Y f(X + 1)``."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Mapping[int, RatFunc] | None = None, field=QQ):
        self.field = field
        self.terms = {n: (f if isinstance(f, RatFunc) else field.const(f)) for n, f in (terms or {}).items()}
        self.terms = {n: f for n, f in self.terms.items() if f != 0}

    @classmethod
    def gens(cls, field=QQ) -> tuple["SkewLaurentElem", "SkewLaurentElem"]:
        """(X, Y)."""
        return cls({0: field.gen("X")}, field), cls({1: field.one}, field)

    def _coerce(self, other):
        if isinstance(other, SkewLaurentElem):
            return other
        if isinstance(other, (Integral, Rational, RatFunc)):
            return SkewLaurentElem({0: other}, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for n, f in o.terms.items():
            out[n] = out[n] + f if n in out else f
        return SkewLaurentElem(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return SkewLaurentElem({n: -f for n, f in self.terms.items()}, self.field)

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
        out: dict[int, RatFunc] = {}
        for n, f in self.terms.items():
            for m, g in o.terms.items():
                term = f.shift("X", m) * g
                out[n + m] = out[n + m] + term if n + m in out else term
        return SkewLaurentElem(out, self.field)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials Y^n f are inverted here")
            (n, f), = self.terms.items()
            # (Y^n f)^-1 = f^-1 Y^-n = Y^-n f(X - n)^-1
            inv = SkewLaurentElem({-n: f.shift("X", -n).inverse()}, self.field)
            return inv ** (-e)
        out = SkewLaurentElem({0: self.field.one}, self.field)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset((n, str(f)) for n, f in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for n in sorted(self.terms, reverse=True):
            f = self.terms[n]
            y = "" if n == 0 else ("Y" if n == 1 else f"Y^{n}" if n > 0 else f"Y^({n})")
            parts.append(f"{y}*({f})" if y else f"({f})")
        return " + ".join(parts)

    def __repr__(self):
        return f"SkewLaurentElem({self})"


def parse_skew(text: str) -> SkewLaurentElem:
    X, Y = SkewLaurentElem.gens()
    return parse_expression(text, {"X": X, "Y": Y}, lambda n: SkewLaurentElem({0: n}))


def _phi_images():
    X, Y = SkewLaurentElem.gens()
    return Y**-1 * X, Y


def weyl_to_skew(u: WeylElem) -> SkewLaurentElem:
    """φ: s -> Y^-1 X, t -> Y."""
    s_img, t_img = _phi_images()
    out = SkewLaurentElem()
    for (m, n), c in u.terms.items():
        out = out + (t_img**m) * (s_img**n) * QQ.const(c)
    return out


def check_phi_relation() -> bool:
    s_img, t_img = _phi_images()
    return s_img * t_img - t_img * s_img == SkewLaurentElem({0: QQ.one})


def _mod3(c: Fraction) -> int:
    if c.denominator % 3 == 0:
        raise Not3Integral(f"coefficient {c} is not 3-integral")
    return c.numerator * pow(c.denominator, -1, 3) % 3


def weyl_to_cyclic(u: WeylElem, desc: ExtDescriptor | None = None) -> CycElem:
    """τ∘φ: s -> j^-1 i, t -> j, coefficients reduced mod 3."""
    desc = desc or cyclic_field(GF3)
    i, j = CycElem.gens(desc)
    s_img, t_img = j.inverse() * i, j
    out = CycElem.scalar(desc, 0)
    for (m, n), c in u.terms.items():
        out = out + (t_img**m) * (s_img**n) * _mod3(c)
    return out


def skew_to_cyclic(x: SkewLaurentElem, desc: ExtDescriptor | None = None) -> CycElem:
    """Reduce mod 3 then substitute X -> i, Y -> j (the cross-check route)."""
    desc = desc or cyclic_field(GF3)
    i, j = CycElem.gens(desc)
    i_ext = desc.gen()
    out = CycElem.scalar(desc, 0)
    for n, f in x.terms.items():
        num_t, den_t = f.terms()
        num = GF3.zero
        den = GF3.zero
        for exps, c in num_t.items():
            num = num + GF3.const(_mod3(Fraction(c))) * GF3.gen("X") ** int(exps[2])
        for exps, c in den_t.items():
            den = den + GF3.const(_mod3(Fraction(c))) * GF3.gen("X") ** int(exps[2])
        if den == 0:
            raise Not3Integral(f"denominator of {f} vanishes mod 3")
        value = eval_poly(num.num, {"X": i_ext}, GF3) / eval_poly(den.num, {"X": i_ext}, GF3)
        out = out + (j**n) * CycElem.scalar(desc, value)
    return out


def transported_involution(spec: WeylInvolutionSpec, desc: ExtDescriptor | None = None) -> CycInvolution:
    """The involution on the cyclic algebra compatible with τ∘φ."""
    desc = desc or cyclic_field(GF3)
    s, t = WeylElem.gens()
    i_star = weyl_to_cyclic(spec.apply(t * s), desc)
    j_star = weyl_to_cyclic(spec.apply(t), desc)
    theta_a = i_star**3 - i_star
    theta_b = j_star**3
    for v in (theta_a, theta_b):
        if not (v.c[1].is_zero() and v.c[2].is_zero() and v.c[0].is_scalar()):
            raise AssertionError("transported involution does not preserve the centre")
    return CycInvolution({"a": theta_a.c[0].scalar(), "b": theta_b.c[0].scalar()}, i_star, j_star)
