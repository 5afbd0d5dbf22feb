"""The Heisenberg group, its group ring, involutions and specializations.

Group elements are ``λ^r y^m x^n`` stored as ``(r, m, n)``; the relation
``x y = λ y x`` with ``λ`` central gives

    (r1, m1, n1)(r2, m2, n2) = (r1 + r2 + n1*m2, m1 + m2, n1 + n2).

GL(2, Z) acts on the abelianization by row vectors ``(m, n) -> (m, n) A``
(with ``(x-exponent, y-exponent)`` as the coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Mapping

from .algebras import QuatElem, QuatInvolution
from .arith.fields import QQ, BaseField
from .arith.parse import parse_expression
from .errors import InvalidSpec, NotOrderTwo


@dataclass(frozen=True, order=True)
class HeisElem:
    r: int = 0
    m: int = 0
    n: int = 0

    def __mul__(self, other: "HeisElem") -> "HeisElem":
        return HeisElem(self.r + other.r + self.n * other.m, self.m + other.m, self.n + other.n)

    def inverse(self) -> "HeisElem":
        return HeisElem(self.m * self.n - self.r, -self.m, -self.n)

    def __pow__(self, s: int) -> "HeisElem":
        r, m, n = self.r, self.m, self.n
        return HeisElem(r * s + m * n * s * (s - 1) // 2, m * s, n * s)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def project(self) -> tuple[int, int]:
        """Image in the abelianization, as (x-exponent, y-exponent)."""
        return (self.n, self.m)

    def __str__(self):
        parts = []
        for name, e in (("L", self.r), ("Y", self.m), ("X", self.n)):
            if e:
                parts.append(name if e == 1 else f"{name}^{e}" if e > 0 else f"{name}^({e})")
        return "*".join(parts) or "1"


IDENTITY = HeisElem()
LAMBDA = HeisElem(1, 0, 0)
Y = HeisElem(0, 1, 0)
X = HeisElem(0, 0, 1)


def heis_mul(g: HeisElem, h: HeisElem) -> HeisElem:
    return g * h


def heis_pow(g: HeisElem, s: int) -> HeisElem:
    return g**s


# -- group ring ---------------------------------------------------------------------------------


class GroupRingElem:
    """Finite k-linear combination of group elements (k = Q, or GF(p))."""

    __slots__ = ("terms", "characteristic")

    def __init__(self, terms: Mapping[HeisElem, object] | None = None, characteristic: int = 0):
        clean = {}
        for g, c in (terms or {}).items():
            c = self._norm(c, characteristic)
            if c:
                clean[g] = c
        self.terms = clean
        self.characteristic = characteristic

    @staticmethod
    def _norm(c, p):
        c = Fraction(c)
        if p:
            return c.numerator * pow(c.denominator, -1, p) % p
        return c

    @classmethod
    def of(cls, g: HeisElem, coeff=1, characteristic: int = 0) -> "GroupRingElem":
        return cls({g: coeff}, characteristic)

    @classmethod
    def scalar(cls, c, characteristic: int = 0) -> "GroupRingElem":
        return cls({IDENTITY: c}, characteristic)

    def _coerce(self, other):
        if isinstance(other, GroupRingElem):
            return other
        if isinstance(other, HeisElem):
            return GroupRingElem.of(other, 1, self.characteristic)
        if isinstance(other, (Integral, Rational)):
            return GroupRingElem.scalar(other, self.characteristic)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for g, c in o.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupRingElem(out, self.characteristic)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem({g: -c for g, c in self.terms.items()}, self.characteristic)

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
        out: dict[HeisElem, object] = {}
        for g, c in self.terms.items():
            for h, d in o.terms.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + c * d
        return GroupRingElem(out, self.characteristic)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e: int):
        if len(self.terms) == 1:
            (g, c), = self.terms.items()
            if e < 0 and c != 1:
                return NotImplemented
            return GroupRingElem({g**e: Fraction(c) ** e if e >= 0 else 1}, self.characteristic)
        if e < 0:
            raise ValueError("only group elements can be inverted in the group ring")
        out = GroupRingElem.scalar(1, self.characteristic)
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

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            parts.append(f"{c} * {g}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GroupRingElem({self})"


def parse_group_ring(text: str, characteristic: int = 0) -> GroupRingElem:
    """Parse sums of ``c * L^r * Y^m * X^n`` (any product order, evaluated)."""
    env = {name: GroupRingElem.of(g, 1, characteristic) for name, g in (("L", LAMBDA), ("Y", Y), ("X", X))}
    return parse_expression(text, env, lambda n: GroupRingElem.scalar(n, characteristic))


# -- involutions -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionSpec:
    """One of the four normal forms; ``m``, ``n`` are the λ-exponents of ζ, η."""

    type: str
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.type not in ("I", "II", "III", "IV"):
            raise InvalidSpec(f"unknown involution type {self.type!r}")
        problems = self.validate()
        if problems:
            raise InvalidSpec("; ".join(problems))

    @property
    def x_star(self) -> HeisElem:
        return {
            "I": HeisElem(self.m, 0, 1),
            "II": X.inverse(),
            "III": X,
            "IV": HeisElem(self.m, 1, 0),
        }[self.type]

    @property
    def y_star(self) -> HeisElem:
        return {
            "I": HeisElem(self.n, 1, 0),
            "II": Y.inverse(),
            "III": HeisElem(self.m, -1, 0),
            "IV": HeisElem(-self.m, 0, 1),
        }[self.type]

    @property
    def lambda_star(self) -> HeisElem:
        return LAMBDA.inverse() if self.type in ("I", "II") else LAMBDA

    def apply_group(self, g: HeisElem) -> HeisElem:
        """``(λ^r y^m x^n)* = (x*)^n (y*)^m (λ*)^r``."""
        return (self.x_star**g.n) * (self.y_star**g.m) * (self.lambda_star**g.r)

    def apply(self, u: GroupRingElem) -> GroupRingElem:
        out: dict[HeisElem, object] = {}
        for g, c in u.terms.items():
            h = self.apply_group(g)
            out[h] = out.get(h, 0) + c
        return GroupRingElem(out, u.characteristic)

    def validate(self) -> list[str]:
        problems = []
        xs, ys, ls = self.x_star, self.y_star, self.lambda_star
        # anti-homomorphism must respect x y = λ y x:  y* x* = x* y* λ*
        if ys * xs != xs * ys * ls:
            problems.append("relation xy = λyx not respected")
        if ls * ls.inverse() != IDENTITY or ls.m or ls.n:
            problems.append("λ* must be central")
        for g in (X, Y, LAMBDA):
            if self.apply_group(self.apply_group(g)) != g:
                problems.append(f"not of order two on {g}")
        return problems

    def to_json(self) -> dict:
        return {"type": self.type, "m": self.m, "n": self.n}


def involution_apply(spec: InvolutionSpec, u: GroupRingElem) -> GroupRingElem:
    return spec.apply(u)


# -- GL(2, Z) --------------------------------------------------------------------------------------

IntMatrix2 = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]]

REPRESENTATIVES: dict[str, IntMatrix2] = {
    "ID": (1, 0, 0, 1),
    "NEG_ID": (-1, 0, 0, -1),
    "D": (1, 0, 0, -1),
    "S": (0, 1, 1, 0),
}


def mat_mul(A: IntMatrix2, B: IntMatrix2) -> IntMatrix2:
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_det(A: IntMatrix2) -> int:
    return A[0] * A[3] - A[1] * A[2]


def mat_inv(A: IntMatrix2) -> IntMatrix2:
    det = mat_det(A)
    if det not in (1, -1):
        raise ValueError(f"{A} is not in GL(2, Z)")
    a, b, c, d = A
    return (d * det, -b * det, -c * det, a * det)


def _primitive_kernel(M: IntMatrix2) -> tuple[int, int]:
    """Primitive row vector v with v M = 0, first nonzero entry positive."""
    a, b, c, d = M
    # v M = 0  <=>  v is orthogonal to both columns (a, c) and (b, d)
    col = (a, c) if (a, c) != (0, 0) else (b, d)
    v = (col[1], -col[0])
    g = math.gcd(*v)
    v = (v[0] // g, v[1] // g)
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = (-v[0], -v[1])
    return v


def classify_order2(A: IntMatrix2) -> tuple[str, IntMatrix2]:
    """Class in {ID, NEG_ID, D, S} and T with ``T A T^-1`` the representative."""
    if mat_mul(A, A) != (1, 0, 0, 1):
        raise NotOrderTwo(f"{A} does not square to the identity")
    if A == REPRESENTATIVES["ID"]:
        return "ID", (1, 0, 0, 1)
    if A == REPRESENTATIVES["NEG_ID"]:
        return "NEG_ID", (1, 0, 0, 1)
    a, b, c, d = A
    v_plus = _primitive_kernel((a - 1, b, c, d - 1))
    v_minus = _primitive_kernel((a + 1, b, c, d + 1))
    det = v_plus[0] * v_minus[1] - v_plus[1] * v_minus[0]
    if abs(det) == 1:
        return "D", (v_plus[0], v_plus[1], v_minus[0], v_minus[1])
    if abs(det) == 2:
        w = ((v_plus[0] + v_minus[0]) // 2, (v_plus[1] + v_minus[1]) // 2)
        wA = (w[0] * a + w[1] * c, w[0] * b + w[1] * d)
        return "S", (w[0], w[1], wA[0], wA[1])
    raise AssertionError(f"unexpected eigenlattice index {det}")


@dataclass(frozen=True)
class HeisAutomorphism:
    x_image: HeisElem
    y_image: HeisElem
    lambda_exp: int

    def __call__(self, g: HeisElem) -> HeisElem:
        return (LAMBDA ** (self.lambda_exp * g.r)) * (self.y_image**g.m) * (self.x_image**g.n)

    def preserves_relation(self) -> bool:
        return self.x_image * self.y_image == (LAMBDA**self.lambda_exp) * self.y_image * self.x_image

    def projection(self) -> IntMatrix2:
        a, b = self.x_image.project()
        c, d = self.y_image.project()
        return (a, b, c, d)


def lift_automorphism(A: IntMatrix2) -> HeisAutomorphism:
    a, b, c, d = A
    eps = mat_det(A)
    if eps not in (1, -1):
        raise ValueError(f"{A} is not in GL(2, Z)")
    i2 = -eps * c * d * (-eps + a + b)
    j2 = -eps * a * b * (-eps + c + d)
    if i2 % 2 or j2 % 2:
        raise AssertionError("exponent formula produced a half-integer")
    auto = HeisAutomorphism(
        x_image=HeisElem(j2 // 2, b, a),
        y_image=HeisElem(i2 // 2, d, c),
        lambda_exp=eps,
    )
    if not auto.preserves_relation() or auto.projection() != A:
        raise AssertionError(f"lift of {A} failed verification")
    return auto


# -- specializations into the quaternion algebra ----------------------------------------------------


def _quat_images(kind: str, field: BaseField):
    one, i, j, k = QuatElem.basis(field)
    if kind == "PSI":
        return i, j
    if kind == "PHI":
        return i, i * j
    raise InvalidSpec(f"unknown specialization {kind!r}")


def specialize_group(kind: str, g: HeisElem, field: BaseField = QQ) -> QuatElem:
    xi, yi = _quat_images(kind, field)
    sign = -1 if g.r % 2 else 1
    return (yi**g.m) * (xi**g.n) * sign


def specialize_quat(kind: str, u: GroupRingElem, field: BaseField = QQ) -> QuatElem:
    """ψ (x -> i, y -> j) or φ (x -> i, y -> ij); λ -> -1 in both."""
    out = QuatElem.scalar(field, 0)
    cache: dict[HeisElem, QuatElem] = {}
    for g, c in u.terms.items():
        if g not in cache:
            cache[g] = specialize_group(kind, g, field)
        out = out + cache[g] * field.const(c)
    return out


def check_specialization(kind: str, field: BaseField = QQ) -> bool:
    """The relation ``y^-1 x y = λ x`` maps to an identity in the quaternions."""
    xi, yi = _quat_images(kind, field)
    return yi.inverse() * xi * yi == -xi


def transported_involution(spec: InvolutionSpec, kind: str = "PSI", field: BaseField = QQ) -> QuatInvolution:
    """The involution on the quaternions making the specialization *-preserving."""
    i_star = specialize_group(kind, spec.x_star, field)
    y_img_star = specialize_group(kind, spec.y_star, field)
    theta_a = i_star * i_star
    if kind == "PSI":
        j_star = y_img_star
    else:
        # j = i^-1 (ij), so j* = (ij)* (i*)^-1
        j_star = y_img_star * i_star.inverse()
    theta_b = j_star * j_star
    for t in (theta_a, theta_b):
        if any(c != 0 for c in t.c[1:]):
            raise AssertionError("transported involution does not preserve the centre")
    return QuatInvolution({"a": theta_a.c[0], "b": theta_b.c[0]}, i_star, j_star)
