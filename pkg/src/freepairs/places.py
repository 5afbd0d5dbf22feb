"""Discrete valuations on rational function fields and their extensions.

A place is given by

* an extension ``E = F[θ]/(m)`` (possibly of degree 1);
* a prime ``p`` of ``k[v]`` in one variable ``v`` of ``F = k(a, b, X)``;
* the image ``ḡ`` of ``θ`` in the residue field ``k(others)[v̄]/(p)``;
* a uniformizer ``π`` with ``res(π) = 0`` and ``ord_p N(π) = 1``.

Only unramified places are supported: ``p`` must not divide the
discriminant of ``m``.  Then ``1, θ, ..., θ^(d-1)`` is a local integral
basis, so an element has non-negative valuation at every prime above ``p``
exactly when its coordinates are ``p``-integral.

Two independent routes compute ``ν``: :meth:`Place.valuation` divides by
``π`` until the residue is nonzero, :func:`hensel_valuation` evaluates in
the truncated completion ``k(others)[v]/(p^N)`` at a Hensel-lifted root of
``m``.  The freeness certificate checker uses the second.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .arith.ext import ExtDescriptor, ExtElem, quadratic_a, quadratic_b, artin_schreier
from .arith.fields import VAR_INDEX, VARIABLES, BaseField, RatFunc
from .arith.parse import parse_expression
from .arith.upoly import UniPoly
from .errors import InvalidPlace, InvalidSpec, ZeroInput


class _Below:
    """Sentinel for residues of elements outside the valuation ring."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BELOW"

    __str__ = __repr__


BELOW = _Below()


def rational_descriptor(field: BaseField) -> ExtDescriptor:
    """Degree-one extension, so plain rational functions can carry a place."""
    return ExtDescriptor(field, "theta", [field.zero, field.one])


# -- ord_p on the base field ----------------------------------------------------------------


def poly_ord(poly, prime) -> int:
    """Exponent of ``prime`` in a nonzero flint polynomial."""
    if poly.is_zero():
        raise ZeroInput("ord of zero")
    k = 0
    while True:
        q, r = divmod(poly, prime)
        if not r.is_zero():
            return k
        poly = q
        k += 1


def ratfunc_ord(x: RatFunc, prime) -> int:
    return poly_ord(x.num, prime) - poly_ord(x.den, prime)


def _strip(poly, prime):
    while True:
        q, r = divmod(poly, prime)
        if not r.is_zero():
            return poly
        poly = q


# -- the place -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Place:
    descriptor: ExtDescriptor
    base_var: str
    base_prime: RatFunc
    gen_image: ExtElem
    uniformizer: ExtElem
    name: str = ""
    residue_desc: ExtDescriptor = field(repr=False, default=None)

    @property
    def field(self) -> BaseField:
        return self.descriptor.field

    @property
    def prime_poly(self):
        return self.base_prime.num

    # -- base-field maps -----------------------------------------------------------------
    def ord(self, x: RatFunc) -> int:
        return ratfunc_ord(x, self.prime_poly)

    def _poly_residue(self, poly) -> ExtElem:
        rd = self.residue_desc
        vbar = rd.gen()
        gens = self.field.gens()
        out = rd.zero
        powers: dict[int, ExtElem] = {}
        idx = VAR_INDEX[self.base_var]
        for exps, c in poly.terms():
            coeff = self.field.const(self.field.coeff_to_python(c))
            for i, e in enumerate(exps):
                if e and i != idx:
                    coeff = coeff * gens[VARIABLES[i]] ** int(e)
            e = int(exps[idx])
            if e not in powers:
                powers[e] = vbar**e
            out = out + powers[e] * coeff
        return out

    def residue_ratfunc(self, x: RatFunc):
        """Residue of a base-field element, or BELOW."""
        if x.is_zero():
            return self.residue_desc.zero
        k = self.ord(x)
        if k < 0:
            return BELOW
        if k > 0:
            return self.residue_desc.zero
        return self._poly_residue(_strip(x.num, self.prime_poly)) / self._poly_residue(_strip(x.den, self.prime_poly))

    # -- extension maps -------------------------------------------------------------------
    def _coerce(self, x) -> ExtElem:
        return self.descriptor(x)

    def _coordinate_residue(self, x: ExtElem) -> ExtElem:
        """Residue of an element whose coordinates are all p-integral."""
        out = self.residue_desc.zero
        g_power = self.residue_desc.one
        for c in x.coeffs:
            if c != 0:
                r = self.residue_ratfunc(c)
                if r is BELOW:
                    raise ValueError("coordinate not integral")
                out = out + r * g_power
            g_power = g_power * self.gen_image
        return out

    def _min_ord(self, x: ExtElem) -> int:
        return min(self.ord(c) for c in x.coeffs if c != 0)

    def _decompose(self, x: ExtElem):
        """``x = p^d * g * π^count`` with g integral and res(g) != 0."""
        if x.is_zero():
            raise ZeroInput("valuation of zero")
        d = self._min_ord(x)
        f = x * (self.base_prime ** (-d))
        pi = self.uniformizer
        norm_pi = pi.norm()
        step = (norm_pi * pi.inverse()) / norm_pi  # = 1/π, written to keep coordinates integral
        bound = ratfunc_ord(f.norm(), self.prime_poly)
        count = 0
        while self._coordinate_residue(f).is_zero():
            if count >= bound:
                raise AssertionError("valuation loop exceeded the norm bound")
            f = f * step
            count += 1
        return d, f, count

    def valuation(self, x) -> int:
        x = self._coerce(x)
        d, _, count = self._decompose(x)
        return d + count

    def residue(self, x):
        """Image in the residue field; BELOW if ν(x) < 0."""
        x = self._coerce(x)
        if x.is_zero():
            return self.residue_desc.zero
        d, g, count = self._decompose(x)
        nu = d + count
        if nu < 0:
            return BELOW
        if nu > 0:
            return self.residue_desc.zero
        res = self._coordinate_residue(g)
        if d:
            # p = π·w with w a unit
            w = self.uniformizer.inverse() * self.base_prime
            res = res * self._coordinate_residue(w) ** d
        return res

    # -- parsing in the residue field -------------------------------------------------------
    def parse_residue(self, text: str) -> ExtElem:
        return parse_residue(self.residue_desc, self.base_var, text)

    # -- serialization ---------------------------------------------------------------------
    def to_json(self) -> dict:
        d = self.descriptor
        out = {
            "minpoly": str(d.minpoly_upoly()),
            "base_var": self.base_var,
            "base_prime": str(self.base_prime),
            "gen_image": str(self.gen_image),
            "uniformizer": str(self.uniformizer),
            "generator": d.generator,
            "characteristic": d.field.characteristic,
        }
        if self.name:
            out["name"] = self.name
        return out


def residue_descriptor(field: BaseField, base_var: str, base_prime: RatFunc) -> ExtDescriptor:
    if base_var not in ("a", "b", "X"):
        raise InvalidSpec(f"unknown base variable {base_var!r}")
    if not base_prime.is_polynomial() or base_prime.is_constant():
        raise InvalidSpec(f"base prime {base_prime} must be a non-constant polynomial")
    idx = VAR_INDEX[base_var]
    coeffs: dict[int, object] = {}
    for exps, c in base_prime.num.terms():
        if any(e for i, e in enumerate(exps) if i != idx):
            raise InvalidSpec(f"base prime {base_prime} must involve only {base_var}")
        coeffs[int(exps[idx])] = field.const(field.coeff_to_python(c))
    deg = max(coeffs)
    lc = coeffs[deg]
    _, factors = base_prime.num.factor()
    if len(factors) != 1 or factors[0][1] != 1:
        raise InvalidSpec(f"base prime {base_prime} is not irreducible")
    return ExtDescriptor(field, f"{base_var}bar", [coeffs.get(k, field.zero) / lc for k in range(deg + 1)])


def parse_residue(rd: ExtDescriptor, base_var: str, text: str) -> ExtElem:
    """Parse in the residue field; the base variable names its residue class."""
    env = rd.env()
    env[base_var] = rd.gen()
    return parse_expression(text, env, lambda n: rd(n))


def _discriminant(desc: ExtDescriptor) -> RatFunc:
    d = desc.degree
    if d == 1:
        return desc.field.one
    m = desc.minpoly_upoly()
    deriv = m.derivative()(desc.gen())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * deriv.norm()


def make_place(
    descriptor: ExtDescriptor | None,
    base_var: str,
    base_prime: RatFunc,
    gen_image: ExtElem | None,
    uniformizer,
    name: str = "",
) -> Place:
    """Validate the data of a place and build it."""
    if descriptor is None:
        descriptor = rational_descriptor(base_prime.field)
    field = descriptor.field
    rd = residue_descriptor(field, base_var, base_prime)
    if gen_image is None:
        gen_image = rd(descriptor.gen().coeffs[0]) if descriptor.degree == 1 else None
    if gen_image is None:
        raise InvalidSpec("gen_image is required for a proper extension")
    gen_image = rd(gen_image) if not isinstance(gen_image, ExtElem) else gen_image
    uniformizer = descriptor(uniformizer)
    prime = base_prime.num

    # the defining polynomial must be integral and unramified at p
    for c in descriptor.minpoly:
        if c != 0 and ratfunc_ord(c, prime) < 0:
            raise InvalidPlace(InvalidPlace.RAMIFICATION_UNSUPPORTED, "generator is not integral at the prime")
    disc = _discriminant(descriptor)
    if disc == 0 or ratfunc_ord(disc, prime) > 0:
        raise InvalidPlace(InvalidPlace.RAMIFICATION_UNSUPPORTED, f"prime {base_prime} divides the discriminant {disc}")

    place = Place(descriptor, base_var, base_prime, gen_image, uniformizer, name, rd)

    m_res = [place.residue_ratfunc(c) for c in descriptor.minpoly]
    value = rd.zero
    for c in reversed(m_res):
        value = value * gen_image + c
    if not value.is_zero():
        raise InvalidPlace(InvalidPlace.GEN_IMAGE_NOT_ROOT, f"{gen_image} is not a root of the minimal polynomial")

    if uniformizer.is_zero() or any(c != 0 and ratfunc_ord(c, prime) < 0 for c in uniformizer.coeffs):
        raise InvalidPlace(InvalidPlace.UNIFORMIZER_NOT_IN_PRIME, f"{uniformizer} is not integral")
    if not place._coordinate_residue(uniformizer).is_zero():
        raise InvalidPlace(InvalidPlace.UNIFORMIZER_NOT_IN_PRIME, f"residue of {uniformizer} is nonzero")
    k = ratfunc_ord(uniformizer.norm(), prime)
    if k != 1:
        raise InvalidPlace(InvalidPlace.RAMIFICATION_UNSUPPORTED, f"ord of Norm({uniformizer}) is {k}, not 1")
    return place


def residue_of(pl: Place, x):
    return pl.residue(x)


def valuation_of(pl: Place, x) -> int:
    return pl.valuation(x)


def norm_to_base(x: ExtElem) -> RatFunc:
    return x.norm()


# -- independent route: Hensel lifting ---------------------------------------------------------


class _Truncated:
    """Arithmetic in ``k(others)[v]/(p^N)``, elements as UniPoly in v."""

    def __init__(self, place: Place, precision: int):
        self.place = place
        self.field = place.field
        self.idx = VAR_INDEX[place.base_var]
        self.p = self.to_upoly(place.prime_poly)
        self.N = precision
        self.modulus = self.p**precision

    def to_upoly(self, poly) -> UniPoly:
        gens = self.field.gens()
        coeffs: dict[int, RatFunc] = {}
        for exps, c in poly.terms():
            term = self.field.const(self.field.coeff_to_python(c))
            for i, e in enumerate(exps):
                if e and i != self.idx:
                    term = term * gens[VARIABLES[i]] ** int(e)
            e = int(exps[self.idx])
            coeffs[e] = coeffs.get(e, self.field.zero) + term
        top = max(coeffs) if coeffs else -1
        return UniPoly([coeffs.get(k, self.field.zero) for k in range(top + 1)], self.field.zero, self.place.base_var)

    def reduce(self, f: UniPoly) -> UniPoly:
        return f % self.modulus

    def unit_inverse(self, f: UniPoly) -> UniPoly:
        g, s, _ = f.xgcd(self.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("not a unit modulo p^N")
        return self.reduce(s)

    def from_ratfunc(self, x: RatFunc) -> tuple[UniPoly, int]:
        """``x = p^(-e) * value`` with value in the truncated ring; returns (value, e)."""
        if x.is_zero():
            return UniPoly([], self.field.zero, self.place.base_var), 0
        prime = self.place.prime_poly
        num, den = x.num, x.den
        k_num = poly_ord(num, prime)
        k_den = poly_ord(den, prime)
        num_s = self.to_upoly(_strip(num, prime))
        den_s = self.to_upoly(_strip(den, prime))
        value = self.reduce(num_s * self.unit_inverse(self.reduce(den_s)))
        return value, k_den - k_num

    def ord(self, f: UniPoly) -> int | None:
        f = self.reduce(f)
        if f.is_zero():
            return None
        k = 0
        while True:
            q, r = f.divmod(self.p)
            if not r.is_zero():
                return k
            f = q
            k += 1

    def root(self) -> UniPoly:
        """Lift of the generator image to a root of the minimal polynomial."""
        desc = self.place.descriptor
        r = UniPoly([c for c in self.place.gen_image.coeffs], self.field.zero, self.place.base_var)
        m = [self.from_ratfunc(c) for c in desc.minpoly]
        if any(e > 0 for _, e in m):
            raise InvalidPlace(InvalidPlace.RAMIFICATION_UNSUPPORTED, "non-integral minimal polynomial")
        coeffs = [self.reduce(v * self.p ** (-e)) for v, e in m]

        def ev(poly_coeffs, x):
            acc = UniPoly([], self.field.zero, self.place.base_var)
            for c in reversed(poly_coeffs):
                acc = self.reduce(acc * x + c)
            return acc

        deriv = [c * k for k, c in enumerate(coeffs)][1:]
        precision = 1
        while precision < self.N:
            precision *= 2
            r = self.reduce(r - ev(coeffs, r) * self.unit_inverse(ev(deriv, r)))
        return r


def hensel_valuation(place: Place, x, precision: int = 4, max_precision: int = 64) -> int:
    """ν(x) computed in the truncated completion (independent of π)."""
    x = place.descriptor(x)
    if x.is_zero():
        raise ZeroInput("valuation of zero")
    while precision <= max_precision:
        ring = _Truncated(place, precision)
        r = ring.root()
        parts = [(ring.from_ratfunc(c) if c != 0 else None) for c in x.coeffs]
        shift = max(e for part in parts if part is not None for e in [part[1]])
        total = UniPoly([], place.field.zero, place.base_var)
        power = UniPoly([place.field.one], place.field.zero, place.base_var)
        for part in parts:
            if part is not None:
                value, e = part
                total = ring.reduce(total + value * ring.p ** (shift - e) * power)
            power = ring.reduce(power * r)
        k = ring.ord(total)
        if k is not None:
            return k - shift
        precision *= 2
    raise AssertionError("precision limit reached in hensel_valuation")


# -- JSON descriptors ----------------------------------------------------------------------------


def place_from_json(data: Mapping | str) -> Place:
    if isinstance(data, str):
        data = json.loads(data)
    field = BaseField(int(data.get("characteristic", 0)))
    generator = data.get("generator")
    minpoly_text = data["minpoly"]
    if generator is None:
        from .arith.parse import _tokenize

        names = {v for kind, v in _tokenize(minpoly_text) if kind == "name"} - set(VARIABLES)
        if len(names) != 1:
            raise InvalidSpec(f"cannot infer the generator of {minpoly_text!r}")
        generator = names.pop()
    var = UniPoly([field.zero, field.one], field.zero, generator)
    env = {name: UniPoly([g], field.zero, generator) for name, g in field.gens().items()}
    env[generator] = var
    m = parse_expression(minpoly_text, env, lambda n: UniPoly([field.const(n)], field.zero, generator))
    m = m.monic()
    desc = ExtDescriptor(field, generator, list(m.coeffs))
    base_var = data["base_var"]
    base_prime = field.parse(data["base_prime"])
    rd = residue_descriptor(field, base_var, base_prime)
    gen_image = parse_residue(rd, base_var, data["gen_image"])
    uniformizer = desc.parse(data["uniformizer"])
    return make_place(desc, base_var, base_prime, gen_image, uniformizer, data.get("name", ""))


def place_to_json(place: Place) -> dict:
    return place.to_json()


# -- the named places used by the scenarios -----------------------------------------------------


def named_place(name: str) -> Place:
    """Places referenced by the scenarios, keyed by their report names."""
    from .arith.fields import GF3, QQ

    table = {
        "P(1+i)": (quadratic_a(QQ), "a", "1-a", "-1", "1+i"),
        "P(1+2i)": (quadratic_a(QQ), "a", "1-4*a", "-1/2", "1+2*i"),
        "P(1+2j)": (quadratic_b(QQ), "b", "1-4*b", "-1/2", "1+2*j"),
        "P(alpha)": (quadratic_b(QQ), "b", "b^2-3*b+1", "1-b", "-1+b+j"),
        "P(mu)": (quadratic_b(QQ), "b", "b^2+b+1", "-(1+b)", "1+b+j"),
        "P(1+(1+1/a)i)": (quadratic_a(QQ), "a", "a^2+a+1", "a^2", "1+(1+1/a)*i"),
        "P(1-(1-1/a)i)": (quadratic_a(QQ), "a", "a^2-3*a+1", "a/(a-1)", "1-(1-1/a)*i"),
        "P(1+i^2)": (artin_schreier(GF3), "a", "1+a^2", "a", "1+i^2"),
        "P(i)": (artin_schreier(GF3), "a", "a", "0", "i"),
    }
    if name not in table:
        raise InvalidSpec(f"unknown place {name!r}")
    desc, base_var, prime, image, pi = table[name]
    base_prime = desc.field.parse(prime)
    rd = residue_descriptor(desc.field, base_var, base_prime)
    return make_place(desc, base_var, base_prime, parse_residue(rd, base_var, image), desc.parse(pi), name)
