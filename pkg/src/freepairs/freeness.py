"""Valuation certificates for free pairs and a random-word falsifier.

A certificate records the hypotheses of the ping-pong criterion for a pair
``{A, B^-1 A B}``: A diagonal with a unique entry of maximal valuation and a
unique entry of minimal valuation, and every entry of B and B^-1 of
valuation zero.  Every number in it can be re-derived by
:func:`verify_certificate`, which uses the Hensel-lift valuation rather
than the uniformizer-division one.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import flint

from .arith.ext import ExtDescriptor, ExtElem
from .arith.fields import VARIABLES, RatFunc
from .arith.matrix import SqMatrix
from .errors import SingularMatrix
from .places import Place, hensel_valuation

CERTIFIED = "CERTIFIED"
FAILED = "FAILED"
INAPPLICABLE = "INAPPLICABLE"
EXACT_PAIR = "EXACT_PAIR"
SUBGROUP_WITNESS = "SUBGROUP_WITNESS"

Valuations = tuple  # nested tuples of int | None (None marks a zero entry)


@dataclass(frozen=True)
class FreenessCertificate:
    place: str
    eigen_valuations: tuple
    B_valuations: tuple
    Binv_valuations: tuple
    verdict: str
    strength: str = EXACT_PAIR
    pair: Mapping[str, list] = field(default_factory=dict, compare=False)
    reason: str = ""

    def to_json(self) -> dict:
        out = {
            "place": self.place,
            "eigen_valuations": list(self.eigen_valuations),
            "B_valuations": [list(r) for r in self.B_valuations],
            "Binv_valuations": [list(r) for r in self.Binv_valuations],
            "verdict": self.verdict,
            "strength": self.strength,
        }
        if self.pair:
            out["pair"] = {k: v for k, v in self.pair.items()}
        if self.reason:
            out["reason"] = self.reason
        return out

    @classmethod
    def from_json(cls, data: Mapping | str) -> "FreenessCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            place=data["place"],
            eigen_valuations=tuple(data["eigen_valuations"]),
            B_valuations=tuple(tuple(r) for r in data["B_valuations"]),
            Binv_valuations=tuple(tuple(r) for r in data["Binv_valuations"]),
            verdict=data["verdict"],
            strength=data.get("strength", EXACT_PAIR),
            pair=data.get("pair", {}),
            reason=data.get("reason", ""),
        )


def _val(valuation, x):
    if x == 0:
        return None
    return valuation(x)


def _verdict(eigen: Sequence, bv: Sequence[Sequence], biv: Sequence[Sequence]) -> tuple[str, str]:
    if any(e is None for e in eigen):
        return FAILED, "A has a zero diagonal entry"
    hi, lo = max(eigen), min(eigen)
    if eigen.count(hi) != 1:
        return FAILED, "no unique eigenvalue of maximal valuation"
    if eigen.count(lo) != 1:
        return FAILED, "no unique eigenvalue of minimal valuation"
    for name, rows in (("B", bv), ("B^-1", biv)):
        for row in rows:
            for v in row:
                if v != 0:
                    return FAILED, f"an entry of {name} has valuation {v}"
    return CERTIFIED, ""


def _valuation_tables(A: SqMatrix, B: SqMatrix, valuation):
    Binv = B.inverse()
    eigen = tuple(_val(valuation, x) for x in A.diagonal_entries())
    bv = tuple(tuple(_val(valuation, x) for x in row) for row in B.rows)
    biv = tuple(tuple(_val(valuation, x) for x in row) for row in Binv.rows)
    return eigen, bv, biv


def certify(A: SqMatrix, B: SqMatrix, pl: Place, strength: str = EXACT_PAIR) -> FreenessCertificate:
    """Check the ping-pong hypotheses for ``{A, B^-1 A B}`` at ``pl``."""
    pair = {"A": A.to_strings(), "B": B.to_strings()}
    size = len(A.rows)
    if not A.is_diagonal():
        empty = tuple(tuple(None for _ in range(size)) for _ in range(size))
        return FreenessCertificate(pl.name, (), empty, empty, INAPPLICABLE, strength, pair, "A is not diagonal")
    try:
        eigen, bv, biv = _valuation_tables(A, B, pl.valuation)
    except SingularMatrix:
        empty = tuple(tuple(None for _ in range(size)) for _ in range(size))
        return FreenessCertificate(pl.name, (), empty, empty, FAILED, strength, pair, "B is singular")
    verdict, reason = _verdict(list(eigen), bv, biv)
    return FreenessCertificate(pl.name, eigen, bv, biv, verdict, strength, pair, reason)


def verify_certificate(cert: FreenessCertificate, A: SqMatrix, B: SqMatrix, pl: Place) -> list[str]:
    """Recompute every valuation by the Hensel route; return the disagreements."""
    problems = []
    if cert.verdict == INAPPLICABLE:
        if A.is_diagonal():
            problems.append("A is diagonal but the certificate says INAPPLICABLE")
        return problems
    val = lambda x: hensel_valuation(pl, x)  # noqa: E731
    eigen, bv, biv = _valuation_tables(A, B, val)
    if tuple(eigen) != tuple(cert.eigen_valuations):
        problems.append(f"eigen valuations {eigen} != {cert.eigen_valuations}")
    if bv != tuple(map(tuple, cert.B_valuations)):
        problems.append(f"B valuations {bv} != {cert.B_valuations}")
    if biv != tuple(map(tuple, cert.Binv_valuations)):
        problems.append(f"B^-1 valuations {biv} != {cert.Binv_valuations}")
    verdict, _ = _verdict(list(eigen), bv, biv)
    if verdict != cert.verdict:
        problems.append(f"verdict {verdict} != {cert.verdict}")
    return problems


def parse_matrix(rows: Sequence[Sequence[str]], desc: ExtDescriptor) -> SqMatrix:
    return SqMatrix([[desc.parse(str(x)) for x in row] for row in rows])


# -- random word sampling ---------------------------------------------------------------------------

_Q61 = 2**61 - 1
_GF3_DEGREE = 13
LETTERS = ("g", "G", "h", "H")
_INVERSE = {"g": "G", "G": "g", "h": "H", "H": "h"}


@dataclass(frozen=True)
class WordSampleReport:
    generators: str
    max_len: int
    count: int
    seed: int
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "max_len": self.max_len,
            "count": self.count,
            "seed": self.seed,
            "failures": list(self.failures),
            "passed": self.passed,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "WordSampleReport":
        return cls(data["generators"], data["max_len"], data["count"], data["seed"], tuple(data["failures"]))


def random_reduced_word(rng: random.Random, max_len: int) -> str:
    length = rng.randint(1, max_len)
    word = [rng.choice(LETTERS)]
    while len(word) < length:
        word.append(rng.choice([c for c in LETTERS if c != _INVERSE[word[-1]]]))
    return "".join(word)


class _Specializer:
    """A random ring map from the entries' field into a large finite field."""

    def __init__(self, characteristic: int, desc: ExtDescriptor | None, rng: random.Random):
        self.characteristic = characteristic
        self.rng = rng
        if characteristic == 0:
            self.make = lambda n: flint.nmod(n, _Q61)
            self.random = lambda: flint.nmod(rng.randrange(_Q61), _Q61)
        elif characteristic == 3:
            ctx = flint.fq_default_ctx(3, _GF3_DEGREE)
            z = ctx.gen()
            self.make = lambda n: ctx(n % 3)
            self.random = lambda: sum((ctx(rng.randrange(3)) * z**k for k in range(_GF3_DEGREE)), ctx.zero())
        else:
            raise ValueError(f"no word sampler for characteristic {characteristic}")
        self.desc = desc
        self.values: dict[str, object] = {}
        self.theta = None
        self._choose()

    def _coeff(self, c):
        if self.characteristic == 0:
            c = Fraction(int(c.p), int(c.q)) if hasattr(c, "p") else Fraction(c)
            return self.make(c.numerator) / self.make(c.denominator)
        return self.make(int(c))

    def _poly(self, poly):
        total = self.make(0)
        for exps, c in poly.terms():
            term = self._coeff(c)
            for name, e in zip(VARIABLES, exps):
                if e:
                    term = term * self.values[name] ** int(e)
            total = total + term
        return total

    def ratfunc(self, x: RatFunc):
        den = self._poly(x.den)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self._poly(x.num) / den

    def _choose(self):
        # free variables first; with an extension, solve the minpoly's constant
        # term for one parameter so that a random theta becomes a root
        param = None
        if self.desc is not None:
            param = _linear_parameter(self.desc)
        for name in VARIABLES:
            if name != param:
                self.values[name] = self.random()
        if self.desc is None:
            return
        theta = self.random()
        c0 = self.desc.minpoly[0]
        rest = self.make(0)
        for k, c in enumerate(self.desc.minpoly[1:], start=1):
            rest = rest + self.ratfunc(c) * theta**k
        # c0 = kappa * param + c00 with kappa, c00 free of param
        kappa, c00 = _split_linear(c0, param)
        self.values[param] = self.make(0)
        k_val = self.ratfunc(kappa)
        if k_val == 0:
            raise ZeroDivisionError("degenerate parameter choice")
        self.values[param] = -(rest + self.ratfunc(c00)) / k_val
        self.theta = theta

    def value(self, x):
        if isinstance(x, ExtElem):
            total = self.make(0)
            for k, c in enumerate(x.coeffs):
                if c != 0:
                    total = total + self.ratfunc(c) * self.theta**k
            return total
        if isinstance(x, RatFunc):
            return self.ratfunc(x)
        x = Fraction(x)
        return self.make(x.numerator) / self.make(x.denominator)


def _split_linear(c0: RatFunc, param: str) -> tuple[RatFunc, RatFunc]:
    zero = c0.field.zero
    c00 = c0.subs({param: zero})
    kappa = c0.subs({param: c0.field.one}) - c00
    if c0 != kappa * c0.field.gen(param) + c00:
        raise ValueError(f"{c0} is not affine in {param}")
    return kappa, c00


def _linear_parameter(desc: ExtDescriptor) -> str:
    for name in VARIABLES:
        if any(name in c.variables() for c in desc.minpoly[1:]):
            continue
        c0 = desc.minpoly[0]
        if name not in c0.variables():
            continue
        try:
            _split_linear(c0, name)
        except ValueError:
            continue
        return name
    raise ValueError(f"cannot parametrise a root of the minimal polynomial of {desc.generator}")


def _entries_info(matrices: Sequence[SqMatrix]) -> tuple[int, ExtDescriptor | None]:
    desc = None
    characteristic = 0
    for M in matrices:
        for row in M.rows:
            for x in row:
                if isinstance(x, ExtElem):
                    desc = x.desc
                    characteristic = x.desc.field.characteristic
                elif isinstance(x, RatFunc):
                    characteristic = x.field.characteristic
    return characteristic, desc


def _mat_mul(X, Y):
    n = len(X)
    return [[sum((X[i][k] * Y[k][j] for k in range(1, n)), X[i][0] * Y[0][j]) for j in range(n)] for i in range(n)]


def _is_identity(M) -> bool:
    n = len(M)
    return all((M[i][j] == 1) if i == j else (M[i][j] == 0) for i in range(n) for j in range(n))


def _exact_word(word: str, mats: Mapping[str, SqMatrix]) -> SqMatrix:
    out = mats[word[0]]
    for c in word[1:]:
        out = out * mats[c]
    return out


def sample_words(g: SqMatrix, h: SqMatrix, max_len: int = 8, count: int = 200, seed: int = 0, label: str = "") -> WordSampleReport:
    """Evaluate ``count`` random reduced words and report those equal to the identity.

    Words are evaluated at a random point of a large finite field; a word that
    looks trivial there is re-evaluated exactly before it is reported.
    """
    rng = random.Random(seed)
    characteristic, desc = _entries_info([g, h])
    g_inv, h_inv = g.inverse(), h.inverse()
    exact = {"g": g, "G": g_inv, "h": h, "H": h_inv}
    for _ in range(32):
        try:
            spec = _Specializer(characteristic, desc, rng)
            num = {k: [[spec.value(x) for x in row] for row in M.rows] for k, M in exact.items()}
            break
        except ZeroDivisionError:
            continue
    else:
        raise RuntimeError("could not find a regular sample point")
    failures = []
    for _ in range(count):
        word = random_reduced_word(rng, max_len)
        M = num[word[0]]
        for c in word[1:]:
            M = _mat_mul(M, num[c])
        if _is_identity(M):
            E = _exact_word(word, exact)
            if E == E.like_identity():
                failures.append(word)
    return WordSampleReport(label or "g, h", max_len, count, seed, tuple(sorted(set(failures))))
