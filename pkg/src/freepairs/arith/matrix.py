"""Small dense square matrices over an exact field.

Entries may be anything with field operations (:class:`RatFunc`,
:class:`ExtElem`, finite-field elements from flint).  Sizes in this package
are 2 and 3, so determinants use cofactor expansion, which keeps symbolic
intermediate expressions small.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import SingularMatrix


class SqMatrix:
    __slots__ = ("rows", "n")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        self.rows = rows
        self.n = n

    # -- constructors -------------------------------------------------------------
    @classmethod
    def identity(cls, n: int, one) -> "SqMatrix":
        zero = one * 0
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "SqMatrix":
        zero = entries[0] * 0
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    def like_identity(self) -> "SqMatrix":
        return SqMatrix.identity(self.n, self.rows[0][0] * 0 + 1)

    # -- access -------------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def diagonal_entries(self) -> list:
        return [self.rows[i][i] for i in range(self.n)]

    def map(self, fn) -> "SqMatrix":
        return SqMatrix([[fn(x) for x in r] for r in self.rows])

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j)

    def transpose(self) -> "SqMatrix":
        return SqMatrix(list(zip(*self.rows)))

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other: "SqMatrix") -> "SqMatrix":
        return SqMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "SqMatrix") -> "SqMatrix":
        return SqMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "SqMatrix":
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if not isinstance(other, SqMatrix):
            return self.map(lambda x: x * other)
        if other.n != self.n:
            raise ValueError("size mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = r[0] * c[0]
                for x, y in zip(r[1:], c[1:]):
                    acc = acc + x * y
                row.append(acc)
            out.append(row)
        return SqMatrix(out)

    def __rmul__(self, scalar):
        return self.map(lambda x: scalar * x)

    def __pow__(self, e: int) -> "SqMatrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.like_identity()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, SqMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.n):
            acc = acc + self.rows[i][i]
        return acc

    def _minor(self, i: int, j: int) -> "SqMatrix":
        return SqMatrix([[x for c, x in enumerate(r) if c != j] for k, r in enumerate(self.rows) if k != i])

    def det(self):
        m = self.rows
        if self.n == 1:
            return m[0][0]
        if self.n == 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if self.n == 3:
            return (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
        # Gaussian elimination for larger sizes
        rows = [list(r) for r in m]
        det = rows[0][0] * 0 + 1
        for c in range(self.n):
            p = next((i for i in range(c, self.n) if rows[i][c] != 0), None)
            if p is None:
                return det * 0
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = 1 / rows[c][c]
            for i in range(c + 1, self.n):
                if rows[i][c] != 0:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return det

    def adjugate(self) -> "SqMatrix":
        if self.n == 1:
            return self.like_identity()
        cof = [[self._minor(i, j).det() * (1 if (i + j) % 2 == 0 else -1) for j in range(self.n)] for i in range(self.n)]
        return SqMatrix(cof).transpose()

    def inverse(self) -> "SqMatrix":
        d = self.det()
        if d == 0:
            raise SingularMatrix("matrix is singular")
        inv = 1 / d
        return self.adjugate().map(lambda x: x * inv)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __str__(self):
        return "[" + "; ".join(", ".join(r) for r in self.to_strings()) + "]"

    def __repr__(self):
        return f"SqMatrix({self})"


def matrix_ops(op: str, m: SqMatrix, n: SqMatrix | None = None):
    """MUL / INV / DET on square matrices."""
    op = op.upper()
    if op == "MUL":
        return m * n
    if op == "INV":
        return m.inverse()
    if op == "DET":
        return m.det()
    raise ValueError(f"unknown op {op!r}")
