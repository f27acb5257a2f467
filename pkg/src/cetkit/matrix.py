"""Dense matrices of polynomials (maps between free modules)."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .poly import Polynomial, RingError, RingSpec


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class Matrix:
    """An nrows x ncols matrix; column j is the image of the j-th source basis vector."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring: RingSpec, rows: Sequence[Sequence], ncols: int | None = None):
        self.ring = ring
        self.rows = tuple(tuple(ring(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def from_columns(cls, ring: RingSpec, cols: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [tuple(c) for c in cols]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(ring, rows, len(cols))

    @classmethod
    def zero(cls, ring: RingSpec, m: int, n: int) -> Matrix:
        z = ring.zero
        return cls(ring, [[z] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> Matrix:
        return cls.diag(ring, [ring.one] * n)

    @classmethod
    def diag(cls, ring: RingSpec, entries: Sequence) -> Matrix:
        n = len(entries)
        z = ring.zero
        return cls(ring, [[ring(entries[i]) if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def block(cls, ring: RingSpec, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        rows = []
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise ValueError("block row height mismatch")
            for i in range(h):
                rows.append([x for b in brow for x in b.rows[i]] if h else [])
        ncols = sum(b.ncols for b in blocks[0])
        return cls(ring, rows, ncols)

    @property
    def shape(self) -> tuple:
        return self.nrows, self.ncols

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> Matrix:
        return Matrix(self.ring, [self.col(j) for j in range(self.ncols)], self.nrows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ring != other.ring:
            raise RingError("ring mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        z = self.ring.zero
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = z
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(self.ring, out, other.ncols)

    def apply(self, v: Sequence[Polynomial]) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        z = self.ring.zero
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix(self.ring, [[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, f) -> Matrix:
        f = self.ring(f)
        return Matrix(self.ring, [[a * f for a in r] for r in self.rows], self.ncols)

    def map_entries(self, fn) -> Matrix:
        return Matrix(self.ring, [[fn(a) for a in r] for r in self.rows], self.ncols)

    def reduce(self, base) -> Matrix:
        """Entries replaced by normal forms modulo the base's defining ideal."""
        I = getattr(base, "defining", None)
        if I is None or not I.gens:
            return self
        return self.map_entries(I.normal_form)

    def is_zero(self, base=None) -> bool:
        M = self.reduce(base) if base is not None else self
        return all(not a for r in M.rows for a in r)

    def equals(self, other: Matrix, base=None) -> bool:
        return self.shape == other.shape and (self - other).is_zero(base)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def det(self) -> Polynomial:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return self.ring.one
        if n <= 4:
            total = self.ring.zero
            for p in permutations(range(n)):
                t = self.ring.const(_perm_sign(p))
                for i in range(n):
                    t = t * self.rows[i][p[i]]
                    if not t:
                        break
                total = total + t
            return total
        # Laplace along the first row
        total = self.ring.zero
        for j in range(n):
            a = self.rows[0][j]
            if a:
                minor = self.submatrix(range(1, n), [k for k in range(n) if k != j])
                term = a * minor.det()
                total = total + term if j % 2 == 0 else total - term
        return total

    def to_strings(self) -> list:
        return [[str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.to_strings()!r})"
