"""Exact dense linear algebra over the rationals.

Scalars are ``fractions.Fraction`` values, so every operation is exact:
there is no floating point anywhere in this package.  Matrices are
immutable row-major grids.  Subspaces are stored through the reduced
row-echelon form of a spanning set, which is unique, so two subspaces
are equal exactly when their stored bases are equal entry-wise.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like ``-3/7`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise InputError(f"cannot interpret {x!r} as an exact rational")


def parse_scalar(text: str) -> Fraction:
    """Parse a ``p/q`` or plain-integer string into a Fraction."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}: {exc}") from None
    return value


def format_scalar(value: Fraction) -> str:
    """Render a Fraction as ``p`` or ``p/q`` with positive q."""
    return str(value)


def vec(items: Iterable) -> Vector:
    return tuple(frac(x) for x in items)


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def vec_dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    total = ZERO
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def is_zero_vec(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(frac(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows:
            raise InputError(f"expected {rows} rows, got {len(data)}")
        for row in data:
            if len(row) != cols:
                raise InputError(f"ragged matrix: row of length {len(row)}, "
                                 f"expected {cols}")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)]
                    for i in range(n)], n, n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(x) for x in row)
                         for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError("matrix shapes differ")
        return Matrix([vec_add(a, b) for a, b in
                       zip(self.entries, other.entries)], self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "Matrix":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix([vec_scale(c, row) for row in self.entries],
                      self.rows, self.cols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise PreconditionError(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}")
        # accumulate scaled rows, skipping zeros: bases and form matrices
        # are sparse in practice
        width = other.cols
        out = []
        for row in self.entries:
            acc = [ZERO] * width
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix(out, self.rows, width)

    def transpose(self) -> "Matrix":
        return Matrix([[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], self.cols, self.rows)

    def times_vector(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise PreconditionError("vector length does not match columns")
        return tuple(vec_dot(row, v) for row in self.entries)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def _integer_rows(self) -> list[list[int]]:
        out = []
        for row in self.entries:
            den = 1
            for x in row:
                den = den * x.denominator // math.gcd(den, x.denominator)
            ints = [int(x * den) for x in row]
            g = 0
            for x in ints:
                g = math.gcd(g, x)
            if g > 1:
                ints = [x // g for x in ints]
            out.append(ints)
        return out

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row-echelon form and its pivot columns.

        Elimination runs over integer-scaled rows with gcd stripping, so
        intermediate growth stays tame; the exact RREF is recovered by a
        single division per pivot row at the end.
        """
        m = self._integer_rows()
        nr, nc = self.rows, self.cols
        pivots: list[int] = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            p = m[r][c]
            for i in range(nr):
                if i == r or m[i][c] == 0:
                    continue
                f = m[i][c]
                ri, rr = m[i], m[r]
                row = [p * a - f * b for a, b in zip(ri, rr)]
                g = 0
                for x in row:
                    g = math.gcd(g, x)
                if g > 1:
                    row = [x // g for x in row]
                m[i] = row
            pivots.append(c)
            r += 1
            if r == nr:
                break
        out_rows = []
        for i in range(nr):
            if i < len(pivots):
                p = m[i][pivots[i]]
                out_rows.append([Fraction(a, p) for a in m[i]])
            else:
                out_rows.append([ZERO] * nc)
        return Matrix(out_rows, nr, nc), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Matrix":
        """Rows span the right kernel {v : self @ v = 0}."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        rows = []
        for f in free:
            v = [ZERO] * self.cols
            v[f] = ONE
            for r_idx, pc in enumerate(pivots):
                v[pc] = -reduced.entries[r_idx][f]
            rows.append(v)
        return Matrix(rows, len(rows), self.cols)

    def solve(self, rhs: "Matrix") -> "Matrix":
        """One exact solution X of self @ X = rhs (free variables zero)."""
        if rhs.rows != self.rows:
            raise PreconditionError("right-hand side has wrong height")
        aug = hstack(self, rhs)
        reduced, pivots = aug.rref()
        for i in range(self.rows):
            if all(reduced.entries[i][c] == 0 for c in range(self.cols)) and \
                    any(reduced.entries[i][self.cols + j] != 0
                        for j in range(rhs.cols)):
                raise PreconditionError("linear system is inconsistent")
        sol = [[ZERO] * rhs.cols for _ in range(self.cols)]
        for r_idx, pc in enumerate(pivots):
            if pc >= self.cols:
                raise PreconditionError("linear system is inconsistent")
            for j in range(rhs.cols):
                sol[pc][j] = reduced.entries[r_idx][self.cols + j]
        return Matrix(sol, self.cols, rhs.cols)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise PreconditionError("only square matrices can be inverted")
        aug = hstack(self, Matrix.identity(self.rows))
        reduced, pivots = aug.rref()
        if len(pivots) != self.rows or any(p >= self.rows for p in pivots):
            raise PreconditionError("matrix is singular")
        return Matrix([row[self.rows:] for row in reduced.entries],
                      self.rows, self.rows)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise PreconditionError("determinant needs a square matrix")
        n = self.rows
        m = [list(row) for row in self.entries]
        sign = 1
        result = ONE
        for c in range(n):
            pr = None
            for i in range(c, n):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                return ZERO
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                sign = -sign
            pivot = m[c][c]
            result *= pivot
            for i in range(c + 1, n):
                if m[i][c] == 0:
                    continue
                f = m[i][c] / pivot
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return result * sign


def hstack(*mats: Matrix) -> Matrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise PreconditionError("hstack needs equal row counts")
    return Matrix([sum((list(m.entries[i]) for m in mats), [])
                   for i in range(rows)], rows, sum(m.cols for m in mats))


def vstack(*mats: Matrix) -> Matrix:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise PreconditionError("vstack needs equal column counts")
    entries = [row for m in mats for row in m.entries]
    return Matrix(entries, sum(m.rows for m in mats), cols)


def block_diag(*mats: Matrix) -> Matrix:
    total_r = sum(m.rows for m in mats)
    total_c = sum(m.cols for m in mats)
    grid = [[ZERO] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.entries):
            for j, x in enumerate(row):
                grid[r0 + i][c0 + j] = x
        r0 += m.rows
        c0 += m.cols
    return Matrix(grid, total_r, total_c)


class _Echelon:
    """Incremental row-echelon accumulator for independence tests."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[tuple[int, list[Fraction]]] = []

    def residue(self, candidate: Sequence[Fraction]) -> list[Fraction]:
        v = list(candidate)
        for pivot_col, row in self.rows:
            if v[pivot_col] != 0:
                f = v[pivot_col]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, candidate: Sequence[Fraction]) -> bool:
        """Insert if independent of the rows seen so far."""
        v = self.residue(candidate)
        for col, x in enumerate(v):
            if x != 0:
                inv = 1 / x
                row = [inv * a for a in v]
                self.rows.append((col, row))
                self.rows.sort(key=lambda item: item[0])
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


class Subspace:
    """A linear subspace of Q^n in canonical (RREF) basis form."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, ambient_dim: int, rows: Iterable[Iterable]) -> "Subspace":
        mat = Matrix(rows, cols=ambient_dim) if not isinstance(rows, Matrix) \
            else rows
        if mat.cols != ambient_dim:
            raise PreconditionError(
                f"rows of length {mat.cols} cannot span inside Q^{ambient_dim}")
        reduced, pivots = mat.rref()
        kept = [reduced.entries[i] for i in range(len(pivots))]
        return cls(ambient_dim, Matrix(kept, len(pivots), ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix([], 0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> tuple[Vector, ...]:
        return self.basis.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def _require_same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise PreconditionError(
                f"ambient dimensions differ: {self.ambient_dim} vs "
                f"{other.ambient_dim}")

    def sum(self, other: "Subspace") -> "Subspace":
        self._require_same_ambient(other)
        return Subspace.span(self.ambient_dim,
                             vstack(self.basis, other.basis))

    __add__ = sum

    def annihilator(self) -> Matrix:
        """Rows are the linear constraints cutting out this subspace."""
        return _kernel_cached(self.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._require_same_ambient(other)
        stacked = vstack(self.annihilator(), other.annihilator())
        return Subspace.span(self.ambient_dim, stacked.kernel())

    __and__ = intersect

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise PreconditionError("vector has wrong length")
        ech = _Echelon(self.ambient_dim)
        for row in self.basis.entries:
            ech.add(row)
        return is_zero_vec(ech.residue(vec(v)))

    def contains(self, other: "Subspace") -> bool:
        self._require_same_ambient(other)
        return self.sum(other) == self

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def complement_in(self, whole: "Subspace") -> "Subspace":
        """Greedy complement: extend by basis vectors of ``whole`` in order.

        Deterministic: scans the canonical basis of ``whole`` and keeps
        each vector that enlarges the span.
        """
        self._require_same_ambient(whole)
        if not whole.contains(self):
            raise PreconditionError("complement_in requires self <= whole")
        ech = _Echelon(self.ambient_dim)
        for row in self.basis.entries:
            ech.add(row)
        picked = []
        for row in whole.basis.entries:
            if ech.add(row):
                picked.append(row)
        return Subspace.span(self.ambient_dim, Matrix(picked,
                                                      len(picked),
                                                      self.ambient_dim))

    def project_coordinates(self, indices: Sequence[int]) -> "Subspace":
        """Image under the coordinate projection selecting ``indices``."""
        idx = list(indices)
        rows = [[row[i] for i in idx] for row in self.basis.entries]
        return Subspace.span(len(idx), Matrix(rows, len(rows), len(idx)))

    def embed(self, new_ambient: int, offset: int) -> "Subspace":
        """Include into a larger ambient space at the given offset."""
        if offset < 0 or offset + self.ambient_dim > new_ambient:
            raise PreconditionError("embedding does not fit")
        rows = [[ZERO] * offset + list(row)
                + [ZERO] * (new_ambient - offset - self.ambient_dim)
                for row in self.basis.entries]
        return Subspace.span(new_ambient, Matrix(rows, len(rows), new_ambient))


@functools.lru_cache(maxsize=2048)
def _kernel_cached(m: Matrix) -> Matrix:
    # annihilators of the same canonical basis recur constantly in the
    # intersection-heavy routines
    return m.kernel()


def kernel_basis(m: Matrix) -> Subspace:
    """Kernel of ``m`` as a subspace of the domain Q^cols."""
    return Subspace.span(m.cols, m.kernel())


def direct_product(a: Subspace, b: Subspace) -> Subspace:
    """a x b inside Q^(n_a + n_b), a-coordinates first."""
    n = a.ambient_dim + b.ambient_dim
    rows = [list(row) + [ZERO] * b.ambient_dim for row in a.basis.entries]
    rows += [[ZERO] * a.ambient_dim + list(row) for row in b.basis.entries]
    return Subspace.span(n, Matrix(rows, len(rows), n))


def is_direct_sum(parts: Sequence[Subspace], whole: Subspace) -> bool:
    """True when the parts sum to ``whole`` with independent dimensions.

    Uses the rank criterion (sum of part dimensions equals the dimension
    of the sum, which equals ``whole``); for two parts this coincides
    with the pairwise-trivial-intersection test.
    """
    total = Subspace.zero(whole.ambient_dim)
    for p in parts:
        whole._require_same_ambient(p)
        total = total.sum(p)
    return total == whole and sum(p.dim for p in parts) == whole.dim


def coordinates_in_basis(sub: Subspace, v: Sequence[Fraction]) -> Vector:
    """Coefficients of ``v`` in the canonical basis of ``sub``."""
    rhs = Matrix([[x] for x in vec(v)], len(v), 1)
    coeffs = sub.basis.transpose().solve(rhs)
    residual = sub.basis.transpose() * coeffs - rhs
    if not residual.is_zero():
        raise PreconditionError("vector lies outside the subspace")
    return tuple(row[0] for row in coeffs.entries)


def matrix_to_strings(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m.entries]


def matrix_from_strings(rows: Sequence[Sequence[str]],
                        cols: int | None = None) -> Matrix:
    try:
        return Matrix(rows, cols=cols)
    except (InputError, TypeError) as exc:
        raise InputError(f"bad matrix document: {exc}") from None
