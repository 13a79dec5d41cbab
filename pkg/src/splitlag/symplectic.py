"""Symplectic vector spaces over Q and the subspace calculus on them.

A space is a finite-dimensional Q-vector space with an invertible
skew-symmetric Gram matrix.  In finite dimensions injectivity of the
induced map into the dual already forces invertibility, so there is no
separate weakly-nondegenerate mode.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .linalg import (Matrix, Subspace, block_diag, hstack, is_direct_sum,
                     kernel_basis, vec, vec_dot, ZERO, ONE)


@dataclass(frozen=True)
class SymplecticSpace:
    """Q^dim equipped with an invertible skew form given by its Gram matrix."""

    dim: int
    form: Matrix

    def __post_init__(self):
        if self.form.rows != self.dim or self.form.cols != self.dim:
            raise PreconditionError("form matrix has the wrong shape")
        if self.form.transpose() != -self.form:
            raise PreconditionError("form matrix is not skew-symmetric")
        if self.form.rank() != self.dim:
            raise PreconditionError("form matrix is degenerate")

    def pairing(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return vec_dot(vec(u), self.form.times_vector(vec(v)))

    def gram(self, a: Subspace, b: Subspace) -> Matrix:
        """Pairings of the basis vectors of ``a`` against those of ``b``."""
        if a.ambient_dim != self.dim or b.ambient_dim != self.dim:
            raise PreconditionError("subspace ambient does not match space")
        right = [self.form.times_vector(row) for row in b.basis.entries]
        return Matrix([[vec_dot(row, col) for col in right]
                       for row in a.basis.entries],
                      a.dim, b.dim)

    def full_subspace(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero_subspace(self) -> Subspace:
        return Subspace.zero(self.dim)


def make_standard(n: int) -> SymplecticSpace:
    """Standard 2n-dimensional space in the basis (q1, p1, ..., qn, pn)."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    block = Matrix([[0, 1], [-1, 0]])
    return SymplecticSpace(2 * n, block_diag(*([block] * n))
                           if n else Matrix([], 0, 0))


def opposite(v: SymplecticSpace) -> SymplecticSpace:
    """Same space with the negated form."""
    return SymplecticSpace(v.dim, -v.form)


def direct_sum(a: SymplecticSpace, b: SymplecticSpace) -> SymplecticSpace:
    return SymplecticSpace(a.dim + b.dim, block_diag(a.form, b.form))


def symp_orthogonal(v: SymplecticSpace, w: Subspace) -> Subspace:
    """All vectors pairing to zero with every element of ``w``."""
    if w.ambient_dim != v.dim:
        raise PreconditionError("subspace ambient does not match space")
    if w.dim == 0:
        return Subspace.full(v.dim)
    return kernel_basis(w.basis * v.form)


@dataclass(frozen=True)
class SubspaceClass:
    isotropic: bool
    coisotropic: bool
    lagrangian: bool
    symplectic_subspace: bool


def classify(v: SymplecticSpace, w: Subspace) -> SubspaceClass:
    """Isotropy flags of ``w`` via containment against its orthogonal."""
    ortho = symp_orthogonal(v, w)
    iso = ortho.contains(w)
    coiso = w.contains(ortho)
    return SubspaceClass(
        isotropic=iso,
        coisotropic=coiso,
        lagrangian=iso and coiso,
        symplectic_subspace=w.intersect(ortho).dim == 0,
    )


class SplittingLPair:
    """Two complementary isotropic subspaces; each is then Lagrangian."""

    __slots__ = ("space", "l", "l_prime")

    def __init__(self, space: SymplecticSpace, l: Subspace, l_prime: Subspace):
        for part in (l, l_prime):
            if part.ambient_dim != space.dim:
                raise PreconditionError("pair ambient does not match space")
            if not classify(space, part).isotropic:
                raise PreconditionError("pair members must be isotropic")
        if not is_direct_sum([l, l_prime], Subspace.full(space.dim)):
            raise PreconditionError("pair members must be complementary")
        self.space = space
        self.l = l
        self.l_prime = l_prime


def projection_matrix(onto: Subspace, along: Subspace) -> Matrix:
    """Matrix of the projection onto ``onto`` along ``along``.

    Requires onto + along to be a direct decomposition of the ambient.
    """
    n = onto.ambient_dim
    if along.ambient_dim != n or onto.dim + along.dim != n:
        raise PreconditionError("projection needs a direct decomposition")
    t = hstack(along.basis.transpose(), onto.basis.transpose())
    t_inv = t.inverse()
    selector = block_diag(Matrix.zeros(along.dim, along.dim),
                          Matrix.identity(onto.dim))
    return t * selector * t_inv


def average_complement(v: SymplecticSpace, l: Subspace,
                       k: Subspace) -> Subspace:
    """Move a complement of a Lagrangian to an isotropic one.

    The result is the image of (P_K + P_{K^w})/2, where both projections
    are taken along ``l``; it agrees with the set of averages (k0+k0')/2
    over pairs k0 in K, k0' in K^w with k0-k0' in L, and it equals ``k``
    whenever ``k`` is already isotropic.
    """
    if not classify(v, l).lagrangian:
        raise PreconditionError("l must be Lagrangian")
    if not is_direct_sum([l, k], Subspace.full(v.dim)):
        raise PreconditionError("k must be a complement of l")
    k_omega = symp_orthogonal(v, k)
    p_k = projection_matrix(onto=k, along=l)
    p_ko = projection_matrix(onto=k_omega, along=l)
    avg = (p_k + p_ko).scale(Fraction(1, 2))
    return Subspace.span(v.dim, avg.transpose())


def lagrangian_complement(v: SymplecticSpace, l: Subspace) -> Subspace:
    """A Lagrangian complement of ``l``: greedy complement, then averaging."""
    if not classify(v, l).lagrangian:
        raise PreconditionError("l must be Lagrangian")
    k = l.complement_in(Subspace.full(v.dim))
    return average_complement(v, l, k)


def _random_fraction(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_lagrangian(v: SymplecticSpace, seed: int) -> Subspace:
    """Seeded Lagrangian in a standard space: graph of a symmetric matrix.

    The rows are q_i + sum_j S_ij p_j over the q-plane of the Darboux
    frame (q1, p1, ..., qn, pn); symmetry of S makes the graph Lagrangian.
    """
    n = v.dim // 2
    if v != make_standard(n):
        raise PreconditionError("random_lagrangian needs the standard form")
    rng = random.Random(seed)
    sym = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            sym[i][j] = sym[j][i] = _random_fraction(rng)
    rows = []
    for i in range(n):
        row = [ZERO] * (2 * n)
        row[2 * i] = ONE
        for j in range(n):
            row[2 * j + 1] = sym[i][j]
        rows.append(row)
    return Subspace.span(2 * n, rows)


def sample_lagrangian(v: SymplecticSpace, rng: random.Random) -> Subspace:
    """Seeded Lagrangian of an arbitrary space by isotropic completion."""
    n = v.dim // 2
    current = Subspace.zero(v.dim)
    while current.dim < n:
        ortho = symp_orthogonal(v, current)
        for _ in range(200):
            coeffs = [_random_fraction(rng) for _ in range(ortho.dim)]
            cand = [sum((c * row[j] for c, row in
                         zip(coeffs, ortho.basis.entries)), ZERO)
                    for j in range(v.dim)]
            if not current.contains_vector(cand):
                current = current.sum(Subspace.span(v.dim, [cand]))
                break
        else:  # pragma: no cover - isotropic extension always exists
            raise RuntimeError("failed to extend an isotropic subspace")
    return current


def sample_complement(whole: Subspace, part: Subspace,
                      rng: random.Random) -> Subspace:
    """Seeded complement of ``part`` in ``whole``: greedy basis, sheared."""
    base = part.complement_in(whole)
    rows = []
    for row in base.basis.entries:
        shift = list(row)
        for prow in part.basis.entries:
            c = _random_fraction(rng)
            shift = [a + c * b for a, b in zip(shift, prow)]
        rows.append(shift)
    return Subspace.span(whole.ambient_dim, rows)


def sample_lagrangian_complement(v: SymplecticSpace, l: Subspace,
                                 rng: random.Random) -> Subspace:
    """Seeded Lagrangian complement of ``l``: random complement, averaged."""
    k = sample_complement(Subspace.full(v.dim), l, rng)
    return average_complement(v, l, k)
