"""Seeded generators for spaces, subspaces, Lagrangians and triples.

Everything here is driven by an explicit ``random.Random`` so test runs
are reproducible; outputs are verified exactly before being returned.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import PreconditionError
from .linalg import Matrix, Subspace, block_diag, ONE, ZERO
from .reduction import SplittingCTriple, c_triple_from_lagrangian_form
from .relations import (CanonicalRelation, SplitCanonicalRelation,
                        graph_of_map, relation_ambient)
from .symplectic import (SymplecticSpace, average_complement, classify,
                         make_standard, sample_complement, sample_lagrangian,
                         sample_lagrangian_complement, symp_orthogonal)


def sample_fraction(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def sample_vector(rng: random.Random, length: int) -> list[Fraction]:
    return [sample_fraction(rng) for _ in range(length)]


def sample_unimodular(rng: random.Random, n: int, shears: int = 0) -> Matrix:
    """Product of elementary shears; always invertible."""
    m = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    count = shears or 2 * n
    for _ in range(count):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = sample_fraction(rng)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return Matrix(m, n, n)


def sample_symplectic_space(rng: random.Random, dim: int) -> SymplecticSpace:
    """A space of the given even dimension with a generic invertible form."""
    if dim % 2:
        raise PreconditionError("symplectic spaces have even dimension")
    base = make_standard(dim // 2)
    m = sample_unimodular(rng, dim)
    return SymplecticSpace(dim, m.transpose() * base.form * m)


def sample_subspace(rng: random.Random, ambient: int, dim: int) -> Subspace:
    """A subspace of the requested dimension (dim <= ambient)."""
    if dim > ambient:
        raise PreconditionError("dim exceeds ambient")
    current = Subspace.zero(ambient)
    attempts = 0
    while current.dim < dim:
        cand = sample_vector(rng, ambient)
        enlarged = current.sum(Subspace.span(ambient, [cand]))
        if enlarged.dim > current.dim:
            current = enlarged
        attempts += 1
        if attempts > 100 * (dim + 1):  # pragma: no cover
            raise RuntimeError("failed to sample a subspace")
    return current


def sample_symplectomorphism(rng: random.Random, n: int,
                             shears: int = 4) -> Matrix:
    """A rational symplectic matrix for the standard 2n-dimensional space.

    Built from symmetric shears, block scalings and the quarter-turn in
    the grouped (q..q, p..p) basis, then conjugated into the interleaved
    Darboux ordering.
    """
    dim = 2 * n
    mats = []
    for _ in range(shears):
        kind = rng.randrange(3)
        if kind == 0:
            a = sample_unimodular(rng, n)
            mats.append(block_diag(a, a.inverse().transpose()))
        elif kind == 1:
            b = [[ZERO] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    b[i][j] = b[j][i] = sample_fraction(rng)
            upper = Matrix(b, n, n)
            rows = []
            for i in range(n):
                rows.append([ONE if k == i else ZERO for k in range(n)]
                            + list(upper.entries[i]))
            for i in range(n):
                rows.append([ZERO] * n
                            + [ONE if k == i else ZERO for k in range(n)])
            mats.append(Matrix(rows, dim, dim))
        else:
            rows = []
            for i in range(n):
                rows.append([ZERO] * n
                            + [ONE if k == i else ZERO for k in range(n)])
            for i in range(n):
                rows.append([-ONE if k == i else ZERO for k in range(n)]
                            + [ZERO] * n)
            mats.append(Matrix(rows, dim, dim))
    product = Matrix.identity(dim)
    for m in mats:
        product = product * m
    # grouped (q1..qn, p1..pn) -> interleaved (q1, p1, ..., qn, pn)
    perm = Matrix.zeros(dim, dim)
    grid = [list(row) for row in perm.entries]
    for i in range(n):
        grid[2 * i][i] = ONE
        grid[2 * i + 1][n + i] = ONE
    p = Matrix(grid, dim, dim)
    result = p * product * p.transpose()
    std = make_standard(n)
    if result.transpose() * std.form * result != std.form:  # pragma: no cover
        raise RuntimeError("sampled matrix is not symplectic")
    return result


def _image_subspace(m: Matrix, sub: Subspace) -> Subspace:
    rows = sub.basis * m.transpose()
    return Subspace.span(m.rows, rows)


def sample_triple(rng: random.Random, n: int, k: int) -> SplittingCTriple:
    """A random splitting triple in the standard 2n-dimensional space.

    A standard coisotropic of dimension n+k is pushed through a random
    symplectomorphism; the complement of its orthogonal is sheared, and
    the isotropic ambient complement is a random Lagrangian complement
    inside the symplectic orthogonal of that choice.
    """
    if not 0 <= k <= n:
        raise PreconditionError("need 0 <= k <= n")
    space = make_standard(n)
    dim = 2 * n
    phi = sample_symplectomorphism(rng, n)
    rows = []
    for i in range(n):
        rows.append([ONE if c == 2 * i else ZERO for c in range(dim)])
    for i in range(k):
        rows.append([ONE if c == 2 * i + 1 else ZERO for c in range(dim)])
    c = _image_subspace(phi, Subspace.span(dim, rows))
    c_omega = symp_orthogonal(space, c)
    c_prime = sample_complement(c, c_omega, rng)
    cp_omega = symp_orthogonal(space, c_prime)
    if cp_omega.dim == 0:
        l_iso = Subspace.zero(dim)
    else:
        aux = SymplecticSpace(cp_omega.dim, space.gram(cp_omega, cp_omega))
        coeffs = cp_omega.basis.transpose().solve(c_omega.basis.transpose())
        inner_rows = [[coeffs.entries[i][j] for i in range(cp_omega.dim)]
                      for j in range(c_omega.dim)]
        c_omega_aux = Subspace.span(cp_omega.dim,
                                    Matrix(inner_rows, c_omega.dim,
                                           cp_omega.dim))
        k_aux = sample_complement(Subspace.full(cp_omega.dim), c_omega_aux,
                                  rng)
        l_aux = average_complement(aux, c_omega_aux, k_aux)
        lifted = l_aux.basis * cp_omega.basis
        l_iso = Subspace.span(dim, lifted)
    return c_triple_from_lagrangian_form(space, c, c_prime, l_iso)


def sample_lagrangian_in_triple(rng: random.Random,
                                t: SplittingCTriple) -> Subspace:
    """A random Lagrangian contained in the coisotropic of the triple.

    Pulls a random Lagrangian of the reduced space back through the
    chosen complement and adds the orthogonal of C.
    """
    aux = SymplecticSpace(t.c_prime.dim,
                          t.space.gram(t.c_prime, t.c_prime)) \
        if t.c_prime.dim else None
    if aux is None:
        return t.c_omega
    lag = sample_lagrangian(aux, rng)
    lifted = Subspace.span(t.space.dim, lag.basis * t.c_prime.basis) \
        if lag.dim else Subspace.zero(t.space.dim)
    result = t.c_omega.sum(lifted)
    if not classify(t.space, result).lagrangian:  # pragma: no cover
        raise RuntimeError("pullback failed to be Lagrangian")
    return result


def sample_graph_relation(rng: random.Random,
                          n: int) -> SplitCanonicalRelation:
    return graph_of_map(sample_symplectomorphism(rng, n), make_standard(n),
                        make_standard(n))


def sample_lagrangian_relation(rng: random.Random, v: SymplecticSpace,
                               w: SymplecticSpace) -> CanonicalRelation:
    ambient = relation_ambient(v, w)
    return CanonicalRelation(v, w, sample_lagrangian(ambient, rng))


def sample_split_relation(rng: random.Random, v: SymplecticSpace,
                          w: SymplecticSpace) -> SplitCanonicalRelation:
    ambient = relation_ambient(v, w)
    graph = sample_lagrangian(ambient, rng)
    comp = sample_lagrangian_complement(ambient, graph, rng)
    return SplitCanonicalRelation(CanonicalRelation(v, w, graph), comp)


def sample_relation(rng: random.Random, v: SymplecticSpace,
                    w: SymplecticSpace) -> CanonicalRelation:
    """Mixed generator: symplectomorphism graphs when the spaces allow,
    otherwise (or at random) a plain random Lagrangian relation."""
    n = v.dim // 2
    if v == w == make_standard(n) and rng.random() < 0.5:
        return sample_graph_relation(rng, n).relation
    return sample_lagrangian_relation(rng, v, w)
