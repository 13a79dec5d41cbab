"""Shared helpers for the suite: short subspace builders and oracles."""

import random
from fractions import Fraction

import pytest

from splitlag import Matrix, Subspace, make_standard, symp_orthogonal
from splitlag.linalg import vec_dot


def span(ambient, *rows):
    return Subspace.span(ambient, [list(r) for r in rows])


def q_axis(n, i):
    """Unit vector q_i of the standard 2n-dimensional space (0-based)."""
    row = [0] * (2 * n)
    row[2 * i] = 1
    return row


def p_axis(n, i):
    row = [0] * (2 * n)
    row[2 * i + 1] = 1
    return row


def brute_force_average(space, l, k):
    """Independent oracle for the averaging construction.

    Solves the linear system k0 - k0' in L over coefficient pairs
    (k0 in K, k0' in K^w) by a kernel computation and spans the
    midpoints; no projection matrices are involved.
    """
    ko = symp_orthogonal(space, k)
    constraints = l.annihilator()
    rows = []
    for ci in range(constraints.rows):
        crow = []
        for j in range(k.dim):
            crow.append(vec_dot(constraints.entries[ci], k.basis.entries[j]))
        for j in range(ko.dim):
            crow.append(-vec_dot(constraints.entries[ci],
                                 ko.basis.entries[j]))
        rows.append(crow)
    system = Matrix(rows, len(rows), k.dim + ko.dim)
    half = Fraction(1, 2)
    out = []
    for sol in system.kernel().entries:
        alpha, beta = sol[:k.dim], sol[k.dim:]
        k_vec = [Fraction(0)] * space.dim
        for c, row in zip(alpha, k.basis.entries):
            k_vec = [a + c * b for a, b in zip(k_vec, row)]
        kp_vec = [Fraction(0)] * space.dim
        for c, row in zip(beta, ko.basis.entries):
            kp_vec = [a + c * b for a, b in zip(kp_vec, row)]
        out.append([half * (a + b) for a, b in zip(k_vec, kp_vec)])
    return Subspace.span(space.dim, out)


@pytest.fixture
def rng():
    return random.Random(20260809)
