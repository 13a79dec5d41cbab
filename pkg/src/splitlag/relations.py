"""Canonical relations between symplectic spaces.

A relation V -> W is a Lagrangian subspace of opposite(V) (+) W, with
source coordinates first.  A split relation additionally carries an
isotropic complement of its graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .linalg import Matrix, Subspace, hstack, is_direct_sum, ZERO
from .symplectic import (SymplecticSpace, SplittingLPair, classify,
                         direct_sum, make_standard, opposite)


def relation_ambient(source: SymplecticSpace,
                     target: SymplecticSpace) -> SymplecticSpace:
    return direct_sum(opposite(source), target)


@dataclass(frozen=True)
class CanonicalRelation:
    source: SymplecticSpace
    target: SymplecticSpace
    graph: Subspace

    def __post_init__(self):
        ambient = relation_ambient(self.source, self.target)
        if self.graph.ambient_dim != ambient.dim:
            raise PreconditionError("graph ambient does not match the spaces")
        if not classify(ambient, self.graph).lagrangian:
            raise PreconditionError("graph is not Lagrangian")

    @property
    def ambient(self) -> SymplecticSpace:
        return relation_ambient(self.source, self.target)


@dataclass(frozen=True)
class SplitCanonicalRelation:
    relation: CanonicalRelation
    complement: Subspace

    def __post_init__(self):
        ambient = self.relation.ambient
        if self.complement.ambient_dim != ambient.dim:
            raise PreconditionError("complement ambient mismatch")
        if not classify(ambient, self.complement).isotropic:
            raise PreconditionError("complement is not isotropic")
        if not is_direct_sum([self.relation.graph, self.complement],
                             Subspace.full(ambient.dim)):
            raise PreconditionError("complement is not complementary")

    @property
    def graph(self) -> Subspace:
        return self.relation.graph

    @property
    def source(self) -> SymplecticSpace:
        return self.relation.source

    @property
    def target(self) -> SymplecticSpace:
        return self.relation.target

    def as_pair(self) -> SplittingLPair:
        return SplittingLPair(self.relation.ambient, self.graph,
                              self.complement)


def diagonal(v: SymplecticSpace) -> SplitCanonicalRelation:
    """Identity relation: the diagonal, split by the anti-diagonal."""
    n = v.dim
    diag_rows = [list(row) + list(row) for row in Matrix.identity(n).entries]
    anti_rows = [list(row) + [-x for x in row]
                 for row in Matrix.identity(n).entries]
    rel = CanonicalRelation(v, v, Subspace.span(2 * n, diag_rows))
    return SplitCanonicalRelation(rel, Subspace.span(2 * n, anti_rows))


def from_lagrangian(l: Subspace, v: SymplecticSpace) -> CanonicalRelation:
    """A Lagrangian of V as a relation from the zero space into V."""
    if not classify(v, l).lagrangian:
        raise PreconditionError("from_lagrangian needs a Lagrangian subspace")
    return CanonicalRelation(make_standard(0), v, l)


def transpose(r: CanonicalRelation) -> CanonicalRelation:
    """Swap source and target, reordering coordinates accordingly."""
    dv = r.source.dim
    rows = [list(row[dv:]) + list(row[:dv]) for row in r.graph.basis.entries]
    return CanonicalRelation(r.target, r.source,
                             Subspace.span(r.graph.ambient_dim, rows))


def graph_of_map(s: Matrix, v: SymplecticSpace,
                 w: SymplecticSpace) -> SplitCanonicalRelation:
    """Graph of a linear symplectomorphism x -> Sx, split by its anti-graph."""
    if s.rows != w.dim or s.cols != v.dim:
        raise PreconditionError("matrix shape does not match the spaces")
    if s.transpose() * w.form * s != v.form:
        raise PreconditionError("matrix does not preserve the forms")
    st = s.transpose()
    graph = hstack(Matrix.identity(v.dim), st)
    anti = hstack(Matrix.identity(v.dim), -st)
    rel = CanonicalRelation(v, w, Subspace.span(v.dim + w.dim, graph))
    return SplitCanonicalRelation(rel, Subspace.span(v.dim + w.dim, anti))


def _shuffle_product(a: Subspace, b: Subspace, d_v1: int, d_w1: int,
                     d_v2: int, d_w2: int) -> Subspace:
    # (v1, w1) x (v2, w2) -> (v1, v2, w1, w2)
    n = a.ambient_dim + b.ambient_dim
    rows = []
    for row in a.basis.entries:
        rows.append(list(row[:d_v1]) + [ZERO] * d_v2
                    + list(row[d_v1:]) + [ZERO] * d_w2)
    for row in b.basis.entries:
        rows.append([ZERO] * d_v1 + list(row[:d_v2])
                    + [ZERO] * d_w1 + list(row[d_v2:]))
    return Subspace.span(n, rows)


def tensor(r1: CanonicalRelation, r2: CanonicalRelation) -> CanonicalRelation:
    """Product relation (V1 (+) V2) -> (W1 (+) W2)."""
    graph = _shuffle_product(r1.graph, r2.graph, r1.source.dim,
                             r1.target.dim, r2.source.dim, r2.target.dim)
    return CanonicalRelation(direct_sum(r1.source, r2.source),
                             direct_sum(r1.target, r2.target), graph)


def tensor_split(s1: SplitCanonicalRelation,
                 s2: SplitCanonicalRelation) -> SplitCanonicalRelation:
    rel = tensor(s1.relation, s2.relation)
    comp = _shuffle_product(s1.complement, s2.complement, s1.source.dim,
                            s1.target.dim, s2.source.dim, s2.target.dim)
    return SplitCanonicalRelation(rel, comp)
