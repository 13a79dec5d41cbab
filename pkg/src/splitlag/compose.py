"""Composition of canonical relations via coisotropic reduction.

The set-theoretic composition of relations V1 -> V2 and V2 -> V3 is the
reduction of their product by the coisotropic subspace
V1 (+) diag(V2) (+) V3 of the four-block ambient; in finite dimensions
the result is always Lagrangian.  Split composition additionally needs
the product pair to intersect that coisotropic neatly.
"""

from __future__ import annotations

from .errors import NeatnessError, PreconditionError
from .linalg import Matrix, Subspace, direct_product, ONE, ZERO
from .reduction import (SplittingCTriple, check_neat, neat_reduction_is_split,
                        reduce_lagrangian, reduce_space)
from .relations import (CanonicalRelation, SplitCanonicalRelation,
                        relation_ambient)
from .symplectic import (SymplecticSpace, SplittingLPair, direct_sum,
                         opposite)


def composition_coisotropic(v1: SymplecticSpace, v2: SymplecticSpace,
                            v3: SymplecticSpace) -> SplittingCTriple:
    """The splitting triple governing composition through ``v2``.

    Inside opposite(V1) (+) V2 (+) opposite(V2) (+) V3 the subspace
    C = V1 (+) diag (+) V3 is coisotropic with orthogonal {0} (+) diag
    (+) {0}; the anti-diagonal in the middle complements C isotropically
    and V1 (+) 0 (+) V3 complements the orthogonal inside C.
    """
    ambient = direct_sum(direct_sum(opposite(v1), v2),
                         direct_sum(opposite(v2), v3))
    d1, d2, d3 = v1.dim, v2.dim, v3.dim
    n = d1 + 2 * d2 + d3
    o2, o3, o4 = d1, d1 + d2, d1 + 2 * d2

    def unit(i):
        row = [ZERO] * n
        row[i] = ONE
        return row

    c_rows = [unit(i) for i in range(d1)]
    for j in range(d2):
        row = [ZERO] * n
        row[o2 + j] = ONE
        row[o3 + j] = ONE
        c_rows.append(row)
    c_rows += [unit(o4 + i) for i in range(d3)]

    cc_rows = []
    for j in range(d2):
        row = [ZERO] * n
        row[o2 + j] = ONE
        row[o3 + j] = -ONE
        cc_rows.append(row)

    cp_rows = [unit(i) for i in range(d1)]
    cp_rows += [unit(o4 + i) for i in range(d3)]

    triple = SplittingCTriple(ambient,
                              Subspace.span(n, Matrix(c_rows, len(c_rows), n)),
                              Subspace.span(n, Matrix(cc_rows, len(cc_rows),
                                                      n)),
                              Subspace.span(n, Matrix(cp_rows, len(cp_rows),
                                                      n)))
    if not triple.is_valid:  # pragma: no cover - holds by construction
        raise RuntimeError("composition coisotropic failed validation: "
                           + "; ".join(triple.violations))
    return triple


def _require_composable(r1: CanonicalRelation, r2: CanonicalRelation) -> None:
    if r1.target != r2.source:
        raise PreconditionError("middle spaces do not match")


def _product_graph(r1: CanonicalRelation, r2: CanonicalRelation) -> Subspace:
    return direct_product(r1.graph, r2.graph)


def compose(r1: CanonicalRelation, r2: CanonicalRelation) -> CanonicalRelation:
    """Set-theoretic composition r2 after r1, always defined.

    Transversality is not required; the output is Lagrangian regardless
    (finite dimensions), which the relation constructor re-checks.
    """
    _require_composable(r1, r2)
    triple = composition_coisotropic(r1.source, r1.target, r2.target)
    expected = relation_ambient(r1.source, r2.target)
    reduced = reduce_space(triple)
    if reduced.form != expected.form:  # pragma: no cover - fixed convention
        raise RuntimeError("reduced composition space has unexpected form")
    graph = reduce_lagrangian(triple, _product_graph(r1, r2))
    return CanonicalRelation(r1.source, r2.target, graph)


def is_transversal(r1: CanonicalRelation, r2: CanonicalRelation) -> bool:
    """Product graph plus the composition coisotropic spans the ambient."""
    _require_composable(r1, r2)
    triple = composition_coisotropic(r1.source, r1.target, r2.target)
    product = _product_graph(r1, r2)
    return product.sum(triple.c).dim == triple.space.dim


def is_strongly_transversal(r1: CanonicalRelation,
                            r2: CanonicalRelation) -> bool:
    """Transversal with the product graph meeting the orthogonal trivially,
    so the projection of the fiber product onto source x target is
    injective."""
    _require_composable(r1, r2)
    triple = composition_coisotropic(r1.source, r1.target, r2.target)
    product = _product_graph(r1, r2)
    if product.sum(triple.c).dim != triple.space.dim:
        return False
    return product.intersect(triple.c_omega).dim == 0


def neatly_related(s1: SplitCanonicalRelation,
                   s2: SplitCanonicalRelation) -> bool:
    """Trace equation for the product pair against the composition triple.

    Tests the complements actually stored in the relations; no search
    over alternatives is performed.
    """
    _require_composable(s1.relation, s2.relation)
    triple = composition_coisotropic(s1.source, s1.target, s2.target)
    pair = SplittingLPair(triple.space,
                          direct_product(s1.graph, s2.graph),
                          direct_product(s1.complement, s2.complement))
    return check_neat(pair, triple)


def compose_split(s1: SplitCanonicalRelation,
                  s2: SplitCanonicalRelation) -> SplitCanonicalRelation:
    """Composition carrying an isotropic complement.

    Requires the pair to be neatly related; otherwise a NeatnessError is
    raised and the caller may fall back to :func:`compose`, which
    returns an unsplit relation.
    """
    _require_composable(s1.relation, s2.relation)
    triple = composition_coisotropic(s1.source, s1.target, s2.target)
    pair = SplittingLPair(triple.space,
                          direct_product(s1.graph, s2.graph),
                          direct_product(s1.complement, s2.complement))
    if not check_neat(pair, triple):
        lhs = pair.l.intersect(triple.c_prime)
        rhs = pair.l_prime.intersect(triple.c_prime)
        raise NeatnessError(
            "relations are not neatly related; compose() still applies",
            certificate={
                "c_prime_dim": triple.c_prime.dim,
                "l_trace_dim": lhs.dim,
                "l_prime_trace_dim": rhs.dim,
                "span_dim": lhs.sum(rhs).dim,
            })
    graph, complement = neat_reduction_is_split(pair, triple)
    rel = CanonicalRelation(s1.source, s2.target, graph)
    return SplitCanonicalRelation(rel, complement)
