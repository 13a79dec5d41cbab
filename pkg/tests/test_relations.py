import random
from fractions import Fraction

import pytest

from splitlag import (CanonicalRelation, Matrix, NeatnessError,
                      PreconditionError, SplitCanonicalRelation, Subspace,
                      classify, compose, compose_split,
                      composition_coisotropic, diagonal, direct_sum,
                      from_lagrangian, graph_of_map, is_direct_sum,
                      is_strongly_transversal, is_transversal, make_standard,
                      neatly_related, opposite, random_lagrangian,
                      reduce_lagrangian, reduction_relation, tensor,
                      tensor_split, transpose, validate_c_triple)
from splitlag.relations import relation_ambient
from splitlag.sampling import (sample_lagrangian_relation, sample_relation,
                               sample_split_relation, sample_symplectomorphism,
                               sample_triple)
from splitlag.symplectic import (lagrangian_complement, sample_lagrangian,
                                 sample_lagrangian_complement)

from conftest import p_axis, q_axis, span


def test_diagonal_zero_space():
    d = diagonal(make_standard(0))
    assert d.graph.ambient_dim == 0 and d.graph.dim == 0


def test_diagonal_dim_one():
    d = diagonal(make_standard(1))
    assert d.graph == span(4, [1, 0, 1, 0], [0, 1, 0, 1])
    assert d.complement == span(4, [1, 0, -1, 0], [0, 1, 0, -1])


def test_diagonal_lagrangian_sweep():
    for n in range(6):
        d = diagonal(make_standard(n))
        assert classify(d.relation.ambient, d.graph).lagrangian


def test_from_lagrangian_zero_source():
    v = make_standard(1)
    l = span(2, [1, 0])
    rel = from_lagrangian(l, v)
    assert rel.source.dim == 0
    assert rel.graph == l


def test_from_lagrangian_identity_law():
    v = make_standard(2)
    l = random_lagrangian(v, 4)
    rel = from_lagrangian(l, v)
    assert compose(rel, diagonal(v).relation).graph == l


def test_from_lagrangian_reduction_equivalence(rng):
    # composing the quotient relation with a Lagrangian is reduction
    for _ in range(8):
        n = rng.randrange(1, 4)
        k = rng.randrange(0, n + 1)
        t = sample_triple(rng, n, k)
        l = random_lagrangian(t.space, rng.randrange(10**6)) \
            if t.space == make_standard(n) else sample_lagrangian(t.space, rng)
        got = compose(from_lagrangian(l, t.space),
                      reduction_relation(t)).graph
        assert got == reduce_lagrangian(t, l)


def test_from_lagrangian_rejects_non_lagrangian():
    with pytest.raises(PreconditionError):
        from_lagrangian(span(4, q_axis(2, 0)), make_standard(2))


def test_transpose_diagonal_fixed():
    d = diagonal(make_standard(1)).relation
    assert transpose(d).graph == d.graph


def test_transpose_involution(rng):
    v, w = make_standard(1), make_standard(2)
    rel = sample_lagrangian_relation(rng, v, w)
    back = transpose(transpose(rel))
    assert back.graph == rel.graph
    assert back.source == rel.source and back.target == rel.target


def test_transpose_inverts_graphs():
    rng = random.Random(2)
    v = make_standard(2)
    s = sample_symplectomorphism(rng, 2)
    rel = graph_of_map(s, v, v).relation
    assert transpose(rel).graph == graph_of_map(s.inverse(), v, v).graph


def test_graph_of_identity_is_diagonal():
    v = make_standard(2)
    got = graph_of_map(Matrix.identity(4), v, v)
    assert got.graph == diagonal(v).graph
    assert got.complement == diagonal(v).complement


def test_graph_of_quarter_rotation():
    v = make_standard(1)
    got = graph_of_map(Matrix([[0, 1], [-1, 0]]), v, v)
    assert classify(got.relation.ambient, got.graph).lagrangian


def test_graph_of_scaling():
    v = make_standard(1)
    got = graph_of_map(Matrix([[2, 0], [0, Fraction(1, 2)]]), v, v)
    assert classify(got.relation.ambient, got.graph).lagrangian


def test_graph_of_map_rejects_non_symplectic():
    v = make_standard(1)
    with pytest.raises(PreconditionError):
        graph_of_map(Matrix([[2, 0], [0, 2]]), v, v)


def test_composition_coisotropic_zero_spaces():
    t = composition_coisotropic(make_standard(0), make_standard(0),
                                make_standard(0))
    assert validate_c_triple(t) == (True, ())


def test_composition_coisotropic_middle_only():
    z = make_standard(0)
    m = make_standard(1)
    t = composition_coisotropic(z, m, z)
    assert t.is_valid
    assert t.c == span(4, [1, 0, 1, 0], [0, 1, 0, 1])
    assert t.c_omega == t.c
    assert t.reduced_dim == 0


def test_composition_coisotropic_dims():
    s = make_standard(1)
    t = composition_coisotropic(s, s, s)
    assert t.space.dim == 8
    assert t.c.dim == 6
    assert t.reduced_dim == 4
    red_form = direct_sum(opposite(s), s).form
    from splitlag import reduce_space
    assert reduce_space(t).form == red_form


def test_compose_unit_laws(rng):
    for _ in range(6):
        n = rng.randrange(1, 4)
        v, w = make_standard(n), make_standard(max(1, n - 1))
        rel = sample_lagrangian_relation(rng, v, w)
        assert compose(rel, diagonal(w).relation).graph == rel.graph
        assert compose(diagonal(v).relation, rel).graph == rel.graph


def test_compose_graph_law(rng):
    for _ in range(6):
        n = rng.randrange(1, 3)
        v = make_standard(n)
        s1 = sample_symplectomorphism(rng, n)
        s2 = sample_symplectomorphism(rng, n)
        got = compose(graph_of_map(s1, v, v).relation,
                      graph_of_map(s2, v, v).relation)
        assert got.graph == graph_of_map(s2 * s1, v, v).graph


def test_compose_requires_matching_middle():
    with pytest.raises(PreconditionError):
        compose(diagonal(make_standard(1)).relation,
                diagonal(make_standard(2)).relation)


def test_compose_always_lagrangian(rng):
    for _ in range(12):
        dims = [rng.randrange(0, 3) for _ in range(3)]
        v1, v2, v3 = (make_standard(d) for d in dims)
        r1 = sample_relation(rng, v1, v2)
        r2 = sample_relation(rng, v2, v3)
        out = compose(r1, r2)  # constructor re-checks Lagrangian
        assert out.graph.ambient_dim == 2 * (dims[0] + dims[2])


def test_compose_associative(rng):
    for _ in range(5):
        dims = [rng.randrange(1, 3) for _ in range(4)]
        spaces = [make_standard(d) for d in dims]
        r1 = sample_relation(rng, spaces[0], spaces[1])
        r2 = sample_relation(rng, spaces[1], spaces[2])
        r3 = sample_relation(rng, spaces[2], spaces[3])
        left = compose(compose(r1, r2), r3)
        right = compose(r1, compose(r2, r3))
        assert left.graph == right.graph


def test_transpose_antihomomorphism(rng):
    for _ in range(5):
        dims = [rng.randrange(1, 3) for _ in range(3)]
        spaces = [make_standard(d) for d in dims]
        r1 = sample_relation(rng, spaces[0], spaces[1])
        r2 = sample_relation(rng, spaces[1], spaces[2])
        assert transpose(compose(r1, r2)).graph == \
            compose(transpose(r2), transpose(r1)).graph


def test_diagonal_strongly_transversal():
    d = diagonal(make_standard(1)).relation
    assert is_transversal(d, d)
    assert is_strongly_transversal(d, d)


def test_graphs_strongly_transversal(rng):
    v = make_standard(2)
    s1 = sample_symplectomorphism(rng, 2)
    s2 = sample_symplectomorphism(rng, 2)
    r1 = graph_of_map(s1, v, v).relation
    r2 = graph_of_map(s2, v, v).relation
    assert is_strongly_transversal(r1, r2)


def test_transversality_can_fail():
    v = make_standard(2)
    l = random_lagrangian(v, 8)
    r1 = from_lagrangian(l, v)
    r2 = transpose(r1)
    # the product only meets the middle diagonal along l itself
    assert not is_transversal(r1, r2)
    assert compose(r1, r2).graph.ambient_dim == 0


def test_neatly_related_product_relations(rng):
    # products of Lagrangians in source and target are neatly related
    v1, v2, v3 = make_standard(1), make_standard(2), make_standard(1)
    l1 = random_lagrangian(v1, 1)
    l2 = random_lagrangian(v2, 2)
    m2 = random_lagrangian(v2, 3)
    m3 = random_lagrangian(v3, 4)
    s1 = tensor_split(
        SplitCanonicalRelation(from_lagrangian(l1, v1).__class__(
            make_standard(0), v1, l1), lagrangian_complement(v1, l1)),
        SplitCanonicalRelation(CanonicalRelation(make_standard(0), v2, l2),
                               lagrangian_complement(v2, l2)))
    del s1
    s_first = _product_split(v1, v2, l1, l2, rng)
    s_second = _product_split(v2, v3, m2, m3, rng)
    assert neatly_related(s_first, s_second)
    out = compose_split(s_first, s_second)
    assert out.graph.ambient_dim == 4


def _product_split(v, w, lv, lw, rng):
    ambient = relation_ambient(v, w)
    from splitlag.linalg import direct_product
    graph = direct_product(lv, lw)
    lv_c = sample_lagrangian_complement(opposite(v), lv, rng)
    lw_c = sample_lagrangian_complement(w, lw, rng)
    comp = direct_product(lv_c, lw_c)
    return SplitCanonicalRelation(CanonicalRelation(v, w, graph), comp)


def test_neatly_related_diagonal_pair_fails():
    # the diagonal with its anti-diagonal complement leaves the trace of
    # the composition block empty, so the literal equation fails
    d = diagonal(make_standard(1))
    assert not neatly_related(d, d)


def test_compose_split_product_configuration(rng):
    v1, v2, v3 = make_standard(1), make_standard(1), make_standard(2)
    s_first = _product_split(v1, v2, random_lagrangian(v1, 11),
                             random_lagrangian(v2, 12), rng)
    s_second = _product_split(v2, v3, random_lagrangian(v2, 13),
                              random_lagrangian(v3, 14), rng)
    out = compose_split(s_first, s_second)
    ambient = out.relation.ambient
    assert classify(ambient, out.graph).lagrangian
    assert classify(ambient, out.complement).isotropic
    assert is_direct_sum([out.graph, out.complement],
                         Subspace.full(ambient.dim))
    # composition of product relations is the product of the outer factors
    expected = compose(s_first.relation, s_second.relation)
    assert out.graph == expected.graph


def test_compose_split_raises_with_certificate():
    d = diagonal(make_standard(1))
    with pytest.raises(NeatnessError) as err:
        compose_split(d, d)
    assert err.value.certificate["c_prime_dim"] == 4
    assert err.value.certificate["span_dim"] == 0


def test_tensor_spaces_and_graph():
    v = make_standard(1)
    d = diagonal(v).relation
    prod = tensor(d, d)
    assert prod.source == direct_sum(v, v)
    assert prod.graph.dim == 4
