"""Boundary fields of the zero-Poisson sigma model on polynomial truncations.

Smooth maps [0,1] -> R^n and their momenta are truncated to polynomials
of degree at most N in the monomial basis; the boundary pairing only
ever integrates products of monomials, and every moment 1/(i+j+1) is an
exact rational, so the whole construction lives inside Q.

Coordinates: per target coordinate j, first the N+1 position
coefficients X_j, then the N+1 momentum coefficients eta_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .compose import compose
from .errors import PreconditionError
from .linalg import (Matrix, Subspace, _Echelon, is_zero_vec, kernel_basis,
                     ONE, ZERO)
from .reduction import (SplittingCTriple, check_neat, neat_reduction_is_split,
                        product_triple, reduce_space)
from .relations import (CanonicalRelation, SplitCanonicalRelation, diagonal,
                        from_lagrangian, tensor)
from .symplectic import (SymplecticSpace, SplittingLPair, classify,
                         direct_sum, make_standard, opposite)


@dataclass(frozen=True)
class PolyTruncation:
    """Polynomials of degree <= degree on [0,1], valued in R^target_dim."""

    degree: int
    target_dim: int

    def __post_init__(self):
        if self.degree < 1 or self.target_dim < 1:
            raise PreconditionError("need degree >= 1 and target_dim >= 1")


def _moment(i: int) -> Fraction:
    # integral of t^i over [0,1]
    return Fraction(1, i + 1)


class PSMBoundarySpace:
    """Truncated boundary fields with the exact moment pairing."""

    __slots__ = ("trunc", "space", "coordinate_labels")

    def __init__(self, trunc: PolyTruncation, space: SymplecticSpace,
                 labels: tuple[tuple[str, int, int], ...]):
        self.trunc = trunc
        self.space = space
        self.coordinate_labels = labels

    @property
    def block(self) -> int:
        return 2 * (self.trunc.degree + 1)

    def ix_x(self, j: int, i: int, offset: int = 0) -> int:
        return offset + j * self.block + i

    def ix_eta(self, j: int, i: int, offset: int = 0) -> int:
        return offset + j * self.block + (self.trunc.degree + 1) + i


def build_space(trunc: PolyTruncation) -> PSMBoundarySpace:
    """Assemble the boundary space; pairing of X against eta is the
    Hilbert moment matrix, blockwise per target coordinate."""
    n, deg = trunc.target_dim, trunc.degree
    width = deg + 1
    dim = 2 * n * width
    grid = [[ZERO] * dim for _ in range(dim)]
    labels = []
    for j in range(n):
        base = j * 2 * width
        for i in range(width):
            labels.append(("X", j, i))
        for i in range(width):
            labels.append(("eta", j, i))
        for i in range(width):
            for l in range(width):
                m = _moment(i + l)
                grid[base + i][base + width + l] = m
                grid[base + width + l][base + i] = -m
    space = SymplecticSpace(dim, Matrix(grid, dim, dim))
    return PSMBoundarySpace(trunc, space, tuple(labels))


def _from_constraints(total_dim: int, rows: list[list[Fraction]]) -> Subspace:
    if not rows:
        return Subspace.full(total_dim)
    return kernel_basis(Matrix(rows, len(rows), total_dim))


def _unit(total: int, pos: int) -> list[Fraction]:
    row = [ZERO] * total
    row[pos] = ONE
    return row


def _moment_row(total: int, positions: list[int],
                signs: list[int] | None = None) -> list[Fraction]:
    # one linear functional sum_i coeff_i/(i+1) per block of positions
    row = [ZERO] * total
    width = len(positions) if signs is None else len(positions) // len(signs)
    if signs is None:
        signs = [1]
        width = len(positions)
    for b, sign in enumerate(signs):
        for i in range(width):
            row[positions[b * width + i]] += sign * _moment(i)
    return row


def _constant_rows(s: PSMBoundarySpace, total: int, offset: int, j: int,
                   field: str) -> list[list[Fraction]]:
    ix = s.ix_x if field == "X" else s.ix_eta
    return [_unit(total, ix(j, i, offset))
            for i in range(1, s.trunc.degree + 1)]


def _x_positions(s: PSMBoundarySpace, offset: int, j: int) -> list[int]:
    return [s.ix_x(j, i, offset) for i in range(s.trunc.degree + 1)]


def _eta_positions(s: PSMBoundarySpace, offset: int, j: int) -> list[int]:
    return [s.ix_eta(j, i, offset) for i in range(s.trunc.degree + 1)]


def c_m(s: PSMBoundarySpace) -> SplittingCTriple:
    """The solution space {dX/dt = 0} with its certified complements.

    C holds constant X with free eta; its ambient complement is the
    zero-mean X's paired with zero momentum; C' keeps X and eta constant.
    """
    total = s.space.dim
    n = s.trunc.target_dim
    c_rows, cc_rows, cp_rows = [], [], []
    for j in range(n):
        c_rows += _constant_rows(s, total, 0, j, "X")
        cc_rows += [_unit(total, p) for p in _eta_positions(s, 0, j)]
        cc_rows.append(_moment_row(total, _x_positions(s, 0, j)))
        cp_rows += _constant_rows(s, total, 0, j, "X")
        cp_rows += _constant_rows(s, total, 0, j, "eta")
    triple = SplittingCTriple(s.space,
                              _from_constraints(total, c_rows),
                              _from_constraints(total, cc_rows),
                              _from_constraints(total, cp_rows))
    if not triple.is_valid:  # pragma: no cover - exact by construction
        raise RuntimeError("boundary triple failed validation: "
                           + "; ".join(triple.violations))
    return triple


def expected_c_omega(s: PSMBoundarySpace) -> Subspace:
    """{X = 0, integral of eta = 0}, built from its literal constraints."""
    total = s.space.dim
    rows = []
    for j in range(s.trunc.target_dim):
        rows += [_unit(total, p) for p in _x_positions(s, 0, j)]
        rows.append(_moment_row(total, _eta_positions(s, 0, j)))
    return _from_constraints(total, rows)


def l1(s: PSMBoundarySpace) -> SplitCanonicalRelation:
    """Evolution relation of the disk: constant X with zero-mean eta,
    split by constant eta with zero-mean X."""
    total = s.space.dim
    rows, comp = [], []
    for j in range(s.trunc.target_dim):
        rows += _constant_rows(s, total, 0, j, "X")
        rows.append(_moment_row(total, _eta_positions(s, 0, j)))
        comp += _constant_rows(s, total, 0, j, "eta")
        comp.append(_moment_row(total, _x_positions(s, 0, j)))
    rel = from_lagrangian(_from_constraints(total, rows), s.space)
    return SplitCanonicalRelation(rel, _from_constraints(total, comp))


def l2(s: PSMBoundarySpace) -> SplitCanonicalRelation:
    """Identity-type relation: both positions equal and constant, momentum
    means matching; complement has opposite constant momenta and joint
    zero-mean positions."""
    d = s.space.dim
    total = 2 * d
    rows, comp = [], []
    for j in range(s.trunc.target_dim):
        for off in (0, d):
            rows += _constant_rows(s, total, off, j, "X")
            comp += _constant_rows(s, total, off, j, "eta")
        shared = _unit(total, s.ix_x(j, 0, 0))
        shared[s.ix_x(j, 0, d)] = -ONE
        rows.append(shared)
        rows.append(_moment_row(total, _eta_positions(s, 0, j)
                                + _eta_positions(s, d, j), signs=[1, -1]))
        anti = _unit(total, s.ix_eta(j, 0, 0))
        anti[s.ix_eta(j, 0, d)] = ONE
        comp.append(anti)
        comp.append(_moment_row(total, _x_positions(s, 0, j)
                                + _x_positions(s, d, j), signs=[1, 1]))
    graph = _from_constraints(total, rows)
    rel = CanonicalRelation(s.space, s.space, graph)
    return SplitCanonicalRelation(rel, _from_constraints(total, comp))


def l3(s: PSMBoundarySpace) -> SplitCanonicalRelation:
    """Concatenation relation: all three positions one constant, the third
    momentum mean equal to the sum of the first two."""
    d = s.space.dim
    total = 3 * d
    rows, comp = [], []
    for j in range(s.trunc.target_dim):
        for off in (0, d, 2 * d):
            rows += _constant_rows(s, total, off, j, "X")
            comp += _constant_rows(s, total, off, j, "eta")
        for off in (d, 2 * d):
            shared = _unit(total, s.ix_x(j, 0, 0))
            shared[s.ix_x(j, 0, off)] = -ONE
            rows.append(shared)
        rows.append(_moment_row(total,
                                _eta_positions(s, 0, j)
                                + _eta_positions(s, d, j)
                                + _eta_positions(s, 2 * d, j),
                                signs=[1, 1, -1]))
        first = _unit(total, s.ix_eta(j, 0, 0))
        first[s.ix_eta(j, 0, d)] = -ONE
        comp.append(first)
        second = _unit(total, s.ix_eta(j, 0, 0))
        second[s.ix_eta(j, 0, 2 * d)] = ONE
        comp.append(second)
        comp.append(_moment_row(total,
                                _x_positions(s, 0, j)
                                + _x_positions(s, d, j)
                                + _x_positions(s, 2 * d, j),
                                signs=[1, 1, 1]))
    source = direct_sum(s.space, s.space)
    rel = CanonicalRelation(source, s.space, _from_constraints(total, rows))
    return SplitCanonicalRelation(rel, _from_constraints(total, comp))


def doubled_triple(s: PSMBoundarySpace,
                   base: SplittingCTriple) -> SplittingCTriple:
    ambient = direct_sum(opposite(s.space), s.space)
    return product_triple(base, base, space=ambient)


def tripled_triple(s: PSMBoundarySpace,
                   base: SplittingCTriple) -> SplittingCTriple:
    ambient = direct_sum(direct_sum(opposite(s.space), opposite(s.space)),
                         s.space)
    inner = product_triple(base, base,
                           space=direct_sum(opposite(s.space),
                                            opposite(s.space)))
    return product_triple(inner, base, space=ambient)


def zero_section(n: int) -> Subspace:
    """Positions axis of the standard 2n-dimensional reduced space."""
    rows = [_unit(2 * n, 2 * j) for j in range(n)]
    return Subspace.span(2 * n, rows)


def fiber_section(n: int) -> Subspace:
    rows = [_unit(2 * n, 2 * j + 1) for j in range(n)]
    return Subspace.span(2 * n, rows)


def fiber_addition_graph(n: int) -> Subspace:
    """Graph of covector addition over a shared base point, as a subspace
    of the reduced triple ambient (two sources, one target)."""
    total = 6 * n
    rows = []
    for j in range(n):
        x = [ZERO] * total
        x[2 * j] = ONE
        x[2 * n + 2 * j] = ONE
        x[4 * n + 2 * j] = ONE
        mu1 = [ZERO] * total
        mu1[2 * j + 1] = ONE
        mu1[4 * n + 2 * j + 1] = ONE
        mu2 = [ZERO] * total
        mu2[2 * n + 2 * j + 1] = ONE
        mu2[4 * n + 2 * j + 1] = ONE
        rows += [x, mu1, mu2]
    return Subspace.span(total, rows)


def fiber_addition_complement(n: int) -> Subspace:
    total = 6 * n
    rows = []
    for j in range(n):
        mu = [ZERO] * total
        mu[2 * j + 1] = ONE
        mu[2 * n + 2 * j + 1] = ONE
        mu[4 * n + 2 * j + 1] = -ONE
        x1 = [ZERO] * total
        x1[2 * j] = ONE
        x1[4 * n + 2 * j] = -ONE
        x2 = [ZERO] * total
        x2[2 * n + 2 * j] = ONE
        x2[4 * n + 2 * j] = -ONE
        rows += [mu, x1, x2]
    return Subspace.span(total, rows)


def _integral_of(coeffs: list[Fraction]) -> Fraction:
    return sum((c * _moment(i) for i, c in enumerate(coeffs)), ZERO)


def _l3_averaging_decomposition(s: PSMBoundarySpace, vector):
    """Split a vector of the triple ambient into its relation part and
    complement part, using the averaged constants of the three factors."""
    d = s.space.dim
    width = s.trunc.degree + 1
    w = [ZERO] * (3 * d)
    for j in range(s.trunc.target_dim):
        x_int = []
        eta_int = []
        for f in range(3):
            off = f * d
            x_int.append(_integral_of([vector[p] for p in
                                       _x_positions(s, off, j)]))
            eta_int.append(_integral_of([vector[p] for p in
                                         _eta_positions(s, off, j)]))
        shared = (x_int[0] + x_int[1] + x_int[2]) / 3
        const = (eta_int[0] + eta_int[1] - eta_int[2]) / 3
        for f, sign in enumerate((ONE, ONE, -ONE)):
            off = f * d
            for i in range(width):
                w[s.ix_x(j, i, off)] = vector[s.ix_x(j, i, off)]
            w[s.ix_x(j, 0, off)] -= shared
            w[s.ix_eta(j, 0, off)] = sign * const
    u = [a - b for a, b in zip(vector, w)]
    return u, w


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class PSMReport:
    degree: int
    target_dim: int
    claims: tuple[ClaimResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "target_dim": self.target_dim,
            "all_passed": self.all_passed,
            "claims": [{"name": c.name, "passed": c.passed,
                        "detail": c.detail} for c in self.claims],
        }

    def __str__(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _relation_claims(name: str, split_rel: SplitCanonicalRelation,
                     triple: SplittingCTriple, expected: Subspace,
                     expected_complement: Subspace,
                     claims: list[ClaimResult]) -> None:
    ambient = split_rel.relation.ambient
    flags = classify(ambient, split_rel.graph)
    claims.append(ClaimResult(
        f"{name}_lagrangian", flags.lagrangian,
        f"dim {split_rel.graph.dim} of {ambient.dim}"))
    comp_flags = classify(ambient, split_rel.complement)
    claims.append(ClaimResult(
        f"{name}_split", comp_flags.isotropic,
        f"complement dim {split_rel.complement.dim}"))
    pair = SplittingLPair(ambient, split_rel.graph, split_rel.complement)
    neat = check_neat(pair, triple)
    claims.append(ClaimResult(f"{name}_neat", neat,
                              "trace equation on the constant block"))
    reduced_l, reduced_comp = neat_reduction_is_split(pair, triple)
    claims.append(ClaimResult(
        f"{name}_reduced", reduced_l == expected
        and reduced_comp == expected_complement,
        f"reduced dims {reduced_l.dim}/{reduced_comp.dim}"))


def verify_psm(trunc: PolyTruncation) -> PSMReport:
    """Run every exact check of the truncated model and report claim by
    claim; nothing here carries a tolerance."""
    s = build_space(trunc)
    n, deg = trunc.target_dim, trunc.degree
    claims: list[ClaimResult] = []

    det = s.space.form.det()
    claims.append(ClaimResult("form_nondegenerate", det != 0,
                              f"det = {det}"))

    triple = c_m(s)
    flags = classify(s.space, triple.c)
    claims.append(ClaimResult("c_coisotropic", flags.coisotropic,
                              f"dim C = {triple.c.dim}"))
    claims.append(ClaimResult(
        "c_omega_constraints", triple.c_omega == expected_c_omega(s),
        "orthogonal equals {X = 0, zero-mean eta}"))
    valid, violations = triple.is_valid, triple.violations
    claims.append(ClaimResult("c_triple_valid", valid,
                              "; ".join(violations) or "all four conditions"))

    reduced = reduce_space(triple)
    claims.append(ClaimResult(
        "reduced_space_standard",
        reduced.rep.dim == 2 * n and reduced.form == make_standard(n).form,
        f"dim {reduced.rep.dim}"))

    dims_ok = (triple.c.dim == n * (deg + 2)
               and triple.c_omega.dim == n * deg
               and reduced.rep.dim == 2 * n)
    claims.append(ClaimResult(
        "dimension_table", dims_ok,
        f"dim C = {triple.c.dim}, dim C^w = {triple.c_omega.dim}, "
        f"dim reduced = {reduced.rep.dim}"))

    rel1 = l1(s)
    _relation_claims("l1", rel1, triple, zero_section(n), fiber_section(n),
                     claims)

    rel2 = l2(s)
    diag = diagonal(reduced.as_space())
    _relation_claims("l2", rel2, doubled_triple(s, triple),
                     diag.graph, diag.complement, claims)

    rel3 = l3(s)
    _relation_claims("l3", rel3, tripled_triple(s, triple),
                     fiber_addition_graph(n), fiber_addition_complement(n),
                     claims)

    witness_ok = True
    ambient3 = rel3.relation.ambient
    graph_test = _Echelon(ambient3.dim)
    comp_test = _Echelon(ambient3.dim)
    for row in rel3.graph.basis.entries:
        graph_test.add(row)
    for row in rel3.complement.basis.entries:
        comp_test.add(row)
    for idx in range(ambient3.dim):
        e = [ZERO] * ambient3.dim
        e[idx] = ONE
        u, w = _l3_averaging_decomposition(s, e)
        if not (is_zero_vec(graph_test.residue(u))
                and is_zero_vec(comp_test.residue(w))):
            witness_ok = False
            break
    claims.append(ClaimResult(
        "l3_averaging_witness", witness_ok,
        "explicit constant-averaging decomposition of every basis vector"))

    red_space = reduced.as_space()
    red_l1 = from_lagrangian(zero_section(n), red_space)
    pair3 = SplittingLPair(ambient3, rel3.graph, rel3.complement)
    red_l3_graph, _ = neat_reduction_is_split(pair3, tripled_triple(s, triple))
    red_l3 = CanonicalRelation(direct_sum(red_space, red_space), red_space,
                               red_l3_graph)
    lhs = compose(tensor(red_l1, diag.relation), red_l3)
    claims.append(ClaimResult(
        "groupoid_unit_law", lhs.graph == diag.graph,
        "fiber addition after (zero section x identity) is the identity"))

    return PSMReport(deg, n, tuple(claims))


def symplectic_target_obstruction(degree: int) -> dict:
    """Why a symplectic target does not truncate: the putative solution
    space has half dimension but a nonzero boundary pairing, so it is not
    coisotropic in any polynomial truncation.

    Returns the failing dimensions and a witness pair of solutions whose
    pairing is nonzero.
    """
    trunc = PolyTruncation(degree, 2)
    s = build_space(trunc)
    width = degree + 1
    total = s.space.dim
    rows = []
    # basis of {(X, Omega dX/dt)}: one row per position coefficient
    for j in range(2):
        other = 1 - j
        sign = ONE if j == 1 else -ONE
        # eta_other = sign * dX_j/dt with Omega = [[0,1],[-1,0]]
        for i in range(width):
            row = [ZERO] * total
            row[s.ix_x(j, i)] = ONE
            if i >= 1:
                row[s.ix_eta(other, i - 1)] = sign * i
            rows.append(row)
    graph = Subspace.span(total, rows)
    flags = classify(s.space, graph)
    witness = None
    basis = graph.basis.entries
    for a in range(len(basis)):
        for b in range(len(basis)):
            value = s.space.pairing(basis[a], basis[b])
            if value != 0:
                witness = {"row_a": a, "row_b": b, "pairing": str(value)}
                break
        if witness:
            break
    return {
        "degree": degree,
        "space_dim": total,
        "graph_dim": graph.dim,
        "half_dim": total // 2,
        "isotropic": flags.isotropic,
        "coisotropic": flags.coisotropic,
        "witness": witness,
    }
