"""Coisotropic subspaces with certified complements, and their reductions.

A splitting triple consists of a coisotropic C together with an
isotropic complement C^c of C in the ambient space and a complement C'
of C^w in C that is symplectically orthogonal to C^c.  The quotient
C/C^w is realized concretely as C' carrying the restricted Gram form;
cosets never appear.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NeatnessError, PreconditionError
from .linalg import (Matrix, Subspace, coordinates_in_basis, direct_product,
                     hstack, is_direct_sum, vstack, ONE, ZERO)
from .relations import CanonicalRelation
from .symplectic import (SymplecticSpace, SplittingLPair, classify,
                         direct_sum as space_direct_sum,
                         lagrangian_complement, sample_lagrangian,
                         symp_orthogonal)


class SplittingCTriple:
    """A coisotropic subspace with its two certified complements."""

    __slots__ = ("space", "c", "c_c", "c_prime", "c_omega", "violations")

    def __init__(self, space: SymplecticSpace, c: Subspace, c_c: Subspace,
                 c_prime: Subspace):
        for part in (c, c_c, c_prime):
            if part.ambient_dim != space.dim:
                raise PreconditionError(
                    "triple components must live in the given space")
        self.space = space
        self.c = c
        self.c_c = c_c
        self.c_prime = c_prime
        self.c_omega = symp_orthogonal(space, c)
        found = []
        if not c.contains(self.c_omega):
            found.append("c is not coisotropic")
        if not is_direct_sum([c, c_c], Subspace.full(space.dim)):
            found.append("c_c is not a complement of c in the ambient space")
        if not is_direct_sum([self.c_omega, c_prime], c):
            found.append("c_prime is not a complement of the orthogonal of c "
                         "inside c")
        if not classify(space, c_c).isotropic:
            found.append("c_c is not isotropic")
        if not space.gram(c_prime, c_c).is_zero():
            found.append("c_prime and c_c are not symplectically orthogonal")
        self.violations = tuple(found)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    @property
    def reduced_dim(self) -> int:
        return self.c_prime.dim

    def __repr__(self) -> str:
        status = "valid" if self.is_valid else "invalid"
        return (f"SplittingCTriple(dim {self.space.dim}, dim C {self.c.dim}, "
                f"{status})")


def validate_c_triple(t: SplittingCTriple) -> tuple[bool, tuple[str, ...]]:
    """Truth value plus the list of violated conditions."""
    return t.is_valid, t.violations


def _require_valid(t: SplittingCTriple) -> None:
    if not t.is_valid:
        raise PreconditionError("invalid splitting triple: "
                                + "; ".join(t.violations))


def c_triple_from_lagrangian_form(space: SymplecticSpace, c: Subspace,
                                  c_prime: Subspace,
                                  l: Subspace) -> SplittingCTriple:
    """Build a triple from an isotropic complement of C^w in (C')^w.

    Such an L is automatically a complement of C in the ambient space and
    orthogonal to C', so (C, L, C') is a splitting triple.
    """
    c_omega = symp_orthogonal(space, c)
    if not c.contains(c_omega):
        raise PreconditionError("c is not coisotropic")
    if not is_direct_sum([c_omega, c_prime], c):
        raise PreconditionError("c_prime must complement the orthogonal of c "
                                "inside c")
    cp_omega = symp_orthogonal(space, c_prime)
    if not classify(space, l).isotropic:
        raise PreconditionError("l must be isotropic")
    if not is_direct_sum([c_omega, l], cp_omega):
        raise PreconditionError("l must complement the orthogonal of c inside "
                                "the orthogonal of c_prime")
    triple = SplittingCTriple(space, c, l, c_prime)
    if not triple.is_valid:  # pragma: no cover - guaranteed by construction
        raise PreconditionError("construction produced an invalid triple: "
                                + "; ".join(triple.violations))
    return triple


@dataclass(frozen=True)
class ReducedSpace:
    """C/C^w realized as the chosen complement C' with the restricted form."""

    parent: SymplecticSpace
    c: Subspace
    c_omega: Subspace
    rep: Subspace
    form: Matrix

    def as_space(self) -> SymplecticSpace:
        return SymplecticSpace(self.rep.dim, self.form)


def reduce_space(t: SplittingCTriple) -> ReducedSpace:
    _require_valid(t)
    form = t.space.gram(t.c_prime, t.c_prime)
    reduced = ReducedSpace(t.space, t.c, t.c_omega, t.c_prime, form)
    reduced.as_space()  # raises if the restricted form were degenerate
    return reduced


def _quotient_matrix(t: SplittingCTriple, rows: Matrix) -> Matrix:
    """Reduced coordinates of each row; rejects rows outside C."""
    k2 = t.reduced_dim
    if t.c_omega.dim + k2 == 0:
        if not rows.is_zero():
            raise PreconditionError("vector lies outside the coisotropic "
                                    "subspace")
        return Matrix([[] for _ in range(rows.rows)], rows.rows, 0)
    columns = hstack(t.c_omega.basis.transpose(), t.c_prime.basis.transpose())
    try:
        coeffs = columns.solve(rows.transpose())
    except PreconditionError:
        raise PreconditionError("vector lies outside the coisotropic "
                                "subspace") from None
    lower = [[coeffs.entries[t.c_omega.dim + i][j] for i in range(k2)]
             for j in range(rows.rows)]
    return Matrix(lower, rows.rows, k2)


def quotient_coords(t: SplittingCTriple, v) -> tuple[Fraction, ...]:
    """Coordinates of [v] in the basis of C'; rejects vectors outside C."""
    vector = tuple(v)
    return _quotient_matrix(t, Matrix([vector], 1, len(vector))).entries[0]


def _quotient_image(t: SplittingCTriple, sub: Subspace) -> Subspace:
    """Image of a subspace of C under the quotient, in C' coordinates."""
    return Subspace.span(t.reduced_dim, _quotient_matrix(t, sub.basis))


def _reduction_graph(t: SplittingCTriple) -> Subspace:
    """{(x, [x]) : x in C} inside ambient (+) reduced coordinates."""
    k2 = t.reduced_dim
    coords = _quotient_matrix(t, t.c.basis)
    return Subspace.span(t.space.dim + k2, hstack(t.c.basis, coords))


def reduction_relation(t: SplittingCTriple) -> CanonicalRelation:
    """The graph of the quotient map C -> C/C^w as a relation."""
    _require_valid(t)
    reduced = reduce_space(t)
    return CanonicalRelation(t.space, reduced.as_space(), _reduction_graph(t))


def minus_relation(t: SplittingCTriple) -> Subspace:
    """The standard isotropic complement of the reduction relation.

    Spanned by C^c paired with zero and by (x', -[x']) over x' in C'.
    """
    _require_valid(t)
    return phi(t, t.c_c)


def phi(t: SplittingCTriple, c_c_variant: Subspace) -> Subspace:
    """Lagrangian complement to the reduction relation built from a variant
    isotropic complement of C^w inside (C')^w.

    Distinct variants give distinct complements, so the assignment is
    injective.
    """
    _require_valid(t)
    if c_c_variant.ambient_dim != t.space.dim:
        raise PreconditionError("variant ambient mismatch")
    cp_omega = symp_orthogonal(t.space, t.c_prime)
    if not classify(t.space, c_c_variant).isotropic:
        raise PreconditionError("variant must be isotropic")
    if not is_direct_sum([t.c_omega, c_c_variant], cp_omega):
        raise PreconditionError("variant must complement the orthogonal of c "
                                "inside the orthogonal of c_prime")
    k2 = t.reduced_dim
    n = t.space.dim
    rows = [list(row) + [ZERO] * k2 for row in c_c_variant.basis.entries]
    for i, row in enumerate(t.c_prime.basis.entries):
        tail = [ZERO] * k2
        tail[i] = -ONE
        rows.append(list(row) + tail)
    return Subspace.span(n + k2, Matrix(rows, len(rows), n + k2))


def reduce_lagrangian(t: SplittingCTriple, l: Subspace) -> Subspace:
    """Reduction (L cap C) / (L cap C^w) inside the reduced coordinates.

    Computed twice: through the quotient projection, and as the
    set-theoretic composition of the reduction relation with L.  The two
    must agree exactly.
    """
    _require_valid(t)
    if not classify(t.space, l).lagrangian:
        raise PreconditionError("l must be Lagrangian")
    k2 = t.reduced_dim
    via_quotient = _quotient_image(t, l.intersect(t.c))
    graph = _reduction_graph(t)
    paired = graph.intersect(direct_product(l, Subspace.full(k2)))
    via_composition = paired.project_coordinates(
        range(t.space.dim, t.space.dim + k2))
    if via_quotient != via_composition:  # pragma: no cover - exact identity
        raise RuntimeError("quotient route and composition route disagree")
    return via_quotient


def dim_counts(n: int, k: int) -> tuple[int, int, int]:
    """Complement-space dimension bookkeeping for dim V = 2n, dim C = n+k.

    Returns (d1, d2, d): the dimension of the space of Lagrangian
    complements to the reduction relation, the dimension of the family
    coming from variant complements with C' fixed, and their difference
    d = d1 - d2 = (2n+1)k.
    """
    if n < 0 or k < 0 or k > n:
        raise PreconditionError("need 0 <= k <= n")
    d1 = (n + k) * (n + k + 1) // 2
    d2 = (n - k) * (n - k + 1) // 2
    return d1, d2, (2 * n + 1) * k


def check_neat(pair: SplittingLPair, t: SplittingCTriple) -> bool:
    """Exact test of the trace equation C' = (L cap C') + (L' cap C')."""
    if pair.space != t.space:
        raise PreconditionError("pair and triple live in different spaces")
    _require_valid(t)
    lhs = pair.l.intersect(t.c_prime).sum(pair.l_prime.intersect(t.c_prime))
    return lhs == t.c_prime


@dataclass(frozen=True)
class NeatSearchResult:
    """Outcome of the neat-complement search.

    On success ``complement`` holds a Lagrangian complement L' of L with
    C' = (L cap C') + (L' cap C').  On failure ``obstruction`` holds the
    subspace of C' that no isotropic partner can cover, and ``detail``
    explains the dimension count.
    """

    complement: Subspace | None
    obstruction: Subspace | None
    detail: str

    @property
    def ok(self) -> bool:
        return self.complement is not None


def _subspace_in_coords(frame: Subspace, sub: Subspace) -> Subspace:
    """Rewrite sub (contained in span(frame)) in frame coordinates."""
    rows = [coordinates_in_basis(frame, row) for row in sub.basis.entries]
    return Subspace.span(frame.dim, Matrix(rows, len(rows), frame.dim))


def _lift_from_coords(frame: Subspace, sub: Subspace) -> Subspace:
    """Inverse of :func:`_subspace_in_coords`."""
    rows = [sub.basis.entries[i] for i in range(sub.dim)]
    lifted = Matrix(rows, sub.dim, frame.dim) * frame.basis \
        if sub.dim else Matrix([], 0, frame.ambient_dim)
    return Subspace.span(frame.ambient_dim, lifted)


def _isotropic_complement_within(space: SymplecticSpace, k: Subspace,
                                 c_prime: Subspace,
                                 rng: random.Random) -> Subspace | None:
    """Isotropic X with K (+) X = C', or None when impossible.

    Splitting C' into its radical R and a symplectic part W, such an X
    exists exactly when the projection of K into W covers at least half
    of W.  The construction lifts an isotropic complement found inside W
    and pads it with a complement of K cap R inside R.
    """
    radical = c_prime.intersect(symp_orthogonal(space, c_prime))
    w_part = radical.complement_in(c_prime)
    gram_w = space.gram(w_part, w_part)
    half = w_part.dim // 2
    aux = SymplecticSpace(w_part.dim, gram_w) if w_part.dim else None

    # project K into W along R, in W coordinates
    if k.dim == 0:
        k_bar = Subspace.zero(w_part.dim)
    else:
        columns = hstack(w_part.basis.transpose(), radical.basis.transpose()) \
            if radical.dim else w_part.basis.transpose()
        coeffs = columns.solve(k.basis.transpose())
        rows = [[coeffs.entries[i][j] for i in range(w_part.dim)]
                for j in range(k.dim)]
        k_bar = Subspace.span(w_part.dim, Matrix(rows, k.dim, w_part.dim))

    if k_bar.dim < half:
        return None

    if aux is None or w_part.dim == 0:
        e_lift = Subspace.zero(space.dim)
    else:
        want = k_bar.dim - half
        for _ in range(128):
            lag = sample_lagrangian(aux, rng)
            if lag.intersect(k_bar).dim == want:
                break
        else:  # pragma: no cover - generic Lagrangians achieve the minimum
            raise RuntimeError("could not find a transversal Lagrangian")
        e_bar = lag.intersect(k_bar).complement_in(lag)
        e_lift = _lift_from_coords(w_part, e_bar)

    pad = k.intersect(radical).complement_in(radical)
    x = e_lift.sum(pad)
    if not classify(space, x).isotropic or not is_direct_sum([k, x], c_prime):
        raise RuntimeError(  # pragma: no cover - construction is certified
            "isotropic complement construction failed")
    return x


def find_neat_complement(l: Subspace,
                         t: SplittingCTriple) -> NeatSearchResult:
    """Search for an isotropic complement of L making the pair neat.

    Follows the complement recipe: set K = L cap C', find an isotropic
    complement of K inside C' (this is where the search can honestly
    fail), then extend it to a Lagrangian complement of L by averaging
    inside the reduction of the symplectic orthogonal of the part found.
    """
    _require_valid(t)
    space = t.space
    if not classify(space, l).lagrangian:
        raise PreconditionError("l must be Lagrangian")
    rng = random.Random(7)
    k = l.intersect(t.c_prime)
    a = _isotropic_complement_within(space, k, t.c_prime, rng)
    if a is None:
        radical = t.c_prime.intersect(symp_orthogonal(space, t.c_prime))
        w_part = radical.complement_in(t.c_prime)
        obstruction = w_part if k.dim == 0 else \
            t.c_prime.intersect(symp_orthogonal(space, k.sum(radical)))
        detail = (f"L meets C' in dimension {k.dim}, below the effective "
                  f"half-dimension {w_part.dim // 2} of C' modulo its "
                  f"radical; no isotropic subspace can complete the trace "
                  f"equation")
        return NeatSearchResult(None, obstruction, detail)

    # extend a to a Lagrangian complement of l containing a
    a_omega = symp_orthogonal(space, a)
    rep = a.complement_in(a_omega)
    if rep.dim:
        aux = SymplecticSpace(rep.dim, space.gram(rep, rep))
        columns = hstack(a.basis.transpose(), rep.basis.transpose()) \
            if a.dim else rep.basis.transpose()
        l_in = l.intersect(a_omega)
        if l_in.dim:
            coeffs = columns.solve(l_in.basis.transpose())
            rows = [[coeffs.entries[a.dim + i][j] for i in range(rep.dim)]
                    for j in range(l_in.dim)]
            l_red = Subspace.span(rep.dim, Matrix(rows, l_in.dim, rep.dim))
        else:
            l_red = Subspace.zero(rep.dim)
        m_red = lagrangian_complement(aux, l_red)
        l_prime = a.sum(_lift_from_coords(rep, m_red))
    else:
        l_prime = a

    pair = SplittingLPair(space, l, l_prime)
    if not check_neat(pair, t):  # pragma: no cover - construction certified
        raise RuntimeError("constructed complement failed the trace equation")
    return NeatSearchResult(l_prime, None, "constructed by complement recipe")


def neat_reduction_is_split(pair: SplittingLPair,
                            t: SplittingCTriple) -> tuple[Subspace, Subspace]:
    """Reduce a neatly intersecting pair; both images are Lagrangian.

    Returns (reduction of L, image of L' cap C'), verified to be
    complementary isotropic subspaces of the reduced space.
    """
    if not check_neat(pair, t):
        lhs = pair.l.intersect(t.c_prime)
        rhs = pair.l_prime.intersect(t.c_prime)
        raise NeatnessError(
            "the pair does not intersect the triple neatly",
            certificate={
                "c_prime_dim": t.c_prime.dim,
                "l_trace_dim": lhs.dim,
                "l_prime_trace_dim": rhs.dim,
                "span_dim": lhs.sum(rhs).dim,
            })
    reduced = reduce_space(t)
    l_bar = reduce_lagrangian(t, pair.l)
    m_bar = _quotient_image(t, pair.l_prime.intersect(t.c_prime))
    space = reduced.as_space()
    ok = (classify(space, l_bar).isotropic
          and classify(space, m_bar).isotropic
          and is_direct_sum([l_bar, m_bar], Subspace.full(space.dim)))
    if not ok:  # pragma: no cover - guaranteed by the neat trace equation
        raise RuntimeError("neat reduction failed to split")
    return l_bar, m_bar


def product_triple(a: SplittingCTriple, b: SplittingCTriple,
                   space: SymplecticSpace | None = None) -> SplittingCTriple:
    """Componentwise product of two triples.

    ``space`` may override the ambient (e.g. to flip form signs for
    relation conventions); validity is insensitive to such sign flips.
    """
    ambient = space if space is not None else space_direct_sum(a.space,
                                                               b.space)
    triple = SplittingCTriple(ambient,
                              direct_product(a.c, b.c),
                              direct_product(a.c_c, b.c_c),
                              direct_product(a.c_prime, b.c_prime))
    _require_valid(triple)
    return triple
