"""Command-line front end over JSON documents.

Scalars travel as exact fraction strings ("3", "-1/2"); matrices and
subspace bases as arrays of arrays of such strings.  Exit codes: 0
success, 2 parse error, 3 precondition violation, 4 mathematical
failure (a neatness certificate or a failed verification sweep).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, NeatnessError, PreconditionError
from .linalg import (Matrix, Subspace, matrix_from_strings, matrix_to_strings)
from .psm import PolyTruncation, verify_psm
from .reduction import (SplittingCTriple, check_neat, dim_counts,
                        reduce_lagrangian, reduce_space)
from .relations import CanonicalRelation, SplitCanonicalRelation
from .compose import compose, compose_split
from .symplectic import (SymplecticSpace, SplittingLPair, average_complement,
                         classify, random_lagrangian, make_standard,
                         symp_orthogonal)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_MATH = 4


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from None


def _require(doc, key, path):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"document {path} is missing field {key!r}")
    return doc[key]


def load_space(path: str) -> SymplecticSpace:
    doc = _read_json(path)
    dim = _require(doc, "dim", path)
    form = matrix_from_strings(_require(doc, "form", path), cols=dim)
    try:
        return SymplecticSpace(dim, form)
    except PreconditionError as exc:
        raise InputError(f"bad space document {path}: {exc}") from None


def load_subspace(path: str, doc=None, label: str = "") -> Subspace:
    doc = _read_json(path) if doc is None else doc
    where = label or path
    ambient = _require(doc, "ambient_dim", where)
    basis = matrix_from_strings(_require(doc, "basis", where), cols=ambient)
    return Subspace.span(ambient, basis)


def space_doc(space: SymplecticSpace) -> dict:
    return {"dim": space.dim, "form": matrix_to_strings(space.form)}


def subspace_doc(sub: Subspace) -> dict:
    return {"ambient_dim": sub.ambient_dim,
            "basis": matrix_to_strings(sub.basis)}


def load_relation(path: str) -> tuple[CanonicalRelation, Subspace | None]:
    doc = _read_json(path)
    source_doc = _require(doc, "source", path)
    target_doc = _require(doc, "target", path)
    try:
        source = SymplecticSpace(
            _require(source_doc, "dim", path),
            matrix_from_strings(_require(source_doc, "form", path)))
        target = SymplecticSpace(
            _require(target_doc, "dim", path),
            matrix_from_strings(_require(target_doc, "form", path)))
    except PreconditionError as exc:
        raise InputError(f"bad relation spaces in {path}: {exc}") from None
    graph = load_subspace(path, _require(doc, "graph", path), f"{path}.graph")
    complement = None
    if doc.get("complement") is not None:
        complement = load_subspace(path, doc["complement"],
                                   f"{path}.complement")
    relation = CanonicalRelation(source, target, graph)
    return relation, complement


def relation_doc(rel: CanonicalRelation,
                 complement: Subspace | None = None) -> dict:
    doc = {"source": space_doc(rel.source), "target": space_doc(rel.target),
           "graph": subspace_doc(rel.graph)}
    if complement is not None:
        doc["complement"] = subspace_doc(complement)
    return doc


def load_triple(path: str, space: SymplecticSpace) -> SplittingCTriple:
    doc = _read_json(path)
    return SplittingCTriple(
        space,
        load_subspace(path, _require(doc, "c", path), f"{path}.c"),
        load_subspace(path, _require(doc, "c_c", path), f"{path}.c_c"),
        load_subspace(path, _require(doc, "c_prime", path), f"{path}.c_prime"))


def load_pair(path: str, space: SymplecticSpace) -> SplittingLPair:
    doc = _read_json(path)
    return SplittingLPair(
        space,
        load_subspace(path, _require(doc, "l", path), f"{path}.l"),
        load_subspace(path, _require(doc, "l_prime", path),
                      f"{path}.l_prime"))


def _cmd_classify(args) -> tuple[dict, int]:
    space = load_space(args.space)
    sub = load_subspace(args.subspace)
    flags = classify(space, sub)
    ortho = symp_orthogonal(space, sub)
    return ({"operation": "classify",
             "isotropic": flags.isotropic,
             "coisotropic": flags.coisotropic,
             "lagrangian": flags.lagrangian,
             "symplectic_subspace": flags.symplectic_subspace,
             "dim": sub.dim,
             "orthogonal_dim": ortho.dim}, EXIT_OK)


def _cmd_average(args) -> tuple[dict, int]:
    space = load_space(args.space)
    l = load_subspace(args.l)
    k = load_subspace(args.k)
    result = average_complement(space, l, k)
    return ({"operation": "average-complement",
             "result": subspace_doc(result)}, EXIT_OK)


def _cmd_reduce(args) -> tuple[dict, int]:
    space = load_space(args.space)
    triple = load_triple(args.triple, space)
    l = load_subspace(args.l)
    reduced = reduce_space(triple)
    image = reduce_lagrangian(triple, l)
    return ({"operation": "reduce-lagrangian",
             "reduced_form": matrix_to_strings(reduced.form),
             "result": subspace_doc(image)}, EXIT_OK)


def _cmd_compose(args) -> tuple[dict, int]:
    rel1, comp1 = load_relation(args.rel1)
    rel2, comp2 = load_relation(args.rel2)
    if args.split:
        if comp1 is None or comp2 is None:
            raise PreconditionError(
                "--split needs complements on both relations")
        split = compose_split(SplitCanonicalRelation(rel1, comp1),
                              SplitCanonicalRelation(rel2, comp2))
        return ({"operation": "compose-split",
                 **relation_doc(split.relation, split.complement)}, EXIT_OK)
    result = compose(rel1, rel2)
    return ({"operation": "compose", **relation_doc(result)}, EXIT_OK)


def _cmd_neat(args) -> tuple[dict, int]:
    space = load_space(args.space)
    pair = load_pair(args.pair, space)
    triple = load_triple(args.triple, space)
    neat = check_neat(pair, triple)
    lhs = pair.l.intersect(triple.c_prime)
    rhs = pair.l_prime.intersect(triple.c_prime)
    payload = {"operation": "check-neat",
               "neat": neat,
               "c_prime_dim": triple.c_prime.dim,
               "l_trace_dim": lhs.dim,
               "l_prime_trace_dim": rhs.dim,
               "span_dim": lhs.sum(rhs).dim}
    return payload, EXIT_OK if neat else EXIT_MATH


def _cmd_dim_counts(args) -> tuple[dict, int]:
    d1, d2, d = dim_counts(args.n, args.k)
    return ({"operation": "dim-counts", "d1": d1, "d2": d2, "d": d}, EXIT_OK)


def _cmd_psm_demo(args) -> tuple[dict, int]:
    report = verify_psm(PolyTruncation(args.degree, args.target))
    return report.to_json(), EXIT_OK if report.all_passed else EXIT_MATH


def _cmd_sample_lagrangian(args) -> tuple[dict, int]:
    if args.dim % 2:
        raise PreconditionError("dimension must be even")
    space = make_standard(args.dim // 2)
    sub = random_lagrangian(space, args.seed)
    return ({"operation": "sample-lagrangian", "seed": args.seed,
             "result": subspace_doc(sub)}, EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitlag",
        description="exact rational computations with Lagrangian subspaces, "
                    "coisotropic reduction and canonical relations")
    parser.add_argument("--out", default="-",
                        help="output file (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="isotropy flags of a subspace")
    p.add_argument("--space", required=True)
    p.add_argument("--subspace", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("average",
                       help="isotropic complement by the averaging map")
    p.add_argument("--space", required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--k", required=True)
    p.set_defaults(func=_cmd_average)

    p = sub.add_parser("reduce", help="reduce a Lagrangian by a triple")
    p.add_argument("--space", required=True)
    p.add_argument("--triple", required=True)
    p.add_argument("--l", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("compose", help="compose two canonical relations")
    p.add_argument("--rel1", required=True)
    p.add_argument("--rel2", required=True)
    p.add_argument("--split", action="store_true",
                   help="also produce a complement (needs neat inputs)")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("neat", help="test the neat-intersection equation")
    p.add_argument("--space", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--triple", required=True)
    p.set_defaults(func=_cmd_neat)

    p = sub.add_parser("dim-counts",
                       help="complement-family dimension bookkeeping")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=_cmd_dim_counts)

    p = sub.add_parser("psm-demo",
                       help="verify the truncated sigma-model constructions")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.set_defaults(func=_cmd_psm_demo)

    p = sub.add_parser("sample-lagrangian",
                       help="seeded random Lagrangian of a standard space")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sample_lagrangian)

    return parser


def _emit(payload: dict, out: str) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out == "-":
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except InputError as exc:
        _emit({"error": "parse", "message": str(exc)}, args.out)
        return EXIT_PARSE
    except PreconditionError as exc:
        _emit({"error": "precondition", "message": str(exc)}, args.out)
        return EXIT_PRECONDITION
    except NeatnessError as exc:
        _emit({"error": "neatness", "message": str(exc),
               "certificate": exc.certificate}, args.out)
        return EXIT_MATH
    _emit(payload, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
