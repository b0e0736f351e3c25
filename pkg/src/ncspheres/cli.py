"""Command-line front end: every operation behind a subcommand, with
deterministic JSON (default) or CSV output.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification
failure.  Matrices of rationals serialize entries as exact ``p/q``
strings, never floats.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import models, relations, verify
from .errors import NCSphereError
from .partitions import (
    PartitionClass,
    crossing_count,
    enumerate_partitions,
    halfcommuting_membership,
    is_member,
    parse_partition,
    perm_to_partition,
    signature,
    standard_form,
)
from .relations import (
    NCCombination,
    classify_monomial_sphere,
    comult_sign_check,
    monomial_system,
    parse_word,
    reduce as reduce_expr,
    saturate,
    sphere_relations,
)
from .weingarten import (
    Field,
    Level,
    category_pairings,
    gram,
    gram_rank_products,
    group_by_name,
    moment,
    row_sum_profile,
    sphere_by_name,
    sphere_trace,
    weingarten_matrix,
)

# operations running (directly or transitively) under each subcommand, for
# the coverage check
COMMAND_OPERATIONS = {
    "partitions": ["enumerate_partitions", "is_member", "parse_partition"],
    "signature": ["signature", "standard_form", "crossing_count"],
    "gram": ["category_pairings", "gram", "row_sum_profile", "join"],
    "weingarten": ["weingarten_matrix"],
    "moment": ["moment", "delta", "kernel", "is_constant_on_blocks"],
    "trace": ["sphere_trace"],
    "rank": ["gram_rank_products"],
    "classify": ["classify_monomial_sphere", "halfcommuting_membership",
                 "perm_to_partition"],
    "saturate": ["saturate", "sphere_relations", "relation_sign",
                 "group_relations", "relation_group", "comult_sign_check"],
    "reduce": ["reduce", "parse_word"],
    "check": ["sample_classical_point", "twisted_classical_points",
              "antidiagonal_model", "sqrt_positive_model", "clifford_model",
              "check_sphere_relations", "check_intertwiner",
              "check_fixed_vector_identity", "coaction_check",
              "enumerate_signed_permutations", "haar_moment_mc"],
    "verify": ["t_map", "xi_vector", "inner_product", "tensor_concat",
               "compose", "involution"],
}


def _emit(payload: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
        return
    # csv: matrices become rows, lists one item per line, scalars key,value
    lines = []
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            for row in value:
                lines.append(",".join(str(x) for x in row))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for row in value:
                lines.append(",".join(str(x) for x in row.values()))
        elif isinstance(value, list):
            lines.extend(str(x) for x in value)
        else:
            lines.append(f"{key},{value}")
    print("\n".join(lines))


def _frac_rows(matrix) -> list[list[str]]:
    return matrix.to_strings()


def _parse_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x != "")


def _parse_legs(text: str):
    return int(text) if text.isdigit() else text


def _perm_arg(text: str) -> tuple[int, ...]:
    return tuple(int(c) for c in text)


def cmd_partitions(args) -> dict:
    cls = PartitionClass(args.cls)
    got = enumerate_partitions(cls, _parse_legs(args.upper), _parse_legs(args.lower))
    return {"class": cls.value, "count": len(got),
            "partitions": [p.literal() for p in got]}


def cmd_signature(args) -> dict:
    p = parse_partition(args.partition)
    form, switches = standard_form(p)
    out = {"partition": p.literal(), "signature": signature(p),
           "switches": switches, "standard_form": form.literal()}
    if p.is_pairing():
        out["crossings"] = crossing_count(p)
    return out


def _pairing_args(args):
    group = group_by_name(args.group)
    alpha = args.alpha
    k = args.k
    if group.field is Field.COMPLEX and alpha is None:
        raise NCSphereError("complex groups need --alpha")
    return group, alpha, k


def cmd_gram(args) -> dict:
    group, alpha, k = _pairing_args(args)
    ps = category_pairings(group, alpha=alpha, k=k)
    g = gram(group, args.n, pairings=ps)
    return {"group": group.name, "alpha": alpha, "k": k or len(alpha or ""),
            "N": args.n, "pairings": [p.literal() for p in ps],
            "gram": _frac_rows(g),
            "row_sums": [str(x) for x in row_sum_profile(g)]}


def cmd_weingarten(args) -> dict:
    group, alpha, k = _pairing_args(args)
    ps = category_pairings(group, alpha=alpha, k=k)
    g = gram(group, args.n, pairings=ps)
    w = weingarten_matrix(group, args.n, pairings=ps)
    return {"group": group.name, "alpha": alpha, "k": k or len(alpha or ""),
            "N": args.n, "pairings": [p.literal() for p in ps],
            "gram": _frac_rows(g), "weingarten": _frac_rows(w)}


def cmd_moment(args) -> dict:
    group = group_by_name(args.group)
    value = moment(group, args.n, _parse_tuple(args.i), _parse_tuple(args.j),
                   alpha=args.alpha)
    return {"group": group.name, "N": args.n, "i": list(_parse_tuple(args.i)),
            "j": list(_parse_tuple(args.j)), "alpha": args.alpha,
            "moment": str(value)}


def cmd_trace(args) -> dict:
    sphere = sphere_by_name(args.sphere)
    value = sphere_trace(sphere, args.n, _parse_tuple(args.i), alpha=args.alpha)
    return {"sphere": sphere.name, "N": args.n, "i": list(_parse_tuple(args.i)),
            "alpha": args.alpha, "trace": str(value)}


def cmd_rank(args) -> dict:
    sphere = sphere_by_name(args.sphere)
    rank = gram_rank_products(sphere, args.n, conjugated=args.conjugated)
    return {"sphere": sphere.name, "N": args.n, "conjugated": args.conjugated,
            "rank": rank}


def cmd_classify(args) -> dict:
    perms = [_perm_arg(p) for p in args.perm]
    got = classify_monomial_sphere(perms, args.regime,
                                   max_degree=args.degree,
                                   max_indices=args.indices)
    out = {"perms": ["".join(str(x) for x in p) for p in perms],
           "regime": args.regime, "sphere": got,
           "halfcommuting": [halfcommuting_membership(p) for p in perms]}
    if got != "undetermined":
        spec = sphere_by_name(got)
        out["field"] = spec.field.value
        out["level"] = spec.level.value
        out["twisted"] = spec.twisted
    return out


def cmd_saturate(args) -> dict:
    if args.group:
        # group-level presets: report the commutation sign rules and, for
        # the twisted half-liberated groups, the span-table consistency
        g = group_by_name(args.group)
        grs = relations.group_relations(g)
        out: dict = {"group": g.name}
        out["pair_signs"] = {
            "same_row": grs.pair_sign((1, 1), (1, 2)),
            "same_column": grs.pair_sign((1, 1), (2, 1)),
            "generic": grs.pair_sign((1, 1), (2, 2)),
        }
        out["triple_signs"] = {
            "span_3_3": grs.triple_sign((1, 1), (2, 2), (3, 3)),
            "span_3_1": grs.triple_sign((1, 1), (2, 1), (3, 1)),
            "span_2_3": grs.triple_sign((1, 1), (1, 2), (2, 3)),
        }
        if g.level is Level.HALF and g.twisted:
            out["comult_sign_check"] = comult_sign_check(g)
        return out
    if args.sphere:
        system = sphere_relations(sphere_by_name(args.sphere))
        source: dict = {"sphere": args.sphere}
    else:
        field = Field.COMPLEX if args.regime.startswith("complex") else Field.REAL
        system = monomial_system([_perm_arg(p) for p in args.perm], field,
                                 args.regime.endswith("twisted"))
        source = {"regime": args.regime, "perms": list(args.perm)}
    result = saturate(system, args.degree, args.indices)
    out = {**source,
           "derived": [s.literal() for s in result.schemas],
           "truncated": result.truncated,
           "trace": result.engine.trace}
    if args.k:
        group = relations.relation_group(system, args.k)
        out["relation_group"] = sorted(
            "".join(str(x) for x in s) for s in group)
    return out


def cmd_reduce(args) -> dict:
    if args.sphere:
        system = sphere_relations(sphere_by_name(args.sphere))
    else:
        field = Field.COMPLEX if args.regime.startswith("complex") else Field.REAL
        system = monomial_system([_perm_arg(p) for p in args.perm],
                                 field, args.regime.endswith("twisted"))
    expr = _parse_expression(args.expr)
    out, trace = reduce_expr(expr, system, args.degree, args.indices)
    return {"expr": args.expr, "reduced": str(out), "zero": out.is_zero(),
            "trace": trace}


def _parse_expression(text: str) -> NCCombination:
    """Tiny expression grammar: words, + -, integer coefficients,
    parentheses and ^n powers, with juxtaposition as product."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_sum():
        nonlocal pos
        acc = parse_product()
        while True:
            skip_ws()
            if pos < len(text) and text[pos] in "+-":
                op = text[pos]
                pos += 1
                term = parse_product()
                acc = acc + term if op == "+" else acc - term
            else:
                return acc

    def parse_product():
        nonlocal pos
        acc = parse_power()
        while True:
            skip_ws()
            if pos < len(text) and (text[pos].isalnum() or text[pos] == "("):
                acc = acc * parse_power()
            else:
                return acc

    def parse_power():
        nonlocal pos
        base = parse_atom()
        skip_ws()
        if pos < len(text) and text[pos] == "^":
            pos += 1
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            base = base ** int(text[start:pos])
        return base

    def parse_atom():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ValueError("unexpected end of expression")
        if text[pos] == "(":
            pos += 1
            inner = parse_sum()
            skip_ws()
            if pos >= len(text) or text[pos] != ")":
                raise ValueError("unbalanced parenthesis")
            pos += 1
            return inner
        if text[pos].isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return NCCombination({(): int(text[start:pos])})
        start = pos
        while pos < len(text) and (text[pos].islower() or text[pos] == "*"):
            pos += 1
        return NCCombination.monomial(parse_word(text[start:pos]))

    out = parse_sum()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing input in expression: {text[pos:]!r}")
    return out


def cmd_check(args) -> dict:
    sphere = sphere_by_name(args.sphere) if args.sphere else None
    out: dict = {"N": args.n}
    model = None
    if args.op in ("relations", "fixed_vector", "coaction"):
        model = _build_model(args, sphere)
        out["model"] = args.model
        out["model_data"] = model.to_json_dict()
    if args.op == "relations":
        if sphere is None:
            raise NCSphereError("--op relations needs --sphere")
        violations = models.check_sphere_relations(model, sphere, args.tol)
        out["violations"] = [{"relation": d, "residual": r} for d, r in violations]
        out["ok"] = not violations
    if args.op in ("fixed_vector", "intertwiner") and not args.partition:
        raise NCSphereError(f"--op {args.op} needs --partition")
    if args.op == "fixed_vector":
        p = parse_partition(args.partition)
        out["partition"] = p.literal()
        out["residual"] = models.check_fixed_vector_identity(
            p, model, args.twisted, args.tol)
        out["ok"] = out["residual"] < args.tol
    if args.op == "intertwiner":
        p = parse_partition(args.partition)
        if args.matrix == "signed":
            mats = [g.matrix() for g in models.enumerate_signed_permutations(args.n)]
        else:
            mats = list(models.haar_orthogonal(args.n, args.samples, args.seed))
        passed = [models.check_intertwiner(p, u, args.twisted, args.tol)
                  for u in mats]
        out.update({"partition": p.literal(), "matrix": args.matrix,
                    "pass_count": sum(passed), "total": len(passed)})
    if args.op == "coaction":
        if sphere is None:
            raise NCSphereError("--op coaction needs --sphere")
        g = models.enumerate_signed_permutations(args.n)[args.element]
        out["ok"] = models.coaction_check(g, model, sphere, args.tol)
    if args.op == "mc_moment":
        word = [(i, j, a) for i, j, a in zip(
            _parse_tuple(args.i), _parse_tuple(args.j),
            args.alpha or "1" * len(_parse_tuple(args.i)))]
        est, se = models.haar_moment_mc(args.mc_group, args.n, word,
                                        samples=args.samples, seed=args.seed)
        out.update({"estimate": est, "se": se, "group": args.mc_group})
    return out


def _build_model(args, sphere):
    name = args.model
    if name == "classical_point":
        field = sphere.field if sphere else Field.REAL
        return models.sample_classical_point(field, args.n, args.seed)
    if name == "twisted_point":
        field = sphere.field if sphere else Field.REAL
        pts = models.twisted_classical_points(field, args.n)
        return pts[args.seed % len(pts)]
    if name == "antidiagonal":
        z = models.sample_classical_point(Field.COMPLEX, args.n, args.seed)
        return models.antidiagonal_model(z)
    if name == "clifford":
        return models.clifford_model(args.n)
    if name == "sqrt_positive":
        w = np.exp(2j * np.pi / 3)
        model, _ = models.sqrt_positive_model(
            (1 / 3, 1 / 3, 1 / 3), (1 / 3, 1 / 3, 1 / 3),
            (0.1, 0.1 * w, 0.1 * w ** 2))
        return model
    raise NCSphereError(f"unknown model {name!r}")


def cmd_verify(args) -> tuple[dict, int]:
    results, mc_report = verify.run_suite(args.suite)
    payload = {
        "suite": args.suite,
        "results": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                    for r in results],
        "passed": all(r.passed for r in results),
    }
    if args.suite == "mc":
        payload["estimates"] = mc_report
    return payload, (0 if payload["passed"] else 3)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncspheres",
        description="Diagram calculus and exact Weingarten integration for "
                    "the ten liberated/twisted spheres.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("partitions", help="enumerate a partition class")
    p.add_argument("--class", dest="cls", required=True,
                   choices=[c.value for c in PartitionClass])
    p.add_argument("--upper", default="0")
    p.add_argument("--lower", default="0")
    add_common(p)

    p = sub.add_parser("signature", help="twisted signature of a partition")
    p.add_argument("--partition", required=True)
    add_common(p)

    for name in ("gram", "weingarten"):
        p = sub.add_parser(name, help=f"{name} matrix of a group category")
        p.add_argument("--group", required=True)
        p.add_argument("--k", type=int)
        p.add_argument("--alpha")
        p.add_argument("--n", type=int, required=True)
        add_common(p)

    p = sub.add_parser("moment", help="exact Haar moment of a coordinate word")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", required=True)
    p.add_argument("--j", required=True)
    p.add_argument("--alpha")
    add_common(p)

    p = sub.add_parser("trace", help="canonical trace of a sphere monomial")
    p.add_argument("--sphere", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", required=True)
    p.add_argument("--alpha")
    add_common(p)

    p = sub.add_parser("rank", help="rank of the degree-2 product Gram matrix")
    p.add_argument("--sphere", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--conjugated", action="store_true")
    add_common(p)

    p = sub.add_parser("classify", help="identify a monomial sphere")
    p.add_argument("--perm", action="append", required=True,
                   help="one-line permutation word, e.g. 321")
    p.add_argument("--regime", required=True,
                   choices=("real", "complex", "real_twisted", "complex_twisted"))
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--indices", type=int, default=4)
    add_common(p)

    p = sub.add_parser("saturate", help="derived low-degree relation schemas")
    p.add_argument("--perm", action="append", default=[])
    p.add_argument("--regime", default="real",
                   choices=("real", "complex", "real_twisted", "complex_twisted"))
    p.add_argument("--sphere", help="saturate a sphere preset instead")
    p.add_argument("--group", help="report a group preset's sign rules instead")
    p.add_argument("--k", type=int,
                   help="also report the derivable permutation group at length k")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--indices", type=int, default=4)
    add_common(p)

    p = sub.add_parser("reduce", help="normal form of a word combination")
    p.add_argument("--expr", required=True, help='e.g. "(ab-ba)^2"')
    p.add_argument("--sphere")
    p.add_argument("--perm", action="append", default=[])
    p.add_argument("--regime", default="real",
                   choices=("real", "complex", "real_twisted", "complex_twisted"))
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--indices", type=int, default=4)
    add_common(p)

    p = sub.add_parser("check", help="numeric model checks")
    p.add_argument("--op", default="relations",
                   choices=("relations", "fixed_vector", "intertwiner",
                            "coaction", "mc_moment"))
    p.add_argument("--sphere")
    p.add_argument("--model", default="classical_point",
                   choices=("classical_point", "twisted_point", "antidiagonal",
                            "clifford", "sqrt_positive"))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--partition")
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--matrix", choices=("signed", "haar"), default="signed")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--element", type=int, default=0)
    p.add_argument("--mc-group", default="orthogonal",
                   choices=("orthogonal", "unitary", "hyperoctahedral", "k_n"))
    p.add_argument("--i")
    p.add_argument("--j")
    p.add_argument("--alpha")
    add_common(p)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", default="paper", choices=("paper", "quick", "mc"))
    add_common(p)
    return ap


HANDLERS = {
    "partitions": cmd_partitions,
    "signature": cmd_signature,
    "gram": cmd_gram,
    "weingarten": cmd_weingarten,
    "moment": cmd_moment,
    "trace": cmd_trace,
    "rank": cmd_rank,
    "classify": cmd_classify,
    "saturate": cmd_saturate,
    "reduce": cmd_reduce,
    "check": cmd_check,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            payload, code = cmd_verify(args)
            _emit(payload, args.format)
            return code
        payload = HANDLERS[args.command](args)
        _emit(payload, args.format)
        return 0
    except (NCSphereError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
