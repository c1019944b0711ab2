"""Command-line entry point.

Exit codes: 0 when every requested check passes, 1 when a verdict fails
(the witness is printed as a single-line JSON record on stdout), 2 for
malformed input, unknown kinds or conversions that do not exist.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    FiniteDynGroup,
    InconsistencyError,
    PreconditionError,
    ShapeError,
    Verdict,
    verify_dyn_group,
)
from .document import (
    DOCUMENT_KINDS,
    DocumentError,
    StructureDocument,
    compact_document,
    from_structure,
    load_document,
    serialize_document,
    to_structure,
)
from .groupoid import export_dot, functor_q, verify_groupoid
from .matched import (
    BraidedDynGroup,
    braided_to_solution,
    double,
    verify_braided,
    verify_matched_pair,
)
from .postbrace import (
    FiniteDynPostGroup,
    FiniteDynSkewBrace,
    braided_to_post,
    identity_rbo,
    post_to_braided,
    post_to_skewbrace,
    rbo_to_post,
    skewbrace_to_post,
    verify_post_group,
    verify_skew_brace,
)
from .rational import EXEMPLARS, RationalSampler, run_rational_suite
from .rota import (
    descendant,
    factorization_group,
    semidirect,
    verify_action,
    verify_rbo,
)
from .search import KINDS, PartialResultError, SearchSpec, canonical_count, find_containing, stream, structure_key
from .ybe import (
    Braiding,
    check_all,
    check_bijective,
    check_dybe,
    check_nondegenerate,
    check_nondegenerate_fibered,
    check_weight_zero,
)

__all__ = ["main", "build_parser"]

CONVERTIBLE = ("post_group", "braided_group", "skew_brace", "rbo")


class UsageError(ValueError):
    """Request that cannot be carried out for this input (exit code 2)."""


def _emit(record: dict) -> None:
    print(json.dumps(record, separators=(",", ":"), ensure_ascii=False))


def _verdict_exit(command: str, v: Verdict, **extra) -> int:
    _emit({"command": command, **extra, **v.as_record()})
    return 0 if v else 1


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _verify(obj) -> Verdict:
    from .matched import DynMatchedPair
    from .rota import DynAction, RelativeRBO

    if isinstance(obj, FiniteDynGroup):
        return verify_dyn_group(obj)
    if isinstance(obj, FiniteDynPostGroup):
        return verify_post_group(obj)
    if isinstance(obj, FiniteDynSkewBrace):
        return verify_skew_brace(obj)
    if isinstance(obj, BraidedDynGroup):
        return verify_braided(obj)
    if isinstance(obj, Braiding):
        return check_all(obj)
    if isinstance(obj, DynMatchedPair):
        return verify_matched_pair(obj)
    if isinstance(obj, RelativeRBO):
        return verify_rbo(obj)
    if isinstance(obj, DynAction):
        return verify_action(obj)
    raise TypeError(type(obj).__name__)


def _instances(doc: StructureDocument) -> dict:
    """How many tuples the dynamical-group sweep covers, reported with its verdict."""
    L, N = len(doc.lambda_labels), len(doc.elem_labels)
    if doc.kind == "dynamical_group":
        return {"instances": {"associativity": L * N ** 3, "phi-asso": L * N * N, "inverses": L * N}}
    return {}


def _load(path: str, kinds=None):
    doc = load_document(path)
    if kinds is not None and doc.kind not in kinds:
        raise UsageError(f"{path}: kind {doc.kind!r} not accepted here; expected one of {', '.join(kinds)}")
    return doc, to_structure(doc)


# ---------------------------------------------------------------- commands

def cmd_verify(args) -> int:
    doc, obj = _load(args.file)
    if args.kind and args.kind != doc.kind:
        raise UsageError(f"{args.file}: document kind is {doc.kind!r}, not {args.kind!r}")
    return _verdict_exit("verify", _verify(obj), kind=doc.kind, **_instances(doc))


def _to_post(doc, obj):
    if doc.kind == "post_group":
        return obj, doc.elem_labels
    if doc.kind == "braided_group":
        return braided_to_post(obj), doc.elem_labels
    if doc.kind == "skew_brace":
        return skewbrace_to_post(obj), doc.elem_labels
    return rbo_to_post(obj), doc.h_elem_labels


def cmd_convert(args) -> int:
    doc, obj = _load(args.file)
    if doc.kind not in CONVERTIBLE or args.to not in CONVERTIBLE:
        raise UsageError(f"no conversion from {doc.kind!r} to {args.to!r}; "
                         f"conversions run between {', '.join(CONVERTIBLE)}")
    v = _verify(obj)
    if not v:
        return _verdict_exit("convert", v, kind=doc.kind)
    post, labels = _to_post(doc, obj)
    target = {
        "post_group": lambda p: p,
        "braided_group": post_to_braided,
        "skew_brace": post_to_skewbrace,
        "rbo": identity_rbo,
    }[args.to](post)
    meta = {"converted_from": doc.kind}
    if doc.metadata:
        meta["source"] = doc.metadata
    out = from_structure(target, doc.lambda_labels, labels, h_elem_labels=labels, metadata=meta)
    _write(serialize_document(out), args.out)
    return 0


def _induced_braiding(doc, obj) -> Braiding:
    if doc.kind == "braiding":
        return obj
    if doc.kind == "post_group":
        return braided_to_solution(post_to_braided(obj), check=False)
    if doc.kind == "skew_brace":
        return braided_to_solution(post_to_braided(skewbrace_to_post(obj)), check=False)
    if doc.kind == "braided_group":
        return braided_to_solution(obj, check=False)
    from .rota import rbo_solution
    return rbo_solution(obj, check=False)


def cmd_check_ybe(args) -> int:
    doc, obj = _load(args.file, ("braiding", "braided_group", "post_group", "skew_brace", "rbo"))
    if doc.kind != "braiding":
        v = _verify(obj)
        if not v:
            return _verdict_exit("check-ybe", v, kind=doc.kind)
    R = _induced_braiding(doc, obj)
    checks = {
        "bijective": check_bijective(R),
        "weight-zero": check_weight_zero(R),
        "nondegenerate-fibered": check_nondegenerate_fibered(R),
        "nondegenerate-literal": check_nondegenerate(R),
        "dybe": check_dybe(R),
    }
    required = ["bijective", "weight-zero",
                "nondegenerate-literal" if args.literal_nondegeneracy else "nondegenerate-fibered", "dybe"]
    failed = next((checks[k] for k in required if not checks[k]), Verdict.ok())
    L, N = R.base.lambda_size, R.base.elem_size
    return _verdict_exit(
        "check-ybe", failed, kind=doc.kind, required=required,
        checks={k: bool(c) for k, c in checks.items()},
        instances={"dybe": L * N ** 3},
    )


def _pair_labels(h_labels, g_labels):
    return [f"({x},{a})" for x in h_labels for a in g_labels]


def cmd_double(args) -> int:
    doc, mp = _load(args.file, ("matched_pair",))
    v = verify_matched_pair(mp)
    if not v:
        return _verdict_exit("double", v, kind=doc.kind)
    d = double(mp)
    out = from_structure(d, doc.lambda_labels, _pair_labels(doc.h_elem_labels, doc.elem_labels),
                         metadata={"construction": "double"})
    _write(serialize_document(out), args.out)
    return 0


def cmd_semidirect(args) -> int:
    doc, act = _load(args.file, ("action", "rbo"))
    act = getattr(act, "action", act)
    v = verify_action(act)
    if not v:
        return _verdict_exit("semidirect", v, kind=doc.kind)
    out = from_structure(semidirect(act), doc.lambda_labels, _pair_labels(doc.h_elem_labels, doc.elem_labels),
                         metadata={"construction": "semidirect"})
    _write(serialize_document(out), args.out)
    return 0


def cmd_descendant(args) -> int:
    doc, r = _load(args.file, ("rbo",))
    v = verify_rbo(r)
    if not v:
        return _verdict_exit("descendant", v, kind=doc.kind)
    out = from_structure(descendant(r), doc.lambda_labels, doc.h_elem_labels,
                         metadata={"construction": "descendant"})
    _write(serialize_document(out), args.out)
    return 0


def cmd_factorize(args) -> int:
    doc, r = _load(args.file, ("rbo",))
    v = verify_rbo(r)
    if not v:
        return _verdict_exit("factorize", v, kind=doc.kind)
    if args.unshifted:
        f = factorization_group(r, check=False, shifted=False)
        v = verify_dyn_group(f)
        if not v:
            return _verdict_exit("factorize", v, kind=doc.kind, shifted=False)
    else:
        f = factorization_group(r)
    out = from_structure(f, doc.lambda_labels, _pair_labels(doc.h_elem_labels, doc.elem_labels),
                         metadata={"construction": "factorization"})
    _write(serialize_document(out), args.out)
    return 0


def cmd_quiver(args) -> int:
    doc, obj = _load(args.file, ("dynamical_group", "braided_group", "skew_brace", "post_group"))
    if isinstance(obj, BraidedDynGroup):
        obj = obj.g
    elif isinstance(obj, FiniteDynSkewBrace):
        obj = obj.circ_group
    elif isinstance(obj, FiniteDynPostGroup):
        from .postbrace import sub_adjacent
        if not (v := verify_post_group(obj)):
            return _verdict_exit("quiver", v, kind=doc.kind)
        obj = sub_adjacent(obj)
    v = verify_dyn_group(obj)
    if not v:
        return _verdict_exit("quiver", v, kind=doc.kind)
    q = functor_q(obj, doc.lambda_labels, doc.elem_labels)
    if args.dot:
        _write(export_dot(q, include_units=args.units), args.out)
        return 0
    vg = verify_groupoid(q)
    return _verdict_exit("quiver", vg, kind=doc.kind, objects=q.quiver.n_objects,
                         morphisms=q.quiver.n_arrows)


def cmd_enumerate(args) -> int:
    spec = SearchSpec(args.kind, args.n, args.l, node_budget=args.node_budget, time_budget=args.time_budget)
    rec = {"command": "enumerate", "kind": args.kind, "n": args.n, "l": args.l}
    try:
        if args.contains:
            _, target = _load(args.contains, (args.kind,))
            found = find_containing(spec, target)
            _emit({**rec, "contains": args.contains, "found": found is not None})
            return 0 if found is not None else 1
        if args.stream:
            for s in stream(spec):
                print(compact_document(from_structure(s)), flush=True)
            return 0
        items = sorted(stream(spec), key=structure_key)
        rec["count"] = len(items)
        if args.canonical:
            rec["canonical_count"] = canonical_count(spec)
        _emit(rec)
        return 0
    except PartialResultError as exc:
        _emit({**rec, "partial": True, "found_so_far": len(exc.found), "nodes": exc.nodes, "message": str(exc)})
        return 1


def cmd_sample(args) -> int:
    s = RationalSampler(args.exemplar, args.count, args.seed)
    return _verdict_exit("sample", run_rational_suite(s), exemplar=args.exemplar, count=args.count, seed=args.seed)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynbraid", description="Verify and convert finite dynamical structures.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="run the verifier for the document's kind")
    s.add_argument("file")
    s.add_argument("--kind", choices=DOCUMENT_KINDS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("convert", help="convert between post-groups, braided groups, skew braces and operators")
    s.add_argument("file")
    s.add_argument("--to", required=True, choices=CONVERTIBLE)
    s.add_argument("--out")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("check-ybe", help="check the induced braiding")
    s.add_argument("file")
    s.add_argument("--literal-nondegeneracy", action="store_true",
                   help="require the fixed-parameter non-degeneracy test instead of the fibered one")
    s.set_defaults(func=cmd_check_ybe)

    for name, func, help_ in (
        ("double", cmd_double, "double of a matched pair"),
        ("semidirect", cmd_semidirect, "semi-direct product of an action"),
        ("descendant", cmd_descendant, "descendant group of an operator"),
        ("factorize", cmd_factorize, "factorization group of an operator"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--out")
        if name == "factorize":
            s.add_argument("--unshifted", action="store_true",
                           help="transport both factors at the base parameter (does not verify in general)")
        s.set_defaults(func=func)

    s = sub.add_parser("quiver", help="the groupoid of a dynamical group")
    s.add_argument("file")
    s.add_argument("--dot", action="store_true", help="print Graphviz DOT instead of a summary")
    s.add_argument("--units", action="store_true", help="include identity arrows in DOT output")
    s.add_argument("--out")
    s.set_defaults(func=cmd_quiver)

    s = sub.add_parser("enumerate", help="exhaustive search at small sizes")
    s.add_argument("--kind", required=True, choices=KINDS)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--canonical", action="store_true")
    s.add_argument("--contains")
    s.add_argument("--stream", action="store_true")
    s.add_argument("--node-budget", type=int, default=SearchSpec.node_budget)
    s.add_argument("--time-budget", type=float, default=SearchSpec.time_budget)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sample", help="exact-rational checks of the continuous exemplars")
    s.add_argument("--exemplar", required=True, choices=EXEMPLARS)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, ShapeError, PreconditionError, UsageError, ValueError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, separators=(",", ":")),
              file=sys.stderr)
        return 2
    except InconsistencyError as exc:
        print(json.dumps({"error": "InconsistencyError", "message": str(exc)}, separators=(",", ":")),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
