"""Command-line surface: every operation behind one entry point.

All subcommands emit a single JSON document (stdout or --out) with the
envelope {"command", "params", "timestamp", ...payload}.  Counts that can
exceed 2^53 are serialized as decimal strings.  Identical argv and seed
give byte-identical output except for the timestamp field.

Exit codes: 0 success, 2 precondition violated, 3 enumeration cap
exceeded, 4 invariant violation (e.g. a freeness failure, which would
falsify a verified argument), 1 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone

from . import acceptance, boxfree, formulas, grassmann, isotropy, rank
from .errors import DEFAULT_CAP, CapExceededError, InvariantViolation, PreconditionError
from .field import field_make, field_of_order
from .formulas import ParamSet
from .tensor import base_change, random_tensor, tensor_from_dict


def _cap(args) -> int:
    if getattr(args, "cap", None):
        return args.cap
    env = os.environ.get("ISOTROPY_CAP")
    return int(env) if env else DEFAULT_CAP


def _add_common(parser):
    parser.add_argument("--out", help="write the JSON document here instead of stdout")
    parser.add_argument("--cap", type=int, help="enumeration cap (overrides ISOTROPY_CAP)")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; results are independent of the value (execution is serial)",
    )


def _add_tensor_source(parser, kind_choice=True):
    parser.add_argument("--tensor", help="tensor JSON file")
    parser.add_argument("--q", type=int, help="field order (prime power)")
    parser.add_argument("--n", type=int, help="ambient dimension")
    parser.add_argument("--d", type=int, help="order of the map")
    parser.add_argument("--m", type=int, help="codomain dimension")
    if kind_choice:
        parser.add_argument("--kind", choices=("hom", "alt"), default="hom")
    parser.add_argument("--seed", type=int, default=0, help="splitmix64 seed")
    parser.add_argument(
        "--r",
        type=int,
        default=1,
        help="search over the degree-r extension of the tensor's field",
    )


def _load_tensor(args, kind=None):
    if args.tensor:
        if any(getattr(args, name, None) is not None for name in ("q", "n", "d", "m")):
            raise PreconditionError(
                "give either --tensor or generation parameters, not both"
            )
        with open(args.tensor) as fh:
            T = tensor_from_dict(json.load(fh))
    else:
        for name in ("q", "n", "d", "m"):
            if getattr(args, name) is None:
                raise PreconditionError(
                    f"--{name} is required when no --tensor file is given"
                )
        T = random_tensor(
            field_of_order(args.q),
            args.n,
            args.d,
            args.m,
            kind or getattr(args, "kind", "hom"),
            args.seed,
        )
    if kind and T.kind != kind:
        raise PreconditionError(f"this operation needs a {kind!r} tensor, got {T.kind!r}")
    r = getattr(args, "r", 1)
    if r < 1:
        raise PreconditionError("--r must be a positive integer")
    if r > 1:
        base = T.field
        T = base_change(T, field_make(base.p, base.e * r))
    return T


def _emit(args, payload: dict) -> None:
    payload = dict(payload)
    payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# formula
# ---------------------------------------------------------------------------


def cmd_formula(args) -> int:
    name = args.quantity
    params = ParamSet(
        n=args.n or 0,
        d=args.d or 0,
        m=args.m or 0,
        k=args.k or 0,
        char_zero=args.char_zero,
    ).as_dict()
    if name == "alpha-bound":
        value, branch = formulas.alpha_bound(args.n, args.d, args.m), "generic"
    elif name == "alpha-alt":
        value, branch = formulas.alpha_alt_closed(args.n, args.d, args.m, args.char_zero)
    elif name == "fp":
        value, branch = formulas.fp_number(args.d, args.m, args.k, args.char_zero)
    elif name == "turan":
        value, branch = formulas.turan_number(args.n, args.d, args.k, args.char_zero)
    elif name == "gq":
        value, branch = formulas.gq_number(args.n, args.d)
    elif name == "iso2":
        value, branch = formulas.has_plane_isotropy(args.n, args.d, args.m), "generic"
    elif name == "box-exponent":
        exponent, admissible = formulas.box_exponent(args.n, args.d, args.m)
        _emit(
            args,
            {
                "command": "formula",
                "quantity": name,
                "params": params,
                "value": str(exponent),
                "admissible": admissible,
                "branch": "generic",
            },
        )
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise PreconditionError(f"unknown quantity {name}")
    _emit(
        args,
        {
            "command": "formula",
            "quantity": name,
            "params": params,
            "value": value,
            "branch": branch,
        },
    )
    return 0


# ---------------------------------------------------------------------------
# isotropy
# ---------------------------------------------------------------------------


def cmd_isotropy(args) -> int:
    cap = _cap(args)
    op = args.operation
    if op == "alt":
        T = _load_tensor(args, kind="alt")
        result = isotropy.alpha_alt(T, cap)
        payload = result.to_dict()
    elif op == "hom":
        T = _load_tensor(args, kind="hom")
        result = isotropy.alpha_hom(T, args.k, cap)
        payload = result.to_dict()
    elif op == "field-min":
        F = field_of_order(args.q)
        result = isotropy.alpha_field_alt(
            F, args.n, args.d, args.m, cap, samples=args.samples, seed=args.seed
        )
        payload = result.to_dict()
    elif op == "incidence-alt":
        F = field_of_order(args.q)
        payload = {"count": str(isotropy.count_alt_incidence(F, args.n, args.d, args.m, args.k))}
        if args.raw:
            payload["raw_count"] = str(
                isotropy.count_alt_incidence_raw(F, args.n, args.d, args.m, args.k, cap)
            )
    elif op == "incidence-hom":
        F = field_of_order(args.q)
        payload = {"count": str(isotropy.count_hom_incidence(F, args.n, args.d, args.m))}
        if args.raw:
            payload["raw_count"] = str(
                isotropy.count_hom_incidence_raw(F, args.n, args.d, args.m, cap)
            )
    elif op == "planes":
        T = _load_tensor(args)
        tuples = isotropy.isotropic_plane_tuples(T, cap)
        payload = {
            "count": str(len(tuples)),
            "tuples": [[V.to_dict() for V in tup] for tup in tuples],
        }
    else:  # pragma: no cover
        raise PreconditionError(f"unknown operation {op}")
    payload["command"] = f"isotropy-{op}"
    payload["params"] = _source_params(args)
    _emit(args, payload)
    return 0


def _source_params(args) -> dict:
    out = {}
    for name in ("q", "n", "d", "m", "k", "seed", "samples", "r"):
        v = getattr(args, name, None)
        if v is not None:
            out[name] = v
    if getattr(args, "tensor", None):
        out["tensor"] = args.tensor
    return out


# ---------------------------------------------------------------------------
# rank / grassmann
# ---------------------------------------------------------------------------


def cmd_rank(args) -> int:
    cap = _cap(args)
    T = _load_tensor(args, kind="hom")
    if args.operation == "zeros":
        payload = {"zero_count": str(rank.zero_count(T, cap, method=args.method))}
    else:
        payload = rank.analytic_rank(T, cap).to_dict()
    payload["command"] = f"rank-{args.operation}"
    payload["params"] = _source_params(args)
    _emit(args, payload)
    return 0


def cmd_grassmann(args) -> int:
    cap = _cap(args)
    F = field_of_order(args.q)
    params = {"q": args.q, "n": args.n, "k": args.k}
    if args.operation == "count":
        payload = {"count": str(grassmann.gauss_binom(args.n, args.k, args.q))}
    elif args.operation == "enum":
        subs = list(grassmann.enumerate_grassmannian(F, args.n, args.k, cap))
        payload = {
            "count": str(len(subs)),
            "subspaces": [S.to_dict() for S in subs],
        }
    else:  # strata
        profile = grassmann.stratum_profile(F, args.n, args.k, cap)
        if args.format == "csv":
            lines = ["l,count"] + [f"{l},{c}" for l, c in sorted(profile.items())]
            text = "\n".join(lines) + "\n"
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.l is not None:
            payload = {"l": args.l, "count": str(grassmann.stratum_count(F, args.n, args.k, args.l, cap))}
        else:
            payload = {"profile": {str(l): str(c) for l, c in sorted(profile.items())}}
        params["l"] = args.l
    payload["command"] = f"grassmann-{args.operation}"
    payload["params"] = params
    _emit(args, payload)
    return 0


# ---------------------------------------------------------------------------
# boxfree
# ---------------------------------------------------------------------------


def cmd_boxfree(args) -> int:
    cap = _cap(args)
    if args.operation == "gen":
        F = field_of_order(args.q)
        result = boxfree.box_pipeline(
            F, args.n, args.d, args.m, seed=args.seed, max_trials=args.max_trials, cap=cap
        )
        if args.hypergraph:
            if args.format == "text":
                header = f"# {args.d} {args.n} {args.q} {args.m}"
                with open(args.hypergraph, "w") as fh:
                    fh.write(result.after.to_text(header))
            else:
                with open(args.hypergraph, "w") as fh:
                    json.dump(result.after.to_dict(), fh)
        payload = {
            "command": "boxfree-gen",
            "params": {"q": args.q, "n": args.n, "d": args.d, "m": args.m, "seed": args.seed},
            "certificate": result.certificate.to_dict(),
        }
        if args.hypergraph:
            payload["hypergraph_file"] = args.hypergraph
        _emit(args, payload)
        return 0
    # verify: freeness of a stored hypergraph (JSON, or the text edge list)
    with open(args.hypergraph_in) as fh:
        raw = fh.read()
    if raw.lstrip().startswith("#"):
        H = boxfree.hypergraph_from_text(raw)
    else:
        H = boxfree.Hypergraph.from_dict(json.loads(raw))
    free, witness = boxfree.freeness_check(H, cap)
    payload = {
        "command": "boxfree-verify",
        "params": {"in": args.hypergraph_in},
        "free": free,
        "witness": [list(pair) for pair in witness] if witness else None,
        "edge_count": str(H.edge_count),
    }
    _emit(args, payload)
    return 0 if free else 4


# ---------------------------------------------------------------------------
# tensor / selftest
# ---------------------------------------------------------------------------


def cmd_tensor(args) -> int:
    if args.operation == "random":
        if args.tensor:
            raise PreconditionError("'tensor random' generates; --tensor makes no sense")
        for name in ("q", "n", "d", "m"):
            if getattr(args, name) is None:
                raise PreconditionError(f"--{name} is required")
        T = random_tensor(
            field_of_order(args.q), args.n, args.d, args.m, args.kind, args.seed
        )
        if args.r > 1:
            T = base_change(T, field_make(T.field.p, T.field.e * args.r))
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(T.to_dict(), fh, indent=2, sort_keys=True)
            args.out = None  # the envelope goes to stdout
            _emit(args, {
                "command": "tensor-random",
                "params": _source_params(args),
                "written": True,
            })
        else:
            _emit(args, {
                "command": "tensor-random",
                "params": _source_params(args),
                "tensor": T.to_dict(),
            })
        return 0
    T = _load_tensor(args)
    payload = {
        "command": "tensor-show",
        "params": {"tensor": args.tensor},
        "kind": T.kind,
        "q": T.field.q,
        "n": T.n,
        "d": T.d,
        "m": T.m,
        "coeff_count": len(T.coeffs),
        "nonzero_count": sum(1 for c in T.coeffs if c),
    }
    _emit(args, payload)
    return 0


def cmd_selftest(args) -> int:
    timings = {}
    report = acceptance.run_core(args.seed, timings)
    start = time.perf_counter()
    second = acceptance.run_core(args.seed)
    det_time = time.perf_counter() - start
    det_passed = json.dumps(report, sort_keys=True) == json.dumps(second, sort_keys=True)
    report["criteria"].append(
        {"id": "determinism", "passed": det_passed, "detail": {"reruns": 1}}
    )
    timings["determinism"] = det_time
    all_passed = all(c["passed"] for c in report["criteria"])
    for c in report["criteria"]:
        status = "PASS" if c["passed"] else "FAIL"
        budget = acceptance.BUDGETS.get(c["id"])
        t = timings.get(c["id"], 0.0)
        print(
            f"{status} {c['id']:28s} {t:7.2f}s (budget {budget}s)",
            file=sys.stderr,
        )
    payload = {
        "command": "selftest",
        "params": {"seed": args.seed},
        "criteria": report["criteria"],
        "all_passed": all_passed,
    }
    _emit(args, payload)
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multilin",
        description="Exact isotropy, rank, and box-free computations for "
        "multilinear maps over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="closed-form extremal quantities")
    p.add_argument(
        "quantity",
        choices=("alpha-bound", "alpha-alt", "fp", "turan", "gq", "iso2", "box-exponent"),
    )
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--char-zero", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("isotropy", help="isotropic-subspace searches and counts")
    p.add_argument(
        "operation",
        choices=("alt", "hom", "field-min", "incidence-alt", "incidence-hom", "planes"),
    )
    _add_tensor_source(p)
    p.add_argument("--k", type=int, help="target subspace dimension")
    p.add_argument("--samples", type=int, help="sampling mode for field-min")
    p.add_argument("--raw", action="store_true", help="also run the raw enumeration cross-check")
    _add_common(p)
    p.set_defaults(func=cmd_isotropy)

    p = sub.add_parser("rank", help="zero-set counts and analytic rank")
    p.add_argument("operation", choices=("zeros", "ar"))
    _add_tensor_source(p, kind_choice=False)
    p.add_argument("--kind", choices=("hom",), default="hom", help=argparse.SUPPRESS)
    p.add_argument("--method", choices=("kernel", "raw"), default="kernel")
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("grassmann", help="subspace enumeration and strata")
    p.add_argument("operation", choices=("enum", "count", "strata"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, help="intersection dimension (strata)")
    p.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="csv emits the tabular strata profile",
    )
    _add_common(p)
    p.set_defaults(func=cmd_grassmann)

    p = sub.add_parser("boxfree", help="box-free hypergraph construction")
    p.add_argument("operation", choices=("gen", "verify"))
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int, help="projective dimension (ambient n+1)")
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-trials", type=int, default=512)
    p.add_argument("--hypergraph", help="write the box-free hypergraph here (gen)")
    p.add_argument("--hypergraph-in", help="hypergraph JSON to verify")
    p.add_argument("--format", choices=("json", "text"), default="json")
    _add_common(p)
    p.set_defaults(func=cmd_boxfree)

    p = sub.add_parser("tensor", help="generate and inspect tensors")
    p.add_argument("operation", choices=("random", "show"))
    _add_tensor_source(p)
    _add_common(p)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    _add_common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
