"""Command-line surface.

Subcommands: gen, decide, closure, degree, oracle, crosscheck.
Exit codes: 0 in-closure (or agreement), 1 not-in-closure, 2 bad
parameters, 3 violated precondition, 4 resource limit, 5 inconsistent
degree data, 6 oracle disagreement.  ORBITCAL_MAX_NNZ overrides the
linear-system size threshold."""

from __future__ import annotations

import argparse
import json
import os
import sys

from orbitcal import decider, degbound, elim, repmodel, torusoracle
from orbitcal.errors import InconsistentDataError, PreconditionError, ResourceLimitError

EXIT_IN_CLOSURE = 0
EXIT_NOT_IN_CLOSURE = 1
EXIT_BAD_PARAMS = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4
EXIT_INCONSISTENT = 5
EXIT_DISAGREEMENT = 6


def _parse_weights(text: str):
    weights = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        weights.append(tuple(int(w.strip()) for w in chunk.split(",")))
    if not weights:
        raise ValueError("no weights given")
    return weights


def _emit(payload: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
            if not payload.endswith("\n"):
                fh.write("\n")
    else:
        print(payload)


def _max_nnz(args) -> int:
    env = os.environ.get("ORBITCAL_MAX_NNZ")
    if env:
        return int(env)
    return decider.DEFAULT_MAX_NNZ


def cmd_gen(args) -> int:
    if args.kind == "sl2":
        if args.h is None:
            raise ValueError("gen sl2 requires --h")
        rep = repmodel.sl2_binary_forms(args.h)
    else:
        if not args.weights:
            raise ValueError("gen torus requires --weights")
        rep = repmodel.torus_diagonal(_parse_weights(args.weights))
    if args.label:
        rep.label = args.label
    _emit(json.dumps(rep.to_json(), indent=2), args.out)
    return 0


def _load_problem(args):
    rep = repmodel.RepresentationData.load(args.rep)
    a = repmodel.parse_vector(args.a)
    b = repmodel.parse_vector(args.b)
    if len(a) != rep.n or len(b) != rep.n:
        raise ValueError(f"vectors must have length {rep.n}")
    if args.conify:
        return decider.conic_problem(rep, a, b, degree_bound_override=args.degree_bound)
    return decider.DecisionProblem(
        rep,
        a,
        b,
        degree_bound_override=args.degree_bound,
        conic_asserted=args.assume_conic,
    )


def cmd_decide(args) -> int:
    problem = _load_problem(args)
    decision = decider.decide(
        problem, seed=args.seed, max_nnz=_max_nnz(args), exact_dim=args.exact_dim
    )
    payload = decision.to_json()
    if not args.verbose:
        payload.pop("transcript", None)
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_IN_CLOSURE if decision.in_closure else EXIT_NOT_IN_CLOSURE


def cmd_closure(args) -> int:
    rep = repmodel.RepresentationData.load(args.rep)
    if args.point:
        point = repmodel.parse_vector(args.point)
        if len(point) != rep.n:
            raise ValueError(f"point must have length {rep.n}")
        tau = elim.SubspaceMap.point(point)
    elif args.subspace:
        tau = elim.SubspaceMap.load(args.subspace)
    else:
        raise ValueError("closure requires --point or --subspace")
    equations = elim.closure_equations(
        rep, tau, entry_denominator_saturation=args.entry_denominators
    )
    _emit(
        json.dumps([elim.format_equation(q, rep.n) for q in equations], indent=2),
        args.out,
    )
    return 0


def cmd_degree(args) -> int:
    if args.kind == "sl2":
        if args.h is None:
            raise ValueError("degree sl2 requires --h")
        value = degbound.kazarnovskii_sl2(args.h)
    elif args.kind == "kazarnovskii":
        if not args.data:
            raise ValueError("degree kazarnovskii requires --data")
        value = degbound.kazarnovskii(degbound.ReductiveData.load(args.data))
    elif args.kind == "binary-orbit":
        if args.h is None or not args.mults:
            raise ValueError("degree binary-orbit requires --h and --mults")
        mults = [int(m) for m in args.mults.split(",")]
        value = degbound.binary_form_orbit_degree(args.h, mults, args.stab)
    else:
        if not args.rep:
            raise ValueError("degree parametric requires --rep")
        rep = repmodel.RepresentationData.load(args.rep)
        value = degbound.parametric_degree_bound(rep)
    print(value)
    return 0


def cmd_oracle(args) -> int:
    weights = _parse_weights(args.weights)
    a = repmodel.parse_vector(args.a)
    b = repmodel.parse_vector(args.b)
    if len(a) != len(weights) or len(b) != len(weights):
        raise ValueError(f"vectors must have length {len(weights)}")
    verdict = torusoracle.torus_decide(weights, a, b)
    print("IN_CLOSURE" if verdict else "NOT_IN_CLOSURE")
    return EXIT_IN_CLOSURE if verdict else EXIT_NOT_IN_CLOSURE


def cmd_crosscheck(args) -> int:
    rep = repmodel.RepresentationData.load(args.rep)
    a = repmodel.parse_vector(args.a)
    b = repmodel.parse_vector(args.b)
    if len(a) != rep.n or len(b) != rep.n:
        raise ValueError(f"vectors must have length {rep.n}")
    if args.conify:
        rep_w, a_w, b_w = repmodel.make_conic(rep, a, b)
        problem = decider.DecisionProblem(
            rep_w, a_w, b_w,
            degree_bound_override=args.degree_bound,
            conic_asserted=True,
        )
    else:
        rep_w, a_w, b_w = rep, a, b
        problem = decider.DecisionProblem(
            rep_w, a_w, b_w,
            degree_bound_override=args.degree_bound,
            conic_asserted=args.assume_conic,
        )

    results = {}
    decision = decider.decide(
        problem, seed=args.seed, max_nnz=_max_nnz(args), exact_dim=args.exact_dim
    )
    results["decider"] = decision.in_closure

    equations = elim.closure_equations(rep_w, elim.SubspaceMap.point(b_w))
    results["elimination"] = elim.point_in_closure(equations, a_w)

    weights = repmodel.diagonal_weights(rep_w)
    if weights is not None:
        results["torus"] = torusoracle.torus_decide(weights, a_w, b_w)

    agree = len(set(results.values())) == 1
    report = {
        "a": repmodel.format_vector(a_w),
        "b": repmodel.format_vector(b_w),
        "verdicts": {k: ("IN_CLOSURE" if v else "NOT_IN_CLOSURE") for k, v in results.items()},
        "agree": agree,
    }
    if not agree or args.verbose:
        report["decider_transcript"] = decision.transcript
        report["closure_equations"] = [
            elim.format_equation(q, rep_w.n) for q in equations
        ]
    _emit(json.dumps(report, indent=2), args.out)
    return EXIT_IN_CLOSURE if agree else EXIT_DISAGREEMENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitcal",
        description="exact orbit-closure membership decisions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a representation file")
    p.add_argument("kind", choices=["sl2", "torus"])
    p.add_argument("--h", type=int, default=None, help="binary-form degree")
    p.add_argument("--weights", help="semicolon-separated integer tuples, e.g. '1,0;0,1'")
    p.add_argument("--label", default="")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decide", help="decide closure membership")
    p.add_argument("--rep", required=True)
    p.add_argument("--a", required=True, help="comma-separated rationals")
    p.add_argument("--b", required=True, help="comma-separated rationals")
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--conify", action="store_true", help="apply the conic reduction first")
    p.add_argument("--assume-conic", action="store_true", help="assert that the orbit of b is conic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-dim", action="store_true", help="symbolic orbit-dimension check")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("closure", help="emit defining equations of an orbit/subspace closure")
    p.add_argument("--rep", required=True)
    p.add_argument("--point", help="comma-separated rationals")
    p.add_argument("--subspace", help="path to a subspace JSON file")
    p.add_argument(
        "--entry-denominators",
        action="store_true",
        help="saturate by the product of the per-coordinate denominators",
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("degree", help="exact degree values and bounds")
    p.add_argument("kind", choices=["sl2", "kazarnovskii", "binary-orbit", "parametric"])
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--data", help="reductive data JSON file")
    p.add_argument("--mults", help="comma-separated multiplicities")
    p.add_argument("--stab", type=int, default=1)
    p.add_argument("--rep")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("oracle", help="independent oracles")
    oracle_sub = p.add_subparsers(dest="oracle_kind", required=True)
    q = oracle_sub.add_parser("torus", help="diagonal torus criterion")
    q.add_argument("--weights", required=True)
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.set_defaults(func=cmd_oracle)

    p = sub.add_parser("crosscheck", help="run all applicable oracles and compare")
    p.add_argument("--rep", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--conify", action="store_true")
    p.add_argument("--assume-conic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-dim", action="store_true")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InconsistentDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())
