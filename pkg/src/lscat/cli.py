"""Command-line entry point: ``lscat <subcommand> ...``.

Every invocation prints one JSON report (or a flat text rendering with
``--format text``).  Exit codes: 0 success, 1 violation found, 2 input
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import io
from .campaign import campaign
from .category import (CLOSED, INDEX_FUNCTIONS, OPEN, cat_closed, cat_rel, check_axioms)
from .cohomology import betti_gf2, cup_length, order_complex
from .dynamics import GradientLikeSystem, minmax_spectrum, verify_theorem
from .errors import BudgetExceeded, InputError, LSError
from .generators import generate_space, generate_system, wart
from .homotopy import (DEFAULT_BUDGET, Fence, homology_obstruction, is_contractible,
                       is_contractible_in)
from .space import FiniteSpace, core

REPORT_FORMAT = "lscat-report/1"


class Outcome:
    def __init__(self, results: dict, certificates=None, code: int = 0):
        self.results = results
        self.certificates = certificates
        self.code = code


def _space(obj) -> FiniteSpace:
    if isinstance(obj, GradientLikeSystem):
        return obj.space
    if isinstance(obj, FiniteSpace):
        return obj
    raise InputError("expected a poset or system file")


def _system(obj) -> GradientLikeSystem:
    if not isinstance(obj, GradientLikeSystem):
        raise InputError("expected a system file")
    return obj


def _subset(X: FiniteSpace, spec: str | None):
    if spec is None:
        return X.whole()
    return X.subset(p for p in spec.split(",") if p)


# -- subcommands -------------------------------------------------------------

def cmd_cat(args, obj) -> Outcome:
    X = _space(obj)
    A = _subset(X, args.subset)
    solve = cat_closed if args.closed else cat_rel
    k, cover = solve(X, A, budget=args.budget, max_opens=args.max_opens)
    cover.validate(A)
    results = {"cat": k, "kind": CLOSED if args.closed else OPEN, "subset": A.ids(),
               "witness": [U.ids() for U in cover.sets]}
    certs = [io.fence_to_json(f) for f in cover.certificates] if args.witness else None
    return Outcome(results, certs)


def cmd_core(args, obj) -> Outcome:
    X = _space(obj)
    C, r = core(X)
    return Outcome({"core": list(C.points), "retraction": r.as_dict(),
                    "contractible": is_contractible(X)})


def cmd_contractible(args, obj) -> Outcome:
    X = _space(obj)
    A = _subset(X, args.subset)
    fence = is_contractible_in(X, A, budget=args.budget)
    results = {"subset": A.ids(), "contractible_in_X": fence is not None,
               "obstruction": homology_obstruction(X, A).value}
    if fence is not None:
        results["fence_length"] = len(fence)
    return Outcome(results, [io.fence_to_json(fence)] if fence is not None else None)


def cmd_betti(args, obj) -> Outcome:
    K = order_complex(_space(obj))
    results = {"betti": betti_gf2(K), "simplices": [len(lv) for lv in K.simplices],
               "euler_characteristic": K.euler_characteristic()}
    if args.complex:
        results["complex"] = K.to_json()
    return Outcome(results)


def cmd_cuplength(args, obj) -> Outcome:
    K = order_complex(_space(obj))
    return Outcome({"cup_length": cup_length(K), "betti": betti_gf2(K)})


def cmd_verify(args, obj) -> Outcome:
    sys_ = _system(obj)
    report = verify_theorem(sys_, INDEX_FUNCTIONS[args.index])
    ok = report.theorem_holds and report.criticality_holds and report.blocks_hold
    return Outcome(report.to_json(), [io.fence_to_json(sys_.identity_certificate)],
                   0 if ok else 1)


def cmd_spectrum(args, obj) -> Outcome:
    sys_ = _system(obj)
    return Outcome(minmax_spectrum(sys_, INDEX_FUNCTIONS[args.index]).to_json())


def cmd_axioms(args, obj) -> Outcome:
    X = _space(obj)
    phi = obj.step if isinstance(obj, GradientLikeSystem) else None
    report = check_axioms(INDEX_FUNCTIONS[args.index], X, phi, mode=args.mode,
                          samples=args.samples, seed=args.seed)
    return Outcome(report.to_json(), code=0 if report.passed else 1)


def cmd_gen(args, obj) -> Outcome:
    params = {}
    if args.model in ("chain", "antichain", "min_sphere", "random"):
        if args.n is None:
            raise InputError(f"model {args.model} needs --n")
        params["n"] = args.n
    if args.model == "random":
        params.update(edge_prob=args.edge_prob, seed=args.seed)
    if args.model == "subdivision":
        if obj is None:
            raise InputError("subdivision needs --from FILE")
        params["space"] = _space(obj)
    X = generate_space(args.model, **params)
    if args.warts:
        X = wart(X, args.warts, args.seed)
    if args.system:
        sys_ = generate_system(X, args.seed, args.level_spread)
        results = io.system_to_json(sys_)
    else:
        sys_ = None
        results = io.poset_to_json(X)
    if args.output:
        Path(args.output).write_text(json.dumps(results, indent=2) + "\n")
    if sys_ is not None and sys_.notice:
        results = dict(results, notice=sys_.notice)
    return Outcome(results)


def cmd_campaign(args, obj) -> Outcome:
    results = campaign(args.trials, args.size, args.seed, args.probe_moreover)
    return Outcome(results, code=1 if results["violations"] else 0)


def cmd_check_fence(args, obj) -> Outcome:
    if not isinstance(obj, Fence):
        raise InputError("expected a fence file")
    return Outcome({"valid": True, "length": len(obj),
                    "ends_constant": obj.end.is_constant()})


COMMANDS = {
    "cat": cmd_cat, "core": cmd_core, "contractible": cmd_contractible,
    "betti": cmd_betti, "cuplength": cmd_cuplength, "verify": cmd_verify,
    "spectrum": cmd_spectrum, "axioms": cmd_axioms, "gen": cmd_gen,
    "campaign": cmd_campaign, "check-fence": cmd_check_fence,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="node limit for homotopy searches")
    common.add_argument("--max-opens", type=int, default=100_000)

    parser = argparse.ArgumentParser(prog="lscat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.add_argument("file")
        return p

    p = with_file("cat", help="relative LS category cat_X(A)")
    p.add_argument("--subset", help="comma-separated point ids (default: all)")
    p.add_argument("--closed", action="store_true", help="cover by closed sets")
    p.add_argument("--witness", action="store_true", help="emit contraction certificates")
    with_file("core", help="Stong core and retraction")
    p = with_file("contractible", help="is the subset contractible in X")
    p.add_argument("--subset")
    p = with_file("betti", help="GF(2) Betti numbers of the order complex")
    p.add_argument("--complex", action="store_true", help="include the complex as JSON")
    with_file("cuplength", help="GF(2) cup-length of the order complex")
    for name in ("verify", "spectrum"):
        p = with_file(name, help=f"{name} a gradient-like system")
        p.add_argument("--index", choices=sorted(INDEX_FUNCTIONS), default="cat")
    p = with_file("axioms", help="check index-function axioms")
    p.add_argument("--index", choices=sorted(INDEX_FUNCTIONS), default="cat")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p = sub.add_parser("gen", parents=[common], help="generate a space or system")
    p.add_argument("model", choices=("point", "chain", "antichain", "pseudocircle",
                                     "min_sphere", "lambda", "v", "random", "subdivision"))
    p.add_argument("--n", type=int)
    p.add_argument("--edge-prob", type=float, default=0.3)
    p.add_argument("--warts", type=int, default=0)
    p.add_argument("--from", dest="source")
    p.add_argument("--system", action="store_true")
    p.add_argument("--level-spread", type=int, default=2)
    p.add_argument("-o", "--output", help="also write the generated object to this file")
    p = sub.add_parser("campaign", parents=[common], help="seeded randomized theorem campaign")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--size", type=int, default=10)
    p.add_argument("--probe-moreover", action="store_true")
    with_file("check-fence", help="replay a fence certificate")
    return parser


def _render_text(report: dict) -> str:
    def walk(prefix, value, out):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v, out)
        else:
            out.append(f"{prefix}: {json.dumps(value)}")
        return out
    return "\n".join(walk("", report, []))


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"format": REPORT_FORMAT,
              "command": list(argv if argv is not None else sys.argv[1:]),
              "inputs": {}, "seed": args.seed}
    started = time.perf_counter()
    code = 0
    try:
        path = getattr(args, "file", None) or getattr(args, "source", None)
        obj = None
        if path:
            p = Path(path)
            if p.is_file():
                report["inputs"][path] = hashlib.sha256(p.read_bytes()).hexdigest()
            obj = io.ingest(path)
        outcome = COMMANDS[args.command](args, obj)
        report["results"] = outcome.results
        if outcome.certificates:
            report["certificates"] = outcome.certificates
        code = outcome.code
    except BudgetExceeded as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 3
    except (InputError, ValueError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    except LSError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    report["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    if args.format == "text":
        print(_render_text(report), file=stdout)
    else:
        print(json.dumps(report, indent=2, sort_keys=True), file=stdout)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
