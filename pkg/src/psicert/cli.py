"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (non-member, bound violated,
nothing found), 2 usage error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as _bounds
from . import generators as _gen
from . import patterns as _patterns
from . import psi as _psi
from .diagram import DiagramSpec, render_diagram
from .errors import (
    BudgetExhausted,
    CertificateFailure,
    NotInPsiD,
    ParamsInfeasible,
    PsicertError,
)
from .polycore import (
    hermitian_from_json,
    poly_from_json,
    poly_to_json,
    sign_counts,
)

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(doc: dict, args) -> None:
    if getattr(args, "format", "json") == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        for key in sorted(doc):
            print(f"{key}: {doc[key]}")


def _load_input(args):
    """Either --poly or --herm, returning the parsed object."""
    if getattr(args, "poly", None):
        return poly_from_json(_read_json(args.poly))
    if getattr(args, "herm", None):
        return hermitian_from_json(_read_json(args.herm))
    raise SystemExit2("one of --poly or --herm is required")


class SystemExit2(Exception):
    """Usage error raised from command bodies."""


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text}") from exc


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="psicert")
    top.add_argument("--format", choices=("json", "text"), default=None)
    # accepted before or after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", dest="format_late", choices=("json", "text"), default=None
    )
    sub = top.add_subparsers(dest="command", required=True)
    sub_kwargs = {"parents": [common]}

    gen = sub.add_parser("generate", **sub_kwargs, help="emit one of the polynomial families")
    gen.add_argument(
        "family", choices=("pd", "two-var", "inductive", "qk", "lambda", "fig2")
    )
    gen.add_argument("--n", type=int)
    gen.add_argument("--D", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--m", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--nu", type=int)
    gen.add_argument("--lam", "--lambda", dest="lam", type=_frac)
    gen.add_argument("--epsilon", default="auto")
    gen.add_argument("--homogenize", action="store_true")
    gen.add_argument("--out")

    chk = sub.add_parser("check-psi", **sub_kwargs, help="membership at a fixed power")
    chk.add_argument("--poly")
    chk.add_argument("--herm")
    chk.add_argument("--d", type=int, required=True)
    chk.add_argument("--multiplier", help="JSON file {n, exps: [[...]]}")

    mind = sub.add_parser("min-d", **sub_kwargs, help="smallest power admitting membership")
    mind.add_argument("--poly")
    mind.add_argument("--herm")
    mind.add_argument("--max-d", type=int, default=_psi.DEFAULT_POWER_CAP)

    sig = sub.add_parser("signature", **sub_kwargs, help="signature pair of the input")
    sig.add_argument("--poly")
    sig.add_argument("--herm")

    srch = sub.add_parser("search", **sub_kwargs, help="hunt for extreme sign-ratio patterns")
    srch.add_argument("--n", type=int, required=True)
    srch.add_argument("--D", type=int, required=True)
    srch.add_argument("--d", type=int, required=True)
    srch.add_argument(
        "--strategy", choices=("exhaustive", "greedy", "local"), default="exhaustive"
    )
    srch.add_argument("--budget", type=int, default=200_000)
    srch.add_argument("--seed", type=int, default=0)
    srch.add_argument("--support", help="pattern JSON whose support restricts the search")

    red = sub.add_parser("reduce", **sub_kwargs, help="partial row-echelon reduction")
    red.add_argument("--herm", required=True)
    red.add_argument("--tol", type=float, default=1e-9)
    red.add_argument("--out")

    vb = sub.add_parser("verify-bounds", **sub_kwargs, help="check the signature-ratio ceiling")
    vb.add_argument("--poly")
    vb.add_argument("--herm")
    vb.add_argument("--n", type=int)
    vb.add_argument("--d", type=int, required=True)

    cert = sub.add_parser("certificate", **sub_kwargs, help="pigeonhole certificate at power 1")
    cert.add_argument("--poly", required=True)

    dia = sub.add_parser("diagram", **sub_kwargs, help="render a lattice diagram")
    dia.add_argument("--poly")
    dia.add_argument("--pattern")
    dia.add_argument("--style", choices=("svg", "ascii"), default="svg")
    dia.add_argument("--show-simplices", action="store_true")
    dia.add_argument("--out")
    return top


def _cmd_generate(args) -> int:
    fam = args.family
    meta: dict = {}
    params = _gen.FamilyParams(
        n=args.n,
        D=args.D,
        d=args.d,
        m=args.m,
        nu=args.nu,
        k=args.k,
        lam=args.lam,
        epsilon=args.epsilon,
        homogenize=args.homogenize,
    )
    if fam == "qk" and args.epsilon == "auto":
        if args.n is None or args.k is None:
            raise SystemExit2("generate qk needs --n and --k")
        report = _gen.find_qk_epsilon(args.n, args.k)
        poly = report.poly
        meta = {"epsilon": str(report.epsilon), "power": report.power}
        print(f"epsilon={report.epsilon} power={report.power}", file=sys.stderr)
    else:
        try:
            poly = _gen.build_family(fam, params)
        except ParamsInfeasible as exc:
            raise SystemExit2(str(exc))
    if fam == "lambda" and not _gen.lambda_in_positive_regime(args.lam):
        print("warning: lambda >= 16 leaves the positive regime", file=sys.stderr)
    doc = poly_to_json(poly)
    if meta and args.format == "text":
        doc = dict(doc, **meta)
    text = json.dumps(doc, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return OK


def _witness_doc(report) -> dict | None:
    cert = report.certificate
    if isinstance(cert, _psi.NegativeCoefficientWitness):
        return {"kind": "negative-coefficient", "monomial": list(cert.monomial),
                "value": str(cert.value)}
    if isinstance(cert, _psi.NegativeDirectionWitness):
        return {
            "kind": "negative-direction",
            "value": str(cert.value),
            "vector": [[str(g.re), str(g.im)] for g in cert.vector],
            "basis": [list(b) for b in cert.basis],
        }
    return None


def _cmd_check_psi(args) -> int:
    obj = _load_input(args)
    if args.multiplier:
        spec = _read_json(args.multiplier)
        exps = [tuple(int(x) for x in e) for e in spec["exps"]]
        report = _psi.in_psi_general_multiplier(obj, exps)
    else:
        report = _psi.in_psi(obj, args.d)
    doc = {"member": report.member, "d": report.d}
    if not report.member:
        doc["witness"] = _witness_doc(report)
    _emit(doc, args)
    return OK if report.member else NEGATIVE


def _cmd_min_d(args) -> int:
    obj = _load_input(args)
    found = _psi.min_psi_index(obj, args.max_d)
    _emit({"min_d": found, "max_d": args.max_d}, args)
    return OK if found is not None else NEGATIVE


def _cmd_signature(args) -> int:
    obj = _load_input(args)
    if hasattr(obj, "coeff"):
        sig = sign_counts(obj)
    else:
        from .inertia import coefficient_matrix, inertia

        pos, neg, _zero = inertia(coefficient_matrix(obj))
        from .polycore import SignaturePair

        sig = SignaturePair(pos, neg)
    _emit({"n_plus": sig.n_plus, "n_minus": sig.n_minus, "rank": sig.rank}, args)
    return OK


def _cmd_search(args) -> int:
    support = None
    if args.support:
        pat = _patterns.pattern_from_json(_read_json(args.support))
        support = sorted(pat.support)
    budget_hit = False
    try:
        result = _patterns.search_max_ratio(
            args.n,
            args.D,
            args.d,
            strategy=args.strategy,
            budget=args.budget,
            seed=args.seed,
            support=support,
        )
    except BudgetExhausted as exc:
        if exc.best is None:
            raise
        result = exc.best
        budget_hit = True
    doc = {
        "pattern": _patterns.pattern_to_json(result.best),
        "ratio": str(result.ratio),
        "evaluations": result.evaluations,
        "strategy": result.strategy.value,
        "seed": args.seed,
        "budget_exhausted": budget_hit,
        "realized": poly_to_json(result.realized),
    }
    if args.n == 3:
        # conjectured optimum for three variables, for comparison
        doc["knight_move_reference"] = (args.d + 2) ** 2 // 3 - 1
    _emit(doc, args)
    return OK


def _cmd_reduce(args) -> int:
    from .reduction import decompose, partial_row_echelon, reconstruction_error

    herm = hermitian_from_json(_read_json(args.herm))
    form = decompose(herm)
    reduced, steps = partial_row_echelon(form, recon_tol=args.tol)
    steps_doc = [
        {
            "pivot_col": s.pivot_col,
            "rows": list(s.rows),
            "lambda": str(s.lambda_used) if s.lambda_used is not None else None,
            "t": [[[z.real, z.imag] for z in row] for row in s.t],
        }
        for s in steps
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"steps": steps_doc}, fh, sort_keys=True)
            fh.write("\n")
    _emit(
        {
            "n_plus": reduced.n_plus,
            "n_minus": reduced.n_minus,
            "steps": len(steps),
            "echelon": True,
            "reconstruction_error": reconstruction_error(reduced),
            "out": args.out,
        },
        args,
    )
    return OK


def _cmd_verify_bounds(args) -> int:
    obj = _load_input(args)
    if hasattr(obj, "coeff"):
        sig = sign_counts(obj)
        n = obj.n
    else:
        from .inertia import coefficient_matrix, inertia
        from .polycore import SignaturePair

        pos, neg, _zero = inertia(coefficient_matrix(obj))
        sig = SignaturePair(pos, neg)
        n = obj.n
    if args.n is not None:
        n = args.n
    report = _bounds.verify_ratio_bound(sig, n, args.d)
    _emit(
        {
            "n": report.n,
            "d": report.d,
            "n_plus": sig.n_plus,
            "n_minus": sig.n_minus,
            "bound": str(report.bound),
            "satisfied": report.satisfied,
            "strict": report.strict,
        },
        args,
    )
    return OK if report.satisfied else NEGATIVE


def _cmd_certificate(args) -> int:
    poly = poly_from_json(_read_json(args.poly))
    try:
        cert = _bounds.pigeonhole_certificate(poly)
    except NotInPsiD as exc:
        _emit({"error": str(exc)}, args)
        return NEGATIVE
    _emit(
        {
            "assignment": [
                {"from": list(a), "to": list(b)} for a, b in cert.assignment
            ],
            "max_fiber": cert.max_fiber,
            "least_monomial": list(cert.least_monomial),
        },
        args,
    )
    return OK


def _cmd_diagram(args) -> int:
    if args.pattern:
        pat = _patterns.pattern_from_json(_read_json(args.pattern))
    elif args.poly:
        pat = _patterns.pattern_from_poly(poly_from_json(_read_json(args.poly)))
    else:
        raise SystemExit2("diagram needs --poly or --pattern")
    doc = render_diagram(
        DiagramSpec(pat, fmt=args.style, show_simplices=args.show_simplices)
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
        _emit({"out": args.out, "style": args.style}, args)
    elif args.format == "json":
        _emit({"style": args.style, "document": doc}, args)
    else:
        sys.stdout.write(doc)
    return OK


_COMMANDS = {
    "generate": _cmd_generate,
    "check-psi": _cmd_check_psi,
    "min-d": _cmd_min_d,
    "signature": _cmd_signature,
    "search": _cmd_search,
    "reduce": _cmd_reduce,
    "verify-bounds": _cmd_verify_bounds,
    "certificate": _cmd_certificate,
    "diagram": _cmd_diagram,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    args.format = getattr(args, "format_late", None) or args.format or "json"
    try:
        return _COMMANDS[args.command](args)
    except SystemExit2 as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except (FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"usage error: {exc!r}", file=sys.stderr)
        return USAGE
    except (CertificateFailure, AssertionError) as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return INTERNAL
    except NotInPsiD as exc:
        print(f"negative verdict: {exc}", file=sys.stderr)
        return NEGATIVE
    except PsicertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except Exception as exc:  # anything unexpected is an invariant breach
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
