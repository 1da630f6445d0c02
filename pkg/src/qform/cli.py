"""Command line front end.

Exit codes: 0 success, 1 bad input or an exhausted search budget, 2 internal
consistency failure (the deciders disagree with each other or with the
oracle), which always means a bug rather than bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .decide import decide
from .errors import BudgetExceededError, InternalConsistencyError
from .forms import BinaryForm, GeneralForm, InvalidFormError, format_form, parse_form
from .oracle import coverage, cross_check
from .padic import Prime
from .witness import DEFAULT_BUDGET, approximate_quotient, exclusion_certificate

MAX_BUDGET_ENV = "QFORM_MAX_BUDGET"


class UsageError(Exception):
    """Bad command line input; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_form_arguments(sp, with_prime=True):
    sp.add_argument("--form",
                    help='binary form "a,b,c" or general form "rank; coeffs"')
    sp.add_argument("--rank", type=int, help="rank when giving bare --coeffs")
    sp.add_argument("--coeffs",
                    help="comma separated coefficients, upper triangle by rows")
    if with_prime:
        sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--plain", action="store_true",
                    help="human readable text instead of JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qform",
                     description="Density of quadratic form quotient sets "
                                 "in the p-adic numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="dense or not, with both routes")
    _add_form_arguments(p_decide)
    p_decide.set_defaults(func=_cmd_decide)

    p_explain = sub.add_parser("explain",
                               help="decision path as question/answer lines")
    _add_form_arguments(p_explain)
    p_explain.set_defaults(func=_cmd_explain)

    p_witness = sub.add_parser(
        "witness",
        help="point pair approximating --target, or an exclusion certificate")
    _add_form_arguments(p_witness)
    p_witness.add_argument("--target", help="rational number, e.g. 7 or 3/5")
    p_witness.add_argument("--r", type=int, default=1,
                           help="required p-adic closeness exponent")
    p_witness.add_argument("--bound", type=int,
                           help="search budget / certificate check bound")
    p_witness.set_defaults(func=_cmd_witness)

    p_oracle = sub.add_parser("oracle",
                              help="brute force residue coverage report")
    _add_form_arguments(p_oracle)
    p_oracle.add_argument("--r", type=int, default=1)
    p_oracle.add_argument("--bound", type=int,
                          help="coordinate box, default 10 * p**r")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_sweep = sub.add_parser(
        "sweep", help="cross-check decider against oracle over a config file")
    p_sweep.add_argument("--config", required=True,
                         help='file of lines "a,b,c p" or "rank; coeffs p"')
    p_sweep.add_argument("--r", type=int, default=2)
    p_sweep.add_argument("--bound", type=int,
                         help="coordinate box, default 10 * p**r per line")
    p_sweep.add_argument("--plain", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def _form_from_args(args):
    if args.form is not None:
        if args.rank is not None or args.coeffs is not None:
            raise UsageError("give either --form or --rank with --coeffs")
        return parse_form(args.form)
    if args.coeffs is not None:
        if args.rank is None:
            raise UsageError("--coeffs needs --rank")
        return parse_form(f"{args.rank}; {args.coeffs}")
    raise UsageError("a form is required: --form or --rank with --coeffs")


def _prime_from_args(args) -> Prime:
    try:
        return Prime(args.prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload: dict, plain: str) -> None:
    if getattr(args, "plain", False):
        print(plain)
    else:
        print(json.dumps(payload, indent=2))


def _cmd_decide(args) -> int:
    f = _form_from_args(args)
    p = _prime_from_args(args)
    verdict = decide(f, p)
    payload = {"form": format_form(f), "prime": int(p),
               "verdict": verdict.to_json_dict()}
    lines = [f"form:    {format_form(f)}",
             f"prime:   {int(p)}",
             f"dense:   {'yes' if verdict.dense else 'no'}",
             f"leaf:    {verdict.theorem_tag}"]
    if verdict.factorization is not None:
        lines.append(f"k, ell:  {verdict.factorization.k}, "
                     f"{verdict.factorization.ell}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_explain(args) -> int:
    f = _form_from_args(args)
    p = _prime_from_args(args)
    verdict = decide(f, p)
    lines = [f"{format_form(f)} at p = {int(p)}"]
    for depth, node in enumerate(verdict.path):
        pad = "  " * (depth + 1)
        if node.question == "conclusion":
            lines.append(f"{pad}=> {node.answer}  [{node.node}]")
        else:
            lines.append(f"{pad}{node.question}  {node.answer}")
    payload = {"form": format_form(f), "prime": int(p),
               "verdict": verdict.to_json_dict()}
    _emit(args, payload, "\n".join(lines))
    return 0


def _parse_target(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid target {text!r}: {exc}") from exc


def _witness_budget(args) -> int:
    budget = args.bound if args.bound is not None else DEFAULT_BUDGET
    cap = os.environ.get(MAX_BUDGET_ENV)
    if cap is not None:
        try:
            budget = min(budget, int(cap))
        except ValueError as exc:
            raise UsageError(f"{MAX_BUDGET_ENV} must be an integer") from exc
    return budget


def _cmd_witness(args) -> int:
    f = _form_from_args(args)
    p = _prime_from_args(args)
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    verdict = decide(f, p)
    if verdict.dense:
        if args.target is None:
            raise UsageError("the quotient set is dense; give a --target "
                             "to approximate")
        target = _parse_target(args.target)
        w = approximate_quotient(f, p, target.numerator, target.denominator,
                                 args.r, budget=_witness_budget(args))
        payload = {"form": format_form(f), "prime": int(p), "dense": True,
                   "witness": w.to_json_dict()}
        wd = w.to_json_dict()
        plain = "\n".join(f"{key}: {value}" for key, value in wd.items())
        _emit(args, payload, plain)
        return 0
    if not isinstance(f, BinaryForm) and f.rank != 2:
        raise UsageError("exclusion certificates are built for binary forms; "
                         "this form is not dense but has rank "
                         f"{f.rank}")
    binary = f if isinstance(f, BinaryForm) else f.to_binary()
    cert = exclusion_certificate(
        binary, p, verify_bound=args.bound if args.bound is not None else 50)
    payload = {"form": format_form(f), "prime": int(p), "dense": False,
               "certificate": cert.to_json_dict()}
    cd = cert.to_json_dict()
    plain = "\n".join(f"{key}: {value}" for key, value in cd.items())
    _emit(args, payload, plain)
    return 0


def _cmd_oracle(args) -> int:
    f = _form_from_args(args)
    p = _prime_from_args(args)
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    bound = args.bound if args.bound is not None else 10 * int(p) ** args.r
    if bound < 1:
        raise UsageError("--bound must be at least 1")
    report = coverage(f, p, args.r, bound)
    payload = {"form": format_form(f), "prime": int(p),
               "report": report.to_json_dict()}
    rd = report.to_json_dict()
    plain = "\n".join(f"{key}: {value}" for key, value in rd.items())
    _emit(args, payload, plain)
    return 0


def _parse_sweep_line(line: str, lineno: int):
    parts = line.rsplit(None, 1)
    if len(parts) != 2:
        raise UsageError(f"config line {lineno}: expected '<form> <prime>', "
                         f"got {line!r}")
    head, tail = parts
    try:
        p = Prime(int(tail))
    except ValueError as exc:
        raise UsageError(f"config line {lineno}: {exc}") from exc
    try:
        f = parse_form(head)
    except InvalidFormError as exc:
        raise UsageError(f"config line {lineno}: {exc}") from exc
    return f, p


def _cmd_sweep(args) -> int:
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    try:
        with open(args.config, encoding="utf-8") as handle:
            raw = handle.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    results = []
    all_passed = True
    for lineno, line in enumerate(raw, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        f, p = _parse_sweep_line(line, lineno)
        bound = args.bound if args.bound is not None else 10 * int(p) ** args.r
        report = cross_check(f, p, args.r, bound)
        results.append(report)
        all_passed = all_passed and report.passed
    payload = {"passed": all_passed,
               "results": [rep.to_json_dict() for rep in results]}
    plain_lines = [f"{'form':<24} {'p':>3} {'r':>2} {'bound':>6} "
                   f"{'dense':<5} {'leaf':<28} pass"]
    for rep in results:
        plain_lines.append(
            f"{rep.form_text:<24} {rep.p:>3} {rep.r:>2} {rep.bound:>6} "
            f"{'yes' if rep.dense else 'no':<5} {rep.theorem_tag:<28} "
            f"{'ok' if rep.passed else 'FAIL'}")
    plain_lines.append("all passed" if all_passed else "CROSS-CHECK FAILED")
    _emit(args, payload, "\n".join(plain_lines))
    return 0 if all_passed else 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, InvalidFormError, BudgetExceededError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
