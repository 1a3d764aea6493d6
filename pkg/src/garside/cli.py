"""
Command-line front end.

Exit codes: 0 success, 1 a check or property failed (or an operation is
stuck or undefined), 2 bad input, 3 a budget or oracle bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable

from .core import Presentation, parse_presentation, parse_word, render_presentation, validate
from .errors import (
    AmbiguousGcd,
    AmbiguousLcm,
    AmbiguousPair,
    BudgetExceeded,
    GarsideError,
    NonHomogeneous,
    NotASolution,
    OutOfRange,
    ParseError,
    Stuck,
)
from .mbrace import check_left_mbrace, check_right_mbrace, right_distributivity_witness
from .oracle import build_index
from .partialbrace import (
    Ambiguous,
    Defined,
    FractionGroup,
    GroupElement,
    SampleSpec,
    Undefined,
    check_partial_axioms,
)
from .reversing import (
    DEFAULT_STEPS,
    LEFT,
    RIGHT,
    build_complement_table,
    cube_check,
    export_dot,
    lcm_left,
    lcm_right,
    reverse,
)
from .ybe import Solution, check_solution, mp_level, retract, structure_presentation

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_MAX_LEN = 4
DEFAULT_BRACE_LEN = 2


class InputError(Exception):
    pass


class Output:
    """Collects text and writes it once, to stdout or a file."""

    def __init__(self, path: str | None):
        self.path = path
        self.lines: list[str] = []

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)

    def json(self, doc) -> None:
        self.lines.append(json.dumps(doc, indent=2, ensure_ascii=False))

    def flush(self) -> None:
        text = "\n".join(self.lines) + ("\n" if self.lines else "")
        if self.path:
            Path(self.path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_presentation(path: str) -> Presentation:
    return parse_presentation(_read(path))


def _positive_word(p: Presentation, text: str) -> tuple[int, ...]:
    w = parse_word(text, p.atoms)
    if any(s < 0 for _, s in w):
        raise InputError(f"expected a positive word, got {text!r}")
    return tuple(i for i, _ in w)


def _step_budget(args) -> int:
    if args.steps is not None:
        steps = args.steps
    elif "GARSIDE_STEPS" in os.environ:
        try:
            steps = int(os.environ["GARSIDE_STEPS"])
        except ValueError:
            raise InputError("GARSIDE_STEPS must be an integer") from None
    else:
        steps = DEFAULT_STEPS
    if steps <= 0:
        raise InputError("the step budget must be positive")
    return steps


def _max_len(args, default: int) -> int:
    value = default if args.max_len is None else args.max_len
    if value <= 0:
        raise InputError("--max-len must be positive")
    return value


# check ----------------------------------------------------------------------


def cmd_check(args, out: Output) -> int:
    p = _load_presentation(args.presentation)
    steps = _step_budget(args)
    report = validate(p)
    ct = build_complement_table(p, allow_ambiguous=True)
    names = p.atoms.names
    fmt_pair = lambda pair: f"({names[pair[0]]},{names[pair[1]]})"

    cube = None
    if report.homogeneous and ct.complete:
        idx = build_index(p, _max_len(args, DEFAULT_MAX_LEN))
        cube = cube_check(ct, idx, steps)

    passed = report.homogeneous and report.complemented and ct.complete and cube is not None and cube.passed
    if args.format == "json":
        doc = {
            "validation": report.to_dict(p.atoms),
            "table": {
                "complete": ct.complete,
                "missing": [fmt_pair(x) for x in ct.missing],
                "ambiguous": [fmt_pair(x) for x in ct.ambiguous],
            },
            "cube": None if cube is None else {
                "tested": cube.tested,
                "skipped": cube.skipped,
                "failures": [
                    {"triple": [names[i] for i in t], "lhs": p.format_word(l), "rhs": p.format_word(r)}
                    for t, l, r in cube.failures
                ],
            },
            "passed": passed,
        }
        out.json(doc)
    else:
        out(f"homogeneous: {_mark(report.homogeneous)}")
        out(f"quadratic: {_mark(report.quadratic)}")
        out(f"complemented: {_mark(report.complemented)}")
        out(f"complement table: {'complete' if ct.complete else 'incomplete'}")
        for pair in ct.missing:
            out(f"  missing pair {fmt_pair(pair)}")
        for pair in ct.ambiguous:
            out(f"  ambiguous pair {fmt_pair(pair)}")
        if cube is None:
            out("cube check: not run")
        else:
            out(f"cube check: {cube.tested} triples tested, {cube.skipped} skipped, {len(cube.failures)} failed")
            for t, l, r in cube.failures:
                out(f"  ({','.join(names[i] for i in t)}): {p.format_word(l)} != {p.format_word(r)}")
        out("result: " + ("pass" if passed else "fail"))
    return EXIT_OK if passed else EXIT_FAIL


def _mark(flag: bool) -> str:
    return "yes" if flag else "no"


# lcm and reverse --------------------------------------------------------------


def _write_dot(path: str | None, trace) -> None:
    if path and trace is not None:
        Path(path).write_text(export_dot(trace), encoding="utf-8")


def _stuck(out: Output, exc: Stuck, names, dot_path) -> int:
    _write_dot(dot_path, exc.trace)
    out(f"stuck at ({names[exc.x]},{names[exc.y]})")
    return EXIT_FAIL


def cmd_lcm(args, out: Output) -> int:
    p = _load_presentation(args.presentation)
    steps = _step_budget(args)
    a, b = _positive_word(p, args.a), _positive_word(p, args.b)
    direction = LEFT if args.right else RIGHT
    try:
        ct = build_complement_table(p, direction)
        op = lcm_right if args.right else lcm_left
        m, u, v, trace = op(ct, a, b, steps)
    except Stuck as exc:
        return _stuck(out, exc, p.atoms.names, args.dot)
    except AmbiguousPair as exc:
        out(str(exc))
        return EXIT_FAIL
    _write_dot(args.dot, trace)
    if args.format == "json":
        out.json({"m": p.format_word(m), "u": p.format_word(u), "v": p.format_word(v), "steps": len(trace.steps)})
    else:
        out(f"m = {p.format_word(m)}")
        out(f"u = {p.format_word(u)}")
        out(f"v = {p.format_word(v)}")
    return EXIT_OK


def cmd_reverse(args, out: Output) -> int:
    p = _load_presentation(args.presentation)
    steps = _step_budget(args)
    w = parse_word(args.word, p.atoms)
    direction = LEFT if args.left else RIGHT
    try:
        ct = build_complement_table(p, direction)
        num, den, trace = reverse(ct, w, steps)
    except Stuck as exc:
        return _stuck(out, exc, p.atoms.names, args.dot)
    except AmbiguousPair as exc:
        out(str(exc))
        return EXIT_FAIL
    _write_dot(args.dot, trace)
    final = p.atoms.format_signed(trace.final)
    if args.format == "json":
        out.json({"result": final, "u": p.format_word(num), "v": p.format_word(den), "steps": len(trace.steps)})
    else:
        out(f"result = {final}")
        out(f"u = {p.format_word(num)}")
        out(f"v = {p.format_word(den)}")
        out(f"steps = {len(trace.steps)}")
    return EXIT_OK


# solution -------------------------------------------------------------------


def cmd_solution(args, out: Output) -> int:
    try:
        sol = Solution.from_json(_read(args.solution))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed solution file: {exc}") from None
    wants_check = args.check or not (args.retract or args.mp_level or args.emit_presentation)
    code = EXIT_OK
    doc: dict = {}
    report = check_solution(sol)
    if wants_check:
        checks = [
            ("braided", report.braided, "triples"),
            ("involutive", report.involutive, "pairs"),
            ("nondegenerate", report.nondegenerate, "permutation tests"),
            ("squarefree", report.squarefree, "points"),
        ]
        doc["check"] = {
            name: {"holds": ok, "checked": report.checked[name],
                   "counterexamples": [_one_based(c) for c in report.counterexamples.get(name, ())]}
            for name, ok, _ in checks
        }
        for name, ok, unit in checks:
            line = f"{name} {'✓' if ok else '✗'} ({report.checked[name]} {unit})"
            if not ok:
                line += f", e.g. {_one_based(report.counterexamples[name][0])}"
            if args.format == "text":
                out(line)
        if not report.is_solution:
            code = EXIT_FAIL
    if not report.is_solution and (args.retract or args.mp_level or args.emit_presentation):
        raise NotASolution("not a non-degenerate involutive solution")
    if args.retract:
        ret = retract(sol)
        doc["retract"] = json.loads(ret.to_json())
        if args.format == "text":
            out(f"retract: {ret.n} points")
            out(ret.to_json())
    if args.mp_level:
        level = mp_level(sol)
        doc["mp_level"] = str(level)
        if args.format == "text":
            out(str(level))
    if args.emit_presentation:
        text = render_presentation(structure_presentation(sol))
        Path(args.emit_presentation).write_text(text, encoding="utf-8")
        doc["presentation"] = args.emit_presentation
        if args.format == "text":
            out(f"wrote {args.emit_presentation}")
    if args.format == "json":
        out.json(doc)
    return code


def _one_based(c):
    if isinstance(c, tuple):
        return [_one_based(x) for x in c]
    return c + 1 if isinstance(c, int) else c


# brace ----------------------------------------------------------------------


def _oracle_bound(sweep_len: int) -> int:
    # (a + b) + c over words of length <= L stays within 4L for quadratic presentations
    return max(DEFAULT_MAX_LEN, 4 * sweep_len)


def _report_lines(out: Output, reports, fmt: Callable) -> bool:
    ok = True
    for r in reports:
        ok &= r.passed
        status = "PASS" if r.passed else "FAIL"
        out(f"{r.property}: {status} tested={r.tested} skipped={r.skipped} failures={len(r.failures)} [{r.universe}]")
        for k, v in sorted(r.notes.items()):
            out(f"  {k}: {v}")
        for f in r.failures[:5]:
            out(f"  {', '.join(fmt(x) for x in f.inputs)}: {fmt(f.lhs)} != {fmt(f.rhs)}")
    return ok


def _element_formatter(p: Presentation) -> Callable:
    def fmt(x):
        if isinstance(x, GroupElement):
            return x.format(p.atoms)
        return p.format_word(x)
    return fmt


def _undefined_message(p: Presentation, outcome: Undefined) -> str:
    names = p.atoms.names
    w = p.format_word
    if outcome.reason == "no-witness":
        kind, y, x = outcome.detail
        if kind == "mixed":
            return f"no witness z with {w(y)} ∨ z = {w(y + x)}"
        return f"no witness pair (a, b) with a ∨ b = a {w(y)} = b {w(x)}"
    if outcome.reason == "stuck":
        x, y = outcome.detail
        return f"stuck at ({names[x]},{names[y]})"
    return "budget exceeded" + (f": {outcome.detail[0]}" if outcome.detail else "")


def cmd_brace(args, out: Output) -> int:
    p = _load_presentation(args.presentation)
    steps = _step_budget(args)
    sweep_len = _max_len(args, DEFAULT_BRACE_LEN)
    fmt = _element_formatter(p)

    if args.oplus:
        return _brace_oplus(args, out, p, steps)

    ct = build_complement_table(p, RIGHT)
    idx = build_index(p, _oracle_bound(sweep_len))
    reports = []
    witness_doc = None
    selected = args.left or args.right or args.right_dist_witness or args.partial
    if args.left or not selected:
        reports += check_left_mbrace(p, idx, ct, sweep_len, steps)
    if args.right:
        reports += check_right_mbrace(p, idx, build_complement_table(p, LEFT), sweep_len, steps)
    if args.partial:
        spec = SampleSpec(pair_length=sweep_len, triple_length=max(1, sweep_len - 1))
        reports += check_partial_axioms(idx, ct, spec, steps)
    if args.right_dist_witness:
        found = right_distributivity_witness(p, idx, ct, sweep_len, steps)
        if found is None:
            witness_doc = None
        else:
            a, b, c, lhs, rhs = found
            witness_doc = {"a": fmt(a), "b": fmt(b), "c": fmt(c), "lhs": fmt(lhs), "rhs": fmt(rhs)}

    ok = all(r.passed for r in reports)
    if args.format == "json":
        doc: dict = {"reports": [r.to_dict(fmt) for r in reports], "passed": ok}
        if args.right_dist_witness:
            doc["right_distributivity_witness"] = witness_doc
        out.json(doc)
    else:
        _report_lines(out, reports, fmt)
        if args.right_dist_witness:
            if witness_doc is None:
                out("none within bound")
            else:
                out("right distributivity witness: a = {a}, b = {b}, c = {c}".format(**witness_doc))
                out("  (a (+) b) c = {lhs}".format(**witness_doc))
                out("  a c (+) b c = {rhs}".format(**witness_doc))
    return EXIT_OK if ok else EXIT_FAIL


def _brace_oplus(args, out: Output, p: Presentation, steps: int) -> int:
    g_word, h_word = (parse_word(t, p.atoms) for t in args.oplus)
    ct = build_complement_table(p, RIGHT)
    bound = max(_oracle_bound(_max_len(args, DEFAULT_BRACE_LEN)), 2 * (len(g_word) + len(h_word)))
    fg = FractionGroup(build_index(p, bound), ct, steps)
    g, h = fg.element(g_word), fg.element(h_word)
    outcome = fg.oplus(g, h)
    if isinstance(outcome, Defined):
        if args.format == "json":
            out.json({"outcome": "defined", "value": outcome.value.to_json(p.atoms)})
        else:
            out(f"defined: {outcome.value.format(p.atoms)}")
        return EXIT_OK
    if isinstance(outcome, Ambiguous):
        values = [c.format(p.atoms) for c in outcome.candidates]
        if args.format == "json":
            out.json({"outcome": "ambiguous", "candidates": [c.to_json(p.atoms) for c in outcome.candidates]})
        else:
            out("ambiguous: " + "; ".join(values))
        return EXIT_FAIL
    if outcome.reason == "budget":
        code = EXIT_BUDGET
    else:
        code = EXIT_FAIL
    message = _undefined_message(p, outcome)
    if args.format == "json":
        out.json({"outcome": "undefined", "reason": outcome.reason, "message": message})
    else:
        out(f"undefined: {message}")
    return code


# entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="garside", description="Word reversing, lcm-monoids and Yang-Baxter solutions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--steps", type=int, default=None, help=f"reversing step budget (default {DEFAULT_STEPS}, or $GARSIDE_STEPS)")
    common.add_argument("-o", "--output", default=None, help="write the report to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate a presentation, its complement table and the cube condition")
    p.add_argument("presentation")
    p.add_argument("--max-len", type=int, default=None, help=f"oracle word length bound (default {DEFAULT_MAX_LEN})")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lcm", parents=[common], help="left lcm by right reversing (or right lcm with --right)")
    p.add_argument("presentation")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--right", action="store_true", help="right lcm m = u a = v b by left reversing")
    p.add_argument("--dot", default=None, help="write the reversing diagram as DOT")
    p.set_defaults(func=cmd_lcm)

    p = sub.add_parser("reverse", parents=[common], help="reverse a signed word")
    p.add_argument("presentation")
    p.add_argument("word")
    p.add_argument("--left", action="store_true", help="left reversing instead of right reversing")
    p.add_argument("--dot", default=None, help="write the reversing diagram as DOT")
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("solution", parents=[common], help="check and transform a Yang-Baxter solution")
    p.add_argument("solution")
    p.add_argument("--check", action="store_true", help="check the solution axioms (default)")
    p.add_argument("--retract", action="store_true")
    p.add_argument("--mp-level", action="store_true")
    p.add_argument("--emit-presentation", metavar="PATH", default=None)
    p.set_defaults(func=cmd_solution)

    p = sub.add_parser("brace", parents=[common], help="property sweeps for the lcm brace and the partial brace")
    p.add_argument("presentation")
    p.add_argument("--left", action="store_true", help="left lcm brace sweep (default)")
    p.add_argument("--right", action="store_true", help="right lcm brace sweep")
    p.add_argument("--right-dist-witness", action="store_true", help="search for a failure of right distributivity")
    p.add_argument("--partial", action="store_true", help="partial brace sweep over reduced fractions")
    p.add_argument("--oplus", nargs=2, metavar=("G", "H"), help="evaluate G (+) H in the group of fractions")
    p.add_argument("--max-len", type=int, default=None, help=f"sweep word length bound (default {DEFAULT_BRACE_LEN})")
    p.set_defaults(func=cmd_brace)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.output)
    try:
        code = args.func(args, out)
    except (ParseError, InputError, NonHomogeneous) as exc:
        print(f"garside: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotASolution as exc:
        out.flush()
        print(f"garside: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BudgetExceeded, OutOfRange) as exc:
        print(f"garside: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (AmbiguousLcm, AmbiguousGcd, AmbiguousPair) as exc:
        print(f"garside: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except GarsideError as exc:
        print(f"garside: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
