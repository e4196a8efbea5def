"""Command-line calculator for the Higman-Thompson groups and their braided relatives.

    htgroups normalize --ctx 'V{3,2}' '(((.,.,.),.,.)+(.,.,.)|p:2,3,4,1,8,5,6,7|(.,(.,.,.),.)+(.,.,.))'
    htgroups mul --ctx 'RV{2,1}' X Y
    echo "$X" | htgroups inv --ctx 'bV{2,1}' --json

Exit codes: 0 ok, 1 mathematical failure, 2 usage error, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import diagram as dg
from . import selftest as st
from .diagram import Diagram, GroupContext, Variant
from .errors import ParseError
from .rng import SplitMix64

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3
SEED_ENV = "HTGROUPS_SEED"

# verb -> number of element operands (None: one or more)
ELEMENT_VERBS = {
    "normalize": 1,
    "mul": None,
    "inv": 1,
    "eq": 2,
    "project": 1,
    "stabilize": 1,
    "shift": 1,
    "act": 1,
}


@dataclass
class Report:
    verb: str
    status: str = "ok"
    result: object = None
    invariants: dict | None = None
    message: str = ""
    position: int | None = None
    code: int = EXIT_OK
    extra: dict = field(default_factory=dict)

    def record(self) -> dict:
        if self.status == "ok":
            rec = {"status": "ok", "verb": self.verb, "result": self.result, "invariants": self.invariants}
            rec.update(self.extra)
            return rec
        return {"status": "error", "verb": self.verb, "message": self.message, "position": self.position}

    def text(self, show_invariants: bool = False) -> str:
        if self.status != "ok":
            return f"error: {self.message}"
        out = str(self.result)
        if show_invariants and self.invariants is not None:
            inv = self.invariants
            perm = ",".join(str(v) for v in inv["perm"])
            out += f"\n  l={inv['l']} total_twist={inv['total_twist']} writhe={inv['writhe']} perm={perm}"
        return out


class UsageError(Exception):
    pass


def _context_arg(text: str) -> GroupContext:
    try:
        return dg.parse_context(text)
    except (ParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _variant_arg(text: str) -> Variant:
    try:
        return Variant.from_prefix(text)
    except ValueError:
        names = ", ".join(v.prefix for v in Variant)
        raise argparse.ArgumentTypeError(f"unknown variant {text!r} (choose from {names})") from None


def _default_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return None
    try:
        return int(raw, 0)
    except ValueError:
        return None


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # flags may go before or after the verb; the per-verb copy must not reset them
    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=dflt(False), help="one JSON record per result")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=dflt(None),
                        help=f"random seed (default: ${SEED_ENV}, else built in)")
    common.add_argument("--depth", type=int, default=dflt(None), help="Cantor word depth for act and selftest")
    common.add_argument("--jobs", type=int, default=dflt(1), help="worker threads for batch input")
    common.add_argument("--invariants", action="store_true", default=dflt(False),
                        help="also print invariants in text mode")
    return common


def build_parser() -> argparse.ArgumentParser:
    top = _common_flags(suppress=False)
    common = _common_flags(suppress=True)

    parser = argparse.ArgumentParser(prog="htgroups", description=__doc__.split("\n\n")[0], parents=[top])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def element_verb(name, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("--ctx", type=_context_arg, required=True, help="group, e.g. 'RV{2,1}'")
        p.add_argument("exprs", nargs="*", metavar="EXPR",
                       help="element literal(s); read from stdin, one line each, when omitted")
        return p

    element_verb("normalize", "print the reduced representative")
    element_verb("mul", "multiply left to right")
    element_verb("inv", "invert")
    element_verb("eq", "test equality of two elements")
    element_verb("project", "apply a quotient map").add_argument(
        "--to", type=_variant_arg, required=True, help="target variant")
    element_verb("stabilize", "add a trivial root")
    element_verb("shift", "shift isomorphism onto r+d-1 roots").add_argument(
        "--inverse", action="store_true", help="apply the inverse isomorphism")
    act = element_verb("act", "act on a point of the Cantor set")
    act.epilog = "points are 'w1 w2 ...' or, with several roots, 'R: w1 w2 ...'"

    rnd = sub.add_parser("random", help="seeded random elements", parents=[common])
    rnd.add_argument("--ctx", type=_context_arg, required=True)
    rnd.add_argument("--carets", type=int, default=2)
    rnd.add_argument("--length", type=int, default=4)
    rnd.add_argument("--twist-bound", type=int, default=1)
    rnd.add_argument("--count", type=int, default=1)

    self_p = sub.add_parser("selftest", help="run the verification suites", parents=[common])
    self_p.add_argument("--suite", action="append", choices=sorted(st.SUITES), help="run only these suites")
    self_p.add_argument("--scale", type=float, default=1.0, help="multiply every case budget")
    return parser


# --- evaluation ---------------------------------------------------------------


def parse_point(text: str, ctx: GroupContext) -> tuple[int, tuple[int, ...]]:
    head, sep, tail = text.partition(":")
    if sep:
        try:
            root = int(head)
        except ValueError:
            raise ParseError(f"bad root {head.strip()!r}", 0) from None
        body, offset = tail, len(head) + 1
    else:
        if ctx.r > 1:
            raise ParseError(f"{ctx} has {ctx.r} roots; write the point as 'R: letters'", 0)
        root, body, offset = 1, text, 0
    letters = []
    pos = offset
    for tok in body.replace(",", " ").split():
        pos = text.index(tok, pos)
        try:
            letters.append(int(tok))
        except ValueError:
            raise ParseError(f"bad letter {tok!r}", pos) from None
        pos += len(tok)
    return root, tuple(letters)


def format_point(point, ctx: GroupContext) -> str:
    root, word = point
    body = " ".join(str(c) for c in word)
    return f"{root}: {body}" if ctx.r > 1 else body


def _element_report(verb: str, x: Diagram) -> Report:
    x = dg.reduce(x)
    return Report(verb, result=dg.format_diagram(x), invariants=dg.invariants(x))


def _all_points(ctx: GroupContext, depth: int):
    words = [()]
    for _ in range(depth):
        words = [w + (c,) for w in words for c in range(1, ctx.d + 1)]
    return [(root, w) for root in range(1, ctx.r + 1) for w in words]


def evaluate(args: argparse.Namespace, operands: list[str]) -> list[Report]:
    """Evaluate one command on one set of operands; never raises."""
    verb = args.verb
    try:
        return _evaluate(args, operands)
    except ParseError as exc:
        return [Report(verb, status="error", message=str(exc), position=exc.position, code=EXIT_PARSE)]
    except UsageError as exc:
        return [Report(verb, status="error", message=str(exc), code=EXIT_USAGE)]
    except (ValueError, IndexError, RecursionError) as exc:
        return [Report(verb, status="error", message=str(exc), code=EXIT_MATH)]


def _evaluate(args, operands) -> list[Report]:
    verb = args.verb
    ctx = args.ctx
    if verb == "act":
        if not operands or len(operands) > 2:
            raise UsageError("act takes an element and an optional point")
        x = dg.parse_diagram(operands[0], ctx)
        if len(operands) == 2:
            point = parse_point(operands[1], ctx)
            return [Report(verb, result=format_point(dg.cantor_action(x, point), ctx))]
        depth = args.depth if args.depth is not None else max(1, _min_depth(x))
        return [
            Report(verb, result=f"{format_point(p, ctx)} -> {format_point(dg.cantor_action(x, p), ctx)}")
            for p in _all_points(ctx, depth)
        ]
    want = ELEMENT_VERBS[verb]
    if want is None and not operands:
        raise UsageError(f"{verb} needs at least one element")
    if want is not None and len(operands) != want:
        raise UsageError(f"{verb} takes {want} element(s), got {len(operands)}")
    xs = [dg.parse_diagram(text, ctx) for text in operands]
    if verb == "normalize":
        return [_element_report(verb, xs[0])]
    if verb == "mul":
        acc = xs[0]
        for y in xs[1:]:
            acc = dg.multiply(acc, y)
        return [_element_report(verb, acc)]
    if verb == "inv":
        return [_element_report(verb, dg.invert(xs[0]))]
    if verb == "eq":
        return [Report(verb, result="true" if dg.equals(xs[0], xs[1]) else "false")]
    if verb == "project":
        return [_element_report(verb, dg.project(xs[0], args.to))]
    if verb == "stabilize":
        return [_element_report(verb, dg.stabilize(xs[0]))]
    if verb == "shift":
        fn = dg.shift_iso_inverse if args.inverse else dg.shift_iso
        return [_element_report(verb, fn(xs[0]))]
    raise UsageError(f"unknown verb {verb}")


def _min_depth(x: Diagram) -> int:
    def height(t):
        return 0 if not t else 1 + max(height(c) for c in t)

    return max(height(t) for t in x.source.roots)


def run_random(args) -> list[Report]:
    if args.carets < 0 or args.length < 0 or args.count < 0 or args.twist_bound < 0:
        raise UsageError("--carets, --length, --twist-bound and --count must be non-negative")
    seed = args.seed if args.seed is not None else 0
    rng = SplitMix64(seed)
    return [
        _element_report("random", dg.random_element(args.ctx, args.carets, args.length, args.twist_bound, rng))
        for _ in range(args.count)
    ]


def run_selftest(args, echo) -> list[Report]:
    seed = args.seed if args.seed is not None else st.DEFAULT_SEED
    reports = []
    for name in args.suite or st.SUITES:
        sizes = st.scaled_sizes(name, args.scale)
        if name == "cantor_oracle" and args.depth is not None:
            sizes["depth"] = args.depth
        res = st.run_suite(name, seed, **sizes)
        rep = Report(
            "selftest",
            status="ok",
            result=res.line(),
            code=EXIT_OK if res.passed else EXIT_MATH,
            extra={"suite": res.name, "passed": res.passed, "cases": res.cases,
                   "failures": res.failures, "counts": res.counts},
        )
        echo(rep)
        reports.append(rep)
    return reports


def _batch_lines(stream) -> list[list[str]]:
    batches = []
    for line in stream:
        line = line.strip()
        if line and not line.startswith("#"):
            try:
                batches.append(shlex.split(line))
            except ValueError:
                batches.append([line])
    return batches


def main(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.seed is None:
        args.seed = _default_seed()

    def emit(rep: Report):
        if args.json:
            print(json.dumps(rep.record()), file=stdout)
        elif rep.status == "ok":
            print(rep.text(args.invariants), file=stdout)
        else:
            print(rep.text(), file=sys.stderr)
        stdout.flush()

    try:
        if args.verb == "selftest":
            reports = run_selftest(args, emit)
            return max((r.code for r in reports), default=EXIT_OK)
        if args.verb == "random":
            reports = run_random(args)
        else:
            if args.exprs:
                jobs = [list(args.exprs)]
            else:
                jobs = _batch_lines(stdin)
            if args.jobs > 1 and len(jobs) > 1:
                with ThreadPoolExecutor(args.jobs) as pool:
                    results = list(pool.map(lambda ops: evaluate(args, ops), jobs))
            else:
                results = [evaluate(args, ops) for ops in jobs]
            reports = [r for group in results for r in group]
    except UsageError as exc:
        reports = [Report(args.verb, status="error", message=str(exc), code=EXIT_USAGE)]
    except Exception as exc:  # keep the exit-code contract even on a bug
        reports = [Report(args.verb, status="error", message=f"internal error: {exc!r}", code=EXIT_MATH)]
    for rep in reports:
        emit(rep)
    return max((r.code for r in reports), default=EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
