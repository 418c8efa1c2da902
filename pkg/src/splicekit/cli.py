"""Command-line front end.

Every subcommand produces a :class:`Report` rendered either as a
human-readable text table or as JSON with sorted keys.  Exact values are
always rendered as integer or reduced ``a/b`` fraction strings, never as
floating point, so outputs are byte-deterministic for a given input and
package version.

Exit codes: 0 affirmative/success, 1 negative verdict, 2 invalid input.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, brieskorn, cover, invariants, plumbing
from .diagram import EdgeEnd, parse_diagram, render_diagram
from .errors import InputError

DEFAULT_GEN_SEED = 1
DEFAULT_SELFTEST_SEEDS = 200
DEFAULT_SELFTEST_MAX_VERTICES = 8


@dataclass
class Report:
    command: str
    verdict: str
    witnesses: list = field(default_factory=list)
    numbers: dict = field(default_factory=dict)
    text_body: str = None  # raw payload (splice/plumbing file) when set


def fmt(value):
    """Render an exact value as a string; fractions as reduced a/b."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def render(report, format="text"):
    """Render a report as text or stable-key JSON."""
    if format == "json":
        payload = {
            "command": report.command,
            "verdict": report.verdict,
            "witnesses": report.witnesses,
            "numbers": report.numbers,
            "version": __version__,
        }
        if report.text_body is not None:
            payload["file"] = report.text_body
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if report.text_body is not None:
        return report.text_body
    lines = [f"{report.command}: {report.verdict}"]
    for name in report.numbers:
        lines.append(f"  {name} = {report.numbers[name]}")
    for witness in report.witnesses:
        rendered = " ".join(f"{k}={v}" for k, v in witness.items())
        lines.append(f"  - {rendered}")
    return "\n".join(lines) + "\n"


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc


def _end_label(end):
    return f"dbar({end.vertex};{end.vertex}-{end.other})"


def _cmd_validate(args):
    d = parse_diagram(_read_input(args.file))
    report = Report(
        command="validate",
        verdict="valid",
        numbers={
            "nodes": str(len(d.node_ids())),
            "leaves": str(len(d.leaf_ids())),
            "edges": str(len(d.edges())),
        },
    )
    return 0, report


def _cmd_invariants(args):
    d = parse_diagram(_read_input(args.file))
    numbers = {}
    for a, b in d.internode_edges():
        numbers[f"D({a}-{b})"] = str(invariants.edge_determinant(d, a, b))
    for v in d.node_ids():
        for u in d.neighbors(v):
            end = EdgeEnd(v, u)
            numbers[_end_label(end)] = str(invariants.ideal_generator(d, end))
    return 0, Report(command="invariants", verdict="ok", numbers=numbers)


def _cmd_check_ideal(args):
    d = parse_diagram(_read_input(args.file))
    result = invariants.check_ideal_condition(d)
    witnesses = [
        {"end": f"{end.vertex};{end.vertex}-{end.other}", "generator": str(g), "weight": str(w)}
        for end, g, w in result.violations
    ]
    verdict = "holds" if result.holds else "violated"
    return (0 if result.holds else 1), Report("check-ideal", verdict, witnesses=witnesses)


def _cmd_singularity_link(args):
    d = parse_diagram(_read_input(args.file))
    ok = invariants.is_singularity_link(d)
    return (0 if ok else 1), Report("singularity-link", "yes" if ok else "no")


def _decide_witnesses(result):
    witnesses = []
    if result.zero_weight_edge is not None:
        witnesses.append({"reason": "zero_weight", "edge": "-".join(result.zero_weight_edge)})
    for failure in result.failures:
        witnesses.append(
            {
                "candidate": failure.candidate,
                "node": failure.node,
                "reason": failure.reason,
                "detail": str(failure.detail),
            }
        )
    return witnesses


def _cmd_uac_qhs(args):
    d = parse_diagram(_read_input(args.file))
    result = cover.decide_uac_qhs(d)
    report = Report(command="uac-qhs", verdict=result.verdict, witnesses=_decide_witnesses(result))
    if result.special is not None:
        report.numbers["special"] = result.special
    return (0 if result else 1), report


def _parse_euler_overrides(pairs):
    overrides = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise InputError(f"--euler expects piece=value, got {pair!r}")
        name, _, value = pair.partition("=")
        try:
            overrides[name] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad euler value {value!r}: {exc}") from exc
    return overrides


def _cmd_cover(args):
    d = parse_diagram(_read_input(args.file))
    decision = cover.decide_uac_qhs(d)
    if not d.node_ids():
        report = Report(
            command="cover",
            verdict="no_obstruction",
            witnesses=[{"note": "degenerate diagram: the cover is S^3, no pieces"}],
            numbers={"decide": decision.verdict},
        )
        return 0, report
    if decision.zero_weight_edge is not None:
        report = Report(
            command="cover",
            verdict=f"obstruction:{cover.ZERO_WEIGHT}",
            witnesses=[{"kind": cover.ZERO_WEIGHT, "edge": "-".join(decision.zero_weight_edge)}],
            numbers={"decide": decision.verdict},
        )
        return 1, report
    special = args.special
    if special is None:
        special = decision.special if decision.special is not None else d.node_ids()[0]
    skeleton = cover.build_cover_skeleton(d, special)

    numbers = {"special": special, "decide": decision.verdict}
    witnesses = []
    counts = {}
    for piece in skeleton.pieces:
        key = (piece.origin_node, str(piece.tuple))
        counts[key] = counts.get(key, 0) + 1
    for (origin, tuple_str), count in sorted(counts.items()):
        witnesses.append({"piece": f"Sigma{tuple_str}x{count}", "node": origin})
    for a, b in d.internode_edges():
        numbers[f"tori({a}-{b})"] = str(skeleton.per_edge_torus_count[(a, b)])
        p = cover.fiber_intersection(d, a, b)
        numbers[f"p~({a}-{b})"] = "degenerate" if p.degenerate else fmt(p.value)

    if skeleton.obstruction is None:
        verdict = "no_obstruction"
        try:
            det, nondegenerate = cover.decomposition_determinant(
                skeleton, _parse_euler_overrides(args.euler)
            )
            numbers["determinant"] = fmt(det)
            numbers["nondegenerate"] = "yes" if nondegenerate else "no"
        except InputError as exc:
            numbers["determinant"] = f"unavailable ({exc})"
    else:
        obstruction = skeleton.obstruction
        verdict = f"obstruction:{obstruction.kind}"
        detail = {"kind": obstruction.kind}
        if obstruction.edge is not None:
            detail["edge"] = "-".join(obstruction.edge)
        if obstruction.node is not None:
            detail["node"] = obstruction.node
            detail["tuple"] = str(obstruction.tuple)
            detail["indicator"] = str(obstruction.indicator)
        witnesses.append(detail)
    report = Report(command="cover", verdict=verdict, witnesses=witnesses, numbers=numbers)
    return (0 if skeleton.obstruction is None else 1), report


def _cmd_brieskorn(args):
    try:
        alphas = [int(tok) for tok in args.alphas.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"bad exponent list {args.alphas!r}") from exc
    verdict = brieskorn.classify_rhs(alphas)
    indicator = brieskorn.genus_indicator(alphas)
    report = Report(
        command="brieskorn",
        verdict=verdict,
        numbers={"indicator": str(indicator)},
    )
    return (0 if verdict != brieskorn.NOT_RHS else 1), report


def _cmd_plumb2splice(args):
    p = plumbing.parse_plumbing(_read_input(args.file))
    d = plumbing.plumbing_to_splice(p)
    return 0, Report(command="plumb2splice", verdict="ok", text_body=render_diagram(d))


def _cmd_plumb_h1(args):
    p = plumbing.parse_plumbing(_read_input(args.file))
    order = plumbing.h1_order(p)
    return 0, Report(
        command="plumb-h1",
        verdict="finite" if order else "infinite",
        numbers={"h1_order": str(order)},
    )


def _cmd_gen(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("SPLICEKIT_SEED")
        seed = int(env) if env else DEFAULT_GEN_SEED
    p = plumbing.random_plumbing(seed, args.max_vertices)
    return 0, Report(command="gen", verdict="ok", text_body=plumbing.render_plumbing(p))


def _parse_n_range(text):
    try:
        if ".." in text:
            lo, _, hi = text.partition("..")
            return range(int(lo), int(hi) + 1)
        n = int(text)
        return range(n, n + 1)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}, expected e.g. 3..4") from exc


def _cmd_selftest(args):
    run_brieskorn = args.brieskorn or not args.plumbing
    run_plumbing = args.plumbing or not args.brieskorn
    numbers = {}
    witnesses = []
    ok = True

    if run_brieskorn:
        scan = brieskorn.rhs_equivalence_scan(args.max_alpha, _parse_n_range(args.n))
        numbers["brieskorn_tuples_checked"] = str(scan.checked)
        if not scan.all_agree:
            ok = False
            for alphas, verdict, indicator in scan.counterexamples[:10]:
                witnesses.append(
                    {"scan": "brieskorn", "tuple": str(alphas), "verdict": verdict, "indicator": str(indicator)}
                )

    if run_plumbing:
        failures = 0
        for seed in range(args.seeds):
            p = plumbing.random_plumbing(seed, args.max_vertices)
            d = plumbing.plumbing_to_splice(p)
            checks = {
                "ideal_condition": invariants.check_ideal_condition(d).holds,
                "all_signs_positive": all(d.sign(v) == 1 for v in d.node_ids()),
                "edge_determinants_positive": all(
                    invariants.edge_determinant(d, a, b) > 0 for a, b in d.internode_edges()
                ),
                "seen_divisibility": invariants.verify_seen_divisibility(d).holds,
            }
            if not all(checks.values()):
                ok = False
                failures += 1
                witnesses.append(
                    {
                        "scan": "plumbing",
                        "seed": str(seed),
                        "failed": ",".join(k for k, v in checks.items() if not v),
                    }
                )
        numbers["plumbing_seeds_run"] = str(args.seeds)
        numbers["plumbing_seed_failures"] = str(failures)

    verdict = "pass" if ok else "fail"
    return (0 if ok else 1), Report("selftest", verdict, witnesses=witnesses, numbers=numbers)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="splicekit",
        description="Exact splice-diagram invariants and the universal-abelian-cover test.",
    )
    parser.add_argument("--version", action="version", version=f"splicekit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=["text", "json"], default="text")
        return p

    for name, handler, help_text in [
        ("validate", _cmd_validate, "parse and validate a splice file"),
        ("invariants", _cmd_invariants, "edge determinants and ideal generators"),
        ("check-ideal", _cmd_check_ideal, "check the ideal condition"),
        ("singularity-link", _cmd_singularity_link, "singularity-link test"),
        ("uac-qhs", _cmd_uac_qhs, "is the universal abelian cover a QHS?"),
    ]:
        p = add(name, handler, help=help_text)
        p.add_argument("file", help="splice file, or - for stdin")

    p = add("cover", _cmd_cover, help="decomposition skeleton of the universal abelian cover")
    p.add_argument("file", help="splice file, or - for stdin")
    p.add_argument("--special", default=None, help="force the special node")
    p.add_argument("--euler", action="append", metavar="PIECE=VAL",
                   help="euler number for an internal piece, e.g. w=-3/10")

    p = add("brieskorn", _cmd_brieskorn, help="classify a Brieskorn link tuple")
    p.add_argument("alphas", help="comma-separated exponents, e.g. 2,3,5")

    p = add("plumb2splice", _cmd_plumb2splice, help="splice diagram of a plumbing graph")
    p.add_argument("file", help="plumbing file, or - for stdin")

    p = add("plumb-h1", _cmd_plumb_h1, help="|H1| of a plumbed tree of spheres")
    p.add_argument("file", help="plumbing file, or - for stdin")

    p = add("gen", _cmd_gen, help="generate a random negative-definite plumbing tree")
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: SPLICEKIT_SEED or 1)")
    p.add_argument("--max-vertices", type=int, default=8)

    p = add("selftest", _cmd_selftest, help="exhaustive Brieskorn scan and plumbing pipeline")
    p.add_argument("--brieskorn", action="store_true", help="run only the Brieskorn scan")
    p.add_argument("--plumbing", action="store_true", help="run only the plumbing pipeline")
    p.add_argument("--max-alpha", type=int, default=12)
    p.add_argument("--n", default="3..4", help="exponent-count range, e.g. 3..4")
    p.add_argument("--seeds", type=int, default=DEFAULT_SELFTEST_SEEDS)
    p.add_argument("--max-vertices", type=int, default=DEFAULT_SELFTEST_MAX_VERTICES)

    return parser


def run(argv):
    """Execute a subcommand; returns (exit_code, Report)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage errors; normalize.
        code = 0 if exc.code == 0 else 2
        return code, Report(command="usage", verdict="error" if code else "help")
    try:
        code, report = args.handler(args)
    except InputError as exc:
        report = Report(command=args.command, verdict="invalid", witnesses=[{"error": str(exc)}])
        report.format = args.format
        return 2, report
    report.format = args.format
    return code, report


def main(argv=None):
    code, report = run(sys.argv[1:] if argv is None else argv)
    if report.command not in ("usage",):
        format = getattr(report, "format", "text")
        target = sys.stderr if code == 2 else sys.stdout
        target.write(render(report, format))
    return code


if __name__ == "__main__":
    sys.exit(main())
