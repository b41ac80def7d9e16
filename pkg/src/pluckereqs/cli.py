"""Command line interface.

Subcommands: generate, check, verify, census, export, probe.  Exit codes:
0 success or affirmative answer, 1 verified negative (violations found or
an identity failed), 2 usage or input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .equations import EquationSystem, canonicalize, dedupe, gen_generalized, size_ratio
from .multiindex import GrassmannParams
from .pvectors import (
    is_simple,
    pvector_from_json,
    random_pvector,
    random_simple,
    residual,
)
from .render import FORMATS, format_multiindex, render, resolve_style, system_from_json
from .structure import stratum_probe, census, verify_structure

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_IO = 3

JOBS_ENV = "PLUCKEREQS_JOBS"


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as handle:
        handle.write(text)


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _add_params(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--n", type=int, required=required, help="ambient dimension")
    parser.add_argument("--p", type=int, required=required, help="subspace dimension")


def cmd_generate(args: argparse.Namespace) -> int:
    params = GrassmannParams(args.n, args.p)
    if args.m >= 3 and not args.experimental:
        print(
            "error: m >= 3 has no structural guarantees; pass --experimental to proceed",
            file=sys.stderr,
        )
        return EXIT_USAGE
    system = gen_generalized(params, args.m, jobs=args.jobs)
    if args.dedupe:
        reduced, _ = dedupe(system)
        system = EquationSystem(params, args.m, tuple(reduced))
    elif not args.raw:
        system = EquationSystem(
            params, args.m, tuple(canonicalize(eq) for eq in system.equations)
        )
    text = render(system, args.format, with_labels=not args.dedupe)
    _write_output(text, args.out)
    return EXIT_OK


def _run_selftest(args: argparse.Namespace) -> int:
    if args.n is None or args.p is None:
        print("error: --selftest requires --n and --p", file=sys.stderr)
        return EXIT_USAGE
    if args.seed is None:
        print("error: --selftest requires --seed", file=sys.stderr)
        return EXIT_USAGE
    params = GrassmannParams(args.n, args.p)
    count = args.selftest
    failures = 0
    for offset in range(count):
        simple = random_simple(params, args.seed + offset)
        if not (is_simple(simple, "plucker") and is_simple(simple, "plucker_like")):
            failures += 1
            print(f"simple vector at seed {args.seed + offset} flagged as non-simple")
    agreements = 0
    for offset in range(count):
        h = random_pvector(params, args.seed + offset)
        if is_simple(h, "plucker") == is_simple(h, "plucker_like"):
            agreements += 1
    print(f"selftest: {count} wedge vectors clean, {agreements}/{count} verdicts agree")
    if failures or agreements != count:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    if args.selftest is not None:
        return _run_selftest(args)
    h = pvector_from_json(_read_input(args.pvector))
    if args.n is not None and args.n != h.params.n:
        print(f"error: --n {args.n} does not match input n={h.params.n}", file=sys.stderr)
        return EXIT_USAGE
    if args.p is not None and args.p != h.params.p:
        print(f"error: --p {args.p} does not match input p={h.params.p}", file=sys.stderr)
        return EXIT_USAGE
    params = h.params
    if h.is_zero:
        print("simple (zero vector)")
        return EXIT_OK
    choice = "plucker" if args.m == 1 else "plucker_like"
    if is_simple(h, choice, tolerance=args.tolerance):
        print("simple")
        return EXIT_OK
    system = gen_generalized(params, args.m)
    report = residual(system, h, tolerance=args.tolerance)
    style = resolve_style(params.n)
    print(f"not simple: {len(report.violations)} violated equations")
    for label, value in report.violations:
        j, k = label
        print(f"  ({format_multiindex(j, style)},{format_multiindex(k, style)}) = {value}")
    return EXIT_NEGATIVE


def cmd_verify(args: argparse.Namespace) -> int:
    if not 2 <= args.p <= args.n - 2:
        print(
            f"error: verification needs 2 <= p <= n-2, got p={args.p}, n={args.n}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    params = GrassmannParams(args.n, args.p)
    report = verify_structure(params)
    print(
        f"decomposition identity: {report.decompositions_checked - len(report.decomposition_failures)}"
        f"/{report.decompositions_checked} labels ok"
    )
    c = report.census
    print(
        f"census: total {c.total_observed}/{c.total_predicted}, "
        f"distinct={c.all_distinct}, nontrivial={c.all_nontrivial}"
    )
    print(
        f"families: {report.families_checked} checked, "
        f"{report.combinations_checked} pair combinations checked"
    )
    print(f"3-term multiplicities (4x one-index, 1x two-index): {report.multiplicity_ok}")
    if report.ok:
        print(f"VERIFY (n={args.n}, p={args.p}): PASS")
        return EXIT_OK
    print(f"VERIFY (n={args.n}, p={args.p}): FAIL at {report.first_failure}")
    return EXIT_NEGATIVE


def cmd_census(args: argparse.Namespace) -> int:
    if not 2 <= args.p <= args.n - 2:
        print(
            f"error: census needs 2 <= p <= n-2, got p={args.p}, n={args.n}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    params = GrassmannParams(args.n, args.p)
    report = census(params)
    if args.format == "json":
        import json

        _write_output(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
        return EXIT_OK if report.ok else EXIT_NEGATIVE
    lines = [f"census for (n,p) = ({args.n},{args.p})"]
    header = f"{'kind':>8} {'q':>3} {'count':>8} {'predicted':>10} {'terms':>6}"
    lines.append(header)
    for entry in report.classes:
        terms = ",".join(str(t) for t in entry.observed_terms) or "-"
        lines.append(
            f"{entry.kind:>8} {entry.q_size:>3} {entry.observed:>8} "
            f"{entry.predicted:>10} {terms:>6}"
        )
    lines.append(
        f"total {report.total_observed}/{report.total_predicted}, "
        f"families {report.families_observed}/{report.families_predicted}"
    )
    lines.append(f"distinct: {report.all_distinct}, nontrivial: {report.all_nontrivial}")
    ratio = size_ratio(params)
    one_index_size = report.total_predicted * ratio
    lines.append(
        f"system size ratio (p+2)(n-p+2)/((p-1)(n-p-1)): "
        f"{one_index_size}/{report.total_predicted} = {float(ratio)}"
    )
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_export(args: argparse.Namespace) -> int:
    system = system_from_json(_read_input(args.infile))
    text = render(system, args.format, with_labels=not args.no_labels)
    _write_output(text, args.out)
    return EXIT_OK


def cmd_probe(args: argparse.Namespace) -> int:
    params = GrassmannParams(args.n, args.p)
    report = stratum_probe(params, args.q)
    if args.format == "text":
        lines = [
            f"probe (n={args.n}, p={args.p}, q={args.q}): "
            f"{report.equation_count} equations, admissible={report.admissible}",
            f"support groups (size, count): {list(report.support_group_sizes) or '-'}",
            f"max support overlap: {report.max_support_overlap}",
            f"combinations tried: {report.combinations_tried}, "
            f"collapses found: {len(report.collapses)}",
            f"note: {report.note}",
        ]
        _write_output("\n".join(lines) + "\n", args.out)
    else:
        _write_output(report.to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pluckereqs",
        description="Generate, check and verify quadratic Grassmann coordinate identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate an equation system")
    _add_params(p_gen)
    p_gen.add_argument("--m", type=int, default=1, help="indices moved per term (1 or 2)")
    p_gen.add_argument("--format", choices=FORMATS, default="text")
    p_gen.add_argument("--raw", action="store_true", help="emit generation-order raw terms")
    p_gen.add_argument("--dedupe", action="store_true", help="drop trivial/repeated equations")
    p_gen.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes")
    p_gen.add_argument("--experimental", action="store_true", help="allow m >= 3")
    p_gen.add_argument("--out", default=None, help="output path (default stdout)")
    p_gen.set_defaults(func=cmd_generate)

    p_check = sub.add_parser("check", help="decide simplicity of a p-vector")
    p_check.add_argument("pvector", nargs="?", default=None, help="p-vector JSON path or '-'")
    _add_params(p_check, required=False)
    p_check.add_argument("--m", type=int, choices=(1, 2), default=2, help="system to evaluate")
    p_check.add_argument("--tolerance", type=float, default=None, help="float-mode tolerance")
    p_check.add_argument("--seed", type=int, default=None)
    p_check.add_argument(
        "--selftest",
        type=int,
        default=None,
        metavar="N",
        help="check N seeded random vectors instead of reading input (needs --seed)",
    )
    p_check.set_defaults(func=cmd_check)

    p_verify = sub.add_parser("verify", help="verify the structural identities")
    _add_params(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_census = sub.add_parser("census", help="per-stratum counts vs predictions")
    _add_params(p_census)
    p_census.add_argument("--format", choices=("text", "json"), default="text")
    p_census.add_argument("--out", default=None)
    p_census.set_defaults(func=cmd_census)

    p_export = sub.add_parser("export", help="re-render a system JSON stream")
    p_export.add_argument("--in", dest="infile", default=None, help="input path (default stdin)")
    p_export.add_argument("--format", choices=FORMATS, default="text")
    p_export.add_argument("--no-labels", action="store_true")
    p_export.add_argument("--out", default=None)
    p_export.set_defaults(func=cmd_export)

    p_probe = sub.add_parser("probe", help="exploratory large-stratum combination search")
    _add_params(p_probe)
    p_probe.add_argument("--q", type=int, required=True, help="stratum |j intersect k|")
    p_probe.add_argument("--format", choices=("json", "text"), default="json")
    p_probe.add_argument("--out", default=None)
    p_probe.set_defaults(func=cmd_probe)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
