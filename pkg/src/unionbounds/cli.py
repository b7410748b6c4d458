"""Command-line front end.

Subcommands: ``bounds`` evaluates the bound report for a JSON event system,
``generate`` writes a seed-deterministic random system, ``bc`` tabulates the
finite-horizon limsup estimators over a grid, and ``selftest`` runs the
built-in sharpness and sandwich suites.

Exit codes: 0 ok, 1 input error, 2 internal inequality violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from ._numeric import Number, is_exact
from .bounds import (
    ExponentParams,
    MomentVector,
    lower_bound_three_moments,
    lower_bound_two_moments,
    upper_bound_three_moments,
    upper_bound_two_moments,
)
from .borel_cantelli import (
    ExplicitSequence,
    IdenticalSequence,
    IndependentSequence,
    bc_lower_estimate,
    bc_upper_estimate,
    kochen_stone_ratio,
)
from .events import EventSystem, build_system, random_system
from .unions import (
    chung_erdos,
    compare_bounds,
    de_caen,
    kat_bound,
    occupancy_moment_vector,
    union_lower_three,
    union_upper_three,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATION = 2

FORMATS = ("table", "json", "csv")
PROFILES = ("dense", "sparse", "disjoint-ish")
MODELS = ("independent", "geometric", "identical", "explicit")


class CliInputError(ValueError):
    """Bad usage or bad input; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2)
        raise CliInputError(message)


def parse_number(text: str) -> Number:
    """Exact numeric literal: "2", "1/3" and "0.25" parse to rationals."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliInputError(f"cannot parse number {text!r}") from exc
    return value.numerator if value.denominator == 1 else value


def format_number(value: Number) -> str:
    return f"{float(value):.12g}"


def _number_doc(value: Number) -> str:
    """Exact-friendly rendering for JSON and table metadata."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(value) if isinstance(value, float) else str(value)


def load_system(path: str) -> EventSystem:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise CliInputError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(
            f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if (
        not isinstance(document, dict)
        or "weights" not in document
        or "events" not in document
    ):
        raise CliInputError(
            f"{path}: expected a JSON object with 'weights' and 'events'"
        )
    try:
        return build_system(document["weights"], document["events"])
    except (ValueError, TypeError) as exc:
        raise CliInputError(f"{path}: {exc}") from exc


def serialize_system(system: EventSystem) -> str:
    """Canonical form: rationals as p/q strings, atoms sorted, one per line."""
    document = {
        "weights": [str(weight) for weight in system.weights],
        "events": [list(event) for event in system.events],
    }
    return json.dumps(document, indent=2) + "\n"


def write_text(path: str | None, text: str) -> None:
    """Write atomically via a sibling temp file; '-' or None means stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    temp = f"{path}.tmp"
    with open(temp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(temp, path)


def _render_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [
        max(len(header), *(len(row[i]) for row in rows)) if rows else len(header)
        for i, header in enumerate(headers)
    ]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in [list(headers)] + [list(row) for row in rows]
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- bounds


def _exponent_pairs(args: argparse.Namespace) -> list[tuple[Number, Number]]:
    a_list = args.a or []
    rho_list = args.rho or []
    if len(a_list) != len(rho_list):
        raise CliInputError("--a and --rho must be given the same number of times")
    if not a_list:
        return [(1, 1)]
    for a, rho in zip(a_list, rho_list):
        if not a > 0 or not rho > 0:
            raise CliInputError("exponent parameters must be positive")
    return list(zip(a_list, rho_list))


def run_bounds(args: argparse.Namespace) -> int:
    system = load_system(args.input)
    if system.n_events == 0:
        raise CliInputError(f"{args.input}: the system has no events")
    pairs = _exponent_pairs(args)
    reports = [compare_bounds(system, a, rho) for a, rho in pairs]
    exact = reports[0].exact

    def shown(entry_value: Number | None, clamped: Number | None) -> Number | None:
        return clamped if args.clamp else entry_value

    if args.format == "json":
        sections = []
        for report in reports:
            sections.append(
                {
                    "a": _number_doc(report.a),
                    "rho": _number_doc(report.rho),
                    "all_pass": report.all_pass,
                    "entries": [
                        {
                            "name": entry.name,
                            "kind": entry.kind,
                            "value": None
                            if entry.value is None
                            else float(shown(entry.value, entry.clamped)),
                            "clamped": None
                            if entry.clamped is None
                            else float(entry.clamped),
                            "exact": float(exact),
                            "pass": entry.passed,
                            "value_exact": str(entry.value)
                            if entry.value is not None and is_exact(entry.value)
                            else None,
                            "error": entry.error,
                        }
                        for entry in report.entries
                    ],
                }
            )
        text = (
            json.dumps(
                {
                    "input": args.input,
                    "exact": str(exact),
                    "exact_float": float(exact),
                    "sections": sections,
                },
                indent=2,
            )
            + "\n"
        )
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "kind", "value", "clamped", "exact", "pass"])
        for report, (a, rho) in zip(reports, pairs):
            suffix = "" if (a, rho) == (1, 1) else f"[a={a} rho={rho}]"
            for entry in report.entries:
                display = shown(entry.value, entry.clamped)
                writer.writerow(
                    [
                        entry.name + suffix,
                        entry.kind,
                        "" if display is None else format_number(display),
                        "" if entry.clamped is None else format_number(entry.clamped),
                        format_number(exact),
                        "yes" if entry.passed else "no",
                    ]
                )
        text = buffer.getvalue()
    else:
        blocks = [
            f"input: {args.input}",
            f"exact union probability: {exact} ({format_number(exact)})",
        ]
        for report, (a, rho) in zip(reports, pairs):
            rows = []
            for entry in report.entries:
                display = shown(entry.value, entry.clamped)
                rows.append(
                    [
                        entry.name,
                        entry.kind,
                        "" if display is None else format_number(display),
                        "" if entry.clamped is None else format_number(entry.clamped),
                        format_number(exact),
                        "yes" if entry.passed else "no",
                        entry.error or "",
                    ]
                )
            blocks.append(
                f"\na={_number_doc(a)} rho={_number_doc(rho)}\n"
                + _render_table(
                    ("name", "kind", "value", "clamped", "exact", "pass", "note"),
                    rows,
                )
            )
        text = "\n".join(blocks) + "\n" if not blocks[-1].endswith("\n") else "\n".join(blocks)
    write_text(args.output, text)
    return EXIT_OK if all(report.all_pass for report in reports) else EXIT_VIOLATION


# -------------------------------------------------------------- generate


def run_generate(args: argparse.Namespace) -> int:
    try:
        system = random_system(args.seed, args.events, args.atoms, args.profile)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    write_text(args.output, serialize_system(system))
    return EXIT_OK


# -------------------------------------------------------------------- bc


def _build_model(args: argparse.Namespace):
    probabilities = args.p or []
    if args.model == "explicit":
        if args.input is None:
            raise CliInputError("--model explicit requires --input")
        return ExplicitSequence(load_system(args.input))
    if not probabilities:
        raise CliInputError(f"--model {args.model} requires --p")
    try:
        if args.model == "independent":
            if len(probabilities) == 1:
                return IndependentSequence(probabilities[0])
            return IndependentSequence(probabilities)
        if args.model == "geometric":
            if len(probabilities) != 1:
                raise CliInputError("--model geometric takes exactly one --p")
            ratio = probabilities[0]
            if not 0 <= ratio < 1:
                raise CliInputError("geometric ratio must satisfy 0 <= p < 1")
            return IndependentSequence(lambda k: ratio**k)
        if len(probabilities) != 1:
            raise CliInputError("--model identical takes exactly one --p")
        return IdenticalSequence(probabilities[0])
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc


def run_bc(args: argparse.Namespace) -> int:
    model = _build_model(args)
    horizons = sorted(set(args.n))
    rows = []
    for n in horizons:
        try:
            lower = bc_lower_estimate(model, n)
            upper = bc_upper_estimate(model, args.m, n)
            ratio = kochen_stone_ratio(model, n)
        except ValueError as exc:
            raise CliInputError(str(exc)) from exc
        rows.append(
            {
                "n": n,
                "m": args.m,
                "lower": lower.value,
                "lower_condition": lower.condition_value,
                "upper": upper.value,
                "upper_window": upper.window_bound,
                "upper_condition": upper.condition_value,
                "kochen_stone": ratio,
            }
        )
    columns = (
        "n",
        "m",
        "lower",
        "lower_condition",
        "upper",
        "upper_window",
        "upper_condition",
        "kochen_stone",
    )
    if args.format == "json":
        text = (
            json.dumps(
                {
                    "model": args.model,
                    "rows": [
                        {
                            key: row[key]
                            if isinstance(row[key], int)
                            else float(row[key])
                            for key in columns
                        }
                        for row in rows
                    ],
                },
                indent=2,
            )
            + "\n"
        )
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                [
                    str(row["n"]),
                    str(row["m"]),
                    *(format_number(row[key]) for key in columns[2:]),
                ]
            )
        text = buffer.getvalue()
    else:
        text = _render_table(
            columns,
            [
                [
                    str(row["n"]),
                    str(row["m"]),
                    *(format_number(row[key]) for key in columns[2:]),
                ]
                for row in rows
            ],
        )
    write_text(args.output, text)
    return EXIT_OK


# -------------------------------------------------------------- selftest

S2_WEIGHTS = ("1/4", "1/4", "1/4", "1/4")
S2_EVENTS = ((0, 1), (0, 2))
S3_WEIGHTS = ("1/10", "1/5", "1/4", "3/20", "1/5", "1/10")
S3_EVENTS = ((0, 1, 2), (1, 3), (2, 3, 4))


def reference_system(name: str) -> EventSystem:
    """The two small systems used by the test suites: "s2" is a pair of
    independent fair events on four atoms, "s3" is a three-event system on
    six atoms with union probability 9/10."""
    if name == "s2":
        return build_system(S2_WEIGHTS, S2_EVENTS)
    if name == "s3":
        return build_system(S3_WEIGHTS, S3_EVENTS)
    raise ValueError(f"unknown reference system {name!r}")


def _sharpness_trial(rng: random.Random) -> str | None:
    """One sharpness case: a vector supported on a bound's own index window
    must achieve the bound exactly. Returns an error string on failure."""
    a = rng.choice((1, 2))
    rho = rng.choice((1, 2))
    pattern = rng.choice(("lower_ell2", "upper_ell2", "lower_ell3", "upper_ell3"))
    if pattern == "lower_ell2":
        n = rng.randint(2, 9)
        m = rng.randint(2, n)
        window, ell = (m - 1, m), 2
    elif pattern == "upper_ell2":
        n = rng.randint(2, 9)
        window, ell = (1, n), 2
    elif pattern == "lower_ell3":
        n = rng.randint(3, 9)
        m = rng.randint(2, n - 1)
        window, ell = (m - 1, m, n), 3
    else:
        n = rng.randint(3, 9)
        m = rng.randint(3, n)
        window, ell = (1, m - 1, m), 3
    vector = [Fraction(0)] * n
    for index in window:
        vector[index - 1] = Fraction(rng.randint(0, 8), rng.randint(1, 9))
    params = ExponentParams(a, rho, ell, n)
    moments = MomentVector.from_vector(vector, params)
    if pattern == "lower_ell2":
        bound = lower_bound_two_moments(moments)
    elif pattern == "upper_ell2":
        bound = upper_bound_two_moments(moments)
    elif pattern == "lower_ell3":
        bound = lower_bound_three_moments(moments)
    else:
        bound = upper_bound_three_moments(moments)
    total = sum(vector)
    if bound != total:
        return (
            f"{pattern} a={a} rho={rho} n={n} window={window}: "
            f"bound {bound} != exact sum {total}"
        )
    return None


def run_selftest(args: argparse.Namespace) -> int:
    failures: list[str] = []
    lines: list[str] = []
    rng = random.Random(args.seed)

    exact_hits = 0
    for _ in range(args.sharpness):
        problem = _sharpness_trial(rng)
        if problem is None:
            exact_hits += 1
        else:
            failures.append(f"sharpness: {problem}")
    lines.append(f"sharpness: {exact_hits}/{args.sharpness} exact equalities")

    violations = 0
    for i in range(args.systems):
        system = random_system(
            args.seed * 1_000 + i,
            rng.randint(1, 6),
            rng.randint(1, 64),
            PROFILES[i % len(PROFILES)],
        )
        for a, rho in ((1, 1), (2, 1)):
            report = compare_bounds(system, a, rho)
            for entry in report.entries:
                if not entry.passed:
                    violations += 1
                    failures.append(
                        f"sandwich: seed {args.seed * 1_000 + i} a={a} rho={rho} "
                        f"{entry.name}: value {entry.value} vs exact {report.exact}"
                        + (f" ({entry.error})" if entry.error else "")
                    )
    lines.append(
        f"sandwich: {args.systems} systems x 2 exponent sections, "
        f"{violations} violations"
    )

    s2 = reference_system("s2")
    s3 = reference_system("s3")
    constants: list[tuple[str, Number, Fraction]] = [
        ("s2 chung_erdos", chung_erdos(s2), Fraction(2, 3)),
        ("s2 de_caen", de_caen(s2), Fraction(2, 3)),
        ("s2 kat", kat_bound(s2), Fraction(3, 4)),
        ("s2 per-event lower three", union_lower_three(s2), Fraction(3, 4)),
        ("s2 per-event upper three", union_upper_three(s2), Fraction(3, 4)),
        ("s3 de_caen", de_caen(s3), Fraction(67, 80)),
        ("s3 kat", kat_bound(s3), Fraction(9, 10)),
        (
            "s3 occupancy lower two",
            lower_bound_two_moments(occupancy_moment_vector(s3, 1, 1, 2)),
            Fraction(9, 10),
        ),
        (
            "s3 occupancy lower three",
            lower_bound_three_moments(occupancy_moment_vector(s3, 1, 1, 3)),
            Fraction(9, 10),
        ),
        (
            "s3 occupancy upper three",
            upper_bound_three_moments(occupancy_moment_vector(s3, 1, 1, 3)),
            Fraction(9, 10),
        ),
        (
            "s3 occupancy upper two",
            upper_bound_two_moments(occupancy_moment_vector(s3, 1, 1, 2)),
            Fraction(11, 10),
        ),
    ]
    hit = 0
    for label, got, want in constants:
        if got == want:
            hit += 1
        else:
            failures.append(f"constant: {label} = {got}, expected {want}")
    lines.append(f"worked constants: {hit}/{len(constants)} match")

    sample = random_system(args.seed, 3, 12, "dense")
    if serialize_system(sample) == serialize_system(
        random_system(args.seed, 3, 12, "dense")
    ):
        lines.append("round trip: generation is deterministic")
    else:
        failures.append("round trip: repeated generation differed")

    if args.inject_violation:
        report = compare_bounds(s2)
        entry = report.entries[0]
        corrupted = (entry.value or Fraction(0)) + 1  # deliberate off-by-one
        if not corrupted <= report.exact:
            failures.append(
                f"injected violation detected: corrupted {entry.name} "
                f"= {corrupted} exceeds exact {report.exact}"
            )

    for line in lines:
        print(line)
    for failure in failures:
        print(f"FAIL {failure}")
    print(f"selftest: {'FAIL' if failures else 'PASS'}")
    return EXIT_VIOLATION if failures else EXIT_OK


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="unionbounds",
        description="Sharp moment bounds for unions of events.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    bounds = commands.add_parser(
        "bounds", help="evaluate the bound report for a JSON event system"
    )
    bounds.add_argument("--input", required=True, help="event-system JSON file")
    bounds.add_argument("--output", default=None, help="output file (default stdout)")
    bounds.add_argument("--format", choices=FORMATS, default="table")
    bounds.add_argument(
        "--a",
        action="append",
        type=parse_number,
        help="exponent a; repeat with --rho for extra report sections",
    )
    bounds.add_argument(
        "--rho", action="append", type=parse_number, help="exponent rho"
    )
    bounds.add_argument(
        "--clamp",
        action="store_true",
        help="show values clamped into [0, 1] in the value column",
    )
    bounds.set_defaults(func=run_bounds)

    generate = commands.add_parser(
        "generate", help="write a seed-deterministic random event system"
    )
    generate.add_argument("--seed", type=int, required=True)
    generate.add_argument("--events", type=int, default=3)
    generate.add_argument("--atoms", type=int, default=16)
    generate.add_argument("--profile", choices=PROFILES, default="dense")
    generate.add_argument("--output", default=None)
    generate.set_defaults(func=run_generate)

    bc = commands.add_parser(
        "bc", help="tabulate finite-horizon limsup estimators"
    )
    bc.add_argument("--model", choices=MODELS, required=True)
    bc.add_argument(
        "--p",
        action="append",
        type=parse_number,
        help="event probability; repeat to give a 1-based sequence",
    )
    bc.add_argument("--input", default=None, help="system file for --model explicit")
    bc.add_argument(
        "--n",
        action="append",
        type=int,
        required=True,
        help="horizon; repeat for a grid",
    )
    bc.add_argument("--m", type=int, default=1, help="window start (default 1)")
    bc.add_argument("--format", choices=FORMATS, default="table")
    bc.add_argument("--output", default=None)
    bc.set_defaults(func=run_bc)

    selftest = commands.add_parser(
        "selftest", help="run the built-in sharpness and sandwich suites"
    )
    selftest.add_argument("--seed", type=int, default=20260814)
    selftest.add_argument("--sharpness", type=int, default=200)
    selftest.add_argument("--systems", type=int, default=40)
    selftest.add_argument(
        "--inject-violation", action="store_true", help=argparse.SUPPRESS
    )
    selftest.set_defaults(func=run_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
