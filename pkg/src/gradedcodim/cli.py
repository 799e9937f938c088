"""Command-line front end: ``gradedcodim {validate,codim,cocharacter,fit,selftest}``.

Exit codes: 0 success, 1 invalid input, 2 a budget was exceeded (partial
output written, with a truncation marker row), 3 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import selftest
from .algebra import GradedAlgebraSpec, load_spec_file
from .asymptotics import as_mapping, fit, fit_rows
from .catalog import CATALOG
from .codim import (Budgets, CodimEngine, delta_from_a, height_report, lift_matches, monotonicity,
                    proper_deltas, strip_sum_violations)
from .errors import AssociativityError, BudgetExceeded, CodimError, GradingError, InvariantViolation
from .linalg import RANK_MODES
from .partitions import partitions_of

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3
BUILTIN_PREFIX = "builtin:"


@dataclass
class RunConfig:
    spec: str | None = None
    max_n: int = 5
    trunc: int | None = None          # cocharacter / a-table degree, defaults to max_n
    max_factorial_n: int = 7
    max_weight_degree: int = 10
    max_entries: int = 5_000_000
    max_rank_ops: int = 20_000_000
    out: str | None = None
    format: str = "csv"
    rank_mode: str = "modular"
    window: tuple | None = None
    sequence: str | None = None
    input: str | None = None
    start: int = 1
    non_unital: bool = False

    def validate(self) -> None:
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")
        if self.trunc is not None and self.trunc < 0:
            raise ValueError("trunc must be non-negative")
        if min(self.max_factorial_n, self.max_weight_degree, self.max_entries, self.max_rank_ops) < 1:
            raise ValueError("budgets must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.rank_mode not in RANK_MODES:
            raise ValueError(f"rank mode must be one of {RANK_MODES}")

    @property
    def budgets(self) -> Budgets:
        return Budgets(self.max_factorial_n, self.max_weight_degree, self.max_entries, self.max_rank_ops)


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window LO must not exceed HI")
    return lo, hi


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config file, then explicit flags."""
    values: dict = {}
    if getattr(args, "config", None):
        loaded = json.loads(Path(args.config).read_text())
        known = {f.name for f in fields(RunConfig)}
        unknown = set(loaded) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        values.update(loaded)
        if isinstance(values.get("window"), str):
            values["window"] = parse_window(values["window"])
        elif values.get("window") is not None:
            values["window"] = tuple(values["window"])
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None and flag is not False:
            values[f.name] = flag
    config = RunConfig(**values)
    config.validate()
    return config


def resolve_spec(name: str) -> GradedAlgebraSpec:
    if name.startswith(BUILTIN_PREFIX):
        key = name[len(BUILTIN_PREFIX):]
        if key not in CATALOG:
            raise ValueError(f"unknown built-in spec {key!r}; choose from {sorted(CATALOG)}")
        return CATALOG[key]()
    return load_spec_file(name)


# output helpers

class Output:
    """Writes named tables to files under ``out`` or to stdout, in csv or json."""

    def __init__(self, out: str | None, fmt: str, stream=None):
        self.dir = Path(out) if out else None
        self.fmt = fmt
        self.stream = stream or sys.stdout
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)

    def table(self, name: str, header: list[str], rows: list[list]) -> None:
        if self.fmt == "json":
            text = json.dumps([dict(zip(header, (str(v) for v in row))) for row in rows], indent=2) + "\n"
            suffix = ".json"
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(header)
            writer.writerows([[str(v) for v in row] for row in rows])
            text, suffix = buf.getvalue(), ".csv"
        self._emit(name + suffix, text)

    def document(self, name: str, obj) -> None:
        self._emit(name, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def _emit(self, filename: str, text: str) -> None:
        if self.dir:
            (self.dir / filename).write_text(text)
        else:
            self.stream.write(f"# {filename}\n{text}")

    def say(self, message: str) -> None:
        # with files on disk the verdicts go to stdout; otherwise they are comment lines
        print(message if self.dir else f"# {message}", file=self.stream)


def _composition_label(comp) -> str:
    return ";".join(str(x) for x in comp)


# subcommands

def cmd_validate(config: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    try:
        spec = resolve_spec(config.spec)
    except (AssociativityError, GradingError) as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=stream)
        print(f"witness: {exc.witness}", file=stream)
        return EXIT_INVALID
    except CodimError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=stream)
        return EXIT_INVALID
    print(spec.describe(), file=stream)
    return EXIT_OK


def cmd_codim(config: RunConfig, stream=None) -> int:
    spec = resolve_spec(config.spec)
    engine = CodimEngine(spec, config.budgets, config.rank_mode)
    table = engine.codim_table(config.max_n)
    out = Output(config.out, config.format, stream)
    rows = [[n, r.value] for n, r in sorted(table.rows.items())]
    blocks = [[n, _composition_label(b.composition), b.value]
              for n, r in sorted(table.rows.items()) for b in r.blocks]
    if table.truncated_at is not None:
        rows.append([table.truncated_at, "truncated"])
        blocks.append([table.truncated_at, "truncated", "truncated"])
    out.table("codim", ["n", "c_n"], rows)
    out.table("blocks", ["n", "composition", "block"], blocks)
    out.say(f"group order for compositions: {';'.join(map(str, table.group_order))}")
    ok, _, message = monotonicity(table, spec)
    out.say(f"monotonicity: {message}")
    if table.truncated_at is not None:
        out.say(f"truncated at n={table.truncated_at}: {table.truncation_reason}")
        return EXIT_BUDGET
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_cocharacter(config: RunConfig, stream=None) -> int:
    spec = resolve_spec(config.spec)
    engine = CodimEngine(spec, config.budgets, config.rank_mode)
    out = Output(config.out, config.format, stream)
    top = config.trunc if config.trunc is not None else config.max_n
    m_rows, truncated = {}, None
    for n in range(top + 1):
        try:
            m_rows[n] = engine.cocharacter(n)
        except BudgetExceeded as exc:
            truncated = (n, str(exc))
            break
    rows = [[n, str(lam), row.multiplicities.get(lam, 0)] for n, row in m_rows.items() for lam in partitions_of(n)]
    if truncated:
        rows.append([truncated[0], "truncated", "truncated"])
    out.table("cocharacter", ["n", "lambda", "m_lambda"], rows)
    status = EXIT_OK
    height, within = height_report(m_rows.values(), spec.dim)
    out.say(f"height bound: support height {height} <= dim {spec.dim}: {'pass' if within else 'FAIL'}")
    if not within:
        status = EXIT_INVARIANT
    degrees = max(m_rows) if m_rows else -1
    if not spec.is_unital:
        out.say("a and delta tables skipped: NotUnital (the algebra has no unit)")
    elif degrees >= 0:
        a_rows = engine.a_table(degrees, {n: r.multiplicities for n, r in m_rows.items()})
        out.table("a_multiplicities", ["n", "lambda", "a_lambda"],
                  [[n, str(lam), a_rows[n].get(lam, 0)] for n in range(degrees + 1) for lam in partitions_of(n)])
        bad = strip_sum_violations(a_rows, {n: r.multiplicities for n, r in m_rows.items()})
        out.say(f"m_lambda = sum over L_lambda of a_mu: {'pass' if not bad else 'FAIL ' + str(bad[:3])}")
        c = [1] + [engine.graded_codim(n).value for n in range(1, degrees + 1)]
        deltas = proper_deltas(c)
        out.table("deltas", ["s", "delta_s"], [[s, d] for s, d in enumerate(deltas)])
        from_a = delta_from_a(a_rows)
        out.say(f"sum a_lambda d_lambda = delta_s: {'pass' if from_a == deltas else 'FAIL'}")
        out.say(f"c_n = sum binom(n,s) delta_s: {'pass' if lift_matches(c, deltas) else 'FAIL'}")
        if bad or from_a != deltas or not lift_matches(c, deltas):
            status = EXIT_INVARIANT
    if truncated:
        out.say(f"truncated at n={truncated[0]}: {truncated[1]}")
        return EXIT_BUDGET if status == EXIT_OK else status
    return status


def _read_sequence(config: RunConfig) -> dict:
    if config.sequence:
        values = [int(x) if x.strip().lstrip("-").isdigit() else float(x) for x in config.sequence.split(",")]
        return as_mapping(values, config.start)
    text = Path(config.input).read_text().splitlines()
    seq = {}
    for line in text:
        parts = [p.strip() for p in line.split(",")]
        if len(parts) < 2 or not parts[0].lstrip("-").isdigit() or parts[1] == "truncated":
            continue
        seq[int(parts[0])] = int(parts[1]) if parts[1].lstrip("-").isdigit() else float(parts[1])
    return seq


def cmd_fit(config: RunConfig, stream=None) -> int:
    out = Output(config.out, config.format, stream)
    unital = None
    status = EXIT_OK
    if config.sequence or config.input:
        seq = _read_sequence(config)
        unital = False if config.non_unital else None
    elif config.spec:
        spec = resolve_spec(config.spec)
        table = CodimEngine(spec, config.budgets, config.rank_mode).codim_table(config.max_n)
        seq = table.values()
        unital = spec.is_unital
        if table.truncated_at is not None:
            out.say(f"truncated at n={table.truncated_at}: {table.truncation_reason}")
            status = EXIT_BUDGET
    else:
        raise ValueError("fit needs --sequence, --input or --spec")
    result = fit(seq, config.window, unital=unital)
    out.document("fit.json", result.to_json())
    if config.format == "csv":
        out.table("fit", ["n", "c_n", "ratio", "log_resid"], [list(r) for r in fit_rows(seq, result)])
    return status


def cmd_selftest(config: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    results = selftest.run()
    print(selftest.render(results), file=stream)
    return EXIT_INVARIANT if any(r.ok is False for r in results) else EXIT_OK


COMMANDS = {"validate": cmd_validate, "codim": cmd_codim, "cocharacter": cmd_cocharacter, "fit": cmd_fit,
            "selftest": cmd_selftest}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradedcodim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig keys; flags override it")
    common.add_argument("--spec", help=f"spec JSON path, or {BUILTIN_PREFIX}NAME for {', '.join(sorted(CATALOG))}")
    common.add_argument("--max-n", dest="max_n", type=int)
    common.add_argument("--trunc", type=int, help="largest degree for cocharacter and a tables")
    common.add_argument("--max-factorial-n", dest="max_factorial_n", type=int)
    common.add_argument("--max-weight-degree", dest="max_weight_degree", type=int)
    common.add_argument("--max-entries", dest="max_entries", type=int)
    common.add_argument("--max-rank-ops", dest="max_rank_ops", type=int,
                        help="row updates allowed per elimination before giving up")
    common.add_argument("--rank-mode", dest="rank_mode", choices=RANK_MODES)
    common.add_argument("--window", type=parse_window, help="fit window LO:HI (inclusive)")
    common.add_argument("--out", help="output directory (default: print to stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    for name, helptext in (("validate", "load a spec and report whether it is valid"),
                           ("codim", "graded codimensions and composition blocks"),
                           ("cocharacter", "cocharacter multiplicities, a table and deltas"),
                           ("fit", "estimate alpha n^beta l^n"),
                           ("selftest", "run the invariant suite")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name == "fit":
            p.add_argument("--sequence", help="comma-separated c_n values")
            p.add_argument("--input", help="CSV file with n,c_n rows")
            p.add_argument("--start", type=int, help="index of the first --sequence value (default 1)")
            p.add_argument("--non-unital", dest="non_unital", action="store_true",
                           help="report alpha as an interval")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = build_config(args)
        if args.command in ("validate", "codim", "cocharacter") and not config.spec:
            raise ValueError(f"{args.command} needs --spec")
        return COMMANDS[args.command](config)
    except InvariantViolation as exc:
        print(f"invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CodimError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
