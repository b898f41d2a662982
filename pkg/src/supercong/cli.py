"""Batch driver: configuration, parallel prime scan, report emission.

Records are emitted one per (statement, prime, parameter), sorted, to JSON
lines (canonical) or CSV.  Identical configuration, including the seed,
produces byte-identical reports regardless of the worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import identities
from .congruences import (
    CONJECTURE,
    FAIL,
    PASS,
    STATEMENTS,
    StatementChecker,
    default_parameters,
    ReportRecord,
)
from .padic_core import DEFAULT_MAX_MODULUS, sieve_primes

ENV_PREFIX = "SUPERCONG_"

#: Hard ceiling used with --force in place of the default modulus bound.
FORCED_MAX_MODULUS = 2**63

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class ConfigError(Exception):
    pass


@dataclass
class ScanConfig:
    lo: int
    hi: int
    statements: list[str]
    run_identities: bool
    seed: int = 0
    jobs: int = 1
    out: str = "-"
    fmt: str = "jsonl"
    strict: bool = False
    force: bool = False
    n_max: int = 100
    power: int | None = None
    file_params: list[Fraction] | None = field(default=None)

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ConfigError(f"empty prime range {self.lo}..{self.hi}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.fmt not in ("jsonl", "csv"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        unknown = [s for s in self.statements if s not in STATEMENTS]
        if unknown:
            raise ConfigError(f"unknown statements: {', '.join(unknown)}")


def parse_params(path: str) -> list[Fraction]:
    """Read one fraction per line (num/den or int); '#' comments and blank
    lines are ignored.  Malformed lines are reported with their number."""
    params = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            text = raw.split("#", 1)[0].strip().replace("−", "-")
            if not text:
                continue
            try:
                f = Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"{path}:{lineno}: bad parameter {text!r}: {exc}") from None
            params.append(f)
    return params


def resolve_statements(selection: str) -> tuple[list[str], bool]:
    """Expand a comma-separated list of ids and group names.

    Returns the congruence statement ids plus a flag for the identity sweep.
    """
    ids: list[str] = []
    run_identities = False
    for token in selection.split(","):
        token = token.strip()
        if not token:
            continue
        if token == "all":
            ids.extend(STATEMENTS)
            run_identities = True
        elif token == "theorems":
            ids.extend(s.id for s in STATEMENTS.values() if s.kind != CONJECTURE)
        elif token == "conjectures":
            ids.extend(s.id for s in STATEMENTS.values() if s.kind == CONJECTURE)
        elif token == "identities":
            run_identities = True
        else:
            ids.append(token)
    deduped = list(dict.fromkeys(ids))
    unknown = [s for s in deduped if s not in STATEMENTS]
    if unknown:
        raise ConfigError(f"unknown statements: {', '.join(unknown)}")
    return deduped, run_identities


def _scan_prime(task: tuple) -> list[ReportRecord]:
    p, stmt_ids, file_params, seed, power, max_modulus = task
    checker = StatementChecker(p, max_modulus=max_modulus)
    records = []
    for stmt_id in stmt_ids:
        st = STATEMENTS[stmt_id]
        if st.takes_param:
            params = file_params if file_params is not None else default_parameters(p, seed)
            for a in params:
                records.append(checker.check(stmt_id, a, power=power))
        else:
            records.append(checker.check(stmt_id, power=power))
    return records


def _identity_records(n_max: int) -> list[ReportRecord]:
    records = []
    evens = range(0, n_max + 1, 2)
    for ident, ns in (
        ("B8", evens),
        ("B9", evens),
        ("B17", evens),
        ("B18", evens),
        ("GAUSS_HALF", evens),
        ("CLAUSEN", range(n_max + 1)),
    ):
        for n in ns:
            chk = identities._CHECKERS[ident](n)
            records.append(
                ReportRecord(
                    ident, None, None, Fraction(n), str(chk.lhs), str(chk.rhs),
                    PASS if chk.ok else FAIL,
                )
            )
    rec_report = identities.check_recurrences(n_max)
    failure = rec_report.first_failure
    records.append(
        ReportRecord(
            "RECURRENCES",
            None,
            None,
            Fraction(n_max),
            "0" if failure is None else f"{failure.identity}[{failure.n}]={failure.lhs}",
            "0",
            PASS if rec_report.passed else FAIL,
        )
    )
    return records


def _record_sort_key(record: ReportRecord):
    return (
        record.statement,
        record.p if record.p is not None else 0,
        record.a is not None,
        record.a if record.a is not None else Fraction(0),
    )


def collect_records(config: ScanConfig) -> list[ReportRecord]:
    records: list[ReportRecord] = []
    if config.statements:
        primes = sieve_primes(config.lo, config.hi)
        max_modulus = FORCED_MAX_MODULUS if config.force else DEFAULT_MAX_MODULUS
        tasks = [
            (p, tuple(config.statements), config.file_params, config.seed, config.power, max_modulus)
            for p in primes
        ]
        if config.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                for batch in pool.map(_scan_prime, tasks):
                    records.extend(batch)
        else:
            for task in tasks:
                records.extend(_scan_prime(task))
    if config.run_identities:
        records.extend(_identity_records(config.n_max))
    records.sort(key=_record_sort_key)
    return records


def write_records(records: list[ReportRecord], fmt: str, stream) -> None:
    if fmt == "jsonl":
        for record in records:
            stream.write(json.dumps(record.to_dict()) + "\n")
    else:
        columns = ["statement", "p", "k", "a_num", "a_den", "lhs", "rhs", "verdict", "skip_reason"]
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            row = record.to_dict()
            writer.writerow(["" if row[c] is None else row[c] for c in columns])


def summarize(records: list[ReportRecord]) -> str:
    counts: dict[str, dict[str, int]] = {}
    for record in records:
        slot = counts.setdefault(record.statement, {"PASS": 0, "FAIL": 0, "SKIPPED": 0})
        slot[record.verdict] += 1
    lines = [f"{'statement':<12} {'PASS':>7} {'FAIL':>7} {'SKIPPED':>8}"]
    total = {"PASS": 0, "FAIL": 0, "SKIPPED": 0}
    for name in sorted(counts):
        slot = counts[name]
        lines.append(f"{name:<12} {slot['PASS']:>7} {slot['FAIL']:>7} {slot['SKIPPED']:>8}")
        for key in total:
            total[key] += slot[key]
    lines.append(f"{'total':<12} {total['PASS']:>7} {total['FAIL']:>7} {total['SKIPPED']:>8}")
    return "\n".join(lines)


def _exit_code(records: list[ReportRecord], strict: bool) -> int:
    for record in records:
        if record.verdict != FAIL:
            continue
        stmt = STATEMENTS.get(record.statement)
        conjectural = stmt is not None and stmt.kind == CONJECTURE
        if not conjectural or strict:
            return EXIT_FAIL
    return EXIT_OK


def run_scan(config: ScanConfig) -> int:
    """Execute the configured checks, write the report, print the summary."""
    if config.statements and not config.force and config.hi > 1000:
        powers = {config.power} if config.power else {STATEMENTS[s].power for s in config.statements}
        if 3 in powers:
            raise ConfigError(
                "power-3 scans above p=1000 are refused without --force "
                "(Gamma evaluation is cubic in p)"
            )
    records = collect_records(config)
    if config.out == "-":
        write_records(records, config.fmt, sys.stdout)
        print(summarize(records), file=sys.stderr)
    else:
        with open(config.out, "w", encoding="utf-8", newline="") as handle:
            write_records(records, config.fmt, handle)
        print(summarize(records))
        print(f"report: {config.out} ({len(records)} records)")
    return _exit_code(records, config.strict)


def _env_default(name: str, fallback):
    return os.environ.get(ENV_PREFIX + name, fallback)


def _env_flag(name: str) -> bool:
    return os.environ.get(ENV_PREFIX + name, "").lower() in ("1", "true", "yes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercong",
        description="Verify truncated hypergeometric congruences and the exact "
        "identities behind them.  Flags can be preset via SUPERCONG_* "
        "environment variables (e.g. SUPERCONG_SEED).",
    )
    parser.add_argument("--primes", default=_env_default("PRIMES", "5..97"),
                        help="prime range LO..HI (default %(default)s)")
    parser.add_argument("--power", type=int, choices=(1, 2, 3),
                        default=_env_default("POWER", None),
                        help="override the comparison modulus power (exploratory)")
    parser.add_argument("--statements", default=_env_default("STATEMENTS", "theorems"),
                        help="comma list of statement ids, or all/theorems/conjectures/identities")
    parser.add_argument("--params", default=_env_default("PARAMS", None),
                        help="file with one parameter per line (num/den or int)")
    parser.add_argument("--seed", type=int, default=int(_env_default("SEED", 0)),
                        help="seed of the fraction sampler (default %(default)s)")
    parser.add_argument("--jobs", type=int, default=int(_env_default("JOBS", 1)),
                        help="worker processes, partitioned by prime")
    parser.add_argument("--out", default=_env_default("OUT", "-"),
                        help="report path, '-' for stdout (default)")
    parser.add_argument("--format", dest="fmt", choices=("jsonl", "csv"),
                        default=_env_default("FORMAT", "jsonl"))
    parser.add_argument("--strict", action="store_true", default=_env_flag("STRICT"),
                        help="conjecture failures also flip the exit status")
    parser.add_argument("--force", action="store_true", default=_env_flag("FORCE"),
                        help="lift the runtime and modulus guardrails")
    parser.add_argument("--n-max", type=int, default=int(_env_default("N_MAX", 100)),
                        help="sweep bound for identity checks (default %(default)s)")
    return parser


def config_from_args(args: argparse.Namespace) -> ScanConfig:
    text = args.primes.replace(" ", "")
    if ".." not in text:
        raise ConfigError(f"bad prime range {args.primes!r}, expected LO..HI")
    lo_text, hi_text = text.split("..", 1)
    try:
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ConfigError(f"bad prime range {args.primes!r}, expected LO..HI") from None
    statements, run_identities = resolve_statements(args.statements)
    file_params = None
    if args.params:
        # keep each (statement, p, a) triple unique even if the file repeats values
        file_params = list(dict.fromkeys(parse_params(args.params)))
    power = int(args.power) if args.power is not None else None
    return ScanConfig(
        lo=lo,
        hi=hi,
        statements=statements,
        run_identities=run_identities,
        seed=args.seed,
        jobs=args.jobs,
        out=args.out,
        fmt=args.fmt,
        strict=args.strict,
        force=args.force,
        n_max=args.n_max,
        power=power,
        file_params=file_params,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return run_scan(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
