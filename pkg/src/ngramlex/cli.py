"""Command-line front end: ingest raw 1-gram files into snapshots and
emit growth, share, window, fit, model, and simulation outputs as
CSV/JSON figure data."""
from __future__ import annotations

import argparse
import itertools
import json
import shlex
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DataError, DomainError, EmptyRange, EmptyTable
from .fit import (
    LS_LOGLOG,
    MLE_MULTINOMIAL,
    fit_powerlaw_ls,
    fit_report,
    fit_zipf_mle,
    rank_table,
)
from .growth import (
    DEFAULT_WINDOW_YEARS,
    FunctionWordList,
    content_share,
    function_word_share,
    growth_points,
    sliding_heaps,
)
from .ingest import (
    SNAPSHOT_HEADER_PREFIX,
    FilterConfig,
    FrequencyTable,
    IngestReport,
    build_year_tables,
    open_text_auto,
    read_records,
    read_snapshot_file,
    write_snapshot_file,
)
from .model import (
    ModelConfig,
    ProbabilityVector,
    geometric_grid,
    load_probability_file,
    log_slopes,
    model_growth_curve,
    zipf_probs,
)
from .oracle import mc_expected_vocab

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the exit-code contract
    # reserves 2 for data errors, so route usage failures through 1
    def error(self, message):
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _provenance(argv: list[str]) -> str:
    return f"# ngramlex {__version__} | ngramlex {shlex.join(argv)}"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _emit_json(payload: dict, argv: list[str], output: str | None) -> None:
    payload = dict(payload)
    payload["provenance"] = {
        "tool": f"ngramlex {__version__}",
        "command": f"ngramlex {shlex.join(argv)}",
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", output)


def _parse_pair(text: str, what: str, conv, sep: str = ":") -> tuple:
    parts = text.split(sep)
    if len(parts) != 2:
        raise _UsageError(f"{what} must look like A{sep}B, got {text!r}")
    try:
        lo, hi = conv(parts[0]), conv(parts[1])
    except ValueError:
        raise _UsageError(f"{what} has non-numeric bounds: {text!r}") from None
    if hi < lo:
        raise _UsageError(f"{what} upper bound below lower bound: {text!r}")
    return lo, hi


def _load_tables(paths: list[str]) -> list[FrequencyTable]:
    files: list[Path] = []
    for p in paths:
        pa = Path(p)
        if pa.is_dir():
            files.extend(sorted(pa.glob("*.tsv")))
        else:
            files.append(pa)
    if not files:
        raise EmptyRange("no snapshot files found in the given inputs")
    return [read_snapshot_file(f) for f in files]


def _filter_cfg(args) -> FilterConfig:
    return FilterConfig(ascii_strict=getattr(args, "ascii_strict", False))


def _resolve_source(args) -> tuple[ProbabilityVector, FrequencyTable | None]:
    """Probability vector from --input (snapshot or probability file) or
    from a synthetic --zipf-beta/--zipf-w pair."""
    wants_zipf = args.zipf_beta is not None or args.zipf_w is not None
    if wants_zipf:
        if args.input:
            raise _UsageError("choose either --input or --zipf-beta/--zipf-w, not both")
        if args.zipf_beta is None or args.zipf_w is None:
            raise _UsageError("--zipf-beta and --zipf-w must be given together")
        return zipf_probs(args.zipf_beta, args.zipf_w), None
    if not args.input:
        raise _UsageError("a probability source is required: --input or --zipf-beta/--zipf-w")
    if len(args.input) != 1:
        raise _UsageError("exactly one --input file is expected here")
    path = Path(args.input[0])
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith(SNAPSHOT_HEADER_PREFIX):
        table = read_snapshot_file(path)
        return ProbabilityVector.from_table(table), table
    return load_probability_file(path), None


def _year_filtered(records, year_range, report: IngestReport):
    for rec in records:
        if year_range[0] <= rec.year <= year_range[1]:
            yield rec
        else:
            report.records_rejected += 1


def cmd_ingest(args, argv: list[str]) -> int:
    cfg = _filter_cfg(args)
    report = IngestReport()
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)

    streams = []
    handles = []
    for p in args.input:
        fh = open_text_auto(p)
        handles.append(fh)
        streams.append(read_records(fh, strict=args.strict, report=report))
    records = itertools.chain.from_iterable(streams)
    if args.years is not None:
        records = _year_filtered(records, args.years, report)
    try:
        tables = build_year_tables(records, cfg, report)
    finally:
        for fh in handles:
            fh.close()

    paths = {}
    for year in sorted(tables):
        path = write_snapshot_file(tables[year], out_dir / f"y{year}.tsv")
        paths[str(year)] = str(path)
    payload = report.to_dict()
    payload["snapshots"] = paths
    _emit_json(payload, argv, None)
    return EXIT_OK


def cmd_growth(args, argv: list[str]) -> int:
    curve = growth_points(_load_tables(args.input), args.years)
    lines = [_provenance(argv), "year,L,N"]
    lines += [f"{y},{l},{n}" for y, l, n in curve.points()]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_fwshare(args, argv: list[str]) -> int:
    tables = _load_tables(args.input)
    if args.years is not None:
        tables = [t for t in tables if args.years[0] <= t.year <= args.years[1]]
    if not tables:
        raise EmptyRange("no tables in the requested year range")
    fwl = FunctionWordList.from_file(args.fwlist, _filter_cfg(args))
    lines = [_provenance(argv), "year,fw_share,zeta"]
    for t in sorted(tables, key=lambda t: t.year):
        share = function_word_share(t, fwl)
        lines.append(f"{t.year},{_fmt(share)},{_fmt(content_share(t, fwl))}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_window(args, argv: list[str]) -> int:
    curve = growth_points(_load_tables(args.input), args.years)
    series = sliding_heaps(curve, args.window)
    for center, reason in series.skipped:
        print(f"skipped window centered {center}: {reason}", file=sys.stderr)
    lines = [_provenance(argv), "center_year,k,intercept,n_points"]
    lines += [f"{y},{_fmt(k)},{_fmt(c)},{n}" for y, k, c, n in series.rows()]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _read_points_csv(path: str) -> np.ndarray:
    """(x, y) rows from a CSV; growth CSVs contribute their L,N columns."""
    rows = []
    cols = (0, 1)
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            try:
                rows.append(tuple(float(fields[c]) for c in cols))
            except ValueError:
                # header row; growth files carry (year, L, N)
                if "L" in fields and "N" in fields:
                    cols = (fields.index("L"), fields.index("N"))
                continue
            except IndexError:
                raise DataError(f"short CSV row in {path}: {line!r}") from None
    if not rows:
        raise DataError(f"no data rows in {path}")
    return np.asarray(rows, dtype=np.float64)


def cmd_fit(args, argv: list[str]) -> int:
    if len(args.input) != 1:
        raise _UsageError("exactly one --input file is expected here")
    path = args.input[0]
    if args.method == "ls":
        fit = fit_powerlaw_ls(_read_points_csv(path), args.lrange)
    else:
        if args.ranks is None:
            raise _UsageError("--method mle requires --ranks LO:HI")
        table = read_snapshot_file(path)
        fit = fit_zipf_mle(rank_table(table), args.ranks[0], args.ranks[1])
    _emit_json(fit_report(fit), argv, args.output)
    return EXIT_OK


def _eq3_config(args, probs: ProbabilityVector, table: FrequencyTable | None) -> ModelConfig:
    explicit = args.zeta is not None or args.nserv is not None
    if args.fwlist is not None and explicit:
        raise _UsageError("give either --fwlist or explicit --zeta/--nserv, not both")
    if explicit:
        if args.zeta is None or args.nserv is None:
            raise _UsageError("--zeta and --nserv must be given together")
        return ModelConfig(content_probs=probs, n_serv=args.nserv, zeta=args.zeta)
    if args.fwlist is None:
        raise _UsageError("--eq 3 needs --fwlist or --zeta/--nserv")
    if table is None:
        raise _UsageError("--fwlist derivation needs a snapshot --input")
    fwl = FunctionWordList.from_file(args.fwlist, _filter_cfg(args))
    n_serv = sum(1 for tok in table.counts if tok in fwl)
    zeta = content_share(table, fwl)
    content = {tok: c for tok, c in table.counts.items() if tok not in fwl}
    if not content:
        raise EmptyTable("no content words left after removing the function words")
    weights = np.fromiter(content.values(), dtype=np.float64, count=len(content))
    return ModelConfig(
        content_probs=ProbabilityVector.from_weights(weights),
        n_serv=n_serv,
        zeta=zeta,
    )


def cmd_model(args, argv: list[str]) -> int:
    probs, table = _resolve_source(args)
    if args.lrange is None:
        raise _UsageError("--lrange 1eA:1eB is required")
    grid = geometric_grid(args.lrange[0], args.lrange[1], args.grid_per_decade)
    source = _eq3_config(args, probs, table) if args.eq == 3 else probs
    points = model_growth_curve(source, grid)
    Ls = np.asarray([p[0] for p in points])
    Ns = np.asarray([p[1] for p in points])
    ks = log_slopes(Ls, Ns) if len(points) >= 2 and np.all(Ns > 0.0) else None
    lines = [_provenance(argv), "L,N,k"]
    for i, (l, n) in enumerate(points):
        k = _fmt(ks[i]) if ks is not None else ""
        lines.append(f"{_fmt(l)},{_fmt(n)},{k}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_simulate(args, argv: list[str]) -> int:
    probs, _ = _resolve_source(args)
    est = mc_expected_vocab(probs, args.tokens, args.trials, args.seed)
    _emit_json(est.to_dict(), argv, args.output)
    return EXIT_OK


def _add_source_flags(sp) -> None:
    sp.add_argument("--input", nargs="+", default=None, help="snapshot or probability file")
    sp.add_argument("--zipf-beta", type=float, default=None, help="synthetic Zipf exponent")
    sp.add_argument("--zipf-w", type=int, default=None, help="synthetic Zipf vocabulary size")


def _build_parser() -> _Parser:
    parser = _Parser(prog="ngramlex", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ngramlex {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    years_kw = dict(type=lambda s: _parse_pair(s, "--years", int), default=None, metavar="A:B")

    sp = sub.add_parser("ingest", help="raw 1-gram files -> per-year snapshots + JSON report")
    sp.add_argument("--input", nargs="+", required=True, help="raw 1-gram TSV files (.gz ok)")
    sp.add_argument("--output", required=True, help="directory for snapshot files")
    sp.add_argument("--years", **years_kw)
    sp.add_argument("--strict", action="store_true", help="abort on the first malformed line")
    sp.add_argument("--ascii-strict", action="store_true", help="accept ASCII letters only")
    sp.set_defaults(handler=cmd_ingest)

    for name, handler, extra in (
        ("growth", cmd_growth, ()),
        ("fwshare", cmd_fwshare, ("fwlist",)),
        ("window", cmd_window, ("window",)),
    ):
        sp = sub.add_parser(name, help=f"snapshots -> {name} CSV")
        sp.add_argument("--input", nargs="+", required=True, help="snapshot files or directories")
        sp.add_argument("--output", default=None, help="output CSV path (default stdout)")
        sp.add_argument("--years", **years_kw)
        if "fwlist" in extra:
            sp.add_argument("--fwlist", required=True, help="function-word list file")
            sp.add_argument("--ascii-strict", action="store_true", help="accept ASCII letters only")
        if "window" in extra:
            sp.add_argument(
                "--window", type=int, default=DEFAULT_WINDOW_YEARS, help="window width in years"
            )
        sp.set_defaults(handler=handler)

    sp = sub.add_parser("fit", help="power-law fit -> JSON report")
    sp.add_argument("--method", choices=("ls", "mle"), required=True)
    sp.add_argument("--input", nargs="+", required=True, help="points CSV (ls) or snapshot (mle)")
    sp.add_argument("--output", default=None, help="output JSON path (default stdout)")
    sp.add_argument(
        "--ranks",
        type=lambda s: _parse_pair(s, "--ranks", int),
        default=None,
        metavar="LO:HI",
        help="rank window for --method mle",
    )
    sp.add_argument(
        "--lrange",
        type=lambda s: _parse_pair(s, "--lrange", float),
        default=None,
        metavar="1eA:1eB",
        help="x-range filter for --method ls",
    )
    sp.set_defaults(handler=cmd_fit)

    sp = sub.add_parser("model", help="expected-vocabulary curve -> CSV (L,N,k)")
    _add_source_flags(sp)
    sp.add_argument("--output", default=None, help="output CSV path (default stdout)")
    sp.add_argument("--eq", type=int, choices=(2, 3), default=2, help="model form")
    sp.add_argument(
        "--lrange",
        type=lambda s: _parse_pair(s, "--lrange", float),
        default=None,
        metavar="1eA:1eB",
        help="geometric L grid bounds",
    )
    sp.add_argument("--grid-per-decade", type=int, default=16, help="grid points per decade")
    sp.add_argument("--zeta", type=float, default=None, help="content-word share for --eq 3")
    sp.add_argument("--nserv", type=int, default=None, help="function-word type count for --eq 3")
    sp.add_argument("--fwlist", default=None, help="derive --eq 3 parameters from this list")
    sp.add_argument("--ascii-strict", action="store_true", help="accept ASCII letters only")
    sp.set_defaults(handler=cmd_model)

    sp = sub.add_parser("simulate", help="Monte Carlo distinct-count estimate -> JSON")
    _add_source_flags(sp)
    sp.add_argument("--output", default=None, help="output JSON path (default stdout)")
    sp.add_argument("--tokens", type=int, required=True, help="text length L to sample")
    sp.add_argument("--trials", type=int, default=1000, help="independent replicas")
    sp.add_argument("--seed", type=int, default=0, help="base stream seed")
    sp.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            parser.print_usage(sys.stderr)
            print("ngramlex: error: a command is required", file=sys.stderr)
            return EXIT_USAGE
        return args.handler(args, argv)
    except _UsageError as exc:
        print(f"ngramlex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"ngramlex: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"ngramlex: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"ngramlex: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
