"""Command-line entry point: ``sanctiongraph {ingest,rsi,motif,network,nulltest,synth}``.

Exit codes: 0 success, 1 I/O failure, 2 bad input or parameters,
3 analytic error (named in the message).
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from pathlib import Path

from . import __version__
from ._io import csv_text, file_digest, json_text, write_atomic
from .events import link_lifecycles, read_events, summarize, write_events_jsonl
from .motifs import Bin, MotifParams, ObservationRule, campaign_table, motif_rows
from .networks import network_rows, network_table
from .null_model import (
    DEFAULT_TERMS,
    EmptyGraph,
    EmptyTerm,
    SIG_LEVEL,
    load_terms,
    permutation_test,
    report_rows,
)
from .rsi import EmptyBins, rsi_rows, rsi_series, rsi_snapshot, year_end_bins
from .synth import PAPER_ACTION_MIX, ROUNDED_ACTION_MIX, Burst, InfeasibleConfig, SynthConfig, generate
from .temporal_graph import Role, build_graph, edge_list_csv

EXIT_IO = 1
EXIT_INPUT = 2
EXIT_ANALYTIC = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _countries(text: str) -> list[str]:
    return [c.strip().upper() for c in text.split(",") if c.strip()]


def _year_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:END years, got {text!r}") from None


def _burst(text: str) -> Burst:
    try:
        country, role, year, size = text.split(":")
        return Burst(country.strip().upper(), Role(role.strip().capitalize()), int(year), int(size))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected COUNTRY:intermediate|final:YEAR:SIZE, got {text!r}"
        ) from None


def _emit_diagnostics(args, records) -> None:
    lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if not lines:
        return
    if args.diagnostics:
        with open(args.diagnostics, "a", encoding="utf-8", newline="") as fh:
            fh.write(lines)
    else:
        sys.stderr.write(lines)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from None


def _load_events(path: Path, fmt: str | None = None):
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "jsonl")
    events, errors = read_events(_read_text(path), fmt)
    if errors:
        raise CliError(EXIT_INPUT, "\n".join(f"{path}: {e}" for e in errors))
    return events


def _load_graph(args):
    events = _load_events(Path(args.dataset))
    lifecycles, warnings = link_lifecycles(events)
    g = build_graph(lifecycles, keep_unknown=args.keep_unknown)
    _emit_diagnostics(args, [w.to_record() for w in warnings])
    _emit_diagnostics(args, [d.to_record() for d in g.diagnostics])
    return g


def _manifest(args, command: str, params: dict, inputs: list[Path]) -> str:
    return json_text({
        "command": command,
        "tool": "sanctiongraph",
        "version": __version__,
        "inputs": [{"name": p.name, "digest": file_digest(p)} for p in inputs],
        "parameters": params,
    })


def _motif_params(args) -> MotifParams:
    bins = None
    if args.bins and args.bins != "yearly":
        try:
            bins = tuple(
                Bin(dt.date.fromisoformat(a), dt.date.fromisoformat(b))
                for a, b in (part.split(":") for part in args.bins.split(","))
            )
        except ValueError as exc:
            raise CliError(EXIT_INPUT, f"bad --bins value {args.bins!r}: {exc}") from None
    try:
        return MotifParams(
            delta_days=args.delta_days,
            bins=bins,
            observation_rule=ObservationRule(args.obs_rule),
            include_same_day=args.same_day == "on",
        )
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _motif_param_record(p: MotifParams) -> dict:
    return json.loads(p.to_json())


# commands


def cmd_ingest(args) -> int:
    src = Path(args.input)
    events = _load_events(src, args.format)
    events.sort(key=lambda e: (e.date, e.event_id))
    lifecycles, warnings = link_lifecycles(events)
    _emit_diagnostics(args, [w.to_record() for w in warnings])
    summary = summarize(events).to_record()
    out = Path(args.output)
    write_atomic(out / "events.jsonl", write_events_jsonl(events))
    write_atomic(out / "summary.json", json_text(summary))
    write_atomic(out / "edges.csv", csv_text(edge_list_csv(build_graph(lifecycles, keep_unknown=True))))
    write_atomic(out / "ingest.manifest.json", _manifest(args, "ingest", {"format": args.format}, [src]))
    print(json.dumps(summary, sort_keys=True))
    return 0


def cmd_rsi(args) -> int:
    g = _load_graph(args)
    countries = args.countries or g.countries()
    params = {"countries": countries, "keep_unknown": args.keep_unknown}
    if args.at:
        snap = rsi_snapshot(g, args.at)
        points = [snap[c] for c in countries if c in snap]
        params["at"] = args.at.isoformat()
    else:
        if args.bins and args.bins != "yearly":
            try:
                bins = [dt.date.fromisoformat(b) for b in args.bins.split(",")]
            except ValueError as exc:
                raise CliError(EXIT_INPUT, f"bad --bins value: {exc}") from None
        else:
            span = g.year_range()
            bins = year_end_bins(*span) if span else []
        try:
            points = [p for c in countries for p in rsi_series(g, c, bins)]
        except EmptyBins as exc:
            raise CliError(EXIT_ANALYTIC, f"EmptyBins: {exc}") from None
        except ValueError as exc:
            raise CliError(EXIT_INPUT, str(exc)) from None
        params["bins"] = [b.isoformat() for b in bins]
    out = Path(args.output)
    write_atomic(out / "rsi.csv", csv_text(rsi_rows(points)))
    write_atomic(out / "rsi.manifest.json", _manifest(args, "rsi", params, [Path(args.dataset)]))
    return 0


def cmd_motif(args) -> int:
    g = _load_graph(args)
    mp = _motif_params(args)
    table = campaign_table(g, args.countries, mp)
    out = Path(args.output)
    write_atomic(out / "motif.csv", csv_text(motif_rows(table)))
    write_atomic(out / "motif.params.json", mp.to_json() + "\n")
    params = {"countries": args.countries, "keep_unknown": args.keep_unknown, **_motif_param_record(mp)}
    write_atomic(out / "motif.manifest.json", _manifest(args, "motif", params, [Path(args.dataset)]))
    return 0


def cmd_network(args) -> int:
    g = _load_graph(args)
    at = args.at
    if at is None:
        if not len(g):
            raise CliError(EXIT_INPUT, "--at is required when the dataset has no edges")
        at = g.edges[-1].t_add
    rows = network_table(g, args.countries, at, cumulative=args.cumulative)
    out = Path(args.output)
    write_atomic(out / "network.csv", csv_text(network_rows(rows)))
    params = {
        "countries": args.countries,
        "at": at.isoformat(),
        "cumulative": args.cumulative,
        "keep_unknown": args.keep_unknown,
    }
    write_atomic(out / "network.manifest.json", _manifest(args, "network", params, [Path(args.dataset)]))
    return 0


def cmd_nulltest(args) -> int:
    g = _load_graph(args)
    mp = _motif_params(args)
    inputs = [Path(args.dataset)]
    if args.terms_file:
        try:
            terms = load_terms(args.terms_file)
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot read {args.terms_file}: {exc}") from None
        except (ValueError, KeyError) as exc:
            raise CliError(EXIT_INPUT, f"bad terms file: {exc}") from None
        inputs.append(Path(args.terms_file))
    else:
        terms = DEFAULT_TERMS
    reports = []
    skipped = []
    try:
        for c in args.countries:
            for term in terms:
                try:
                    reports.append(permutation_test(
                        g, c, term, mp, replicates=args.replicates, seed=args.seed,
                        null=args.null, workers=args.workers,
                    ))
                except EmptyTerm:
                    skipped.append(term.label)
    except EmptyGraph as exc:
        raise CliError(EXIT_ANALYTIC, f"EmptyGraph: {exc}") from None
    if not reports:
        raise CliError(EXIT_ANALYTIC, "EmptyTerm: no term intersects the data range")
    _emit_diagnostics(args, [
        {"kind": "EmptyTerm", "term": label, "message": "term outside data range; skipped"}
        for label in sorted(set(skipped))
    ])
    out = Path(args.output)
    write_atomic(out / "nulltest.csv", csv_text(report_rows(reports)))
    params = {
        "countries": args.countries,
        "terms": [[t.label, t.start_year, t.end_year] for t in terms],
        "replicates": args.replicates,
        "seed": args.seed,
        "null": args.null,
        "null_std_ddof": 1,
        "significance_level": SIG_LEVEL,
        "keep_unknown": args.keep_unknown,
        **_motif_param_record(mp),
    }
    write_atomic(out / "nulltest.manifest.json", _manifest(args, "nulltest", params, inputs))
    return 0


def cmd_synth(args) -> int:
    mix = PAPER_ACTION_MIX if args.mix == "paper" else ROUNDED_ACTION_MIX
    try:
        config = SynthConfig(
            seed=args.seed,
            n_events=args.n_events,
            action_mix=mix,
            year_range=args.year_range,
            bursts=tuple(args.burst or ()),
            multi_final_rate=args.multi_final_rate,
        )
        events = generate(config)
    except InfeasibleConfig as exc:
        raise CliError(EXIT_INPUT, f"InfeasibleConfig: {exc}") from None
    out = Path(args.output)
    write_atomic(out, write_events_jsonl(events))
    params = {
        "seed": args.seed,
        "n_events": args.n_events,
        "mix": args.mix,
        "year_range": list(args.year_range),
        "bursts": [[b.country, b.role.value, b.year, b.size] for b in config.bursts],
        "multi_final_rate": args.multi_final_rate,
    }
    write_atomic(out.with_name(out.name + ".manifest.json"), _manifest(args, "synth", params, []))
    print(json.dumps(summarize(events).to_record(), sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sanctiongraph",
        description="Temporal graph analytics over sanction-event records.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--diagnostics", help="append JSON-lines warnings here (default: stderr)")

    analytic = argparse.ArgumentParser(add_help=False, parents=[common])
    analytic.add_argument("dataset", help="normalized events.jsonl written by 'ingest'")
    analytic.add_argument("-o", "--output", default=".", help="output directory")
    analytic.add_argument("--countries", type=_countries, default=None, help="comma-separated codes")
    analytic.add_argument("--keep-unknown", action="store_true",
                          help="keep edges with the XX placeholder country")

    motif_opts = argparse.ArgumentParser(add_help=False)
    motif_opts.add_argument("--delta-days", type=_positive_int, default=1461)
    motif_opts.add_argument("--bins", default="yearly",
                            help="'yearly' or START:END date intervals, comma-separated")
    motif_opts.add_argument("--same-day", choices=["on", "off"], default="on")
    motif_opts.add_argument("--obs-rule", choices=["bin-end", "event-time"], default="bin-end")

    p = sub.add_parser("ingest", parents=[common], help="validate and normalize event records")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=".")
    p.add_argument("--format", choices=["jsonl", "csv"], default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("rsi", parents=[analytic], help="Role Skew Index snapshot or series")
    p.add_argument("--at", type=_date, help="snapshot date (otherwise a series over --bins)")
    p.add_argument("--bins", default="yearly", help="'yearly' (December 31) or comma-separated dates")
    p.set_defaults(func=cmd_rsi)

    p = sub.add_parser("motif", parents=[analytic, motif_opts], help="campaign-intensity motif counts")
    p.set_defaults(func=cmd_motif)

    p = sub.add_parser("network", parents=[analytic], help="intermediate/final target networks")
    p.add_argument("--at", type=_date, help="observation date (default: last add date)")
    p.add_argument("--cumulative", action="store_true", help="count removed designations too")
    p.set_defaults(func=cmd_network)

    p = sub.add_parser("nulltest", parents=[analytic, motif_opts], help="permutation test of term peaks")
    p.add_argument("--terms-file", help="JSON or CSV with label,start_year,end_year")
    p.add_argument("--replicates", type=_positive_int, default=1000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--null", choices=["case", "time"], default="case")
    p.add_argument("--workers", type=_positive_int, default=1, help="threads (output is unaffected)")
    p.set_defaults(func=cmd_nulltest)

    p = sub.add_parser("synth", parents=[common], help="write a synthetic event file")
    p.add_argument("-o", "--output", required=True, help="output events.jsonl path")
    p.add_argument("--n-events", type=_nonneg_int, default=1000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--mix", choices=["paper", "rounded"], default="paper")
    p.add_argument("--year-range", type=_year_range, default=(2000, 2024))
    p.add_argument("--burst", type=_burst, action="append",
                   help="COUNTRY:intermediate|final:YEAR:SIZE (repeatable)")
    p.add_argument("--multi-final-rate", type=float, default=0.0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "countries", None) is None and args.command == "nulltest":
        parser.error("nulltest requires --countries")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
