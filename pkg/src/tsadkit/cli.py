"""Command-line interface.

Subcommands: generate (synthetic dataset -> CSV files), run (experiment
config -> results), compare-metrics (labels CSV -> F-score table), rank
(score table -> average ranks + significance), diagnose (channel scores +
events -> ranked causes).

Exit codes: 0 full success, 2 partial cell failures during run, 1 config
or input errors. Time indices in all file formats are 0-based.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .core import (
    ConfigError,
    Event,
    ParseError,
    ValidationError,
    validate_labels,
)
from .diagnosis import RANK_STATISTICS, hitrate_at, rank_channels, rc_top_k
from .experiment import (
    compare_metrics,
    config_from_json,
    emit_results,
    run_experiment,
)
from .ingest import SyntheticSpec, generate_synthetic
from .rankstats import RankTable, compare_to_best

_USAGE_EXIT = 1


class _Parser(argparse.ArgumentParser):
    """Argument errors exit 1; 2 is reserved for partial run failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(_USAGE_EXIT)


def _seed_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def _write_rows(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _read_matrix_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read a headered numeric CSV into (channel names, float matrix)."""
    path = Path(path)
    with path.open("r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ParseError(
                    f"{path} line {lineno}: expected {len(header)} fields, got {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                bad = next(v for v in row if not _is_float(v))
                col = header[row.index(bad)]
                raise ParseError(
                    f"{path} line {lineno} column {col!r}: non-numeric value {bad!r}"
                ) from None
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return header, np.asarray(rows, dtype=np.float64)


def _is_float(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _print_table(rows: list[dict], columns: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])


def _cell(value):
    if isinstance(value, float):
        return f"{value:.10g}"
    return value


def _cmd_generate(args) -> int:
    raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    spec = SyntheticSpec.from_dict(raw)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed[0])
    entity = generate_synthetic(spec)
    out = Path(args.out) if args.out else Path(spec.entity_id)
    out.mkdir(parents=True, exist_ok=True)

    names = list(entity.train.channel_names)
    _write_rows(
        out / "train.csv",
        names,
        ([str(float(v)) for v in row] for row in entity.train.values),
    )
    labels = entity.test_labels
    _write_rows(
        out / "test.csv",
        names + ["label"],
        (
            [str(float(v)) for v in row] + [str(int(labels[i]))]
            for i, row in enumerate(entity.test.values)
        ),
    )
    written = [out / "train.csv", out / "test.csv"]
    causes = {
        str(i): [names[c] for c in sorted(e.causes)]
        for i, e in enumerate(entity.test_events)
        if e.causes is not None
    }
    if causes:
        cause_path = out / "causes.json"
        cause_path.write_text(
            json.dumps(causes, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        written.append(cause_path)
    for path in written:
        print(path)
    return 0


def _cmd_run(args) -> int:
    config = config_from_json(args.config)
    if args.seed is not None:
        config = replace(config, seeds=tuple(args.seed))
    out_dir = args.out or os.environ.get("TSADKIT_OUTPUT_DIR") or config.output_dir
    if args.workers is not None:
        workers = args.workers
    else:
        workers = int(os.environ.get("TSADKIT_WORKERS", "1"))
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")

    record = run_experiment(config, workers=workers)
    paths = emit_results(record, out_dir, fmt=args.format)
    for name in sorted(paths):
        print(f"{name}: {paths[name]}")
    overall = record.aggregates.get("overall", {})
    for key in sorted(overall):
        value = overall[key]
        if value is not None:
            print(f"overall {key}: {value:.4f}")
    if record.failures:
        for failure in record.failures:
            print(
                f"FAILED {failure['entity']}/seed {failure['seed']}: {failure['error']}",
                file=sys.stderr,
            )
        return 2
    return 0


def _read_label_columns(path: str | Path) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    header, values = _read_matrix_csv(path)
    matrix = values.astype(np.int64)
    if not np.array_equal(matrix, values):
        raise ParseError(f"{path}: labels must be integers 0 or 1")
    truth = validate_labels(matrix[:, 0])
    named = {name: validate_labels(matrix[:, j]) for j, name in enumerate(header) if j}
    if not named:
        raise ParseError(f"{path}: need at least one prediction column after the truth column")
    return truth, named


def _cmd_compare(args) -> int:
    truth, named = _read_label_columns(args.labels)
    rows = compare_metrics(truth, named, rad_seed=args.seed[0] if args.seed else 0)
    _print_table(rows, ["name", "f1", "fpa1", "fc1"], args.format)
    return 0


def _cmd_rank(args) -> int:
    table = RankTable.from_csv(args.table)
    summary = compare_to_best(
        table, alpha=args.alpha, higher_is_better=not args.lower_is_better
    )
    if args.format == "json":
        print(json.dumps(summary, indent=2, sort_keys=True))
        return 0
    rows = [
        {
            "method": name,
            "average_rank": summary["average_ranks"][i],
            "z": summary["pairwise_z"][i],
            "p": summary["pairwise_p"][i],
            "reject": summary["reject"][i],
        }
        for i, name in enumerate(summary["methods"])
    ]
    print(
        f"friedman statistic {summary['friedman_statistic']:.4f} "
        f"p {summary['friedman_p_value']:.3e} best {summary['best_method']}",
        file=sys.stderr,
    )
    _print_table(rows, ["method", "average_rank", "z", "p", "reject"], "csv")
    return 0


def _load_events(path: str | Path, channel_names: list[str]) -> list[Event]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ConfigError(f"{path}: events file must be a JSON list")
    index_of = {name: i for i, name in enumerate(channel_names)}
    events = []
    for i, item in enumerate(raw):
        try:
            start, end = int(item["start"]), int(item["end"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"{path}: event {i} needs integer start/end") from None
        causes = item.get("causes")
        resolved = None
        if causes is not None:
            idx = []
            for c in causes:
                if isinstance(c, str):
                    if c not in index_of:
                        raise ConfigError(f"{path}: event {i} unknown channel {c!r}")
                    idx.append(index_of[c])
                else:
                    idx.append(int(c))
            resolved = frozenset(idx)
        events.append(Event(start, end, resolved))
    if not events:
        raise ConfigError(f"{path}: no events")
    return events


def _cmd_diagnose(args) -> int:
    names, scores = _read_matrix_csv(args.scores)
    events = _load_events(args.events, names)
    diagnoses = [
        rank_channels(scores, event, statistic=args.statistic, event_index=i)
        for i, event in enumerate(events)
    ]
    rows = [
        {
            "event": i,
            "start": events[i].start,
            "end": events[i].end,
            "ranking": [names[c] for c in d.ranked_channels],
        }
        for i, d in enumerate(diagnoses)
    ]
    report: dict = {"statistic": args.statistic, "events": rows}
    if any(e.causes is not None for e in events):
        report["rc_top_k"] = rc_top_k(diagnoses, events, args.top_k)
        report["hitrate"] = hitrate_at(diagnoses, events, args.percent)
        report["k"] = args.top_k
        report["percent"] = args.percent
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        flat = [
            {**row, "ranking": "|".join(row["ranking"])}
            for row in rows
        ]
        _print_table(flat, ["event", "start", "end", "ranking"], "csv")
        if "rc_top_k" in report:
            print(
                f"rc_top_{args.top_k} {report['rc_top_k']:.4f} "
                f"hitrate@{args.percent} {report['hitrate']:.4f}",
                file=sys.stderr,
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tsadkit", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic dataset as CSV files")
    p.add_argument("--config", required=True, help="synthetic spec JSON")
    p.add_argument("--seed", type=_seed_list, help="override the spec seed")
    p.add_argument("--out", help="output directory (default: entity id)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("run", help="run an experiment config")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--seed", type=_seed_list, help="override config seeds, e.g. 1,2,3")
    p.add_argument("--out", help="output directory override")
    p.add_argument("--workers", type=int, help="parallel (entity, seed) cells")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser(
        "compare-metrics",
        help="score labeled predictions: CSV columns = truth, then predictions",
    )
    p.add_argument("labels", help="CSV with a truth column then prediction columns")
    p.add_argument("--seed", type=_seed_list, help="random-baseline seed")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("rank", help="average ranks, Friedman test, Hochberg step-up")
    p.add_argument("table", help="CSV: method,<group>,... one row per method")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument(
        "--lower-is-better",
        action="store_true",
        help="rank smaller scores as better",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("diagnose", help="rank channels over annotated events")
    p.add_argument("scores", help="CSV of per-channel scores, header = channel names")
    p.add_argument("events", help="JSON list of {start, end, causes?}")
    p.add_argument("--statistic", choices=RANK_STATISTICS, default="mean")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--percent", type=int, default=150)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0, errors exit 1
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ValidationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
