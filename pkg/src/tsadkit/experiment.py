"""Experiment orchestration: config, per-entity/seed cells, results.

A run executes normalize -> window -> fit -> residuals -> score ->
threshold -> metrics (-> diagnosis) for every (entity, seed) cell,
deterministically per (config, seed). Cell failures are recorded and the
remaining cells still run. The deterministic results payload carries no
timestamps; wall-clock timings live in a separate metadata dict.
"""
from __future__ import annotations

import csv
import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .core import ConfigError, Entity, SeriesMatrix, validate_labels
from .diagnosis import RANK_STATISTICS, hitrate_at, rank_channels, rc_top_k
from .ingest import (
    SyntheticSpec,
    WindowSpec,
    apply_normalizer,
    fit_normalizer,
    generate_synthetic,
    load_entity,
)
from .metrics import MetricReport, compute_report, rad_scores
from .models import ModelConfig, fit, residuals
from .scoring import (
    DynamicWindow,
    KernelSpec,
    fit_gauss,
    score_error,
    score_gauss_d,
    score_gauss_d_k,
    score_gauss_s,
)
from .thresholding import (
    BEST_F_METRICS,
    threshold_best_f,
    threshold_tail_p,
    threshold_top_k,
)

SCORING_KINDS = ("error", "gauss_s", "gauss_d", "gauss_d_k")
THRESHOLD_METHODS = ("best_f", "top_k", "tail_p")
METRIC_NAMES = ("f1", "fpa1", "fc1", "auroc", "auprc")
TAIL_P_SWEEP = (1, 2, 3, 4, 5)
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class EntitySource:
    """File-backed entity: train/test CSV paths plus annotations."""

    id: str
    train_path: str
    test_path: str
    label_column: str = "label"
    cause_map: str | None = None
    scored_channels: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "train": self.train_path,
            "test": self.test_path,
            "label_column": self.label_column,
            "cause_map": self.cause_map,
            "scored_channels": list(self.scored_channels) if self.scored_channels else None,
        }


@dataclass(frozen=True)
class ScoringConfig:
    kind: str
    window: int | None = None       # W, required for gauss_d and gauss_d_k
    kernel_sigma: float | None = None  # sigma_k, required for gauss_d_k

    def __post_init__(self):
        if self.kind not in SCORING_KINDS:
            raise ConfigError(f"scoring kind must be one of {SCORING_KINDS}, got {self.kind!r}")
        if self.kind in ("gauss_d", "gauss_d_k"):
            if self.window is None or self.window < 2:
                raise ConfigError(
                    f"scoring kind {self.kind!r} needs a rolling window W >= 2"
                )
        if self.kind == "gauss_d_k":
            if self.kernel_sigma is None or not (self.kernel_sigma > 0):
                raise ConfigError("gauss_d_k needs kernel_sigma > 0")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "window": self.window, "kernel_sigma": self.kernel_sigma}


@dataclass(frozen=True)
class ThresholdConfig:
    method: str
    metric: str = "fc1"             # best_f target; also tail_p selection metric
    k: int | None = None            # top_k; None means the true positive count
    neg_log_eps: int | None = None  # tail_p; None sweeps 1..5

    def __post_init__(self):
        if self.method not in THRESHOLD_METHODS:
            raise ConfigError(
                f"threshold method must be one of {THRESHOLD_METHODS}, got {self.method!r}"
            )
        if self.metric not in BEST_F_METRICS:
            raise ConfigError(
                f"threshold metric must be one of {BEST_F_METRICS}, got {self.metric!r}"
            )
        if self.k is not None and self.k < 0:
            raise ConfigError(f"k must be >= 0, got {self.k}")
        if self.neg_log_eps is not None and self.neg_log_eps < 1:
            raise ConfigError(f"neg_log_eps must be >= 1, got {self.neg_log_eps}")

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "metric": self.metric,
            "k": self.k,
            "neg_log_eps": self.neg_log_eps,
        }


@dataclass(frozen=True)
class DiagnosisConfig:
    enabled: bool = False
    top_k: int = 3
    percent: int = 150
    statistic: str = "mean"

    def __post_init__(self):
        if self.top_k < 1 or self.percent < 1:
            raise ConfigError("diagnosis top_k and percent must be >= 1")
        if self.statistic not in RANK_STATISTICS:
            raise ConfigError(
                f"diagnosis statistic must be one of {RANK_STATISTICS}, "
                f"got {self.statistic!r}"
            )

    def to_dict(self) -> dict:
        return {
            "enabled": self.enabled,
            "top_k": self.top_k,
            "percent": self.percent,
            "statistic": self.statistic,
        }


@dataclass(frozen=True)
class ExperimentConfig:
    entities: tuple[EntitySource, ...] = ()
    synthetic: tuple[SyntheticSpec, ...] = ()
    window: WindowSpec = WindowSpec(100, 1)
    model: ModelConfig = ModelConfig("uae")
    scoring: ScoringConfig = ScoringConfig("gauss_s")
    threshold: ThresholdConfig = ThresholdConfig("best_f")
    metrics: tuple[str, ...] = METRIC_NAMES
    diagnosis: DiagnosisConfig = DiagnosisConfig()
    seeds: tuple[int, ...] = (0,)
    output_dir: str = "results"

    def __post_init__(self):
        if not self.entities and not self.synthetic:
            raise ConfigError("config needs file entities or synthetic specs")
        unknown = [m for m in self.metrics if m not in METRIC_NAMES]
        if unknown:
            raise ConfigError(f"unknown metrics {unknown}; valid: {METRIC_NAMES}")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        ids = [e.id for e in self.entities] + [s.entity_id for s in self.synthetic]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"entity ids must be unique, got {ids}")

    def to_dict(self) -> dict:
        return {
            "entities": [e.to_dict() for e in self.entities],
            "synthetic": [_synthetic_to_dict(s) for s in self.synthetic],
            "window": {"length": self.window.length, "step": self.window.step},
            "model": {
                "kind": self.model.kind,
                "latent_dim": self.model.latent_dim,
                "pca_variance_fraction": self.model.pca_variance_fraction,
                "learning_rate": self.model.learning_rate,
                "batch_size": self.model.batch_size,
                "max_epochs": self.model.max_epochs,
                "patience": self.model.patience,
                "validation_fraction": self.model.validation_fraction,
            },
            "scoring": self.scoring.to_dict(),
            "threshold": self.threshold.to_dict(),
            "metrics": list(self.metrics),
            "diagnosis": self.diagnosis.to_dict(),
            "seeds": list(self.seeds),
            "output_dir": self.output_dir,
        }

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _synthetic_to_dict(spec: SyntheticSpec) -> dict:
    return {
        "entity_id": spec.entity_id,
        "n_train": spec.n_train,
        "n_test": spec.n_test,
        "m": spec.m,
        "period": list(spec.period),
        "noise_sigma": spec.noise_sigma,
        "seed": spec.seed,
        "anomalies": [
            {
                "start": a.start,
                "length": a.length,
                "kind": a.kind,
                "channels": list(a.channels),
                "magnitude": a.magnitude,
            }
            for a in spec.anomalies
        ],
    }


def config_from_dict(d: dict) -> ExperimentConfig:
    """Build and validate an ExperimentConfig from a parsed JSON dict."""
    if not isinstance(d, dict):
        raise ConfigError("config root must be a JSON object")
    known = {
        "entities", "synthetic", "window", "model", "scoring",
        "threshold", "metrics", "diagnosis", "seeds", "output_dir",
    }
    unknown = set(d) - known
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    try:
        entities = tuple(
            EntitySource(
                id=str(e["id"]),
                train_path=str(e["train"]),
                test_path=str(e["test"]),
                label_column=str(e.get("label_column", "label")),
                cause_map=e.get("cause_map"),
                scored_channels=tuple(e["scored_channels"])
                if e.get("scored_channels")
                else None,
            )
            for e in d.get("entities", ())
        )
        synthetic = tuple(SyntheticSpec.from_dict(s) for s in d.get("synthetic", ()))
        w = d.get("window", {})
        window = WindowSpec(int(w.get("length", 100)), int(w.get("step", 1)))
        mc = d.get("model", {})
        model = ModelConfig(
            kind=str(mc.get("kind", "uae")),
            latent_dim=mc.get("latent_dim"),
            pca_variance_fraction=float(mc.get("pca_variance_fraction", 0.9)),
            learning_rate=mc.get("learning_rate"),
            batch_size=mc.get("batch_size"),
            max_epochs=int(mc.get("max_epochs", 100)),
            patience=int(mc.get("patience", 10)),
            validation_fraction=float(mc.get("validation_fraction", 0.25)),
        )
        sc = d.get("scoring", {})
        scoring = ScoringConfig(
            kind=str(sc.get("kind", "gauss_s")),
            window=int(sc["window"]) if sc.get("window") is not None else None,
            kernel_sigma=float(sc["kernel_sigma"])
            if sc.get("kernel_sigma") is not None
            else None,
        )
        tc = d.get("threshold", {})
        threshold = ThresholdConfig(
            method=str(tc.get("method", "best_f")),
            metric=str(tc.get("metric", "fc1")),
            k=int(tc["k"]) if tc.get("k") is not None else None,
            neg_log_eps=int(tc["neg_log_eps"])
            if tc.get("neg_log_eps") is not None
            else None,
        )
        dc = d.get("diagnosis", {})
        diagnosis = DiagnosisConfig(
            enabled=bool(dc.get("enabled", False)),
            top_k=int(dc.get("top_k", 3)),
            percent=int(dc.get("percent", 150)),
            statistic=str(dc.get("statistic", "mean")),
        )
        metrics = tuple(d.get("metrics", METRIC_NAMES))
        seeds = tuple(int(s) for s in d.get("seeds", (0,)))
        output_dir = str(d.get("output_dir", "results"))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad config: {exc}") from None
    return ExperimentConfig(
        entities=entities,
        synthetic=synthetic,
        window=window,
        model=model,
        scoring=scoring,
        threshold=threshold,
        metrics=metrics,
        diagnosis=diagnosis,
        seeds=seeds,
        output_dir=output_dir,
    )


def config_from_json(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return config_from_dict(raw)


@dataclass(frozen=True)
class ResultsRecord:
    """A complete run: deterministic payload plus separate timing metadata."""

    config_digest: str
    config: dict
    cells: tuple[dict, ...]
    aggregates: dict
    failures: tuple[dict, ...]
    meta: dict

    def payload(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config_digest": self.config_digest,
            "config": self.config,
            "cells": list(self.cells),
            "aggregates": self.aggregates,
            "failures": list(self.failures),
        }


def _report_to_dict(report: MetricReport, wanted: tuple[str, ...]) -> dict:
    out = {
        "prec_t": report.prec_t,
        "rec_e": report.rec_e,
        "prec_point": report.prec_point,
        "rec_point": report.rec_point,
    }
    for name in ("f1", "fpa1", "fc1"):
        out[name] = getattr(report, name)
    if "auroc" in wanted:
        out["auroc"] = report.auroc
    if "auprc" in wanted:
        out["auprc"] = report.auprc
    return out


def _threshold_info(result) -> dict:
    info = {"method": result.method, "threshold": result.threshold}
    info.update(result.metadata)
    # +inf is not valid JSON; the one threshold that predicts nothing
    if result.threshold == float("inf"):
        info["threshold"] = None
    return info


def _run_cell(entity: Entity, seed: int, config: ExperimentConfig) -> dict:
    truth = entity.test_labels
    scored = entity.scored_indices()
    stats = fit_normalizer(entity.train)
    train_norm = apply_normalizer(entity.train, stats, "train")
    test_norm = apply_normalizer(entity.test, stats, "test")
    normalized = replace(entity, train=train_norm, test=test_norm)

    model_config = replace(config.model, seed=seed)
    model = fit(normalized, model_config, config.window)

    tail = None
    if model.window_length is not None and model.window_length > 1:
        tail = SeriesMatrix(
            train_norm.values[-(model.window_length - 1) :], train_norm.channel_names
        )
    test_err = residuals(model, test_norm, config.window, train_tail=tail)

    sc = config.scoring
    if sc.kind == "error":
        series = score_error(test_err, model.train_error_mean, scored)
        # per-channel view consistent with the RMS aggregate: squared
        # mean-centered errors
        channels = (test_err - model.train_error_mean) ** 2
    elif sc.kind == "gauss_s":
        params = fit_gauss(model.train_residuals)
        channels, series = score_gauss_s(test_err, params, scored)
    else:
        w = DynamicWindow(sc.window)
        tail_err = model.train_residuals[-(sc.window - 1) :]
        channels, series = score_gauss_d(test_err, tail_err, w, scored)
        if sc.kind == "gauss_d_k":
            channels, series = score_gauss_d_k(channels, KernelSpec(sc.kernel_sigma), scored)

    cell: dict = {"entity": entity.id, "seed": seed}

    tc = config.threshold
    if tc.method == "best_f":
        result = threshold_best_f(series, truth, tc.metric)
        report = compute_report(result.predictions, truth, series)
        cell["threshold"] = _threshold_info(result)
        cell["metrics"] = _report_to_dict(report, config.metrics)
    elif tc.method == "top_k":
        k = tc.k if tc.k is not None else int(truth.sum())
        result = threshold_top_k(series, k)
        report = compute_report(result.predictions, truth, series)
        cell["threshold"] = _threshold_info(result)
        cell["metrics"] = _report_to_dict(report, config.metrics)
    elif tc.neg_log_eps is not None:  # tail_p, fixed eps
        result = threshold_tail_p(series, len(scored), tc.neg_log_eps)
        report = compute_report(result.predictions, truth, series)
        cell["threshold"] = _threshold_info(result)
        cell["metrics"] = _report_to_dict(report, config.metrics)
    else:  # tail_p sweep; the runner picks one global eps afterwards
        sweep = {}
        for eps in TAIL_P_SWEEP:
            result = threshold_tail_p(series, len(scored), eps)
            report = compute_report(result.predictions, truth, series)
            sweep[str(eps)] = {
                "threshold": _threshold_info(result),
                "metrics": _report_to_dict(report, config.metrics),
            }
        cell["tail_p_sweep"] = sweep

    if config.diagnosis.enabled:
        events = list(entity.test_events)
        annotated = [e for e in events if e.causes is not None]
        if annotated:
            diagnoses = [
                rank_channels(channels, e, scored, config.diagnosis.statistic, i)
                for i, e in enumerate(events)
            ]
            cell["diagnosis"] = {
                "rc_top_k": rc_top_k(diagnoses, events, config.diagnosis.top_k),
                "hitrate": hitrate_at(diagnoses, events, config.diagnosis.percent),
                "k": config.diagnosis.top_k,
                "percent": config.diagnosis.percent,
                "rankings": [list(d.ranked_channels) for d in diagnoses],
            }
        else:
            cell["diagnosis"] = None
    return cell


def build_entities(config: ExperimentConfig) -> list[Entity]:
    """Materialize every configured entity (files first, then synthetic)."""
    out = []
    for entity, error in _materialize(config):
        if error is not None:
            raise ConfigError(error)
        out.append(entity)
    return out


def _materialize(config: ExperimentConfig) -> list[tuple[Entity | None, str | None]]:
    """Load each entity independently so one bad file cannot sink the run."""
    out: list[tuple[Entity | None, str | None]] = []
    for source in config.entities:
        try:
            out.append(
                (
                    load_entity(
                        source.train_path,
                        source.test_path,
                        label_column=source.label_column,
                        cause_map=source.cause_map,
                        entity_id=source.id,
                        scored_channels=source.scored_channels,
                    ),
                    None,
                )
            )
        except Exception as exc:
            out.append((None, f"{source.id}: {type(exc).__name__}: {exc}"))
    for spec in config.synthetic:
        try:
            out.append((generate_synthetic(spec), None))
        except Exception as exc:
            out.append((None, f"{spec.entity_id}: {type(exc).__name__}: {exc}"))
    return out


def _select_tail_p(cells: list[dict], config: ExperimentConfig) -> int | None:
    """Pick the single neg_log_eps maximizing the mean selection metric."""
    swept = [c for c in cells if "tail_p_sweep" in c]
    if not swept:
        return None
    metric = config.threshold.metric
    eps_values = sorted({int(e) for c in swept for e in c["tail_p_sweep"]})
    best_eps = eps_values[0]
    best_value = -1.0
    for eps in eps_values:
        values = [
            c["tail_p_sweep"][str(eps)]["metrics"][metric]
            for c in swept
            if str(eps) in c["tail_p_sweep"]
        ]
        mean = float(np.mean(values)) if values else 0.0
        if mean > best_value:
            best_value = mean
            best_eps = eps
    return best_eps


def _finalize_tail_p(cells: list[dict], chosen: int) -> None:
    for cell in cells:
        sweep = cell.pop("tail_p_sweep", None)
        if sweep is None:
            continue
        picked = sweep[str(chosen)]
        cell["threshold"] = picked["threshold"]
        cell["metrics"] = picked["metrics"]
        cell["tail_p_selected"] = chosen


def _aggregate(cells: list[dict], entity_order: list[str]) -> dict:
    by_entity: dict[str, list[dict]] = {eid: [] for eid in entity_order}
    for cell in cells:
        by_entity[cell["entity"]].append(cell)

    metric_keys: list[str] = []
    for cell in cells:
        for key in cell.get("metrics", {}):
            if key not in metric_keys:
                metric_keys.append(key)

    def mean_or_none(values):
        values = [v for v in values if v is not None]
        return float(np.mean(values)) if values else None

    per_entity: dict[str, dict] = {}
    for eid in entity_order:
        group = by_entity[eid]
        if not group:
            continue
        entry = {
            key: mean_or_none([c["metrics"].get(key) for c in group if "metrics" in c])
            for key in metric_keys
        }
        diag = [c["diagnosis"] for c in group if c.get("diagnosis")]
        if diag:
            entry["rc_top_k"] = mean_or_none([d["rc_top_k"] for d in diag])
            entry["hitrate"] = mean_or_none([d["hitrate"] for d in diag])
        per_entity[eid] = entry

    overall_keys: list[str] = []
    for entry in per_entity.values():
        for key in entry:
            if key not in overall_keys:
                overall_keys.append(key)
    overall = {
        key: mean_or_none([entry.get(key) for entry in per_entity.values()])
        for key in overall_keys
    }
    return {"per_entity": per_entity, "overall": overall}


def run_experiment(config: ExperimentConfig, workers: int = 1) -> ResultsRecord:
    """Execute every (entity, seed) cell and aggregate the reports.

    Cells run independently (optionally in a thread pool); a failing cell
    is recorded under ``failures`` and the rest of the run completes. For
    tail-p without a fixed neg_log_eps, the sweep over 1..5 picks the one
    value maximizing the entity-and-seed-averaged selection metric, applied
    globally.
    """
    started = time.monotonic()
    configured_ids = [s.id for s in config.entities] + [
        s.entity_id for s in config.synthetic
    ]
    entities: list[Entity] = []
    entity_order: list[str] = []
    results: dict[tuple[str, int], dict] = {}
    failures: dict[tuple[str, int], dict] = {}
    timings: dict[str, float] = {}

    for eid, (entity, error) in zip(configured_ids, _materialize(config)):
        entity_order.append(eid)
        if error is not None:
            for seed in config.seeds:
                failures[(eid, seed)] = {"entity": eid, "seed": seed, "error": error}
        else:
            entities.append(entity)
    cells_todo = [(e, s) for e in entities for s in config.seeds]

    def execute(pair):
        entity, seed = pair
        t0 = time.monotonic()
        try:
            cell = _run_cell(entity, seed, config)
            return (entity.id, seed), cell, None, time.monotonic() - t0
        except Exception as exc:  # cell isolation: record and continue
            failure = {
                "entity": entity.id,
                "seed": seed,
                "error": f"{type(exc).__name__}: {exc}",
            }
            return (entity.id, seed), None, failure, time.monotonic() - t0

    if workers > 1 and len(cells_todo) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(execute, cells_todo))
    else:
        outcomes = [execute(pair) for pair in cells_todo]

    for key, cell, failure, elapsed in outcomes:
        timings[f"{key[0]}/{key[1]}"] = elapsed
        if cell is not None:
            results[key] = cell
        else:
            failures[key] = failure

    ordered_cells = [
        results[(eid, seed)]
        for eid in entity_order
        for seed in config.seeds
        if (eid, seed) in results
    ]
    ordered_failures = [
        failures[(eid, seed)]
        for eid in entity_order
        for seed in config.seeds
        if (eid, seed) in failures
    ]

    if config.threshold.method == "tail_p" and config.threshold.neg_log_eps is None:
        chosen = _select_tail_p(ordered_cells, config)
        if chosen is not None:
            _finalize_tail_p(ordered_cells, chosen)

    aggregates = _aggregate(ordered_cells, entity_order)
    return ResultsRecord(
        config_digest=config.digest(),
        config=config.to_dict(),
        cells=tuple(ordered_cells),
        aggregates=aggregates,
        failures=tuple(ordered_failures),
        meta={"timings": timings, "total_seconds": time.monotonic() - started},
    )


def compare_metrics(truth, named_predictions: dict, rad_seed: int = 0) -> list[dict]:
    """Score each named prediction with all three F-scores, plus random
    baseline rows thresholded for the best value of each metric."""
    y = validate_labels(truth)
    rows = []
    for name, pred in named_predictions.items():
        report = compute_report(pred, y)
        rows.append(
            {"name": name, "f1": report.f1, "fpa1": report.fpa1, "fc1": report.fc1}
        )
    scores = rad_scores(y.shape[0], rad_seed)
    for metric in BEST_F_METRICS:
        result = threshold_best_f(scores, y, metric)
        report = compute_report(result.predictions, y)
        rows.append(
            {
                "name": f"random(best {metric})",
                "f1": report.f1,
                "fpa1": report.fpa1,
                "fc1": report.fc1,
            }
        )
    return rows


def emit_results(record: ResultsRecord, out_dir: str | Path, fmt: str = "json") -> dict:
    """Write results.json (deterministic), run_meta.json, and a summary.

    The payload serialization is canonical (sorted keys), so identical
    runs produce byte-identical results.json files. Returns the written
    paths. Re-emission overwrites idempotently.
    """
    if fmt not in ("json", "csv"):
        raise ConfigError(f"format must be 'json' or 'csv', got {fmt!r}")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        results_path = out / "results.json"
        results_path.write_text(
            json.dumps(record.payload(), sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        meta_path = out / "run_meta.json"
        meta_path.write_text(
            json.dumps(record.meta, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        written = {"results": str(results_path), "meta": str(meta_path)}
        if fmt == "csv":
            summary_path = out / "summary.csv"
            with summary_path.open("w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["entity", "seed", "metric", "value"])
                for cell in record.cells:
                    for key, value in sorted(cell.get("metrics", {}).items()):
                        writer.writerow(
                            [
                                cell["entity"],
                                cell["seed"],
                                key,
                                "" if value is None else f"{value:.10g}",
                            ]
                        )
            written["summary"] = str(summary_path)
        return written
    except OSError as exc:
        raise ConfigError(f"cannot write results to {out}: {exc}") from None


def load_results(path: str | Path) -> dict:
    """Reload a results.json payload."""
    return json.loads(Path(path).read_text(encoding="utf-8"))
