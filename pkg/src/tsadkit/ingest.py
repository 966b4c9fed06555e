"""Dataset loading, normalization, windowing, and synthetic benchmarks.

CSV layout: UTF-8 with a header row, one row per time-point, float cells.
The test file carries an extra binary label column. Cause annotations come
from a JSON mapping of event ordinal to a list of channel names.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (
    ConfigError,
    Entity,
    Event,
    EventSet,
    FloatArray,
    InsufficientDataError,
    ParseError,
    SeriesMatrix,
    ValidationError,
    check_float_matrix,
    events_from_labels,
)

ANOMALY_KINDS = ("spike", "level_shift", "drift_background")


@dataclass(frozen=True)
class NormStats:
    """Per-channel min/max computed on the training split only."""

    vmin: FloatArray
    vmax: FloatArray

    def __post_init__(self):
        lo = np.asarray(self.vmin, dtype=np.float64)
        hi = np.asarray(self.vmax, dtype=np.float64)
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValidationError("vmin and vmax must be 1-D of equal length")
        if np.any(lo > hi):
            raise ValidationError("vmin must be <= vmax per channel")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "vmin", lo)
        object.__setattr__(self, "vmax", hi)

    @property
    def m(self) -> int:
        return self.vmin.shape[0]

    def ranges(self) -> FloatArray:
        # constant channels fall back to a unit range so test-time change
        # still registers instead of dividing by zero
        span = self.vmax - self.vmin
        return np.where(span > 0, span, 1.0)


@dataclass(frozen=True)
class WindowSpec:
    """Sliding-window geometry: length l_w and step l_s with 1 <= l_s <= l_w."""

    length: int
    step: int = 1

    def __post_init__(self):
        if self.length < 1:
            raise ValidationError(f"window length must be >= 1, got {self.length}")
        if not (1 <= self.step <= self.length):
            raise ValidationError(
                f"window step must satisfy 1 <= step <= length, got step={self.step}"
            )


def fit_normalizer(train: SeriesMatrix) -> NormStats:
    """Per-channel min/max over the training series."""
    v = train.values
    return NormStats(v.min(axis=0), v.max(axis=0))


def apply_normalizer(x: SeriesMatrix, stats: NormStats, phase: str) -> SeriesMatrix:
    """Min-max scale each channel; clip test-phase output to [-4, 5].

    Train-phase output lies in [0, 1] by construction (the stats came from
    that data) and is not clipped. Test values map through the same affine
    transform and are clipped to [-4, 5], i.e. the train range extended by
    four range-widths below and above.
    """
    if phase not in ("train", "test"):
        raise ValidationError(f"phase must be 'train' or 'test', got {phase!r}")
    if x.m != stats.m:
        raise ValidationError(f"series has {x.m} channels, stats has {stats.m}")
    scaled = (x.values - stats.vmin) / stats.ranges()
    if phase == "test":
        scaled = np.clip(scaled, -4.0, 5.0)
    return SeriesMatrix(scaled, x.channel_names)


def make_windows(x: SeriesMatrix | FloatArray, spec: WindowSpec) -> FloatArray:
    """All windows of length l_w starting at 0, l_s, 2*l_s, ...

    Returns an array of shape (count, l_w, m) with
    count = floor((n - l_w)/l_s) + 1. Read-only view when possible.
    """
    values = x.values if isinstance(x, SeriesMatrix) else check_float_matrix(x)
    n = values.shape[0]
    if n < spec.length:
        raise InsufficientDataError(
            f"need at least {spec.length} rows to window, got {n}"
        )
    view = np.lib.stride_tricks.sliding_window_view(values, spec.length, axis=0)
    return np.moveaxis(view, -1, 1)[:: spec.step]


@dataclass(frozen=True)
class AnomalySpec:
    """One injected anomaly: where, what kind, which channels, how large.

    ``magnitude`` is relative to the channel's healthy value range for
    spikes (magnitude 1.0 lifts the signal by one full range) and in raw
    signal units for level shifts and background drift.

    Kinds:
      spike            adds magnitude times the channel's healthy value range
                       on the cause channels over the span, labeled anomalous,
                       causes recorded.
      level_shift      constant +magnitude offset in raw signal units on the
                       cause channels over the span, labeled anomalous,
                       causes recorded.
      drift_background linear ramp 0 -> magnitude on ALL channels across the
                       span, persisting at full magnitude afterwards. Not an
                       anomaly: unlabeled, no causes, exempt from the overlap
                       checks that labeled events get.
    """

    start: int
    length: int
    kind: str
    channels: tuple[int, ...] = ()
    magnitude: float = 1.0

    def __post_init__(self):
        if self.kind not in ANOMALY_KINDS:
            raise ValidationError(
                f"anomaly kind must be one of {ANOMALY_KINDS}, got {self.kind!r}"
            )
        if self.start < 0 or self.length < 1:
            raise ValidationError(
                f"anomaly needs start >= 0 and length >= 1, got "
                f"start={self.start} length={self.length}"
            )
        channels = tuple(int(c) for c in self.channels)
        if self.kind == "drift_background":
            if channels:
                raise ValidationError(
                    "drift_background applies to all channels; leave channels empty"
                )
        else:
            if not channels:
                raise ValidationError(f"{self.kind} anomaly needs cause channels")
            if len(set(channels)) != len(channels):
                raise ValidationError("anomaly channels must be unique")
        object.__setattr__(self, "channels", channels)

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    @property
    def labeled(self) -> bool:
        return self.kind != "drift_background"


@dataclass(frozen=True)
class SyntheticSpec:
    """Deterministic synthetic entity: per-channel sinusoids plus noise.

    ``period`` is either one float for all channels or a sequence of m
    periods. Anomalies are injected into the test split only.
    """

    n_train: int
    n_test: int
    m: int
    period: float | tuple[float, ...] = 50.0
    noise_sigma: float = 0.1
    anomalies: tuple[AnomalySpec, ...] = ()
    seed: int = 0
    entity_id: str = "synthetic"

    def __post_init__(self):
        if self.n_train < 1 or self.n_test < 1 or self.m < 1:
            raise ValidationError("n_train, n_test and m must all be >= 1")
        if self.noise_sigma < 0:
            raise ValidationError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if isinstance(self.period, (int, float)):
            periods = (float(self.period),) * self.m
        else:
            periods = tuple(float(p) for p in self.period)
        if len(periods) != self.m:
            raise ValidationError(f"{len(periods)} periods for m={self.m} channels")
        if any(p <= 0 for p in periods):
            raise ValidationError("periods must be positive")
        object.__setattr__(self, "period", periods)
        anomalies = tuple(self.anomalies)
        for a in anomalies:
            if a.end >= self.n_test:
                raise ValidationError(
                    f"anomaly ({a.start},{a.end}) outside test range 0..{self.n_test - 1}"
                )
            if any(c >= self.m for c in a.channels):
                raise ValidationError(
                    f"anomaly channels {a.channels} outside 0..{self.m - 1}"
                )
        labeled = sorted((a for a in anomalies if a.labeled), key=lambda a: a.start)
        for prev, cur in zip(labeled, labeled[1:]):
            if cur.start <= prev.end + 1:
                raise ValidationError(
                    f"labeled anomalies ({prev.start},{prev.end}) and "
                    f"({cur.start},{cur.end}) overlap or touch"
                )
        object.__setattr__(self, "anomalies", anomalies)

    @classmethod
    def from_dict(cls, d: dict) -> "SyntheticSpec":
        known = {
            "n_train", "n_test", "m", "period", "noise_sigma",
            "anomalies", "seed", "entity_id",
        }
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown synthetic spec keys {sorted(unknown)}")
        try:
            anomalies = tuple(
                AnomalySpec(
                    start=int(a["start"]),
                    length=int(a["length"]),
                    kind=str(a["kind"]),
                    channels=tuple(int(c) for c in a.get("channels", ())),
                    magnitude=float(a.get("magnitude", 1.0)),
                )
                for a in d.get("anomalies", ())
            )
            period = d.get("period", 50.0)
            if isinstance(period, list):
                period = tuple(float(p) for p in period)
            return cls(
                n_train=int(d["n_train"]),
                n_test=int(d["n_test"]),
                m=int(d["m"]),
                period=period,
                noise_sigma=float(d.get("noise_sigma", 0.1)),
                anomalies=anomalies,
                seed=int(d.get("seed", 0)),
                entity_id=str(d.get("entity_id", "synthetic")),
            )
        except KeyError as exc:
            raise ConfigError(f"synthetic spec missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad synthetic spec: {exc}") from None


def generate_synthetic(spec: SyntheticSpec) -> Entity:
    """Generate an Entity from the spec; bit-identical for equal specs."""
    n = spec.n_train + spec.n_test
    t = np.arange(n, dtype=np.float64)
    rng = np.random.default_rng(spec.seed)
    noise = rng.normal(0.0, spec.noise_sigma, size=(n, spec.m)) if spec.noise_sigma > 0 \
        else np.zeros((n, spec.m))
    values = np.empty((n, spec.m), dtype=np.float64)
    for i, period in enumerate(spec.period):
        values[:, i] = np.sin(2.0 * np.pi * t / period)
    values += noise

    test = values[spec.n_train :].copy()
    # healthy per-channel value range, captured before any injection; spike
    # amplitudes are expressed relative to it
    healthy_range = values.max(axis=0) - values.min(axis=0)
    labels = np.zeros(spec.n_test, dtype=np.int64)
    events: list[Event] = []
    for a in sorted(spec.anomalies, key=lambda a: a.start):
        span = slice(a.start, a.end + 1)
        if a.kind == "spike":
            for c in a.channels:
                test[span, c] += a.magnitude * healthy_range[c]
        elif a.kind == "level_shift":
            for c in a.channels:
                test[span, c] += a.magnitude
        else:  # drift_background
            ramp = np.linspace(0.0, a.magnitude, a.length)
            test[span, :] += ramp[:, None]
            test[a.end + 1 :, :] += a.magnitude
        if a.labeled:
            labels[span] = 1
            events.append(Event(a.start, a.end, causes=frozenset(a.channels)))

    channel_names = tuple(f"c{i}" for i in range(spec.m))
    return Entity(
        id=spec.entity_id,
        train=SeriesMatrix(values[: spec.n_train], channel_names),
        test=SeriesMatrix(test, channel_names),
        test_labels=labels,
        test_events=EventSet(tuple(events)),
    )


def _read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    if not path.exists():
        raise ParseError(f"{path}: file not found")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(f"{path}: empty file, expected a header row")
    header, data = rows[0], rows[1:]
    if not data:
        raise ParseError(f"{path}: no data rows after the header")
    width = len(header)
    for i, row in enumerate(data):
        if len(row) != width:
            # line numbers are 1-based and include the header line
            raise ParseError(
                f"{path} line {i + 2}: expected {width} cells, got {len(row)}"
            )
    return header, data


def _parse_floats(path, data: list[list[str]], header: list[str], columns: list[int]) -> FloatArray:
    out = np.empty((len(data), len(columns)), dtype=np.float64)
    for r, row in enumerate(data):
        for j, c in enumerate(columns):
            cell = row[c]
            try:
                out[r, j] = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path} line {r + 2} column {header[c]!r}: "
                    f"non-numeric value {cell!r}"
                ) from None
    if not np.all(np.isfinite(out)):
        r, j = np.argwhere(~np.isfinite(out))[0]
        raise ParseError(
            f"{path} line {r + 2} column {header[columns[j]]!r}: non-finite value"
        )
    return out


def load_entity(
    train_path: str | Path,
    test_path: str | Path,
    label_column: str = "label",
    cause_map: dict | str | Path | None = None,
    entity_id: str | None = None,
    scored_channels: tuple[str, ...] | None = None,
) -> Entity:
    """Load one entity from a train CSV and a labeled test CSV.

    The test header must contain ``label_column``; the channel columns are
    every other test column, and the train header must list exactly those
    channels (a train-side label column, if present, is ignored).
    ``cause_map`` maps event ordinal (as emitted by run-length order) to a
    list of channel names; it may be a dict or a path to a JSON file.
    """
    test_header, test_data = _read_csv(test_path)
    if label_column not in test_header:
        raise ParseError(
            f"{test_path}: label column {label_column!r} not in header {test_header}"
        )
    label_idx = test_header.index(label_column)
    channels = [h for i, h in enumerate(test_header) if i != label_idx]

    train_header, train_data = _read_csv(train_path)
    train_channels = [h for h in train_header if h != label_column]
    if train_channels != channels:
        raise ParseError(
            f"{train_path}: channel columns {train_channels} do not match "
            f"test channels {channels}"
        )

    train_cols = [train_header.index(h) for h in channels]
    test_cols = [test_header.index(h) for h in channels]
    train_values = _parse_floats(train_path, train_data, train_header, train_cols)
    test_values = _parse_floats(test_path, test_data, test_header, test_cols)

    labels = np.empty(len(test_data), dtype=np.int64)
    for r, row in enumerate(test_data):
        cell = row[label_idx].strip()
        if cell not in ("0", "1"):
            raise ParseError(
                f"{test_path} line {r + 2} column {label_column!r}: "
                f"label must be 0 or 1, got {cell!r}"
            )
        labels[r] = int(cell)

    derived = events_from_labels(labels)
    events = list(derived.events)
    if cause_map is not None:
        if not isinstance(cause_map, dict):
            cause_path = Path(cause_map)
            try:
                cause_map = json.loads(cause_path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ParseError(f"{cause_path}: cannot read cause map: {exc}") from None
        name_to_idx = {h: i for i, h in enumerate(channels)}
        for key, names in cause_map.items():
            try:
                ordinal = int(key)
            except (TypeError, ValueError):
                raise ParseError(f"cause map key {key!r} is not an event ordinal") from None
            if not (0 <= ordinal < len(events)):
                raise ParseError(
                    f"cause map names event {ordinal} but only {len(events)} events exist"
                )
            indices = set()
            for name in names:
                if name not in name_to_idx:
                    raise ParseError(
                        f"cause map channel {name!r} not among columns {channels}"
                    )
                indices.add(name_to_idx[name])
            e = events[ordinal]
            events[ordinal] = Event(e.start, e.end, causes=frozenset(indices))

    scored_idx: tuple[int, ...] | None = None
    if scored_channels is not None:
        missing = [c for c in scored_channels if c not in channels]
        if missing:
            raise ParseError(f"scored channels {missing} not among columns {channels}")
        scored_idx = tuple(channels.index(c) for c in scored_channels)

    if entity_id is None:
        entity_id = Path(test_path).stem
    return Entity(
        id=entity_id,
        train=SeriesMatrix(train_values, tuple(channels)),
        test=SeriesMatrix(test_values, tuple(channels)),
        test_labels=labels,
        test_events=EventSet(tuple(events)),
        scored_channels=scored_idx,
    )
