"""Shared domain types: series matrices, labels, events, entities.

Everything here is immutable after construction and safe to share across
worker threads. Time indices are 0-based throughout; label vectors and
event spans refer to the same axis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]

# Aliases for the array shapes that flow between pipeline stages. They are
# plain ndarrays; the names document intent, the check_* helpers enforce it.
ErrorMatrix = FloatArray      # (n, m) signed reconstruction residuals
ChannelScores = FloatArray    # (n, m) per-channel anomaly scores
ScoreSeries = FloatArray      # (n,) aggregated per-time-point score
LabelVector = IntArray        # (n,) binary flags


class ValidationError(ValueError):
    """A domain invariant was violated."""


class InsufficientDataError(ValidationError):
    """Not enough rows to perform the requested operation."""


class ParseError(ValueError):
    """A data file could not be parsed; message carries the location."""


class ConfigError(ValueError):
    """An experiment or model configuration is invalid."""


class TrainingError(RuntimeError):
    """Model training failed (for example a divergent loss)."""


def validate_labels(labels) -> LabelVector:
    """Coerce to a 1-D int64 array and require every element to be 0 or 1."""
    y = np.asarray(labels)
    if y.ndim != 1:
        raise ValidationError(f"labels must be 1-D, got shape {y.shape}")
    if y.dtype == bool:
        y = y.astype(np.int64)
    if not np.issubdtype(y.dtype, np.integer):
        yf = np.asarray(y, dtype=np.float64)
        if not np.all(np.isfinite(yf)) or np.any(yf != np.floor(yf)):
            raise ValidationError("labels must be integer 0/1 values")
        y = yf.astype(np.int64)
    else:
        y = y.astype(np.int64)
    if y.size and not np.all((y == 0) | (y == 1)):
        bad = y[(y != 0) & (y != 1)][0]
        raise ValidationError(f"labels must be 0 or 1, found {bad}")
    return y


def check_float_matrix(values, name: str = "values") -> FloatArray:
    """Coerce to a finite 2-D float64 array."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValidationError(f"{name} contains NaN or infinite entries")
    return v


def check_score_series(values, name: str = "scores") -> ScoreSeries:
    """Coerce to a finite 1-D float64 array."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise ValidationError(f"{name} must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValidationError(f"{name} contains NaN or infinite entries")
    return v


@dataclass(frozen=True)
class SeriesMatrix:
    """A regularly sampled multivariate series, time x channels.

    Parameters
    ----------
    values : array-like, shape (n, m)
        Finite 64-bit floats, one row per time-point.
    channel_names : sequence of str, optional
        Length m. Generated as ``c0 .. c{m-1}`` when omitted.
    """

    values: FloatArray
    channel_names: tuple[str, ...] = ()

    def __post_init__(self):
        v = np.ascontiguousarray(check_float_matrix(self.values))
        n, m = v.shape
        if n < 1 or m < 1:
            raise ValidationError(f"series must be at least 1x1, got {n}x{m}")
        names = tuple(self.channel_names)
        if not names:
            names = tuple(f"c{i}" for i in range(m))
        if len(names) != m:
            raise ValidationError(
                f"{len(names)} channel names for {m} channels"
            )
        if len(set(names)) != m:
            raise ValidationError("channel names must be unique")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "channel_names", names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class Event:
    """A maximal run of anomalous time-points, inclusive on both ends."""

    start: int
    end: int
    causes: frozenset[int] | None = None

    def __post_init__(self):
        if not (0 <= self.start <= self.end):
            raise ValidationError(
                f"event needs 0 <= start <= end, got ({self.start}, {self.end})"
            )
        if self.causes is not None:
            causes = frozenset(int(c) for c in self.causes)
            if not causes:
                raise ValidationError("event causes, when given, must be non-empty")
            if any(c < 0 for c in causes):
                raise ValidationError("cause channel indices must be >= 0")
            object.__setattr__(self, "causes", causes)

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class EventSet:
    """Events sorted by start, pairwise disjoint and non-adjacent.

    Adjacent runs (no healthy gap between them) are rejected rather than
    merged so that hand-built fixtures stay unambiguous.
    """

    events: tuple[Event, ...] = ()

    def __post_init__(self):
        events = tuple(self.events)
        for prev, cur in zip(events, events[1:]):
            if cur.start <= prev.end + 1:
                raise ValidationError(
                    f"events ({prev.start},{prev.end}) and ({cur.start},{cur.end}) "
                    "overlap or touch; a gap of at least one healthy point is required"
                )
        object.__setattr__(self, "events", events)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i: int) -> Event:
        return self.events[i]

    def spans(self) -> tuple[tuple[int, int], ...]:
        return tuple((e.start, e.end) for e in self.events)


def events_from_labels(labels) -> EventSet:
    """Enumerate maximal runs of 1s as events, in time order."""
    y = validate_labels(labels)
    if y.size == 0:
        return EventSet(())
    edges = np.diff(np.concatenate(([0], y, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return EventSet(tuple(Event(int(s), int(e)) for s, e in zip(starts, ends)))


def labels_from_events(events: EventSet, n: int) -> LabelVector:
    """Exact inverse of :func:`events_from_labels` for events within [0, n)."""
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    y = np.zeros(n, dtype=np.int64)
    for e in events:
        if e.end >= n:
            raise ValidationError(
                f"event ({e.start},{e.end}) out of range for n={n}"
            )
        y[e.start : e.end + 1] = 1
    return y


@dataclass(frozen=True)
class Entity:
    """One physical unit: its train/test series, labels, and events.

    ``test_events`` may be omitted, in which case it is derived from
    ``test_labels``. When provided (for example with cause annotations) its
    spans must agree with the labels exactly. ``scored_channels`` restricts
    score aggregation to a channel subset; None means all channels.
    """

    id: str
    train: SeriesMatrix
    test: SeriesMatrix
    test_labels: LabelVector
    test_events: EventSet | None = None
    scored_channels: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.train.m != self.test.m:
            raise ValidationError(
                f"train has {self.train.m} channels, test has {self.test.m}"
            )
        y = validate_labels(self.test_labels)
        if y.shape[0] != self.test.n:
            raise ValidationError(
                f"{y.shape[0]} labels for {self.test.n} test rows"
            )
        y.flags.writeable = False
        object.__setattr__(self, "test_labels", y)

        derived = events_from_labels(y)
        if self.test_events is None:
            object.__setattr__(self, "test_events", derived)
        else:
            if self.test_events.spans() != derived.spans():
                raise ValidationError(
                    "test_events spans disagree with test_labels runs"
                )
        m = self.test.m
        for e in self.test_events:
            if e.causes is not None and any(c >= m for c in e.causes):
                raise ValidationError(
                    f"event ({e.start},{e.end}) has cause channel >= m={m}"
                )
        if self.scored_channels is not None:
            scored = tuple(sorted({int(c) for c in self.scored_channels}))
            if not scored:
                raise ValidationError("scored_channels must be non-empty when given")
            if scored[0] < 0 or scored[-1] >= m:
                raise ValidationError(
                    f"scored_channels {scored} outside 0..{m - 1}"
                )
            object.__setattr__(self, "scored_channels", scored)

    @property
    def m(self) -> int:
        return self.test.m

    def scored_indices(self) -> IntArray:
        if self.scored_channels is None:
            return np.arange(self.m, dtype=np.int64)
        return np.asarray(self.scored_channels, dtype=np.int64)
