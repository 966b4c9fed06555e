"""Thresholds turning a score series into binary predictions.

Predictions follow the >= rule: a point is anomalous when its score is at
or above the threshold. The one documented exception is top-k with ties
at the boundary, where earlier time-points win so the positive count is
exactly k.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ConfigError,
    LabelVector,
    ScoreSeries,
    ValidationError,
    check_score_series,
    events_from_labels,
    validate_labels,
)

BEST_F_METRICS = ("f1", "fpa1", "fc1")


@dataclass(frozen=True)
class ThresholdResult:
    threshold: float
    predictions: LabelVector
    method: str
    metadata: dict

    def __post_init__(self):
        preds = validate_labels(self.predictions)
        preds.flags.writeable = False
        object.__setattr__(self, "predictions", preds)


def threshold_top_k(scores: ScoreSeries, k: int) -> ThresholdResult:
    """Mark exactly the k highest-scoring time-points as anomalous.

    Ties at the k-th score resolve by earlier-time priority, so the
    positive count is k for every input, all-tied scores included.
    """
    s = check_score_series(scores)
    n = s.shape[0]
    if not (0 <= k <= n):
        raise ValidationError(f"k must be in 0..{n}, got {k}")
    preds = np.zeros(n, dtype=np.int64)
    if k == 0:
        return ThresholdResult(float("inf"), preds, "top_k", {"k": 0})
    order = np.argsort(-s, kind="stable")
    preds[order[:k]] = 1
    return ThresholdResult(float(s[order[k - 1]]), preds, "top_k", {"k": int(k)})


def threshold_tail_p(scores: ScoreSeries, m_scored: int, neg_log_eps: int) -> ThresholdResult:
    """Fixed threshold m_scored * neg_log_eps on summed survival scores.

    For a Gauss-family score summed over m channels, a threshold of
    -m*log10(eps) flags points whose average channel survival probability
    is below eps. neg_log_eps is a positive integer, conventionally 1..5.
    """
    s = check_score_series(scores)
    if m_scored < 1:
        raise ValidationError(f"m_scored must be >= 1, got {m_scored}")
    if int(neg_log_eps) != neg_log_eps or neg_log_eps < 1:
        raise ValidationError(f"neg_log_eps must be an integer >= 1, got {neg_log_eps}")
    threshold = float(m_scored * int(neg_log_eps))
    preds = (s >= threshold).astype(np.int64)
    return ThresholdResult(
        threshold,
        preds,
        "tail_p",
        {"m_scored": int(m_scored), "neg_log_eps": int(neg_log_eps)},
    )


def threshold_best_f(scores: ScoreSeries, truth, metric: str = "fc1") -> ThresholdResult:
    """The threshold maximizing f1, fpa1, or fc1 against the given truth.

    Candidates are the distinct score values plus +inf; all three metrics
    are step functions of the threshold, so nothing between distinct
    values can do better. Ties in the metric resolve toward the larger
    threshold (fewer positives). Evaluation-only: requires test labels.

    The sweep is incremental, O(n log n): points enter in descending
    score order and point/event counts update per distinct-value group.
    """
    if metric not in BEST_F_METRICS:
        raise ConfigError(f"metric must be one of {BEST_F_METRICS}, got {metric!r}")
    s = check_score_series(scores)
    y = validate_labels(truth)
    n = s.shape[0]
    if n == 0:
        raise ValidationError("cannot threshold an empty score series")
    if y.shape[0] != n:
        raise ValidationError(f"{y.shape[0]} labels for {n} scores")

    order = np.argsort(-s, kind="stable")
    sorted_scores = s[order]
    change = np.flatnonzero(np.diff(sorted_scores) != 0)
    prefix = np.concatenate((change + 1, [n]))  # positives at each candidate

    tp_cum = np.cumsum(y[order])
    tp = tp_cum[prefix - 1].astype(np.float64)
    pos = prefix.astype(np.float64)
    fp = pos - tp
    total_pos = float(y.sum())
    fn = total_pos - tp

    events = events_from_labels(y)
    n_events = len(events)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    if n_events:
        first_hit = np.array(
            [rank[e.start : e.end + 1].min() for e in events], dtype=np.int64
        )
        lengths = np.array([e.length for e in events], dtype=np.float64)
        hit_order = np.argsort(first_hit)
        first_sorted = first_hit[hit_order]
        covered_cum = np.concatenate(([0.0], np.cumsum(lengths[hit_order])))
        detected = np.searchsorted(first_sorted, prefix, side="left").astype(np.float64)
        covered = covered_cum[detected.astype(np.int64)]
    else:
        detected = np.zeros(prefix.shape[0])
        covered = np.zeros(prefix.shape[0])

    # prepend the +inf candidate: zero positives
    tp = np.concatenate(([0.0], tp))
    fp = np.concatenate(([0.0], fp))
    fn = np.concatenate(([total_pos], fn))
    pos = np.concatenate(([0.0], pos))
    detected = np.concatenate(([0.0], detected))
    covered = np.concatenate(([0.0], covered))

    if metric == "f1":
        denom = 2.0 * tp + fp + fn
        values = np.divide(2.0 * tp, denom, out=np.zeros_like(denom), where=denom > 0)
    elif metric == "fpa1":
        fn_adj = total_pos - covered
        denom = 2.0 * covered + fp + fn_adj
        values = np.divide(2.0 * covered, denom, out=np.zeros_like(denom), where=denom > 0)
    else:  # fc1; integer-count form so exact ties compare equal in floats
        denom = tp * n_events + detected * pos
        values = np.divide(
            2.0 * tp * detected, denom, out=np.zeros_like(denom), where=denom > 0
        )

    best = int(np.argmax(values))  # first max = largest threshold
    if best == 0:
        threshold = float("inf")
    else:
        threshold = float(sorted_scores[prefix[best - 1] - 1])
    preds = (s >= threshold).astype(np.int64)
    return ThresholdResult(
        threshold,
        preds,
        "best_f",
        {"metric": metric, "value": float(values[best])},
    )
