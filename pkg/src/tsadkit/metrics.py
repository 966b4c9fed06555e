"""Evaluation metrics: point, point-adjusted, and composite F-scores,
ranking metrics, and the random-score baseline.

Conventions: every 0/0 ratio defines to 0 (a trivial detector scores 0,
never 1), events are maximal runs of the truth vector, and an event
counts as detected when at least one of its points is predicted.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .core import (
    LabelVector,
    ScoreSeries,
    ValidationError,
    check_score_series,
    events_from_labels,
    validate_labels,
)


@dataclass(frozen=True)
class ConfusionCounts:
    """Point-level and event-level confusion counts."""

    tp_t: int
    fp_t: int
    fn_t: int
    tn_t: int
    tp_e: int
    fn_e: int

    @property
    def n(self) -> int:
        return self.tp_t + self.fp_t + self.fn_t + self.tn_t

    @property
    def n_events(self) -> int:
        return self.tp_e + self.fn_e


@dataclass(frozen=True)
class MetricReport:
    """All detection metrics for one prediction against one truth vector.

    prec_t equals prec_point by definition (both are the point precision);
    both fields are kept because they feed different formulas downstream.
    auroc and auprc are None when no scores were given or the truth is
    single-class.
    """

    f1: float
    fpa1: float
    fc1: float
    prec_t: float
    rec_e: float
    prec_point: float
    rec_point: float
    auroc: float | None = None
    auprc: float | None = None


def _pair(pred, truth) -> tuple[LabelVector, LabelVector]:
    p = validate_labels(pred)
    y = validate_labels(truth)
    if p.shape[0] != y.shape[0]:
        raise ValidationError(f"{p.shape[0]} predictions for {y.shape[0]} labels")
    return p, y


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def confusion(pred, truth) -> ConfusionCounts:
    """Point counts by element-wise comparison; event counts by the
    at-least-one-true-positive rule over runs of the truth vector."""
    p, y = _pair(pred, truth)
    tp_t = int(np.sum((p == 1) & (y == 1)))
    fp_t = int(np.sum((p == 1) & (y == 0)))
    fn_t = int(np.sum((p == 0) & (y == 1)))
    tn_t = int(np.sum((p == 0) & (y == 0)))
    events = events_from_labels(y)
    tp_e = sum(1 for e in events if p[e.start : e.end + 1].any())
    return ConfusionCounts(tp_t, fp_t, fn_t, tn_t, tp_e, len(events) - tp_e)


def f1_point(counts: ConfusionCounts) -> float:
    """Point-wise F1 from confusion counts.

    Computed as one division of integer counts, 2tp/(2tp+fp+fn), so the
    result is the correctly rounded value of the exact rational. Chaining
    precision, recall and the harmonic mean can land one ulp off.
    """
    return _ratio(2 * counts.tp_t, 2 * counts.tp_t + counts.fp_t + counts.fn_t)


def adjusted_prediction(pred, truth) -> LabelVector:
    """Expand every detected true event to its full span in the prediction."""
    p, y = _pair(pred, truth)
    adjusted = p.copy()
    for e in events_from_labels(y):
        if p[e.start : e.end + 1].any():
            adjusted[e.start : e.end + 1] = 1
    return adjusted


def f1_point_adjusted(pred, truth) -> float:
    """Point-adjusted F1: point F1 of the event-expanded prediction.

    Detecting a single point of a long event earns credit for the whole
    span, which is exactly the leniency this metric is known for.
    """
    adjusted = adjusted_prediction(pred, truth)
    return f1_point(confusion(adjusted, truth))


def fc1(pred, truth) -> tuple[float, float, float]:
    """Composite F-score: harmonic mean of point precision and event recall.

    Returns (fc1, prec_t, rec_e). Any 0/0 component defines to 0, which
    makes fc1 itself 0 whenever either component vanishes.
    """
    counts = confusion(pred, truth)
    prec_t = _ratio(counts.tp_t, counts.tp_t + counts.fp_t)
    rec_e = _ratio(counts.tp_e, counts.n_events)
    # single division of integer counts, same rounding policy as f1_point;
    # algebraically 2*prec_t*rec_e/(prec_t + rec_e) with 0/0 -> 0
    value = _ratio(
        2 * counts.tp_t * counts.tp_e,
        counts.tp_t * counts.n_events + counts.tp_e * (counts.tp_t + counts.fp_t),
    )
    return value, prec_t, rec_e


def auroc(scores: ScoreSeries, truth) -> float:
    """Area under the ROC curve via midranks (the Mann-Whitney statistic)."""
    s = check_score_series(scores)
    y = validate_labels(truth)
    if s.shape[0] != y.shape[0]:
        raise ValidationError(f"{s.shape[0]} scores for {y.shape[0]} labels")
    n_pos = int(y.sum())
    n_neg = y.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValidationError("auroc needs both classes present in the truth")
    ranks = rankdata(s)
    rank_sum = float(ranks[y == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def auprc(scores: ScoreSeries, truth) -> float:
    """Area under the precision-recall curve as average precision.

    AP = sum_i (R_i - R_{i-1}) * P_i over descending distinct-score cuts;
    tied scores enter as one block.
    """
    s = check_score_series(scores)
    y = validate_labels(truth)
    if s.shape[0] != y.shape[0]:
        raise ValidationError(f"{s.shape[0]} scores for {y.shape[0]} labels")
    total_pos = int(y.sum())
    if total_pos == 0:
        raise ValidationError("auprc needs at least one positive in the truth")
    order = np.argsort(-s, kind="stable")
    sorted_scores = s[order]
    change = np.flatnonzero(np.diff(sorted_scores) != 0)
    prefix = np.concatenate((change + 1, [s.shape[0]]))
    tp = np.cumsum(y[order])[prefix - 1].astype(np.float64)
    precision = tp / prefix
    recall = tp / total_pos
    recall_steps = np.diff(np.concatenate(([0.0], recall)))
    return float(np.sum(recall_steps * precision))


def rad_scores(n: int, seed: int) -> ScoreSeries:
    """The random baseline: i.i.d. uniform [0, 1] scores, fixed by seed."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    return np.random.default_rng(seed).random(n)


def compute_report(pred, truth, scores: ScoreSeries | None = None) -> MetricReport:
    """Every metric for one (prediction, truth) pair.

    Ranking metrics are filled in when scores are given and the truth has
    both classes; otherwise they stay None.
    """
    counts = confusion(pred, truth)
    prec_point = _ratio(counts.tp_t, counts.tp_t + counts.fp_t)
    rec_point = _ratio(counts.tp_t, counts.tp_t + counts.fn_t)
    composite, prec_t, rec_e = fc1(pred, truth)
    roc = prc = None
    if scores is not None:
        n_pos = counts.tp_t + counts.fn_t
        if 0 < n_pos < counts.n:
            roc = auroc(scores, truth)
            prc = auprc(scores, truth)
    return MetricReport(
        f1=f1_point(counts),
        fpa1=f1_point_adjusted(pred, truth),
        fc1=composite,
        prec_t=prec_t,
        rec_e=rec_e,
        prec_point=prec_point,
        rec_point=rec_point,
        auroc=roc,
        auprc=prc,
    )
