"""Slow, from-definition oracle implementations used to check the fast paths.

Everything here favors obviousness over speed: explicit loops, slicing,
no shared code with the package internals.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy import special


def events_by_scan(labels):
    """Run-length scan for contiguous stretches of 1s: list of (start, end)."""
    spans = []
    start = None
    for i, v in enumerate(labels):
        if v == 1 and start is None:
            start = i
        elif v == 0 and start is not None:
            spans.append((start, i - 1))
            start = None
    if start is not None:
        spans.append((start, len(labels) - 1))
    return spans


def _prf(tp, fp, fn):
    prec = tp / (tp + fp) if tp + fp else 0.0
    rec = tp / (tp + fn) if tp + fn else 0.0
    # one integer division, so the float is the exact rational rounded once
    f = 2 * tp / (2 * tp + fp + fn) if 2 * tp + fp + fn else 0.0
    return prec, rec, f


def f1_naive(pred, truth):
    tp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 1)
    fp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 0)
    fn = sum(1 for p, t in zip(pred, truth) if p == 0 and t == 1)
    return _prf(tp, fp, fn)[2]


def fpa1_naive(pred, truth):
    adjusted = list(pred)
    for start, end in events_by_scan(truth):
        if any(adjusted[start : end + 1]):
            for i in range(start, end + 1):
                adjusted[i] = 1
    return f1_naive(adjusted, truth)


def fc1_naive(pred, truth):
    tp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 1)
    fp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 0)
    spans = events_by_scan(truth)
    detected = sum(1 for s, e in spans if any(pred[s : e + 1]))
    # harmonic mean of tp/(tp+fp) and detected/len(spans) as one division
    denom = tp * len(spans) + detected * (tp + fp)
    return 2 * tp * detected / denom if denom else 0.0


def _exact_metric(pred, truth, metric):
    """F-scores in exact rational arithmetic, for unambiguous tie-breaking."""
    if metric == "fpa1":
        pred = list(pred)
        for start, end in events_by_scan(truth):
            if any(pred[start : end + 1]):
                for i in range(start, end + 1):
                    pred[i] = 1
    tp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 1)
    fp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 0)
    fn = sum(1 for p, t in zip(pred, truth) if p == 0 and t == 1)
    if metric in ("f1", "fpa1"):
        denom = 2 * tp + fp + fn
        return Fraction(2 * tp, denom) if denom else Fraction(0)
    spans = events_by_scan(truth)
    detected = sum(1 for s, e in spans if any(pred[s : e + 1]))
    denom = tp * len(spans) + detected * (tp + fp)
    return Fraction(2 * tp * detected, denom) if denom else Fraction(0)


def best_f_exhaustive(scores, truth, metric):
    """Try every distinct score plus +inf as a threshold, largest first."""
    candidates = [math.inf] + sorted(set(float(s) for s in scores), reverse=True)
    best_th, best_val = math.inf, Fraction(-1)
    for th in candidates:
        pred = [1 if s >= th else 0 for s in scores]
        val = _exact_metric(pred, truth, metric)
        if val > best_val:
            best_val, best_th = val, th
    return best_th, float(best_val)


def rolling_mean_std(stream, w, t):
    """Sample stats of the w most recent values ending at t (inclusive)."""
    lo = max(0, t + 1 - w)
    window = stream[lo : t + 1]
    mu = float(np.mean(window))
    sd = float(np.std(window, ddof=1)) if len(window) > 1 else 0.0
    return mu, sd


def gauss_nls(z):
    """-log10 of the Gaussian survival function, safe for z <= 8."""
    return float(-np.log10(special.ndtr(-z)))


def fd_gradient(loss_fn, params, h=1e-5):
    """Central finite differences of loss_fn over a list of arrays."""
    grads = []
    for p in params:
        g = np.zeros_like(p)
        flat_p = p.ravel()
        flat_g = g.ravel()
        for i in range(flat_p.size):
            orig = flat_p[i]
            flat_p[i] = orig + h
            up = loss_fn()
            flat_p[i] = orig - h
            down = loss_fn()
            flat_p[i] = orig
            flat_g[i] = (up - down) / (2 * h)
        grads.append(g)
    return grads


def auroc_pairwise(scores, truth):
    """Probability a random positive outscores a random negative."""
    pos = [s for s, t in zip(scores, truth) if t == 1]
    neg = [s for s, t in zip(scores, truth) if t == 0]
    wins = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1.0
            elif p == q:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def auprc_cuts(scores, truth):
    """Average precision over distinct-score cuts, largest score first."""
    order = sorted(set(float(s) for s in scores), reverse=True)
    n_pos = sum(truth)
    total = 0.0
    prev_rec = 0.0
    for th in order:
        pred = [1 if s >= th else 0 for s in scores]
        tp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 1)
        fp = sum(1 for p, t in zip(pred, truth) if p == 1 and t == 0)
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / n_pos
        total += prec * (rec - prev_rec)
        prev_rec = rec
    return total


def convolve_edge(values, weights):
    """1-d correlation with edge replication; weights length 2r+1."""
    r = (len(weights) - 1) // 2
    n = len(values)
    out = np.zeros(n)
    for t in range(n):
        acc = 0.0
        for j, w in enumerate(weights):
            idx = min(max(t + j - r, 0), n - 1)
            acc += w * values[idx]
        out[t] = acc
    return out


def midranks(values):
    """Average ranks with midrank ties, rank 1 for the smallest value."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def friedman_naive(rank_means, k, n_groups):
    """Friedman chi-square from the average ranks."""
    ssq = sum(r * r for r in rank_means)
    return 12.0 * n_groups / (k * (k + 1)) * (ssq - k * (k + 1) ** 2 / 4.0)


def hochberg_naive(p_values, alpha):
    """Step-up over sorted p-values; reject all at or below the cutoff."""
    h = len(p_values)
    order = sorted(range(h), key=lambda i: p_values[i])
    cutoff = -1
    for rank_from_top in range(h, 0, -1):
        idx = order[rank_from_top - 1]
        if p_values[idx] <= alpha / (h - rank_from_top + 1):
            cutoff = rank_from_top
            break
    reject = [False] * h
    for pos in range(cutoff):
        reject[order[pos]] = True
    return reject
