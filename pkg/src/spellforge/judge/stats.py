"""Validation statistics for the automated judge.

All implemented from the definitional formulas; each has an exact
independent oracle in the test suite (pair enumeration for AUC, sign
enumeration for the Wilcoxon test, rational-arithmetic hand computation
for the agreement coefficients), so no statistics library is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

GOOD, BAD = "good", "bad"


def _average_ranks(values: list[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1  # average rank, 1-based
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


@dataclass(frozen=True)
class AucResult:
    auc: float
    best_f1: float
    threshold: float


def roc_auc(scores: list[float], labels: list[str]) -> AucResult:
    """Rank-statistic AUC with ties counted half, plus the F1 achieved by
    the best observed cut point (score >= threshold classifies good)."""
    if len(scores) != len(labels):
        raise ValueError("scores and labels must have equal length")
    goods = [s for s, l in zip(scores, labels) if l == GOOD]
    bads = [s for s, l in zip(scores, labels) if l == BAD]
    if not goods or not bads:
        raise ValueError("both classes must be present")
    wins = 0.0
    for g in goods:
        for b in bads:
            if g > b:
                wins += 1.0
            elif g == b:
                wins += 0.5
    auc = wins / (len(goods) * len(bads))

    best_f1, best_threshold = 0.0, min(scores)
    for threshold in sorted(set(scores)):
        tp = sum(1 for s in goods if s >= threshold)
        fp = sum(1 for s in bads if s >= threshold)
        fn = len(goods) - tp
        if tp == 0:
            continue
        f1 = 2 * tp / (2 * tp + fp + fn)
        if f1 > best_f1:
            best_f1, best_threshold = f1, threshold
    return AucResult(auc=auc, best_f1=best_f1, threshold=best_threshold)


@dataclass(frozen=True)
class WilcoxonResult:
    v: float
    p: float
    n: int


def wilcoxon_signed_rank(paired_diffs: list[float]) -> WilcoxonResult:
    """Signed-rank test. Zeros are dropped; ties share average ranks.
    Exact two-sided p by enumeration for n <= 25, else the normal
    approximation with continuity correction."""
    diffs = [d for d in paired_diffs if d != 0]
    if not diffs:
        raise ValueError("all differences are zero")
    if len(diffs) < 5:
        raise ValueError("need at least 5 non-zero differences")
    n = len(diffs)
    ranks = _average_ranks([abs(d) for d in diffs])
    v = sum(r for r, d in zip(ranks, diffs) if d > 0)
    total = sum(ranks)  # n(n+1)/2 regardless of ties

    if n <= 25:
        p = _exact_two_sided_p(ranks, v, total)
    else:
        mean = total / 2
        var = sum(r * r for r in ranks) / 4
        if var == 0:
            raise ValueError("zero variance in ranks")
        correction = 0.5 if v != mean else 0.0
        z = (abs(v - mean) - correction) / math.sqrt(var)
        p = math.erfc(z / math.sqrt(2))
    return WilcoxonResult(v=v, p=min(p, 1.0), n=n)


def _exact_two_sided_p(ranks: list[float], v: float, total: float) -> float:
    scaled = [round(r * 2) for r in ranks]  # average ranks are half-integers
    scaled_total = sum(scaled)
    counts = [0] * (scaled_total + 1)
    counts[0] = 1
    for r in scaled:
        for s in range(scaled_total, r - 1, -1):
            counts[s] += counts[s - r]
    v_scaled = round(v * 2)
    lo = min(v_scaled, scaled_total - v_scaled)
    hi = max(v_scaled, scaled_total - v_scaled)
    below = sum(counts[: lo + 1])
    above = sum(counts[hi:])
    return (below + above) / float(2 ** len(ranks))


def spearman_rho(a: list[float], b: list[float]) -> float | None:
    """Rank correlation with average ranks. None when either side has
    zero variance (undefined, deliberately not 0)."""
    if len(a) != len(b):
        raise ValueError("rating vectors must have equal length")
    ra, rb = _average_ranks(list(a)), _average_ranks(list(b))
    ma, mb = sum(ra) / len(ra), sum(rb) / len(rb)
    da = [x - ma for x in ra]
    db = [x - mb for x in rb]
    ssa = sum(x * x for x in da)
    ssb = sum(x * x for x in db)
    if ssa == 0 or ssb == 0:
        return None
    return sum(x * y for x, y in zip(da, db)) / math.sqrt(ssa * ssb)


def weighted_kappa(a: list[int], b: list[int], k: int = 5) -> float | None:
    """Cohen's kappa with quadratic weights w_ij = 1 - (i-j)^2/(k-1)^2."""
    if len(a) != len(b):
        raise ValueError("rating vectors must have equal length")
    n = len(a)
    observed = [[0.0] * k for _ in range(k)]
    for x, y in zip(a, b):
        if not (1 <= x <= k and 1 <= y <= k):
            raise ValueError(f"ratings must lie in 1..{k}")
        observed[x - 1][y - 1] += 1
    row = [sum(observed[i]) for i in range(k)]
    col = [sum(observed[i][j] for i in range(k)) for j in range(k)]
    weight = [[1 - ((i - j) ** 2) / ((k - 1) ** 2) for j in range(k)] for i in range(k)]
    p_o = sum(weight[i][j] * observed[i][j] for i in range(k) for j in range(k)) / n
    p_e = sum(weight[i][j] * row[i] * col[j] for i in range(k) for j in range(k)) / (n * n)
    if p_e == 1:
        return None
    return (p_o - p_e) / (1 - p_e)


def icc_2_1(a: list[float], b: list[float]) -> float | None:
    """ICC(2,1): two-way random effects, absolute agreement, single rater."""
    if len(a) != len(b):
        raise ValueError("rating vectors must have equal length")
    n, k = len(a), 2
    rows = list(zip(a, b))
    grand = sum(a) / n / 2 + sum(b) / n / 2
    row_means = [(x + y) / 2 for x, y in rows]
    col_means = [sum(a) / n, sum(b) / n]
    ss_rows = k * sum((m - grand) ** 2 for m in row_means)
    ss_cols = n * sum((m - grand) ** 2 for m in col_means)
    ss_total = sum((v - grand) ** 2 for row in rows for v in row)
    ss_error = ss_total - ss_rows - ss_cols
    msr = ss_rows / (n - 1)
    msc = ss_cols / (k - 1)
    mse = ss_error / ((n - 1) * (k - 1))
    denominator = msr + (k - 1) * mse + (k / n) * (msc - mse)
    if denominator == 0:
        return None
    return (msr - mse) / denominator


@dataclass(frozen=True)
class IRRReport:
    """Agreement between two raters on one scale."""

    spearman_rho: float | None
    weighted_kappa: float | None
    icc: float | None
    n: int


def irr(ratings_a: list[int], ratings_b: list[int]) -> IRRReport:
    if len(ratings_a) != len(ratings_b):
        raise ValueError("rating vectors must have equal length")
    if len(ratings_a) < 3:
        raise ValueError("need at least 3 paired ratings")
    return IRRReport(
        spearman_rho=spearman_rho(ratings_a, ratings_b),
        weighted_kappa=weighted_kappa(ratings_a, ratings_b),
        icc=icc_2_1(ratings_a, ratings_b),
        n=len(ratings_a),
    )
