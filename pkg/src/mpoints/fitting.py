"""Least-squares fits of N(B) ~ c * B^a * (log B)^(b-1) on count series.

This is the only module that touches floating point; everything upstream
stays exact.  Samples are weighted equally in log space; bounds below 3
are dropped because the log log regressor degenerates there.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .enumeration import CountSeries


class FitError(Exception):
    pass


@dataclass
class FitResult:
    log_c: float
    a_hat: float
    b_minus_1_hat: float
    a_fixed: bool
    b_fixed: bool
    residual_sum: float
    stderr: dict
    nsamples: int

    def summary(self) -> str:
        return ("logC=%.4f aHat=%.4f%s bMinus1=%.4f%s rss=%.3g n=%d"
                % (self.log_c, self.a_hat, " (fixed)" if self.a_fixed else "",
                   self.b_minus_1_hat, " (fixed)" if self.b_fixed else "",
                   self.residual_sum, self.nsamples))


def _design(series: CountSeries):
    rows = []
    for B, N in series.samples:
        if B < 3:
            warnings.warn("dropping bound %d < 3 (log log singularity)" % B)
            continue
        if N <= 0:
            continue
        rows.append((math.log(B), math.log(math.log(B)), math.log(N)))
    if len(rows) < 4:
        raise FitError("need at least 4 usable samples, got %d" % len(rows))
    logb = [r[0] for r in rows]
    if max(logb) - min(logb) < 3 * math.log(2) - 1e-9:
        raise FitError("bounds must spread over at least 3 doublings")
    return rows


def _lstsq(X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise FitError("degenerate design matrix")
    coef, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    rss = float(resid @ resid)
    dof = max(len(y) - X.shape[1], 1)
    cov = rss / dof * np.linalg.inv(X.T @ X)
    return coef, rss, np.sqrt(np.diag(cov))


def fit_power_log(series: CountSeries, mode="free", value=None) -> FitResult:
    """Fit log N = logC + a log B + (b-1) log log B.

    mode "free" fits all three parameters; ("fixed-a", a) and
    ("fixed-b", b) freeze one exponent.
    """
    rows = _design(series)
    lb = [r[0] for r in rows]
    llb = [r[1] for r in rows]
    ln = [r[2] for r in rows]
    if mode == "free":
        X = [[1.0, x, z] for x, z in zip(lb, llb)]
        coef, rss, se = _lstsq(X, ln)
        return FitResult(coef[0], coef[1], coef[2], False, False, rss,
                         {"log_c": se[0], "a": se[1], "b_minus_1": se[2]}, len(rows))
    if mode == "fixed-a":
        a = float(value)
        y = [z - a * x for x, z in zip(lb, ln)]
        X = [[1.0, w] for w in llb]
        coef, rss, se = _lstsq(X, y)
        return FitResult(coef[0], a, coef[1], True, False, rss,
                         {"log_c": se[0], "b_minus_1": se[1]}, len(rows))
    if mode == "fixed-b":
        bm1 = float(value) - 1.0
        y = [z - bm1 * w for w, z in zip(llb, ln)]
        X = [[1.0, x] for x in lb]
        coef, rss, se = _lstsq(X, y)
        return FitResult(coef[0], coef[1], bm1, False, True, rss,
                         {"log_c": se[0], "a": se[1]}, len(rows))
    raise FitError("unknown fit mode %r" % mode)


def model_compare(series: CountSeries, a, b_candidates):
    """Rank candidate log exponents at a fixed power exponent.

    Fits log(N / B^a) = logC + (b-1) log log B for each candidate b-1 and
    returns [(candidate, residual_sum, log_c)] sorted by residual.
    """
    rows = _design(series)
    a = float(a)
    out = []
    for cand in b_candidates:
        cand = float(cand)
        resid = []
        vals = []
        for x, w, z in rows:
            vals.append(z - a * x - cand * w)
        c = sum(vals) / len(vals)
        rss = sum((v - c) ** 2 for v in vals)
        out.append((cand, rss, c))
    out.sort(key=lambda t: t[1])
    return out
