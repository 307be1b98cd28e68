"""Spearman rank correlation with tie handling and two-sided p-values."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import t as student_t

__all__ = ["CorrelationResult", "rank", "spearman"]


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    p_value: float
    n: int


def rank(values) -> np.ndarray:
    """1-based ranks; tied values share the mean of their positional ranks."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise ValueError("rank expects a 1-d vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("rank expects finite values")
    n = len(v)
    order = np.argsort(v, kind="stable")
    ranks = np.empty(n, dtype=float)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and v[order[j + 1]] == v[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x, y, exact: bool = False) -> CorrelationResult:
    """Spearman rank correlation of two equal-length vectors (n >= 3).

    rho is the Pearson correlation of the rank vectors.  The p-value is
    two-sided, from the t-approximation ``t = rho * sqrt((n-2)/(1-rho^2))``
    with n-2 degrees of freedom; ``rho = +-1`` gives p = 0.  With
    ``exact=True`` and n <= 10, p comes from full permutation enumeration
    instead.

    Raises ``ValueError`` for n < 3 and for constant input (zero rank
    variance in either vector).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("spearman expects two 1-d vectors of equal length")
    n = len(x)
    if n < 3:
        raise ValueError(f"spearman needs n >= 3, got {n}")
    rx = rank(x)
    ry = rank(y)
    rho = _pearson(rx, ry)
    if exact:
        if n > 10:
            raise ValueError(f"exact permutation p-values are offered only for n <= 10, got {n}")
        return CorrelationResult(rho, _permutation_p(rx, ry, rho), n)
    if abs(rho) >= 1.0:
        return CorrelationResult(rho, 0.0, n)
    t_stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p = 2.0 * float(student_t.sf(abs(t_stat), n - 2))
    return CorrelationResult(rho, min(p, 1.0), n)


def _pearson(rx: np.ndarray, ry: np.ndarray) -> float:
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sx2 = float((dx * dx).sum())
    sy2 = float((dy * dy).sum())
    if sx2 == 0.0 or sy2 == 0.0:
        raise ValueError("constant input: zero rank variance")
    rho = float((dx * dy).sum()) / math.sqrt(sx2 * sy2)
    return max(-1.0, min(1.0, rho))


def _permutation_p(rx: np.ndarray, ry: np.ndarray, rho: float) -> float:
    n = len(rx)
    threshold = abs(rho) - 1e-12
    hits = 0
    total = 0
    for perm in itertools.permutations(range(n)):
        total += 1
        if abs(_pearson(rx, ry[list(perm)])) >= threshold:
            hits += 1
    return hits / total
