"""Trace sampling from event logs: simple random, stratified, stratified squared.

All techniques are pure functions of ``(log, ratio, seed)``.  Counts are
rounded with the half-to-even rule, and the random generator is a seeded
PCG64 so samples are reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eventlog import EventLog, Trace

__all__ = [
    "SampleLog",
    "round_half_even",
    "simple_random",
    "stratified",
    "stratified_squared",
    "draw_sample",
    "TECHNIQUES",
]


@dataclass(frozen=True)
class SampleLog:
    """A sample drawn from a parent log, with its provenance.

    Invariant: the sample contains no trace absent from the parent, and no
    trace with higher multiplicity than in the parent.
    """

    log: EventLog
    source_total: int
    ratio: float
    technique: str
    seed: int


def round_half_even(x: float) -> int:
    """Round to the nearest integer, halves to the nearest even integer.

    Applies IEEE-754 round-half-to-even semantics to the exact value of
    ``x`` (Python's built-in ``round`` on floats).
    """
    if not np.isfinite(x):
        raise ValueError(f"cannot round non-finite value {x!r}")
    return round(x)


def _check_ratio(ratio: float) -> None:
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"sampling ratio must be in [0, 1], got {ratio}")


def _strata(log: EventLog) -> list[tuple[Trace, int]]:
    # canonical order makes every technique deterministic
    return sorted(log.entries.items())


def simple_random(log: EventLog, ratio: float, seed: int) -> SampleLog:
    """Draw ``round_half_even(ratio * total_traces)`` trace instances
    uniformly at random without replacement.

    Instances of the same unique trace are interchangeable, so the draw is
    realized as a multivariate hypergeometric split over the unique-trace
    strata, which is distribution-identical to enumerating instances.
    """
    _check_ratio(ratio)
    total = log.total_traces
    k = round_half_even(ratio * total)
    strata = _strata(log)
    rng = np.random.default_rng(seed)
    counts = rng.multivariate_hypergeometric([m for _, m in strata], k)
    entries = {t: int(c) for (t, _), c in zip(strata, counts) if c > 0}
    return SampleLog(EventLog(entries), total, ratio, "simple", seed)


def stratified(log: EventLog, ratio: float, seed: int) -> SampleLog:
    """Sample ``round_half_even(ratio * m)`` instances from each stratum.

    Strata are the unique traces (multiplicity ``m``).  The count
    computation is deterministic; ``seed`` is unused but retained for
    interface uniformity with the other techniques.
    """
    _check_ratio(ratio)
    entries = {}
    for trace, mult in _strata(log):
        c = round_half_even(ratio * mult)
        if c > 0:
            entries[trace] = c
    return SampleLog(EventLog(entries), log.total_traces, ratio, "stratified", seed)


def stratified_squared(log: EventLog, ratio: float, seed: int) -> SampleLog:
    """Stratified sampling topped up to the expected overall sample size.

    Starting from the stratified sample, while the sample is smaller than
    ``round_half_even(ratio * total_traces)`` and some unique trace is
    still entirely absent, one instance of the most frequent absent unique
    trace is added (ties broken by lexicographic trace order).
    """
    _check_ratio(ratio)
    base = stratified(log, ratio, seed)
    entries = dict(base.log.entries)
    expected = round_half_even(ratio * log.total_traces)
    size = sum(entries.values())
    if size < expected:
        excluded = [(trace, mult) for trace, mult in _strata(log) if trace not in entries]
        excluded.sort(key=lambda tm: (-tm[1], tm[0]))
        for trace, _ in excluded:
            if size >= expected:
                break
            entries[trace] = 1
            size += 1
    return SampleLog(EventLog(entries), log.total_traces, ratio, "stratified_squared", seed)


TECHNIQUES = {
    "simple": simple_random,
    "stratified": stratified,
    "stratified_squared": stratified_squared,
}


def draw_sample(log: EventLog, ratio: float, seed: int, technique: str = "simple") -> SampleLog:
    """Dispatch to a sampling technique by name."""
    try:
        fn = TECHNIQUES[technique]
    except KeyError:
        raise ValueError(
            f"unknown sampling technique {technique!r}; expected one of {sorted(TECHNIQUES)}"
        ) from None
    return fn(log, ratio, seed)
