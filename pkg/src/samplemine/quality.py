"""Sample-quality measures over directly-follows behavior.

A sample is compared against the expectation scaled down from its parent
log: for each of the parent's ``n`` unique directly-follows pairs the
expected frequency is ``ratio`` times the parent count, and the five
measures quantify how far the sample's observed counts fall from that
expectation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .eventlog import Activity, DirectlyFollowsProfile, EventLog, directly_follows
from .sampling import SampleLog

__all__ = ["QualityReport", "QUALITY_CSV_HEADER", "expected_behavior", "measure"]

Pair = tuple[Activity, Activity]

QUALITY_CSV_HEADER = "ratio,technique,seed,coverage,nmae,nrmse,smape,srmspe"


@dataclass(frozen=True)
class QualityReport:
    """The five sample-quality values for one (parent, sample, ratio) triple.

    ``coverage``, ``smape`` and ``srmspe`` lie in [0, 1]; ``nmae`` and
    ``nrmse`` are nonnegative.  ``n`` is the number of unique
    directly-follows pairs in the parent log.
    """

    coverage: float
    nmae: float
    nrmse: float
    smape: float
    srmspe: float
    n: int
    ratio: float

    def csv_row(self, technique: str, seed: int) -> str:
        return (
            f"{self.ratio!r},{technique},{seed},{self.coverage!r},{self.nmae!r},"
            f"{self.nrmse!r},{self.smape!r},{self.srmspe!r}"
        )


def expected_behavior(
    parent: DirectlyFollowsProfile, ratio: float
) -> list[tuple[Pair, float]]:
    """Expected pair frequencies in a sample drawn at ``ratio``.

    Each parent pair count is scaled linearly by the ratio and kept
    real-valued.  Pairs come out in canonical (lexicographic) order, the
    index order shared with the sampled-behavior vector in ``measure``.
    """
    if not 0.0 < ratio <= 1.0:
        raise ValueError(f"degenerate expectation: ratio must be in (0, 1], got {ratio}")
    return [(pair, ratio * parent.pairs[pair]) for pair in sorted(parent.pairs)]


def measure(
    parent: EventLog | DirectlyFollowsProfile,
    sample: SampleLog | EventLog,
    ratio: float,
) -> QualityReport:
    """Compute coverage, NMAE, NRMSE, sMAPE and sRMSPE of ``sample``.

    ``parent`` may be an event log or its precomputed profile.  The sample
    must be contained in the parent: a directly-follows pair observed in
    the sample but absent from the parent raises ``ValueError``
    ("not a sample").
    """
    profile = parent if isinstance(parent, DirectlyFollowsProfile) else directly_follows(parent)
    sample_log = sample.log if isinstance(sample, SampleLog) else sample
    sample_profile = directly_follows(sample_log)

    expected = expected_behavior(profile, ratio)
    n = len(expected)
    if n == 0:
        raise ValueError("no behavior to compare: parent log has no directly-follows pairs")
    foreign = set(sample_profile.pairs) - set(profile.pairs)
    if foreign:
        raise ValueError(f"not a sample: pairs {sorted(foreign)} absent from parent")

    covered = 0
    abs_sum = 0.0
    sq_sum = 0.0
    e_sum = 0.0
    smape_sum = 0.0
    srmspe_sum = 0.0
    for pair, e_i in expected:
        s_i = sample_profile.pairs.get(pair, 0)
        if s_i >= 1:
            covered += 1
        diff = s_i - e_i
        abs_sum += abs(diff)
        sq_sum += diff * diff
        e_sum += e_i
        term = abs(diff) / (e_i + s_i)
        smape_sum += term
        srmspe_sum += term * term

    return QualityReport(
        coverage=covered / n,
        nmae=abs_sum / e_sum,
        nrmse=math.sqrt(sq_sum / n) / (e_sum / n),
        smape=smape_sum / n,
        srmspe=math.sqrt(srmspe_sum / n),
        n=n,
        ratio=ratio,
    )
