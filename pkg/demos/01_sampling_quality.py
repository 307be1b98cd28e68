"""Draw samples from an event log and score how well they preserve it.

A small log is built by hand, then sampled with the three techniques at a
few ratios.  The five quality measures compare each sample's
directly-follows counts against the expectation scaled from the parent:
coverage should rise toward 1 and the error measures fall toward 0 as the
ratio grows.
"""

from samplemine import EventLog, draw_sample, measure
from samplemine.quality import QUALITY_CSV_HEADER

log = EventLog.from_traces(
    [["register", "check", "approve", "ship"]] * 40
    + [["register", "check", "reject"]] * 25
    + [["register", "approve", "ship"]] * 20
    + [["register", "check", "check", "approve", "ship"]] * 15
)
print(f"parent log: {log.total_traces} traces, {log.unique_traces} unique, "
      f"{len(log.alphabet)} activities")
print()
print(QUALITY_CSV_HEADER)
for technique in ("simple", "stratified", "stratified_squared"):
    for ratio in (0.1, 0.3, 0.6, 0.9):
        sample = draw_sample(log, ratio, seed=7, technique=technique)
        report = measure(log, sample, ratio)
        print(report.csv_row(technique, 7))
