"""Regenerate the bundled synthetic benchmark log, tests/data/standin.xes.gz.

The stand-in is the play-out of a fixed random process tree (generator
seed 11, 2500 traces, simulation seed 99), serialized as gzip-compressed
XES with one complete lifecycle event per activity.  Rerunning this script
reproduces the file byte-for-byte.
"""

import gzip
import io
import os
import sys

from samplemine import GeneratorParams, SimulationParams, generate, simulate

TREE_SEED = 11
SIM_SEED = 99
TRACES = 2500


def to_xes(log) -> bytes:
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<log xes.version="1.0" xmlns="http://www.xes-standard.org/">\n')
    case = 0
    for trace in sorted(log.entries):
        for _ in range(log.entries[trace]):
            case += 1
            out.write("  <trace>\n")
            out.write(f'    <string key="concept:name" value="case{case}"/>\n')
            for activity in trace:
                out.write(
                    f'    <event><string key="concept:name" value="{activity}"/>'
                    '<string key="lifecycle:transition" value="complete"/></event>\n'
                )
            out.write("  </trace>\n")
    out.write("</log>\n")
    return out.getvalue().encode()


tree = generate(GeneratorParams(seed=TREE_SEED))
print("stand-in true process:", tree)
log = simulate(tree, SimulationParams(trace_count=TRACES), seed=SIM_SEED)
print(f"{log.total_traces} traces, {log.unique_traces} unique, "
      f"{log.total_events} events, {len(log.alphabet)} activities")

target = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
    os.path.dirname(__file__), "..", "tests", "data", "standin.xes.gz"
)
with open(target, "wb") as fh:
    fh.write(gzip.compress(to_xes(log), mtime=0))
print("written to", os.path.normpath(target))
