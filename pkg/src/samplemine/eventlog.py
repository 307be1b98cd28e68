"""In-memory event logs, CSV/XES ingestion, and directly-follows profiling.

An event log is a multiset of traces; a trace is a finite sequence of
activity labels.  Logs are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import csv
import gzip
import io
import sys
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime
from typing import BinaryIO, Iterable, Mapping

Activity = str
Trace = tuple[Activity, ...]

__all__ = [
    "Activity",
    "Trace",
    "EventLog",
    "DirectlyFollowsProfile",
    "parse_csv",
    "parse_xes",
    "read_log",
    "write_csv",
    "directly_follows",
]


@dataclass(frozen=True)
class EventLog:
    """Multiset of traces over an activity alphabet.

    ``entries`` maps each distinct trace to its multiplicity (>= 1).  The
    alphabet is always exactly the set of activities occurring in the
    entries.
    """

    entries: Mapping[Trace, int]
    alphabet: frozenset[Activity] = field(init=False)

    def __post_init__(self):
        entries = dict(self.entries)
        for trace, mult in entries.items():
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult} for {trace!r}")
        object.__setattr__(self, "entries", entries)
        alphabet = frozenset(a for trace in entries for a in trace)
        object.__setattr__(self, "alphabet", alphabet)

    @property
    def total_traces(self) -> int:
        return sum(self.entries.values())

    @property
    def total_events(self) -> int:
        return sum(mult * len(trace) for trace, mult in self.entries.items())

    @property
    def unique_traces(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return self.total_traces

    def __eq__(self, other) -> bool:
        if not isinstance(other, EventLog):
            return NotImplemented
        return dict(self.entries) == dict(other.entries)

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    @staticmethod
    def from_traces(traces: Iterable[Iterable[Activity]]) -> "EventLog":
        entries: dict[Trace, int] = {}
        for t in traces:
            trace = tuple(sys.intern(a) for a in t)
            entries[trace] = entries.get(trace, 0) + 1
        return EventLog(entries)


@dataclass(frozen=True)
class DirectlyFollowsProfile:
    """Multiplicity-weighted counts of consecutive activity pairs.

    ``pairs[(a, b)]`` counts, over all trace instances, the positions where
    ``a`` is immediately followed by ``b``.  ``start_counts`` and
    ``end_counts`` tally first and last events of non-empty traces, also
    weighted by trace multiplicity.
    """

    pairs: Mapping[tuple[Activity, Activity], int]
    start_counts: Mapping[Activity, int]
    end_counts: Mapping[Activity, int]
    alphabet: frozenset[Activity]


def directly_follows(log: EventLog) -> DirectlyFollowsProfile:
    """Build the directly-follows profile of ``log``.

    A trace occurring ``m`` times contributes ``m`` to each of its adjacent
    pairs, to the start count of its first event and to the end count of
    its last event.  The empty trace contributes nothing.
    """
    pairs: dict[tuple[Activity, Activity], int] = {}
    starts: dict[Activity, int] = {}
    ends: dict[Activity, int] = {}
    for trace, mult in log.entries.items():
        if not trace:
            continue
        starts[trace[0]] = starts.get(trace[0], 0) + mult
        ends[trace[-1]] = ends.get(trace[-1], 0) + mult
        for a, b in zip(trace, trace[1:]):
            pairs[(a, b)] = pairs.get((a, b), 0) + mult
    return DirectlyFollowsProfile(pairs, starts, ends, log.alphabet)


# --- CSV ------------------------------------------------------------------

def parse_csv(
    source: BinaryIO | bytes,
    case_column: str = "case",
    activity_column: str = "activity",
    timestamp_column: str | None = None,
) -> EventLog:
    """Parse a CSV event stream into an event log.

    The file must have a header row containing ``case_column`` and
    ``activity_column``.  One trace is produced per distinct case id, with
    events in file order, or stably sorted by timestamp when
    ``timestamp_column`` is given (ISO-8601 timestamps).  Identical traces
    are merged with summed multiplicity.

    Raises ``ValueError`` on missing header columns, on an unparsable
    timestamp, and on a file with zero data rows ("empty log").
    """
    data = source if isinstance(source, bytes) else source.read()
    text = data.decode("utf-8")
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty log: no header row") from None
    try:
        case_idx = header.index(case_column)
        act_idx = header.index(activity_column)
    except ValueError:
        raise ValueError(
            f"missing header column: need {case_column!r} and {activity_column!r}, "
            f"got {header!r}"
        ) from None
    ts_idx = None
    if timestamp_column is not None:
        try:
            ts_idx = header.index(timestamp_column)
        except ValueError:
            raise ValueError(f"missing header column: {timestamp_column!r}") from None

    cases: dict[str, list] = {}
    n_rows = 0
    for row in reader:
        if not row:
            continue
        n_rows += 1
        case = row[case_idx]
        activity = sys.intern(row[act_idx])
        if ts_idx is None:
            cases.setdefault(case, []).append(activity)
        else:
            cases.setdefault(case, []).append((_parse_timestamp(row[ts_idx]), activity))
    if n_rows == 0:
        raise ValueError("empty log")

    traces = []
    for case, events in cases.items():
        if ts_idx is not None:
            events.sort(key=lambda e: e[0])  # sort() is stable: file order kept on ties
            events = [a for _, a in events]
        traces.append(events)
    return EventLog.from_traces(traces)


def _parse_timestamp(text: str) -> datetime:
    # fromisoformat in 3.10 rejects a trailing 'Z'; normalize it first
    normalized = text.strip()
    if normalized.endswith(("Z", "z")):
        normalized = normalized[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(normalized)
    except ValueError:
        raise ValueError(f"unparsable timestamp: {text!r}") from None


def write_csv(log: EventLog, case_column: str = "case", activity_column: str = "activity") -> bytes:
    """Serialize ``log`` to the CSV log format, bit-exactly reproducible.

    Traces are emitted in sorted order with synthetic case ids ``c1..cN``,
    one instance per multiplicity.  Fields are quoted only when they
    contain a comma (labels with embedded quotes or newlines additionally
    get quoted so the output re-parses).
    """
    out = [f"{_csv_field(case_column)},{_csv_field(activity_column)}\r\n"]
    case_no = 0
    for trace in sorted(log.entries):
        for _ in range(log.entries[trace]):
            case_no += 1
            for activity in trace:
                out.append(f"c{case_no},{_csv_field(activity)}\r\n")
            if not trace:
                # the empty trace has no rows; it cannot be represented
                raise ValueError("cannot serialize a log containing the empty trace to CSV")
    return "".join(out).encode("utf-8")


def _csv_field(value: str) -> str:
    if any(c in value for c in ',"\r\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


# --- XES ------------------------------------------------------------------

_GZIP_MAGIC = b"\x1f\x8b"


def parse_xes(source: BinaryIO | bytes, lifecycle_filter: bool = False) -> EventLog:
    """Parse a XES document (plain or gzip-compressed) into an event log.

    Only the minimal XES subset is read: one trace per ``<trace>`` element,
    event label from the ``concept:name`` string attribute.  Events without
    a ``concept:name`` are skipped.  With ``lifecycle_filter`` enabled only
    events whose ``lifecycle:transition`` equals ``"complete"``
    (case-insensitive) are kept; events without the attribute are treated
    as complete.

    Raises ``ValueError`` on malformed XML and on documents without trace
    elements ("empty log").
    """
    data = source if isinstance(source, bytes) else source.read()
    if data[:2] == _GZIP_MAGIC:
        data = gzip.decompress(data)
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ValueError(f"malformed XES document: {exc}") from None

    traces = []
    for trace_el in root.iter():
        if _local_name(trace_el.tag) != "trace":
            continue
        events = []
        for event_el in trace_el:
            if _local_name(event_el.tag) != "event":
                continue
            name = None
            lifecycle = None
            for attr in event_el:
                key = attr.get("key")
                if key == "concept:name":
                    name = attr.get("value")
                elif key == "lifecycle:transition":
                    lifecycle = attr.get("value")
            if name is None:
                continue
            if lifecycle_filter and lifecycle is not None and lifecycle.lower() != "complete":
                continue
            events.append(name)
        traces.append(events)
    if not traces:
        raise ValueError("empty log: no trace elements")
    return EventLog.from_traces(traces)


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def read_log(path: str, lifecycle_filter: bool = False) -> EventLog:
    """Load an event log from ``path``, dispatching on the extension.

    ``.xes`` and ``.xes.gz`` are parsed as XES, everything else as CSV with
    the default ``case,activity`` columns; a ``timestamp`` column, when
    present in the header, orders the events.
    """
    lowered = path.lower()
    with open(path, "rb") as fh:
        if lowered.endswith((".xes", ".xes.gz", ".xes.gzip")):
            return parse_xes(fh, lifecycle_filter=lifecycle_filter)
        data = fh.read()
    header = data.split(b"\n", 1)[0].decode("utf-8").rstrip("\r")
    names = [name.strip() for name in header.split(",")]
    timestamp_column = "timestamp" if "timestamp" in names else None
    return parse_csv(data, timestamp_column=timestamp_column)
