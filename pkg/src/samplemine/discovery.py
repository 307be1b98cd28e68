"""Process discovery: a baseline inductive miner over directly-follows graphs.

``discover`` recursively partitions the directly-follows graph of the log
with four cut rules (exclusive choice, sequence, parallel, loop), falling
back to a flower model when no cut applies.  The returned tree always
accepts every trace of the input log, and the same log always yields the
same tree.
"""

from __future__ import annotations

from .eventlog import DirectlyFollowsProfile, EventLog, Trace, directly_follows
from .processtree import ProcessTree, leaf, loop, par, seq, tau, xor

__all__ = ["discover", "dfg"]

Entries = dict[Trace, int]


def dfg(log: EventLog) -> DirectlyFollowsProfile:
    """Directly-follows profile of a log (alias used by the miner's recursion)."""
    return directly_follows(log)


def discover(log: EventLog) -> ProcessTree:
    """Discover a process tree whose language includes every trace of ``log``."""
    if not log.entries:
        raise ValueError("empty log")
    return _im(dict(log.entries))


def _im(entries: Entries) -> ProcessTree:
    if () in entries:
        rest = {t: m for t, m in entries.items() if t}
        if not rest:
            return tau()
        return xor(tau(), _im(rest))

    alphabet = sorted({a for t in entries for a in t})
    if len(alphabet) == 1:
        a = alphabet[0]
        if all(len(t) == 1 for t in entries):
            return leaf(a)
        return loop(leaf(a), tau())  # single activity repeating: a+

    profile = directly_follows(EventLog(entries))

    parts = _xor_cut(profile)
    if parts:
        return xor(*(_im(sub) for sub in _xor_split(entries, parts)))

    parts = _sequence_cut(profile)
    if parts:
        return seq(*(_im(sub) for sub in _sequence_split(entries, parts)))

    parts = _parallel_cut(profile)
    if parts:
        return par(*(_im(sub) for sub in _parallel_split(entries, parts)))

    parts = _loop_cut(profile)
    if parts:
        sublogs = _loop_split(entries, parts)
        do = _im(sublogs[0])
        redos = [_im(sub) for sub in sublogs[1:]]
        redo = redos[0] if len(redos) == 1 else xor(*redos)
        return loop(do, redo)

    return _flower(alphabet)


def _flower(alphabet: list[str]) -> ProcessTree:
    return loop(tau(), xor(*(leaf(a) for a in sorted(alphabet))))


# --- cut detection -----------------------------------------------------------

def _components(nodes, neighbors) -> list[list[str]]:
    """Connected components as sorted lists, ordered by smallest member."""
    seen = set()
    components = []
    for start in sorted(nodes):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in neighbors(node):
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        seen |= comp
        components.append(sorted(comp))
    return sorted(components, key=lambda c: c[0])


def _xor_cut(profile: DirectlyFollowsProfile) -> list[list[str]] | None:
    edges: dict[str, set[str]] = {a: set() for a in profile.alphabet}
    for a, b in profile.pairs:
        edges[a].add(b)
        edges[b].add(a)
    components = _components(profile.alphabet, lambda n: edges[n])
    return components if len(components) >= 2 else None


def _sequence_cut(profile: DirectlyFollowsProfile) -> list[list[str]] | None:
    nodes = sorted(profile.alphabet)
    succ: dict[str, set[str]] = {a: set() for a in nodes}
    for a, b in profile.pairs:
        succ[a].add(b)
    reach: dict[str, set[str]] = {}
    for a in nodes:
        seen: set[str] = set()
        stack = list(succ[a])
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(succ[x])
        reach[a] = seen

    # strongly connected classes under mutual reachability
    groups: list[set[str]] = []
    assigned: dict[str, int] = {}
    for a in nodes:
        if a in assigned:
            continue
        group = {a} | {b for b in reach[a] if a in reach[b]}
        idx = len(groups)
        groups.append(group)
        for b in group:
            assigned[b] = idx

    def group_reaches(x: set[str], y: set[str]) -> bool:
        return any(b in reach[a] for a in x for b in y)

    # merge pairwise-unreachable groups until the order is total
    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if not group_reaches(groups[i], groups[j]) and not group_reaches(
                    groups[j], groups[i]
                ):
                    groups[i] |= groups[j]
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
    if len(groups) < 2:
        return None
    ordered = sorted(
        groups,
        key=lambda g: sum(1 for other in groups if other is not g and group_reaches(other, g)),
    )
    return [sorted(g) for g in ordered]


def _parallel_cut(profile: DirectlyFollowsProfile) -> list[list[str]] | None:
    nodes = sorted(profile.alphabet)
    pairs = profile.pairs
    broken: dict[str, set[str]] = {a: set() for a in nodes}
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            if (a, b) not in pairs or (b, a) not in pairs:
                broken[a].add(b)
                broken[b].add(a)
    components = _components(nodes, lambda n: broken[n])
    if len(components) < 2:
        return None
    # every component must be able to open and close a trace on its own;
    # components that cannot are folded into the first one that can (all
    # cross-component pairs are bidirectional, so merging stays valid)
    starts = set(profile.start_counts)
    ends = set(profile.end_counts)
    good = [c for c in components if set(c) & starts and set(c) & ends]
    if not good:
        return None
    bad = [c for c in components if not (set(c) & starts and set(c) & ends)]
    if bad:
        sink = set(good[0])
        for c in bad:
            sink |= set(c)
        components = sorted([sorted(sink)] + good[1:], key=lambda c: c[0])
    return components if len(components) >= 2 else None


def _loop_cut(profile: DirectlyFollowsProfile) -> list[list[str]] | None:
    pairs = profile.pairs
    starts = set(profile.start_counts)
    ends = set(profile.end_counts)
    body = starts | ends
    rest = sorted(set(profile.alphabet) - body)
    if not rest:
        return None
    connected: dict[str, set[str]] = {a: set() for a in rest}
    for a, b in pairs:
        if a in connected and b in connected:
            connected[a].add(b)
            connected[b].add(a)
    candidates = _components(rest, lambda n: connected[n])

    redo_parts = []
    for comp in candidates:
        comp_set = set(comp)
        ok = True
        # p1 may be exited only from end activities and re-entered only at starts
        for a, b in pairs:
            if a in body and b in comp_set and a not in ends:
                ok = False
                break
            if a in comp_set and b in body and b not in starts:
                ok = False
                break
        if ok:
            entries_ = {b for a, b in pairs if a in ends and b in comp_set}
            exits = {a for a, b in pairs if a in comp_set and b in starts}
            if not entries_ or not exits:
                ok = False
            else:
                ok = all((a, x) in pairs for a in ends for x in entries_) and all(
                    (x, b) in pairs for x in exits for b in starts
                )
        if ok:
            redo_parts.append(comp)
        else:
            body |= comp_set
    if not redo_parts:
        return None
    return [sorted(body)] + sorted(redo_parts, key=lambda c: c[0])


# --- log splitting -----------------------------------------------------------

def _add(entries: Entries, trace: Trace, mult: int) -> None:
    entries[trace] = entries.get(trace, 0) + mult


def _xor_split(entries: Entries, parts: list[list[str]]) -> list[Entries]:
    index = {a: i for i, p in enumerate(parts) for a in p}
    sublogs: list[Entries] = [{} for _ in parts]
    for trace, mult in entries.items():
        _add(sublogs[index[trace[0]]], trace, mult)
    return sublogs


def _sequence_split(entries: Entries, parts: list[list[str]]) -> list[Entries]:
    index = {a: i for i, p in enumerate(parts) for a in p}
    sublogs: list[Entries] = [{} for _ in parts]
    for trace, mult in entries.items():
        buckets: list[list[str]] = [[] for _ in parts]
        for a in trace:
            buckets[index[a]].append(a)
        for i, bucket in enumerate(buckets):
            _add(sublogs[i], tuple(bucket), mult)
    return sublogs


def _parallel_split(entries: Entries, parts: list[list[str]]) -> list[Entries]:
    sublogs: list[Entries] = [{} for _ in parts]
    part_sets = [set(p) for p in parts]
    for trace, mult in entries.items():
        for i, acts in enumerate(part_sets):
            _add(sublogs[i], tuple(a for a in trace if a in acts), mult)
    return sublogs


def _loop_split(entries: Entries, parts: list[list[str]]) -> list[Entries]:
    index = {a: i for i, p in enumerate(parts) for a in p}
    sublogs: list[Entries] = [{} for _ in parts]
    for trace, mult in entries.items():
        run: list[str] = [trace[0]]
        current = index[trace[0]]
        for a in trace[1:]:
            i = index[a]
            if i == current:
                run.append(a)
            else:
                _add(sublogs[current], tuple(run), mult)
                run = [a]
                current = i
        _add(sublogs[current], tuple(run), mult)
    return sublogs
