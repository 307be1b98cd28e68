"""Finite acceptors over activity labels.

``Automaton`` is a deterministic, partially-defined acceptor with integer
states.  The module provides construction from finite trace languages,
regular combinators used by the process-tree translation (concatenation,
union, loop, shuffle), determinization, minimization with canonical state
numbering, trimming, and product intersection.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

__all__ = [
    "Automaton",
    "from_traces",
    "trim",
    "minimize",
    "canonicalize",
    "intersect",
    "language_equal",
    "dfa_leaf",
    "dfa_epsilon",
    "concat",
    "union",
    "loop",
    "shuffle",
]


class Automaton:
    """Deterministic finite acceptor; states are 0..n-1, transitions partial.

    ``delta[s]`` maps a label to the successor of state ``s``.  Not every
    state needs an outgoing transition for every label (missing = reject).
    """

    __slots__ = ("initial", "finals", "delta")

    def __init__(self, initial: int, finals: Iterable[int], delta: list[dict[str, int]]):
        self.initial = initial
        self.finals = frozenset(finals)
        self.delta = delta
        n = len(delta)
        if not 0 <= initial < n:
            raise ValueError(f"initial state {initial} out of range for {n} states")
        if any(s < 0 or s >= n for s in self.finals):
            raise ValueError("final state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def deterministic(self) -> bool:
        return True

    def transitions(self) -> Iterator[tuple[int, str, int]]:
        for src, edges in enumerate(self.delta):
            for label, dst in edges.items():
                yield src, label, dst

    def labels(self) -> set[str]:
        return {label for edges in self.delta for label in edges}

    def accepts(self, word: Iterable[str]) -> bool:
        state = self.initial
        for symbol in word:
            nxt = self.delta[state].get(symbol)
            if nxt is None:
                return False
            state = nxt
        return state in self.finals

    def is_trim(self) -> bool:
        return _reachable(self) == set(range(self.n_states)) and (
            _coreachable(self) == set(range(self.n_states))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automaton):
            return NotImplemented
        return (
            self.initial == other.initial
            and self.finals == other.finals
            and self.delta == other.delta
        )

    def __hash__(self):
        return hash(
            (self.initial, self.finals, tuple(frozenset(d.items()) for d in self.delta))
        )

    def __repr__(self):
        return (
            f"Automaton(states={self.n_states}, finals={sorted(self.finals)}, "
            f"transitions={sum(len(d) for d in self.delta)})"
        )


def _reachable(a: Automaton) -> set[int]:
    seen = {a.initial}
    stack = [a.initial]
    while stack:
        s = stack.pop()
        for dst in a.delta[s].values():
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return seen


def _coreachable(a: Automaton) -> set[int]:
    back: list[list[int]] = [[] for _ in range(a.n_states)]
    for src, edges in enumerate(a.delta):
        for dst in edges.values():
            back[dst].append(src)
    seen = set(a.finals)
    stack = list(a.finals)
    while stack:
        s = stack.pop()
        for src in back[s]:
            if src not in seen:
                seen.add(src)
                stack.append(src)
    return seen


def trim(a: Automaton) -> Automaton:
    """Restrict to states both reachable and co-reachable.

    The initial state is always kept, so an empty-language automaton comes
    out as a single non-final state without transitions.
    """
    live = _reachable(a) & _coreachable(a)
    if a.initial not in live:
        return Automaton(0, (), [{}])
    order = sorted(live)
    remap = {old: new for new, old in enumerate(order)}
    delta = [
        {label: remap[dst] for label, dst in a.delta[old].items() if dst in live}
        for old in order
    ]
    return Automaton(remap[a.initial], (remap[f] for f in a.finals if f in live), delta)


def canonicalize(a: Automaton) -> Automaton:
    """Renumber states in breadth-first order, exploring labels sorted.

    Two isomorphic automata canonicalize to equal objects; unreachable
    states are dropped.
    """
    remap = {a.initial: 0}
    order = [a.initial]
    queue = [a.initial]
    while queue:
        nxt = []
        for s in queue:
            for label in sorted(a.delta[s]):
                dst = a.delta[s][label]
                if dst not in remap:
                    remap[dst] = len(order)
                    order.append(dst)
                    nxt.append(dst)
        queue = nxt
    delta = [
        {label: remap[a.delta[old][label]] for label in sorted(a.delta[old])}
        for old in order
    ]
    return Automaton(0, (remap[f] for f in a.finals if f in remap), delta)


def minimize(a: Automaton) -> Automaton:
    """Minimal canonical DFA of the same language (Moore refinement)."""
    a = trim(a)
    if not a.finals:
        return Automaton(0, (), [{}])
    labels = sorted(a.labels())
    n = a.n_states

    def _dense(raw: list) -> list[int]:
        ids: dict = {}
        return [ids.setdefault(r, len(ids)) for r in raw]

    block = _dense([s in a.finals for s in range(n)])
    n_blocks = max(block) + 1
    while True:
        block = _dense(
            [
                (block[s], tuple(
                    block[a.delta[s][label]] if label in a.delta[s] else -1
                    for label in labels
                ))
                for s in range(n)
            ]
        )
        new_count = max(block) + 1
        if new_count == n_blocks:
            break
        n_blocks = new_count
    reps: dict[int, int] = {}
    for s in range(n):
        reps.setdefault(block[s], s)
    delta = [{} for _ in range(n_blocks)]
    for b, rep in reps.items():
        delta[b] = {label: block[dst] for label, dst in a.delta[rep].items()}
    finals = {block[s] for s in a.finals}
    return canonicalize(Automaton(block[a.initial], finals, delta))


def intersect(a: Automaton, b: Automaton) -> Automaton:
    """Trimmed product automaton accepting language(a) & language(b)."""
    pair0 = (a.initial, b.initial)
    remap = {pair0: 0}
    delta: list[dict[str, int]] = [{}]
    queue = deque([pair0])
    order = [pair0]
    while queue:
        pa, pb = pair = queue.popleft()
        src = remap[pair]
        common = sorted(set(a.delta[pa]) & set(b.delta[pb]))
        for label in common:
            dst_pair = (a.delta[pa][label], b.delta[pb][label])
            if dst_pair not in remap:
                remap[dst_pair] = len(order)
                order.append(dst_pair)
                delta.append({})
                queue.append(dst_pair)
            delta[src][label] = remap[dst_pair]
    finals = {
        remap[p] for p in order if p[0] in a.finals and p[1] in b.finals
    }
    return trim(Automaton(0, finals, delta))


def language_equal(a: Automaton, b: Automaton) -> bool:
    """Exact language equality via minimal-automaton isomorphism."""
    return minimize(a) == minimize(b)


# --- minimal DFA of a finite trace language --------------------------------

def from_traces(traces: Iterable[tuple[str, ...]]) -> Automaton:
    """Minimal canonical DFA accepting exactly the given set of traces.

    Built as a prefix tree whose equivalent suffixes are then merged
    bottom-up, which is minimal for acyclic automata.
    """
    children: list[dict[str, int]] = [{}]
    final: list[bool] = [False]
    for trace in traces:
        node = 0
        for symbol in trace:
            nxt = children[node].get(symbol)
            if nxt is None:
                nxt = len(children)
                children[node][symbol] = nxt
                children.append({})
                final.append(False)
            node = nxt
        final[node] = True
    if not any(final):
        raise ValueError("empty trace language")

    register: dict = {}
    rep = [0] * len(children)

    def signature(node: int):
        return final[node], tuple(sorted((l, rep[c]) for l, c in children[node].items()))

    # post-order without recursion: children have higher ids than parents in a
    # trie built by appending, so a reverse sweep visits children first
    for node in range(len(children) - 1, -1, -1):
        sig = signature(node)
        rep[node] = register.setdefault(sig, node)

    keep = sorted(set(rep))
    remap = {old: new for new, old in enumerate(keep)}
    delta = [
        {label: remap[rep[child]] for label, child in children[old].items()}
        for old in keep
    ]
    finals = {remap[old] for old in keep if final[old]}
    return canonicalize(Automaton(remap[rep[0]], finals, delta))


# --- regular combinators over DFAs ------------------------------------------

class _Nfa:
    """Epsilon-NFA scratch structure used only inside the combinators."""

    def __init__(self):
        self.moves: list[dict[str, set[int]]] = []
        self.eps: list[set[int]] = []

    def add_state(self) -> int:
        self.moves.append({})
        self.eps.append(set())
        return len(self.moves) - 1

    def add_edge(self, src: int, label: str | None, dst: int) -> None:
        if label is None:
            self.eps[src].add(dst)
        else:
            self.moves[src].setdefault(label, set()).add(dst)

    def embed(self, dfa: Automaton) -> tuple[int, list[int]]:
        """Copy a DFA into this NFA; returns (initial, finals) as new ids."""
        base = len(self.moves)
        for _ in range(dfa.n_states):
            self.add_state()
        for src, label, dst in dfa.transitions():
            self.add_edge(base + src, label, base + dst)
        return base + dfa.initial, [base + f for f in dfa.finals]

    def to_dfa(self, initial: int, finals: Iterable[int]) -> Automaton:
        """Subset construction with epsilon closures, then minimization."""
        final_set = set(finals)

        def closure(states: frozenset[int]) -> frozenset[int]:
            out = set(states)
            stack = list(states)
            while stack:
                s = stack.pop()
                for t in self.eps[s]:
                    if t not in out:
                        out.add(t)
                        stack.append(t)
            return frozenset(out)

        start = closure(frozenset({initial}))
        remap = {start: 0}
        delta: list[dict[str, int]] = [{}]
        subset_of: list[frozenset[int]] = [start]
        queue = deque([start])
        while queue:
            subset = queue.popleft()
            src = remap[subset]
            targets: dict[str, set[int]] = {}
            for s in subset:
                for label, dsts in self.moves[s].items():
                    targets.setdefault(label, set()).update(dsts)
            for label in sorted(targets):
                dst_subset = closure(frozenset(targets[label]))
                if dst_subset not in remap:
                    remap[dst_subset] = len(subset_of)
                    subset_of.append(dst_subset)
                    delta.append({})
                    queue.append(dst_subset)
                delta[src][label] = remap[dst_subset]
        dfa_finals = {
            remap[subset] for subset in subset_of if subset & final_set
        }
        return minimize(Automaton(0, dfa_finals, delta))


def dfa_leaf(label: str) -> Automaton:
    return Automaton(0, {1}, [{label: 1}, {}])


def dfa_epsilon() -> Automaton:
    return Automaton(0, {0}, [{}])


def concat(a: Automaton, b: Automaton) -> Automaton:
    nfa = _Nfa()
    ia, fa = nfa.embed(a)
    ib, fb = nfa.embed(b)
    for f in fa:
        nfa.add_edge(f, None, ib)
    return nfa.to_dfa(ia, fb)


def union(parts: list[Automaton]) -> Automaton:
    nfa = _Nfa()
    start = nfa.add_state()
    finals: list[int] = []
    for part in parts:
        ip, fp = nfa.embed(part)
        nfa.add_edge(start, None, ip)
        finals.extend(fp)
    return nfa.to_dfa(start, finals)


def loop(do: Automaton, redo: Automaton) -> Automaton:
    """Acceptor of do (redo do)*."""
    nfa = _Nfa()
    ido, fdo = nfa.embed(do)
    iredo, fredo = nfa.embed(redo)
    for f in fdo:
        nfa.add_edge(f, None, iredo)
    for f in fredo:
        nfa.add_edge(f, None, ido)
    return nfa.to_dfa(ido, fdo)


def shuffle(a: Automaton, b: Automaton) -> Automaton:
    """Synchronized shuffle: interleavings of a word of ``a`` with a word of ``b``."""
    pair0 = (a.initial, b.initial)
    remap = {pair0: 0}
    order = [pair0]
    queue = deque([pair0])
    nfa = _Nfa()
    nfa.add_state()
    while queue:
        pa, pb = pair = queue.popleft()
        src = remap[pair]
        successors = [
            (label, (a.delta[pa][label], pb)) for label in sorted(a.delta[pa])
        ] + [
            (label, (pa, b.delta[pb][label])) for label in sorted(b.delta[pb])
        ]
        for label, dst_pair in successors:
            if dst_pair not in remap:
                remap[dst_pair] = nfa.add_state()
                order.append(dst_pair)
                queue.append(dst_pair)
            nfa.add_edge(src, label, remap[dst_pair])
    finals = [remap[p] for p in order if p[0] in a.finals and p[1] in b.finals]
    return nfa.to_dfa(0, finals)
