"""Shared test utilities: brute-force oracles and random input builders.

The oracles here deliberately avoid the library's own computation paths:
language checks enumerate words by walking automaton transitions, and the
entropy oracle counts words of the short-circuited language with exact
integer arithmetic.
"""

from __future__ import annotations

import math

import numpy as np

from samplemine.automata import Automaton
from samplemine.eventlog import EventLog


def enumerate_words(a: Automaton, max_len: int) -> set[tuple[str, ...]]:
    """All accepted words of length <= max_len, by exhaustive DFS."""
    out: set[tuple[str, ...]] = set()

    def walk(state: int, word: tuple[str, ...]) -> None:
        if state in a.finals:
            out.add(word)
        if len(word) == max_len:
            return
        for label, dst in a.delta[state].items():
            walk(dst, word + (label,))

    walk(a.initial, ())
    return out


def short_circuit_word_counts(a: Automaton, max_len: int) -> list[int]:
    """counts[n] = number of words of length exactly n accepted by the
    short-circuited automaton (finals wired back to the initial state with
    a fresh symbol).  Exact integer dynamic programming."""
    n_states = a.n_states
    # path counts from the initial state, walking the augmented transitions
    current = [0] * n_states
    current[a.initial] = 1
    counts = [sum(current[f] for f in a.finals)]
    for _ in range(max_len):
        nxt = [0] * n_states
        for src in range(n_states):
            c = current[src]
            if not c:
                continue
            for dst in a.delta[src].values():
                nxt[dst] += c
            if src in a.finals:  # the fresh short-circuit symbol
                nxt[a.initial] += c
        current = nxt
        counts.append(sum(current[f] for f in a.finals))
    return counts


def entropy_oracle(a: Automaton, max_len: int = 80, window: int = 40) -> float:
    """Least-squares slope of log2(cumulative word count) over the last
    ``window`` lengths: the growth rate of the short-circuited language."""
    counts = short_circuit_word_counts(a, max_len)
    cumulative = []
    total = 0
    for c in counts:
        total += c
        cumulative.append(total)
    xs, ys = [], []
    for n in range(max_len - window, max_len + 1):
        if cumulative[n] > 0:
            xs.append(float(n))
            ys.append(math.log2(cumulative[n]))
    if len(xs) < 2:
        return 0.0
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)


def random_log(rng: np.random.Generator, max_unique: int = 6, max_len: int = 5,
               max_mult: int = 5, alphabet: str = "abcd") -> EventLog:
    """Small random event log with at least one non-empty trace."""
    entries = {}
    for _ in range(int(rng.integers(1, max_unique + 1))):
        length = int(rng.integers(1, max_len + 1))
        trace = tuple(alphabet[i] for i in rng.integers(0, len(alphabet), size=length))
        entries[trace] = int(rng.integers(1, max_mult + 1))
    return EventLog(entries)
