"""Process trees: model class, random generation, play-out, automaton view.

A process tree composes activity leaves and silent steps with four
operators: ``seq`` (sequence), ``xor`` (exclusive choice), ``par``
(parallel interleaving) and ``loop`` (do-redo).  Trees serialize to a
canonical text form such as ``seq(xor(a,b),and(c,tau))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import automata
from .automata import Automaton
from .eventlog import EventLog

__all__ = [
    "ProcessTree",
    "GeneratorParams",
    "SimulationParams",
    "leaf",
    "tau",
    "seq",
    "xor",
    "par",
    "loop",
    "generate",
    "simulate",
    "to_automaton",
    "format_tree",
    "parse_tree",
    "max_trace_length",
    "activity_labels",
]

_OPERATORS = ("seq", "xor", "par", "loop")


@dataclass(frozen=True)
class ProcessTree:
    kind: str  # "leaf" | "tau" | "seq" | "xor" | "par" | "loop"
    label: str | None = None
    children: tuple["ProcessTree", ...] = ()

    def __post_init__(self):
        if self.kind == "leaf":
            if not self.label or self.children:
                raise ValueError("leaf needs a non-empty label and no children")
        elif self.kind == "tau":
            if self.label or self.children:
                raise ValueError("tau carries no label or children")
        elif self.kind == "loop":
            if len(self.children) != 2:
                raise ValueError("loop takes exactly a do-child and a redo-child")
        elif self.kind in ("seq", "xor", "par"):
            if len(self.children) < 2:
                raise ValueError(f"{self.kind} needs at least 2 children")
        else:
            raise ValueError(f"unknown node kind {self.kind!r}")

    def activities(self) -> frozenset[str]:
        if self.kind == "leaf":
            return frozenset({self.label})
        return frozenset(a for c in self.children for a in c.activities())

    def __str__(self) -> str:
        return format_tree(self)


def leaf(label: str) -> ProcessTree:
    return ProcessTree("leaf", label=label)


def tau() -> ProcessTree:
    return ProcessTree("tau")


def seq(*children: ProcessTree) -> ProcessTree:
    return ProcessTree("seq", children=tuple(children))


def xor(*children: ProcessTree) -> ProcessTree:
    return ProcessTree("xor", children=tuple(children))


def par(*children: ProcessTree) -> ProcessTree:
    return ProcessTree("par", children=tuple(children))


def loop(do: ProcessTree, redo: ProcessTree) -> ProcessTree:
    return ProcessTree("loop", children=(do, redo))


# --- random generation ------------------------------------------------------

@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for random tree generation.

    Trees are grown top-down over a budget of distinct activities; at each
    node the budget forces a leaf (budget one) or a binary operator drawn
    by normalized weight.  With ``silent_probability`` an xor node gains an
    extra silent child, making that choice skippable.  When loops have
    positive weight, generation redraws until the tree contains at least
    one loop, so every true process has an unbounded language.
    """

    alphabet_size: int = 14
    min_activities: int = 8
    max_activities: int = 12
    weight_seq: float = 0.40
    weight_xor: float = 0.20
    weight_par: float = 0.20
    weight_loop: float = 0.20
    silent_probability: float = 0.10
    seed: int = 0

    def __post_init__(self):
        if self.min_activities < 1 or self.min_activities > self.max_activities:
            raise ValueError("need 1 <= min_activities <= max_activities")
        if self.alphabet_size < self.min_activities:
            raise ValueError("alphabet_size smaller than min_activities")
        weights = (self.weight_seq, self.weight_xor, self.weight_par, self.weight_loop)
        if any(w < 0 for w in weights) or sum(weights) <= 0:
            raise ValueError("operator weights must be nonnegative and not all zero")
        if not 0.0 <= self.silent_probability < 1.0:
            raise ValueError("silent_probability must be in [0, 1)")


@dataclass(frozen=True)
class SimulationParams:
    trace_count: int = 5000
    loop_continue_probability: float = 0.55
    max_loop_iterations: int = 6

    def __post_init__(self):
        if self.trace_count < 1:
            raise ValueError("trace_count must be >= 1")
        if not 0.0 <= self.loop_continue_probability < 1.0:
            raise ValueError("loop_continue_probability must be in [0, 1)")
        if self.max_loop_iterations < 0:
            raise ValueError("max_loop_iterations must be >= 0")


def activity_labels(n: int) -> list[str]:
    """Spreadsheet-style labels: a..z, aa, ab, ..."""
    labels = []
    for i in range(n):
        name = ""
        k = i
        while True:
            name = chr(ord("a") + k % 26) + name
            k = k // 26 - 1
            if k < 0:
                break
        labels.append(name)
    return labels


def generate(params: GeneratorParams) -> ProcessTree:
    """Draw a random process tree; deterministic in ``params.seed``.

    The distinct leaf activities number between ``min_activities`` and
    ``max_activities`` and no label occurs twice.
    """
    rng = np.random.default_rng(params.seed)
    universe = activity_labels(params.alphabet_size)
    weights = np.array(
        [params.weight_seq, params.weight_xor, params.weight_par, params.weight_loop],
        dtype=float,
    )
    weights = weights / weights.sum()
    want_loop = params.weight_loop > 0 and params.max_activities >= 2
    tree = None
    for _ in range(200):
        target = int(rng.integers(params.min_activities, params.max_activities + 1))
        picked = [
            universe[i] for i in rng.choice(params.alphabet_size, size=target, replace=False)
        ]
        tree = _grow(rng, picked, weights, params.silent_probability)
        if not want_loop or target < 2 or _has_loop(tree):
            return tree
    return tree


def _has_loop(tree: ProcessTree) -> bool:
    if tree.kind == "loop":
        return True
    return any(_has_loop(c) for c in tree.children)


def _grow(rng, acts: list[str], weights, silent_p: float) -> ProcessTree:
    if len(acts) == 1:
        return leaf(acts[0])
    op = _OPERATORS[rng.choice(4, p=weights)]
    cut = int(rng.integers(1, len(acts)))
    left = _grow(rng, acts[:cut], weights, silent_p)
    right = _grow(rng, acts[cut:], weights, silent_p)
    if op == "loop":
        return loop(left, right)
    if op == "xor" and rng.random() < silent_p:
        return xor(left, right, tau())
    return ProcessTree(op, children=(left, right))


# --- play-out ---------------------------------------------------------------

def simulate(tree: ProcessTree, params: SimulationParams, seed: int) -> EventLog:
    """Sample ``params.trace_count`` independent traces from the tree.

    Loops run their do-child once, then with ``loop_continue_probability``
    execute redo and do again, up to ``max_loop_iterations`` extra rounds,
    so play-out always terminates.
    """
    rng = np.random.default_rng(seed)
    traces = [_playout(tree, rng, params) for _ in range(params.trace_count)]
    return EventLog.from_traces(traces)


def _playout(node: ProcessTree, rng, params: SimulationParams) -> list[str]:
    if node.kind == "leaf":
        return [node.label]
    if node.kind == "tau":
        return []
    if node.kind == "seq":
        out: list[str] = []
        for child in node.children:
            out.extend(_playout(child, rng, params))
        return out
    if node.kind == "xor":
        child = node.children[int(rng.integers(len(node.children)))]
        return _playout(child, rng, params)
    if node.kind == "par":
        parts = [_playout(child, rng, params) for child in node.children]
        return _interleave(rng, parts)
    # loop
    do, redo = node.children
    out = _playout(do, rng, params)
    for _ in range(params.max_loop_iterations):
        if rng.random() >= params.loop_continue_probability:
            break
        out.extend(_playout(redo, rng, params))
        out.extend(_playout(do, rng, params))
    return out


def _interleave(rng, parts: list[list[str]]) -> list[str]:
    # picking the next source with probability proportional to its remaining
    # length makes every merge order equally likely
    idx = [0] * len(parts)
    remaining = [len(p) for p in parts]
    total = sum(remaining)
    out = []
    while total:
        r = int(rng.integers(total))
        for i, rem in enumerate(remaining):
            if r < rem:
                out.append(parts[i][idx[i]])
                idx[i] += 1
                remaining[i] -= 1
                total -= 1
                break
            r -= rem
    return out


def max_trace_length(tree: ProcessTree, max_loop_iterations: int) -> int:
    """Upper bound on play-out trace length under the loop cap."""
    if tree.kind == "leaf":
        return 1
    if tree.kind == "tau":
        return 0
    lengths = [max_trace_length(c, max_loop_iterations) for c in tree.children]
    if tree.kind in ("seq", "par"):
        return sum(lengths)
    if tree.kind == "xor":
        return max(lengths)
    do_len, redo_len = lengths
    return (max_loop_iterations + 1) * do_len + max_loop_iterations * redo_len


# --- automaton view ---------------------------------------------------------

def to_automaton(tree: ProcessTree) -> Automaton:
    """Minimal deterministic acceptor of exactly the tree's trace language."""
    if tree.kind == "leaf":
        return automata.dfa_leaf(tree.label)
    if tree.kind == "tau":
        return automata.dfa_epsilon()
    parts = [to_automaton(c) for c in tree.children]
    if tree.kind == "seq":
        acc = parts[0]
        for nxt in parts[1:]:
            acc = automata.concat(acc, nxt)
        return acc
    if tree.kind == "xor":
        return automata.union(parts)
    if tree.kind == "par":
        acc = parts[0]
        for nxt in parts[1:]:
            acc = automata.shuffle(acc, nxt)
        return acc
    return automata.loop(parts[0], parts[1])


# --- text form ---------------------------------------------------------------

_RESERVED = {"seq", "xor", "and", "loop", "tau"}
_SPECIAL = set("(),'")


def _quote(label: str) -> str:
    if (
        not label
        or label in _RESERVED
        or any(c in _SPECIAL or c.isspace() for c in label)
    ):
        return "'" + label.replace("'", "''") + "'"
    return label


def format_tree(tree: ProcessTree) -> str:
    """Canonical text form; ``par`` is rendered as ``and``."""
    if tree.kind == "leaf":
        return _quote(tree.label)
    if tree.kind == "tau":
        return "tau"
    name = {"seq": "seq", "xor": "xor", "par": "and", "loop": "loop"}[tree.kind]
    return name + "(" + ",".join(format_tree(c) for c in tree.children) + ")"


def parse_tree(text: str) -> ProcessTree:
    """Parse the canonical text form back into a tree."""
    tokens = _tokenize(text)
    pos = 0

    def parse_node() -> ProcessTree:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree text")
        kind_tok, value = tokens[pos]
        pos += 1
        if kind_tok == "quoted":
            return leaf(value)
        if kind_tok != "word":
            raise ValueError(f"unexpected token {value!r}")
        if pos < len(tokens) and tokens[pos] == ("punct", "("):
            if value not in ("seq", "xor", "and", "loop"):
                raise ValueError(f"unknown operator {value!r}")
            pos += 1
            children = [parse_node()]
            while pos < len(tokens) and tokens[pos] == ("punct", ","):
                pos += 1
                children.append(parse_node())
            if pos >= len(tokens) or tokens[pos] != ("punct", ")"):
                raise ValueError("missing ')' in tree text")
            pos += 1
            if value == "loop":
                if len(children) != 2:
                    raise ValueError("loop takes exactly two children")
                return loop(children[0], children[1])
            kind = {"seq": "seq", "xor": "xor", "and": "par"}[value]
            return ProcessTree(kind, children=tuple(children))
        if value == "tau":
            return tau()
        return leaf(value)

    node = parse_node()
    if pos != len(tokens):
        raise ValueError(f"trailing content in tree text: {tokens[pos:]}")
    return node


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "(),":
            tokens.append(("punct", c))
            i += 1
        elif c == "'":
            i += 1
            chunk = []
            while i < len(text):
                if text[i] == "'":
                    if i + 1 < len(text) and text[i + 1] == "'":
                        chunk.append("'")
                        i += 2
                        continue
                    i += 1
                    break
                chunk.append(text[i])
                i += 1
            else:
                raise ValueError("unterminated quoted label")
            tokens.append(("quoted", "".join(chunk)))
        else:
            j = i
            while j < len(text) and text[j] not in "(),'" and not text[j].isspace():
                j += 1
            tokens.append(("word", text[i:j]))
            i = j
    return tokens
