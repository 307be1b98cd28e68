"""Entropy-based precision and recall between a log and a model.

Both sides are viewed as languages (the log's distinct traces; the model's
trace language as an automaton).  Each language is made infinite by
short-circuiting final states back to the initial state, and its
topological entropy is the base-2 logarithm of the spectral radius of the
resulting transition-count matrix.  Precision divides the entropy of the
intersection by the entropy of the model, recall by the entropy of the
log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from . import automata
from .automata import Automaton, intersect
from .eventlog import EventLog
from .processtree import ProcessTree, to_automaton

__all__ = [
    "Automaton",
    "ConformanceResult",
    "CONFORMANCE_CSV_HEADER",
    "log_automaton",
    "intersect",
    "short_circuit_entropy",
    "precision_recall",
]

_REL_TOL = 1e-12
_MAX_ITER = 10**6

CONFORMANCE_CSV_HEADER = "precision,recall,ent_log,ent_model,ent_intersection"


@dataclass(frozen=True)
class ConformanceResult:
    precision: float
    recall: float
    ent_log: float
    ent_model: float
    ent_intersection: float

    def csv_row(self) -> str:
        return (
            f"{self.precision!r},{self.recall!r},{self.ent_log!r},"
            f"{self.ent_model!r},{self.ent_intersection!r}"
        )


def log_automaton(log: EventLog) -> Automaton:
    """Minimal DFA of the set of distinct traces (multiplicities ignored)."""
    if not log.entries:
        raise ValueError("empty log")
    return automata.from_traces(log.entries.keys())


def short_circuit_entropy(a: Automaton) -> float:
    """Topological entropy of the short-circuited language of ``a``.

    Every final state gets one fresh-symbol transition back to the initial
    state; the entropy is ``log2`` of the spectral radius of the resulting
    transition-count matrix, computed by power iteration on ``A + I`` with
    Collatz-Wielandt bounds (relative tolerance 1e-12, capped at 1e6
    iterations).  The empty language and the language {epsilon} give 0.
    """
    if not a.finals:
        return 0.0
    if not a.is_trim():
        raise ValueError("automaton must be trimmed (all states reachable and co-reachable)")
    n = a.n_states
    counts: dict[tuple[int, int], int] = {}
    for src, _, dst in a.transitions():
        counts[(src, dst)] = counts.get((src, dst), 0) + 1
    for f in a.finals:
        counts[(f, a.initial)] = counts.get((f, a.initial), 0) + 1
    for s in range(n):  # power iteration runs on A + I
        counts[(s, s)] = counts.get((s, s), 0) + 1

    rows = [src for src, _ in counts]
    cols = [dst for _, dst in counts]
    vals = [float(c) for c in counts.values()]
    # the short-circuit edges make the graph strongly connected, so A + I
    # is primitive and the Collatz-Wielandt bounds close geometrically
    if n > 64:
        matrix = scipy.sparse.csr_array((vals, (rows, cols)), shape=(n, n))
    else:
        matrix = np.zeros((n, n))
        matrix[rows, cols] = vals

    v = np.full(n, 1.0 / n)
    hi = float("inf")
    lo = 0.0
    for _ in range(_MAX_ITER):
        w = matrix @ v
        ratios = w / v
        lo = float(ratios.min())
        hi = float(ratios.max())
        if hi - lo <= _REL_TOL * hi:
            break
        v = w / w.max()
    rho = max((lo + hi) / 2.0 - 1.0, 1.0)
    return math.log2(rho)


def precision_recall(log: EventLog, model: ProcessTree | Automaton) -> ConformanceResult:
    """Entropy-based precision and recall of ``model`` against ``log``.

    When the model (or log) entropy is zero, i.e. its language is a single
    word, precision (recall) is 1 if the intersection equals that language
    and 0 otherwise.
    """
    if not log.entries:
        raise ValueError("empty log")
    la = log_automaton(log)
    ma = model if isinstance(model, Automaton) else to_automaton(model)
    ma = automata.minimize(ma)
    inter = automata.minimize(automata.intersect(la, ma))

    ent_log = short_circuit_entropy(la)
    ent_model = short_circuit_entropy(ma)
    ent_inter = short_circuit_entropy(inter)

    if ent_model > 0.0:
        precision = min(max(ent_inter / ent_model, 0.0), 1.0)
    else:
        precision = 1.0 if inter == ma else 0.0
    if ent_log > 0.0:
        recall = min(max(ent_inter / ent_log, 0.0), 1.0)
    else:
        recall = 1.0 if inter == la else 0.0
    return ConformanceResult(precision, recall, ent_log, ent_model, ent_inter)
