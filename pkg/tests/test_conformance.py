import math

import numpy as np
import pytest

from samplemine.automata import Automaton, canonicalize, from_traces, minimize
from samplemine.conformance import (
    log_automaton,
    precision_recall,
    short_circuit_entropy,
)
from samplemine.eventlog import EventLog
from samplemine.processtree import leaf, loop, par, seq, tau, to_automaton, xor
from helpers import entropy_oracle, enumerate_words


def log_of(*traces) -> EventLog:
    return EventLog.from_traces([list(t) for t in traces])


# --- log automaton ---------------------------------------------------------------

def test_log_automaton_single_trace():
    a = log_automaton(EventLog({("a",): 5}))
    assert a.n_states == 2
    assert enumerate_words(a, 2) == {("a",)}


def test_log_automaton_shares_prefixes():
    a = log_automaton(log_of("ab", "ac"))
    assert enumerate_words(a, 3) == {("a", "b"), ("a", "c")}


def test_log_automaton_empty_trace():
    a = log_automaton(EventLog({(): 1}))
    assert a.initial in a.finals
    assert enumerate_words(a, 2) == {()}


def test_log_automaton_rejects_empty_log():
    with pytest.raises(ValueError, match="empty log"):
        log_automaton(EventLog({}))


# --- short-circuit entropy ---------------------------------------------------------

def test_entropy_single_self_loop():
    a = Automaton(0, {0}, [{"a": 0}])
    assert short_circuit_entropy(a) == 1.0  # log2(a-loop + short-circuit loop)


def test_entropy_of_epsilon_language():
    assert short_circuit_entropy(from_traces([()])) == 0.0


def test_entropy_of_empty_language():
    assert short_circuit_entropy(Automaton(0, (), [{}])) == 0.0


def test_entropy_two_letters():
    a = from_traces([("a",), ("b",)])
    value = short_circuit_entropy(a)
    assert abs(value - 0.5) < 1e-9
    assert abs(value - entropy_oracle(a)) < 0.05


def test_entropy_rejects_untrimmed():
    # state 2 is unreachable junk
    a = Automaton(0, {1}, [{"a": 1}, {}, {"b": 1}])
    with pytest.raises(ValueError, match="trimmed"):
        short_circuit_entropy(a)


def test_entropy_invariant_under_minimization_and_renaming():
    a = Automaton(0, {2, 3}, [{"a": 1}, {"b": 2, "c": 3}, {"a": 0}, {"a": 0}])
    m = minimize(a)
    perm = [2, 0, 3, 1]  # old state -> new state
    renamed_delta = [{} for _ in range(4)]
    for src, label, dst in a.transitions():
        renamed_delta[perm[src]][label] = perm[dst]
    renamed = Automaton(perm[0], {perm[f] for f in a.finals}, renamed_delta)
    e = short_circuit_entropy
    assert m.n_states < a.n_states  # states 2 and 3 merge
    assert abs(e(a) - e(m)) < 1e-9
    assert abs(e(a) - e(renamed)) < 1e-9


def test_entropy_against_word_count_oracle_random():
    rng = np.random.default_rng(101)
    produced = 0
    seed = 0
    while produced < 10:
        seed += 1
        local = np.random.default_rng(seed)
        n = int(local.integers(2, 8))
        delta = []
        for _ in range(n):
            edges = {}
            for label in "abc":
                if local.random() < 0.5:
                    edges[label] = int(local.integers(n))
            delta.append(edges)
        finals = {int(s) for s in local.integers(0, n, size=2)}
        a = minimize(Automaton(0, finals, delta))
        if not a.finals or a.n_states < 2:
            continue
        produced += 1
        assert abs(short_circuit_entropy(a) - entropy_oracle(a)) <= 0.05


# --- precision and recall --------------------------------------------------------------

def test_equal_languages_give_perfect_scores():
    log = log_of("a", "b")
    result = precision_recall(log, xor(leaf("a"), leaf("b")))
    assert result.precision == 1.0
    assert result.recall == 1.0


def test_log_subset_of_model_gives_recall_one():
    log = log_of("ab")
    model = xor(seq(leaf("a"), leaf("b")), seq(leaf("b"), leaf("a")))
    result = precision_recall(log, model)
    assert result.recall == 1.0
    assert result.precision < 1.0


def test_flower_model_is_imprecise():
    log = log_of("a", "b")
    flower = loop(tau(), xor(leaf("a"), leaf("b")))
    result = precision_recall(log, flower)
    assert result.recall == 1.0
    assert result.precision < 1.0
    # flower over {a,b} short-circuits to a 3-way loop: entropy log2(3)
    assert abs(result.ent_model - math.log2(3)) < 1e-9
    assert abs(result.ent_log - 0.5) < 1e-9
    assert abs(result.precision - 0.5 / math.log2(3)) < 1e-9


def test_single_word_conventions():
    log = log_of("ab")
    exact = seq(leaf("a"), leaf("b"))
    result = precision_recall(log, exact)
    assert result.ent_model == 0.0
    assert result.precision == 1.0 and result.recall == 1.0
    other = seq(leaf("b"), leaf("a"))
    mismatch = precision_recall(log, other)
    assert mismatch.precision == 0.0 and mismatch.recall == 0.0


def test_accepts_prebuilt_automaton():
    log = log_of("ab", "ba")
    direct = precision_recall(log, par(leaf("a"), leaf("b")))
    via_automaton = precision_recall(log, to_automaton(par(leaf("a"), leaf("b"))))
    assert direct == via_automaton


def test_scores_stay_in_unit_interval():
    rng = np.random.default_rng(71)
    from helpers import random_log
    from samplemine.discovery import discover
    for _ in range(15):
        log = random_log(rng, max_unique=5, max_len=5)
        result = precision_recall(log, discover(log))
        assert 0.0 <= result.precision <= 1.0
        assert result.recall == 1.0  # fitness guarantee, exactly

def test_csv_row():
    log = log_of("a")
    result = precision_recall(log, leaf("a"))
    assert result.csv_row() == "1.0,1.0,0.0,0.0,0.0"
