"""samplemine: event-log sampling quality and discovery-quality benchmarking.

The toolkit draws trace samples from event logs, measures how well each
sample preserves the log's directly-follows behavior, discovers process
trees from the samples, scores the models with entropy-based precision and
recall, and statistically tests whether better samples yield better
models.
"""

from .conformance import (
    Automaton,
    ConformanceResult,
    intersect,
    log_automaton,
    precision_recall,
    short_circuit_entropy,
)
from .discovery import dfg, discover
from .eventlog import (
    EventLog,
    DirectlyFollowsProfile,
    directly_follows,
    parse_csv,
    parse_xes,
    read_log,
    write_csv,
)
from .harness import (
    PAPER_RATIOS,
    ExperimentConfig,
    ExperimentRecord,
    correlate,
    derive_seed,
    export_plot_data,
    format_table1,
    load_config,
    parse_config,
    read_records,
    records_to_csv,
    run_invitro,
    run_invivo,
    write_records,
)
from .processtree import (
    GeneratorParams,
    ProcessTree,
    SimulationParams,
    format_tree,
    generate,
    parse_tree,
    simulate,
    to_automaton,
)
from .quality import QualityReport, expected_behavior, measure
from .sampling import (
    SampleLog,
    draw_sample,
    round_half_even,
    simple_random,
    stratified,
    stratified_squared,
)
from .stats import CorrelationResult, rank, spearman

__version__ = "0.1.0"

__all__ = [
    "Automaton",
    "ConformanceResult",
    "CorrelationResult",
    "DirectlyFollowsProfile",
    "EventLog",
    "ExperimentConfig",
    "ExperimentRecord",
    "GeneratorParams",
    "PAPER_RATIOS",
    "ProcessTree",
    "QualityReport",
    "SampleLog",
    "SimulationParams",
    "correlate",
    "derive_seed",
    "dfg",
    "directly_follows",
    "discover",
    "draw_sample",
    "expected_behavior",
    "export_plot_data",
    "format_table1",
    "format_tree",
    "generate",
    "intersect",
    "load_config",
    "log_automaton",
    "measure",
    "parse_config",
    "parse_csv",
    "parse_tree",
    "parse_xes",
    "precision_recall",
    "rank",
    "read_log",
    "read_records",
    "records_to_csv",
    "round_half_even",
    "run_invitro",
    "run_invivo",
    "short_circuit_entropy",
    "simple_random",
    "simulate",
    "spearman",
    "stratified",
    "stratified_squared",
    "to_automaton",
    "write_csv",
    "write_records",
]
