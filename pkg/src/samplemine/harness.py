"""Experiment harness: the controlled (in-vitro) and benchmark (in-vivo)
protocols, deterministic seeding, record persistence, and correlation
reporting.

The in-vitro protocol generates true processes, simulates logs from them,
and relates sample quality to the quality of models discovered from the
samples, with the truth known.  The in-vivo protocol runs the same
sample -> quality -> discover -> score loop over externally supplied logs,
where no truth is available.  Every cell (model, log, ratio, repetition)
gets its own seed derived from the master seed, so runs are reproducible
record-for-record.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, replace

from .conformance import precision_recall
from .discovery import discover
from .eventlog import EventLog, directly_follows, read_log
from .processtree import GeneratorParams, SimulationParams, generate, simulate, to_automaton
from .quality import QualityReport, measure
from .sampling import draw_sample
from .stats import spearman

__all__ = [
    "PAPER_RATIOS",
    "MASTER_SEED_ENV_VAR",
    "ExperimentConfig",
    "ExperimentRecord",
    "CorrelationCell",
    "CorrelationTable",
    "derive_seed",
    "run_invitro",
    "run_invivo",
    "correlate",
    "RECORDS_CSV_HEADER",
    "records_to_csv",
    "write_records",
    "read_records",
    "export_plot_data",
    "format_table1",
    "parse_config",
    "load_config",
]

# the twelve ratios used throughout: 0.01, 0.02, 0.05, and 0.1 up to 0.9
PAPER_RATIOS = (0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

MASTER_SEED_ENV_VAR = "SAMPLEMINE_MASTER_SEED"

QUALITY_MEASURES = ("coverage", "smape", "srmspe", "nrmse", "nmae")
CONFORMANCE_MEASURES = ("precision", "recall")

SIGNIFICANCE_LEVEL = 0.001


@dataclass(frozen=True)
class ExperimentConfig:
    master_seed: int = 0
    ratios: tuple[float, ...] = PAPER_RATIOS
    samples_per_ratio: int = 10
    models: int = 10
    logs_per_model: int = 1
    traces_per_log: int = 5000
    sampler: str = "simple"
    generator: GeneratorParams = GeneratorParams()
    simulation: SimulationParams = SimulationParams()

    def __post_init__(self):
        if not self.ratios or any(not 0.0 < r <= 1.0 for r in self.ratios):
            raise ValueError("ratios must be a non-empty list within (0, 1]")
        if min(self.samples_per_ratio, self.models, self.traces_per_log, self.logs_per_model) < 1:
            raise ValueError("samples_per_ratio, models, logs_per_model, traces_per_log must be >= 1")


@dataclass(frozen=True)
class ExperimentRecord:
    """One experiment cell: a sample drawn, measured, mined and scored.

    In-vivo records carry no truth-side values (``precision_true`` and
    ``recall_true`` are None).  Failed cells keep their identity and the
    error message, with all measured fields None.
    """

    model_id: str
    log_id: int
    ratio: float
    repetition: int
    technique: str
    seed: int
    quality: QualityReport | None
    precision_sample: float | None
    recall_sample: float | None
    precision_true: float | None
    recall_true: float | None
    error: str | None = None

    def sort_key(self):
        return (_id_key(self.model_id), self.log_id, self.ratio, self.repetition)


def _id_key(model_id: str):
    # numeric ids sort numerically so model "10" follows model "9"
    return (0, int(model_id), "") if model_id.isdigit() else (1, 0, model_id)


# --- deterministic seeding ----------------------------------------------------

_M64 = (1 << 64) - 1

# per-position salts so that swapping two coordinate values cannot collide
_SALTS = (
    0xA0761D6478BD642F,
    0xE7037ED1A0B428DB,
    0x8EBC6AF09C88C6E3,
    0x589965CC75374CC3,
)


def _mix64(z: int) -> int:
    """SplitMix64 finalizer: bijective 64-bit avalanche."""
    z = (z + 0x9E3779B97F4A7C15) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return (z ^ (z >> 31)) & _M64


def derive_seed(
    master_seed: int, model_id: int, log_id: int, ratio_index: int, repetition: int
) -> int:
    """Collision-resistant 64-bit seed for one experiment cell.

    The master seed and each coordinate are passed through SplitMix64 and
    folded together with a per-position salt, so cells differing in any
    coordinate get independent streams.  Reserved negative coordinates are
    used internally for the model-generation and log-simulation streams.
    """
    z = _mix64(master_seed & _M64)
    for salt, part in zip(_SALTS, (model_id, log_id, ratio_index, repetition)):
        z = _mix64(z ^ _mix64((part & _M64) ^ salt))
    return z


# --- protocols -----------------------------------------------------------------

def run_invitro(config: ExperimentConfig) -> list[ExperimentRecord]:
    """Controlled experiment against generated true processes.

    For each of ``config.models`` generated trees, ``logs_per_model`` logs
    of ``traces_per_log`` traces are simulated; the truth-side quality is
    the conformance of the full log against the true tree.  Then every
    (ratio, repetition) cell samples the log, measures sample quality,
    discovers a model from the sample and scores it against the sample.
    Failed cells are recorded with an error marker, never dropped.
    """
    records: list[ExperimentRecord] = []
    for i in range(config.models):
        gen_params = replace(
            config.generator, seed=derive_seed(config.master_seed, i, -1, -1, -1)
        )
        tree = generate(gen_params)
        model_automaton = to_automaton(tree)
        for j in range(config.logs_per_model):
            sim_params = replace(config.simulation, trace_count=config.traces_per_log)
            log = simulate(tree, sim_params, derive_seed(config.master_seed, i, j, -2, -2))
            truth = precision_recall(log, model_automaton)
            records.extend(
                _run_cells(
                    log,
                    config,
                    model_id=str(i),
                    log_id=j,
                    model_index=i,
                    precision_true=truth.precision,
                    recall_true=truth.recall,
                )
            )
    records.sort(key=ExperimentRecord.sort_key)
    return records


def run_invivo(log_paths: list[str], config: ExperimentConfig) -> list[ExperimentRecord]:
    """Benchmark experiment over real logs; no truth side is computed."""
    if not log_paths:
        raise ValueError("no benchmark logs given")
    records: list[ExperimentRecord] = []
    for i, path in enumerate(log_paths):
        log = read_log(path)
        name = os.path.basename(path)
        for suffix in (".gz", ".gzip", ".xes", ".csv"):
            if name.lower().endswith(suffix):
                name = name[: -len(suffix)]
        records.extend(
            _run_cells(
                log,
                config,
                model_id=name,
                log_id=i,
                model_index=i,
                precision_true=None,
                recall_true=None,
            )
        )
    records.sort(key=ExperimentRecord.sort_key)
    return records


def _run_cells(
    log: EventLog,
    config: ExperimentConfig,
    model_id: str,
    log_id: int,
    model_index: int,
    precision_true: float | None,
    recall_true: float | None,
) -> list[ExperimentRecord]:
    profile = directly_follows(log)
    records = []
    for ratio_index, ratio in enumerate(config.ratios):
        for repetition in range(config.samples_per_ratio):
            seed = derive_seed(config.master_seed, model_index, log_id, ratio_index, repetition)
            quality = None
            scored = None
            error = None
            try:
                sample = draw_sample(log, ratio, seed, config.sampler)
                quality = measure(profile, sample, ratio)
                mined = discover(sample.log)
                scored = precision_recall(sample.log, mined)
            except Exception as exc:  # record the failure, never drop the cell
                error = str(exc) or exc.__class__.__name__
            records.append(
                ExperimentRecord(
                    model_id=model_id,
                    log_id=log_id,
                    ratio=ratio,
                    repetition=repetition,
                    technique=config.sampler,
                    seed=seed,
                    quality=None if error else quality,
                    precision_sample=None if error else scored.precision,
                    recall_sample=None if error else scored.recall,
                    precision_true=None if error else precision_true,
                    recall_true=None if error else recall_true,
                    error=error,
                )
            )
    return records


# --- correlation analysis -------------------------------------------------------

@dataclass(frozen=True)
class CorrelationCell:
    group: str
    x_measure: str
    y_measure: str
    rho: float | None
    p_value: float | None
    n: int
    significant: bool
    note: str | None = None


@dataclass(frozen=True)
class P1Summary:
    group: str
    precision_true: float | None
    recall_true: float | None
    precision_sample_top: float
    recall_sample_top: float
    precision_gap: float | None
    recall_gap: float | None


@dataclass(frozen=True)
class CorrelationTable:
    grouping: str
    cells: tuple[CorrelationCell, ...]
    p1: tuple[P1Summary, ...]

    def cell(self, group: str, x_measure: str, y_measure: str) -> CorrelationCell:
        for c in self.cells:
            if (c.group, c.x_measure, c.y_measure) == (group, x_measure, y_measure):
                return c
        raise KeyError((group, x_measure, y_measure))

    def groups(self) -> list[str]:
        seen = []
        for c in self.cells:
            if c.group not in seen:
                seen.append(c.group)
        return seen


def _record_value(record: ExperimentRecord, measure_name: str) -> float:
    if measure_name == "ratio":
        return record.ratio
    if measure_name == "precision":
        return record.precision_sample
    if measure_name == "recall":
        return record.recall_sample
    return getattr(record.quality, measure_name)


def correlate(records: list[ExperimentRecord], grouping: str = "per-model") -> CorrelationTable:
    """Spearman correlations between sample quality and model quality.

    For each group (model, or model+log) the quality measures are
    correlated with precision and recall, and the sampling ratio with
    everything; cells whose input is rank-constant are reported as
    not-applicable.  Raises on groups with fewer than 3 usable records.
    """
    if grouping not in ("per-model", "per-log"):
        raise ValueError(f"unknown grouping {grouping!r}")
    groups: dict[str, list[ExperimentRecord]] = {}
    for record in sorted(records, key=ExperimentRecord.sort_key):
        key = (
            record.model_id
            if grouping == "per-model"
            else f"{record.model_id}/{record.log_id}"
        )
        groups.setdefault(key, []).append(record)

    pairs = (
        [(m, c) for m in QUALITY_MEASURES for c in CONFORMANCE_MEASURES]
        + [("ratio", m) for m in QUALITY_MEASURES]
        + [("ratio", c) for c in CONFORMANCE_MEASURES]
    )
    cells = []
    p1_rows = []
    for group, group_records in groups.items():
        usable = [r for r in group_records if r.error is None]
        if len(usable) < 3:
            raise ValueError(
                f"insufficient records in group {group!r}: {len(usable)} usable, need >= 3"
            )
        for x_measure, y_measure in pairs:
            xs = [_record_value(r, x_measure) for r in usable]
            ys = [_record_value(r, y_measure) for r in usable]
            try:
                result = spearman(xs, ys)
            except ValueError as exc:
                cells.append(
                    CorrelationCell(group, x_measure, y_measure, None, None, len(usable), False, str(exc))
                )
                continue
            cells.append(
                CorrelationCell(
                    group,
                    x_measure,
                    y_measure,
                    result.rho,
                    result.p_value,
                    result.n,
                    result.p_value < SIGNIFICANCE_LEVEL,
                )
            )
        p1_rows.append(_p1_summary(group, usable))
    return CorrelationTable(grouping, tuple(cells), tuple(p1_rows))


def _p1_summary(group: str, usable: list[ExperimentRecord]) -> P1Summary:
    top_ratio = max(r.ratio for r in usable)
    top = [r for r in usable if r.ratio == top_ratio]
    mean_prec = sum(r.precision_sample for r in top) / len(top)
    mean_rec = sum(r.recall_sample for r in top) / len(top)
    # truth-side quality is per log; average it when a group spans several
    truths = {
        r.log_id: (r.precision_true, r.recall_true)
        for r in usable
        if r.precision_true is not None
    }
    if truths:
        prec_true = sum(p for p, _ in truths.values()) / len(truths)
        rec_true = sum(r for _, r in truths.values()) / len(truths)
    else:
        prec_true = None
        rec_true = None
    return P1Summary(
        group=group,
        precision_true=prec_true,
        recall_true=rec_true,
        precision_sample_top=mean_prec,
        recall_sample_top=mean_rec,
        precision_gap=None if prec_true is None else abs(mean_prec - prec_true),
        recall_gap=None if rec_true is None else abs(mean_rec - rec_true),
    )


# --- persistence ------------------------------------------------------------------

RECORDS_CSV_HEADER = (
    "model_id,log_id,ratio,repetition,technique,seed,coverage,nmae,nrmse,smape,"
    "srmspe,precision_sample,recall_sample,precision_true,recall_true,error"
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_to_csv(records: list[ExperimentRecord]) -> str:
    """Canonically ordered CSV; identical runs serialize byte-identically."""
    lines = [RECORDS_CSV_HEADER]
    for r in sorted(records, key=ExperimentRecord.sort_key):
        q = r.quality
        fields = [
            r.model_id,
            str(r.log_id),
            repr(r.ratio),
            str(r.repetition),
            r.technique,
            str(r.seed),
            _fmt(q.coverage if q else None),
            _fmt(q.nmae if q else None),
            _fmt(q.nrmse if q else None),
            _fmt(q.smape if q else None),
            _fmt(q.srmspe if q else None),
            _fmt(r.precision_sample),
            _fmt(r.recall_sample),
            _fmt(r.precision_true),
            _fmt(r.recall_true),
            _csv_escape(r.error or ""),
        ]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def _csv_escape(value: str) -> str:
    if any(c in value for c in ',"\r\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def write_records(records: list[ExperimentRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))


def read_records(path_or_text: str) -> list[ExperimentRecord]:
    """Parse a records CSV back into records.

    The pair-count ``n`` of each quality report is not part of the wire
    format and is restored as 0.
    """
    if "\n" in path_or_text:
        text = path_or_text
    else:
        with open(path_or_text, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if ",".join(header) != RECORDS_CSV_HEADER:
        raise ValueError(f"unexpected records header: {header!r}")
    records = []
    for row in reader:
        if not row:
            continue
        (model_id, log_id, ratio, repetition, technique, seed, coverage, nmae,
         nrmse, smape, srmspe, prec_s, rec_s, prec_t, rec_t, error) = row
        quality = None
        if coverage != "":
            quality = QualityReport(
                coverage=float(coverage),
                nmae=float(nmae),
                nrmse=float(nrmse),
                smape=float(smape),
                srmspe=float(srmspe),
                n=0,
                ratio=float(ratio),
            )
        records.append(
            ExperimentRecord(
                model_id=model_id,
                log_id=int(log_id),
                ratio=float(ratio),
                repetition=int(repetition),
                technique=technique,
                seed=int(seed),
                quality=quality,
                precision_sample=float(prec_s) if prec_s else None,
                recall_sample=float(rec_s) if rec_s else None,
                precision_true=float(prec_t) if prec_t else None,
                recall_true=float(rec_t) if rec_t else None,
                error=error or None,
            )
        )
    return records


def export_plot_data(records: list[ExperimentRecord]) -> str:
    """Long-format CSV of every (x, y) pairing needed to redraw the
    quality-versus-conformance and ratio-versus-quality plots."""
    lines = ["group,x_measure,y_measure,x,y"]
    pairs = (
        [("ratio", m) for m in QUALITY_MEASURES]
        + [("ratio", c) for c in CONFORMANCE_MEASURES]
        + [(m, c) for m in QUALITY_MEASURES for c in CONFORMANCE_MEASURES]
        + [("precision_true", "precision"), ("recall_true", "recall")]
    )
    for r in sorted(records, key=ExperimentRecord.sort_key):
        if r.error is not None:
            continue
        for x_measure, y_measure in pairs:
            if x_measure == "precision_true":
                x = r.precision_true
            elif x_measure == "recall_true":
                x = r.recall_true
            else:
                x = _record_value(r, x_measure)
            if x is None:
                continue
            y = _record_value(r, y_measure)
            lines.append(f"{r.model_id},{x_measure},{y_measure},{x!r},{y!r}")
    return "\n".join(lines) + "\n"


def format_table1(table: CorrelationTable) -> str:
    """Render the correlation table in the report layout: one row per group,
    truth-side quality first, then the five quality measures against
    precision and recall; significant cells (p < 0.001) are starred."""
    headers = (
        ["group", "prec_true", "rec_true"]
        + [f"prec:{m}" for m in QUALITY_MEASURES]
        + [f"rec:{m}" for m in QUALITY_MEASURES]
    )
    rows = [headers]
    p1_by_group = {p.group: p for p in table.p1}
    for group in table.groups():
        p1 = p1_by_group[group]
        row = [
            group,
            "" if p1.precision_true is None else f"{p1.precision_true:.3f}",
            "" if p1.recall_true is None else f"{p1.recall_true:.3f}",
        ]
        for conf in CONFORMANCE_MEASURES:
            for m in QUALITY_MEASURES:
                cell = table.cell(group, m, conf)
                if cell.rho is None:
                    row.append("n/a")
                else:
                    row.append(f"{cell.rho:+.3f}{'*' if cell.significant else ''}")
        rows.append(row)
    widths = [max(len(row[i]) for row in rows) for i in range(len(headers))]
    out = []
    for row in rows:
        out.append("  ".join(field.rjust(w) for field, w in zip(row, widths)))
    out.append("")
    out.append("* Spearman rank correlation significant at p < 0.001")
    out.append("  (two-sided t-approximation with n-2 degrees of freedom)")
    return "\n".join(out) + "\n"


# --- configuration files -----------------------------------------------------------

_INT_KEYS = {
    "master_seed",
    "samples_per_ratio",
    "models",
    "logs_per_model",
    "traces_per_log",
    "generator.alphabet_size",
    "generator.min_activities",
    "generator.max_activities",
    "generator.seed",
    "simulation.max_loop_iterations",
}
_FLOAT_KEYS = {
    "generator.weight_seq",
    "generator.weight_xor",
    "generator.weight_par",
    "generator.weight_loop",
    "generator.silent_probability",
    "simulation.loop_continue_probability",
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse a flat ``key = value`` configuration.

    Lists are comma-separated; nested generator and simulation fields use
    dotted keys (e.g. ``generator.alphabet_size = 8``).  Missing fields
    take the defaults.  The environment variable ``SAMPLEMINE_MASTER_SEED``
    overrides the master seed when set.
    """
    top: dict = {}
    gen: dict = {}
    sim: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "ratios":
            top["ratios"] = tuple(float(v) for v in value.split(",") if v.strip())
        elif key == "sampler":
            top["sampler"] = value
        elif key in _INT_KEYS:
            parsed = int(value)
            _store(top, gen, sim, key, parsed)
        elif key in _FLOAT_KEYS:
            parsed = float(value)
            _store(top, gen, sim, key, parsed)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    env_seed = os.environ.get(MASTER_SEED_ENV_VAR)
    if env_seed is not None:
        top["master_seed"] = int(env_seed)
    config = ExperimentConfig(
        generator=GeneratorParams(**gen),
        simulation=SimulationParams(**sim),
        **top,
    )
    return config


def _store(top: dict, gen: dict, sim: dict, key: str, value) -> None:
    if key.startswith("generator."):
        gen[key.split(".", 1)[1]] = value
    elif key.startswith("simulation."):
        sim[key.split(".", 1)[1]] = value
    else:
        top[key] = value


def load_config(path: str | None) -> ExperimentConfig:
    """Read a configuration file; ``None`` gives the defaults (still honoring
    the master-seed environment override)."""
    if path is None:
        return parse_config("")
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
