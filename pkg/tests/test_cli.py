import os

import pytest

from samplemine.cli import main
from samplemine.eventlog import EventLog, write_csv


@pytest.fixture()
def log_path(tmp_path):
    log = EventLog.from_traces(
        [["a", "b", "c"]] * 6 + [["a", "c"]] * 3 + [["a", "b", "b", "c"]] * 3
    )
    path = tmp_path / "log.csv"
    path.write_bytes(write_csv(log))
    return str(path)


def test_sample_subcommand(log_path, tmp_path, capsys):
    out = str(tmp_path / "sample.csv")
    code = main(["sample", log_path, "--ratio", "0.5", "--seed", "3", "--out", out])
    assert code == 0
    assert "sampled 6 of 12 traces" in capsys.readouterr().out
    assert os.path.exists(out)


def test_quality_subcommand(log_path, tmp_path, capsys):
    out = str(tmp_path / "sample.csv")
    main(["sample", log_path, "--ratio", "0.5", "--seed", "3", "--out", out])
    capsys.readouterr()
    code = main(["quality", log_path, out, "--ratio", "0.5", "--seed", "3"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "ratio,technique,seed,coverage,nmae,nrmse,smape,srmspe"
    fields = lines[1].split(",")
    assert fields[0] == "0.5"
    assert 0.0 <= float(fields[3]) <= 1.0


def test_discover_subcommand(log_path, capsys):
    code = main(["discover", log_path])
    assert code == 0
    text = capsys.readouterr().out.strip()
    assert text.startswith("seq(")
    assert "a" in text


def test_conformance_subcommand_with_literal_tree(log_path, capsys):
    code = main(["conformance", log_path, "seq(a,loop(b,tau),c)"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "precision,recall,ent_log,ent_model,ent_intersection"
    precision, recall = map(float, lines[1].split(",")[:2])
    assert 0.0 <= precision <= 1.0
    assert 0.0 <= recall <= 1.0


def test_conformance_subcommand_with_tree_file(log_path, tmp_path, capsys):
    tree_path = tmp_path / "model.tree"
    tree_path.write_text("seq(a,xor(b,loop(b,tau),tau),c)\n")
    code = main(["conformance", log_path, str(tree_path)])
    assert code == 0
    assert "precision" in capsys.readouterr().out


def test_invitro_subcommand(tmp_path, capsys):
    config = tmp_path / "exp.cfg"
    config.write_text(
        "models = 1\n"
        "ratios = 0.5, 1.0\n"
        "samples_per_ratio = 2\n"
        "traces_per_log = 30\n"
        "generator.alphabet_size = 5\n"
        "generator.min_activities = 3\n"
        "generator.max_activities = 4\n"
    )
    out = tmp_path / "records.csv"
    report = tmp_path / "report.txt"
    plot = tmp_path / "plot.csv"
    code = main([
        "invitro", "--config", str(config), "--out", str(out),
        "--report", str(report), "--plot-data", str(plot),
    ])
    assert code == 0
    assert "4 records" in capsys.readouterr().out
    assert out.read_text().count("\n") == 5  # header + 4 rows
    assert "prec:smape" in report.read_text()
    assert plot.read_text().startswith("group,x_measure,y_measure,x,y")


def test_invivo_subcommand(standin_xes_path, tmp_path, capsys):
    config = tmp_path / "exp.cfg"
    config.write_text("ratios = 0.2, 0.6\nsamples_per_ratio = 2\n")
    out = tmp_path / "records.csv"
    code = main(["invivo", standin_xes_path, "--config", str(config), "--out", str(out)])
    assert code == 0
    assert "4 records" in capsys.readouterr().out
    text = out.read_text()
    assert text.splitlines()[1].startswith("standin,")


def test_correlate_subcommand(tmp_path, capsys):
    config = tmp_path / "exp.cfg"
    config.write_text(
        "models = 1\n"
        "ratios = 0.3, 0.6, 0.9\n"
        "samples_per_ratio = 2\n"
        "traces_per_log = 40\n"
        "generator.alphabet_size = 5\n"
        "generator.min_activities = 3\n"
        "generator.max_activities = 4\n"
    )
    records = tmp_path / "records.csv"
    main(["invitro", "--config", str(config), "--out", str(records)])
    capsys.readouterr()
    code = main(["correlate", str(records), "--grouping", "per-model"])
    assert code == 0
    out = capsys.readouterr().out
    assert "group" in out and "prec:coverage" in out


def test_cli_reports_errors(tmp_path, capsys):
    code = main(["discover", str(tmp_path / "missing.csv")])
    assert code == 1
    assert "error:" in capsys.readouterr().err
