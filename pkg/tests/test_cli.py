"""End-to-end command-line behaviour: outputs, formats, exit codes."""

import json

import numpy as np
import pytest

from dqes.cli import main
from dqes.paulis import load_observable
from dqes.problems import load_graph


def run_cli(*argv):
    return main(list(argv))


def test_mub_verify_passes(capsys):
    assert run_cli("mub", "verify", "2") == 0
    out = capsys.readouterr().out
    assert "n=2: 5 bases, 20 states" in out
    assert "max orthonormality deviation" in out
    assert "PASS" in out


def test_mub_verify_rejects_large_registers():
    with pytest.raises(SystemExit) as info:
        run_cli("mub", "verify", "4")
    assert info.value.code == 2


def test_mub_export_writes_json_and_sidecar(tmp_path, capsys):
    out = tmp_path / "mub1.json"
    assert run_cli("mub", "export", "1", "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert doc["n"] == 1
    assert len(doc["bases"]) == 3
    sidecar = json.loads((tmp_path / "mub1.json.manifest.json").read_text())
    assert sidecar["argv"][:3] == ["dqes", "mub", "export"]
    assert "output_sha256" in sidecar and "created_utc" in sidecar


def test_landscape_full_sweep_output(tmp_path, capsys):
    out = tmp_path / "h2.csv"
    assert run_cli("landscape", "--fixture", "H2_075", "--full", "--out", str(out)) == 0
    printed = capsys.readouterr().out
    assert "records: 20 (full sweep, K=2)" in printed
    assert "min energy: -1.82172107 at b0s1q1-2 (index 1)" in printed
    lines = out.read_text().splitlines()
    assert lines[0] == "index,subset,basis,state,energy"
    assert lines[1] == "0,1-2,0,0,-1.06658017"
    assert lines[2] == "1,1-2,0,1,-1.82172107"


def test_landscape_partial_sweep_cardinality(tmp_path, capsys):
    prefix = tmp_path / "mc8"
    assert run_cli("problem", "gen", "maxcut", "--nodes", "8", "--edge-prob", "0.5",
                   "--seed", "42", "--out", str(prefix)) == 0
    assert "8 nodes, 12 edges" in capsys.readouterr().out
    out = tmp_path / "sweep.csv"
    assert run_cli("landscape", "--observable", str(prefix) + ".json", "--k", "3",
                   "--out", str(out)) == 0
    printed = capsys.readouterr().out
    assert "records: 4032 (partial sweep, K=3)" in printed
    assert "min energy: -6 at b0s7q1-2-8 (index 367)" in printed
    assert len(out.read_text().splitlines()) == 4033


def test_landscape_runs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli("landscape", "--fixture", "ising_fig7", "--full", "--out", str(a))
    run_cli("landscape", "--fixture", "ising_fig7", "--full", "--out", str(b),
            "--workers", "3")
    assert a.read_bytes() == b.read_bytes()


def test_landscape_unknown_fixture(tmp_path, capsys):
    assert run_cli("landscape", "--fixture", "nope", "--full",
                   "--out", str(tmp_path / "x.csv")) == 1
    err = capsys.readouterr().err
    assert "unknown fixture" in err
    assert "H2_075" in err


def test_landscape_lih_hint(tmp_path, capsys):
    assert run_cli("landscape", "--fixture", "LiH_160", "--full",
                   "--out", str(tmp_path / "x.csv")) == 1
    assert "observable JSON file" in capsys.readouterr().err


def test_landscape_rejects_malformed_observable_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1, "terms": [{"coeff": 1.0, "pauli": "Q"}]}')
    assert run_cli("landscape", "--observable", str(bad), "--k", "1",
                   "--out", str(tmp_path / "x.csv")) == 1
    err = capsys.readouterr().err
    assert "bad.json" in err and "invalid letter 'Q'" in err


def test_landscape_plot_groups_by_basis(tmp_path):
    svg_path = tmp_path / "plot.svg"
    run_cli("landscape", "--fixture", "ising_fig7", "--full",
            "--out", str(tmp_path / "x.csv"), "--plot", str(svg_path))
    svg = svg_path.read_text()
    assert svg.startswith("<svg")
    assert "generated by dqes" in svg
    # 9 bases for n = 3, one fill colour per basis
    fills = {line.split('fill="')[1].split('"')[0]
             for line in svg.splitlines() if "<circle" in line}
    assert len(fills) == 9
    assert (tmp_path / "plot.svg.manifest.json").exists()


def test_vqe_h2_top3(tmp_path, capsys):
    out = tmp_path / "vqe"
    assert run_cli("vqe", "--fixture", "H2_075", "--init", "top-3",
                   "--out", str(out)) == 0
    printed = capsys.readouterr().out
    assert "exact ground energy: -1.84268669" in printed
    summary = json.loads((out / "summary.json").read_text())
    assert abs(summary["exact_ground_energy"] + 1.8426866891) < 1e-9
    assert [run["label"] for run in summary["runs"]] == ["b0s1q1-2", "b1s1q1-2", "b1s2q1-2"]
    for run in summary["runs"]:
        assert run["evaluations"] <= 500
        assert abs(run["gap_to_exact"]) < 1.6e-3
        assert (out / f"trace_{run['label']}.csv").exists()
    header = (out / "trace_b0s1q1-2.csv").read_text().splitlines()[0]
    assert header == "eval,energy,theta_0,theta_1,theta_2,theta_3"


def test_vqe_single_qubit_writes_bloch_paths(tmp_path):
    out = tmp_path / "xy"
    assert run_cli("vqe", "--fixture", "xy1", "--init", "spec:1:1,spec:2:1",
                   "--out", str(out)) == 0
    # default axes for one qubit are YZ: 4 parameters
    trace = (out / "trace_b1s1q1.csv").read_text().splitlines()
    assert trace[0] == "eval,energy,theta_0,theta_1,theta_2,theta_3"
    bloch = (out / "bloch_b1s1q1.csv").read_text().splitlines()
    assert bloch[0] == "eval,x,y,z"
    # the first point is |-> on the Bloch sphere
    first = [float(v) for v in bloch[1].split(",")[1:]]
    assert np.allclose(first, [-1.0, 0.0, 0.0], atol=1e-9)
    summary = json.loads((out / "summary.json").read_text())
    assert all(abs(run["gap_to_exact"]) < 1e-3 for run in summary["runs"])


def test_vqe_random_and_fit_strategies(tmp_path):
    out = tmp_path / "mix"
    assert run_cli("vqe", "--fixture", "H2_075", "--init", "top-1,random-2",
                   "--seed", "5", "--strategy", "fit", "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    labels = [run["label"] for run in summary["runs"]]
    assert labels == ["fit-b0s1q1-2", "random5", "random6"]
    assert summary["strategy"] == "fit"
    assert (out / "trace_fit-b0s1q1-2.csv").exists()


def test_vqe_rejects_bad_init_atoms(tmp_path, capsys):
    assert run_cli("vqe", "--fixture", "H2_075", "--init", "top-0",
                   "--out", str(tmp_path / "v")) == 1
    assert "bad init atom" in capsys.readouterr().err
    assert run_cli("vqe", "--fixture", "H2_075", "--init", "middle-3",
                   "--out", str(tmp_path / "v")) == 1
    assert "expected top-K" in capsys.readouterr().err
    assert run_cli("vqe", "--fixture", "H2_075", "--init", "spec:1",
                   "--out", str(tmp_path / "v")) == 1
    assert "spec:BASIS:STATE" in capsys.readouterr().err


def test_vqe_traces_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out, workers in ((a, "1"), (b, "4")):
        run_cli("vqe", "--fixture", "HeH+_100", "--init", "top-2",
                "--out", str(out), "--workers", workers)
    for name in ("trace_b0s1q1-2.csv", "trace_b0s0q1-2.csv", "summary.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_problem_gen_roundtrip_into_landscape(tmp_path, capsys):
    prefix = tmp_path / "g"
    assert run_cli("problem", "gen", "maxcut", "--nodes", "5", "--edge-prob", "0.6",
                   "--seed", "11", "--out", str(prefix)) == 0
    graph = load_graph(str(prefix) + ".graph.txt")
    obs = load_observable(str(prefix) + ".json")
    assert graph.node_count == 5
    assert len(obs.terms) == len(graph.edges)
    capsys.readouterr()
    assert run_cli("landscape", "--observable", str(prefix) + ".json", "--k", "2",
                   "--out", str(tmp_path / "s.csv")) == 0
    assert "records: 200 (partial sweep, K=2)" in capsys.readouterr().out


def test_problem_gen_ising_and_fixture(tmp_path):
    ising = tmp_path / "ising.json"
    assert run_cli("problem", "gen", "ising", "--n", "3", "--czz", "0.61436456",
                   "--cx", "0.32435029", "--out", str(ising)) == 0
    assert len(load_observable(ising).terms) == 5
    fixture = tmp_path / "heh.json"
    assert run_cli("problem", "gen", "fixture", "HeH+_100", "--out", str(fixture)) == 0
    assert len(load_observable(fixture).terms) == 9


def test_problem_gen_validation_failure(tmp_path, capsys):
    assert run_cli("problem", "gen", "maxcut", "--nodes", "4", "--edge-prob", "1.5",
                   "--out", str(tmp_path / "g")) == 1
    assert "edge probability" in capsys.readouterr().err


def test_output_dir_environment_default(tmp_path, monkeypatch):
    monkeypatch.setenv("DQES_OUTPUT_DIR", str(tmp_path))
    assert run_cli("problem", "gen", "fixture", "xy1") == 0
    assert (tmp_path / "xy1.json").exists()
    assert (tmp_path / "xy1.json.manifest.json").exists()


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        run_cli()
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        run_cli("launch")
    assert info.value.code == 2
    # --fixture and --observable are mutually exclusive
    with pytest.raises(SystemExit) as info:
        run_cli("landscape", "--fixture", "xy1", "--observable", "x.json", "--full")
    assert info.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        run_cli("--version")
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith("dqes ")
