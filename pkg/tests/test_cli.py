import json

import numpy as np
import pytest

import spiralvar as sv
from spiralvar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def gen_arc(capsys, tmp_path, *extra):
    path = tmp_path / "arc.json"
    code, out, err = run(
        capsys, "gen", "--kind", "poly", "--p", "0.5", "--turns", "5",
        "--samples-per-turn", "32", "--out", str(path), *extra,
    )
    assert code == 0
    return path


def test_gen_then_variation(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    code, out, err = run(capsys, "variation", "--s", "3", "--arc", str(arc_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["s"] == 3.0
    assert doc["value"] > 0
    assert doc["breakpoints"][0] == 0
    assert doc["version"] == sv.__version__
    assert doc["config"]["sandwich_slack"] == 0.05


def test_output_is_byte_identical_across_runs(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    _, out1, _ = run(capsys, "variation", "--s", "3", "--arc", str(arc_path))
    _, out2, _ = run(capsys, "variation", "--s", "3", "--arc", str(arc_path))
    assert out1 == out2
    _, e1, _ = run(capsys, "holder-est", "--src", str(arc_path), "--dst", str(arc_path),
                   "--pairs", "20000")
    _, e2, _ = run(capsys, "holder-est", "--src", str(arc_path), "--dst", str(arc_path),
                   "--pairs", "20000")
    assert e1 == e2


def test_json_keys_sorted(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    _, out, _ = run(capsys, "variation", "--s", "2", "--arc", str(arc_path))
    doc = json.loads(out)
    assert list(doc) == sorted(doc)
    assert out.startswith('{"breakpoints":')


def test_usage_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "variation", "--s", "2", "--arc", "no-such-file.json")
    assert code == 2
    code, _, err = run(capsys, "variation", "--arc", "also-missing.json")
    assert code == 2
    code, _, err = run(capsys, "gen", "--kind", "tab", "--out", str(tmp_path / "x.json"))
    assert code == 2
    assert "--table" in err
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2


def test_analysis_errors_exit_1(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    code, _, err = run(capsys, "variation", "--s", "0.5", "--arc", str(arc_path))
    assert code == 1
    assert "s >= 1" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"t": [0, 1], "x": [0], "y": [0, 1]}')
    code, _, err = run(capsys, "variation", "--s", "2", "--arc", str(bad))
    assert code == 1
    assert "x" in err


def test_help_exits_0(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "variation" in out


def test_param_and_seminorm_flow(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    u_path = tmp_path / "param.json"
    code, out, _ = run(capsys, "param", "--s", "3", "--arc", str(arc_path),
                       "--out", str(u_path))
    assert code == 0
    value = json.loads(out)["value"]
    key, uarc = sv.read_arc_file(u_path)
    assert key == "u"
    assert uarc.params[0] == 0.0 and uarc.params[-1] == 1.0
    code, out, _ = run(capsys, "seminorm", "--alpha", str(1 / 3), "--arc", str(u_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["coordinate"] == "u"
    assert doc["seminorm"] == pytest.approx(value ** (1 / 3), rel=1e-6)
    j, i = doc["witness"]
    assert 0 <= j < i < len(uarc)
    # same subcommand reads plain t-files too
    code, out, _ = run(capsys, "seminorm", "--alpha", "0.5", "--arc", str(arc_path))
    assert code == 0
    assert json.loads(out)["coordinate"] == "t"


def test_variation_profile_csv(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    prof = tmp_path / "profile.csv"
    code, _, _ = run(capsys, "variation", "--s", "2", "--arc", str(arc_path),
                     "--profile-out", str(prof))
    assert code == 0
    lines = prof.read_text().splitlines()
    assert lines[0] == "i,t,V"
    assert len(lines) == 5 * 32 + 2
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[2]) == 0.0


def test_rings_csv_format(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    csv_path = tmp_path / "rings.csv"
    code, out, _ = run(capsys, "rings", "--s", "3", "--arc", str(arc_path),
                       "--csv-out", str(csv_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["lower_ok"] and doc["upper_ok"] and doc["rings_ok"]
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "j,phi_j,length_j,diam_j"
    assert len(lines) == 6
    row = lines[1].split(",")
    assert int(row[0]) == 1
    # numbers round-trip exactly through the CSV
    assert float(row[1]) == doc["per_ring"][0]["phi"]


def test_classify_cli(capsys):
    code, out, _ = run(capsys, "classify", "--kind", "poly", "--p", "0.5", "--s", "3",
                       "--turns", "60", "--samples-per-turn", "32")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "converges"
    assert doc["partial_sums"][0][0] >= 1


def test_growth_cli(capsys, tmp_path):
    csv_path = tmp_path / "growth.csv"
    code, out, _ = run(capsys, "growth", "--s", "1", "--p", "0.5",
                       "--jlist", "25,50,100", "--samples-per-turn", "32",
                       "--csv-out", str(csv_path))
    assert code == 0
    doc = json.loads(out)
    assert 0.3 < doc["slope"] < 0.7
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "J,value"
    assert len(lines) == 4
    code, _, err = run(capsys, "growth", "--s", "1", "--p", "0.5", "--jlist", "25,x")
    assert code == 2


def test_stretch_cli_round_trip(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    fwd = tmp_path / "fwd.json"
    back = tmp_path / "back.json"
    assert run(capsys, "stretch", "--beta", "0.5", "--arc", str(arc_path),
               "--out", str(fwd))[0] == 0
    assert run(capsys, "stretch", "--beta", "2", "--arc", str(fwd),
               "--out", str(back))[0] == 0
    a = sv.load_arc(arc_path)
    b = sv.load_arc(back)
    np.testing.assert_allclose(b.points, a.points, rtol=1e-12)


def test_bounds_cli(capsys):
    code, out, err = run(capsys, "bounds", "--p", "0.6", "--q", "2", "--r", "0.5",
                         "--se", "0.5")
    assert code == 0
    doc = json.loads(out)
    assert doc["general_bound"] == pytest.approx(43 / 52, rel=1e-12)
    assert doc["tightest_source"] == "general"
    assert "tightest" in err  # human table goes to stderr


def test_config_file_and_flag_precedence(capsys, tmp_path):
    arc_path = gen_arc(capsys, tmp_path)
    cfg = tmp_path / "cfg.toml"
    cfg.write_text("[spiralvar]\nsandwich_slack = 0.2\nseed = 9\n")
    _, out, _ = run(capsys, "--config", str(cfg), "variation", "--s", "2",
                    "--arc", str(arc_path))
    doc = json.loads(out)
    assert doc["config"]["sandwich_slack"] == 0.2
    assert doc["config"]["seed"] == 9
    _, out, _ = run(capsys, "--config", str(cfg), "--seed", "11", "variation",
                    "--s", "2", "--arc", str(arc_path))
    assert json.loads(out)["config"]["seed"] == 11


def test_jobs_env(capsys, tmp_path, monkeypatch):
    arc_path = gen_arc(capsys, tmp_path)
    monkeypatch.setenv("SPIRALVAR_JOBS", "2")
    _, out, _ = run(capsys, "variation", "--s", "2", "--arc", str(arc_path))
    assert json.loads(out)["config"]["jobs"] == 2


def test_gen_csv_output(capsys, tmp_path):
    path = tmp_path / "arc.csv"
    code, _, _ = run(capsys, "gen", "--kind", "poly", "--p", "1", "--turns", "2",
                     "--samples-per-turn", "16", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x,y"
    arc = sv.load_arc(path)
    assert len(arc) == 33


def test_holder_est_cli(capsys, tmp_path):
    src = tmp_path / "src.json"
    run(capsys, "gen", "--kind", "poly", "--p", "1", "--turns", "300",
        "--samples-per-turn", "32", "--out", str(src))
    dst = tmp_path / "dst.json"
    run(capsys, "stretch", "--beta", "0.5", "--arc", str(src), "--out", str(dst))
    code, out, _ = run(capsys, "holder-est", "--src", str(src), "--dst", str(dst),
                       "--pairs", "50000")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["best_alpha"] - 0.5) <= 0.05
    assert doc["n_pairs_used"] > 0


def test_report_writes_summary(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "report", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert doc["checks_passed"] == doc["checks_total"]
    assert json.loads(out_path.read_text()) == doc
