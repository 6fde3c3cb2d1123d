"""Experiment runners, report formats, config handling, and the CLI."""

import csv
import io
import json
import random

import pytest

from polyslice.cli import main as cli_main
from polyslice.experiments import (
    ExperimentConfig,
    Report,
    audit_space,
    parse_g,
    run_experiment,
    run_prop2,
    run_prop3,
    run_sandwich,
    run_thm1,
    run_verify_ext,
)
from polyslice.numeric import Vec, rational
from polyslice.spaces import PolyhedralNormSpace, make_space_II, make_space_VII, save_space

SEED = 61


def rows_from_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    return list(reader)


def test_config_rejects_unknown_experiment():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="thm9")


def test_config_rejects_bad_format_and_params():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="thm1", format="yaml")
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="thm1", epsilon="-1/2")
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="thm1", N=0)
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="sandwich", trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="prop3", N=1)
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="prop3", epsilons=("1/10", "1/5"))


def test_config_enforces_thm1_admissibility():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="thm1", epsilon="1/2", r="1/4", delta="1/10")
    cfg = ExperimentConfig(experiment="thm1", epsilon="1/2")
    assert cfg.epsilon == rational("1/2")


def test_config_enforces_prop2_r_below_one():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="prop2", r="1")


def test_config_from_dict_rejects_unknown_keys():
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"experiment": "thm1", "colour": "red"})


def test_config_round_trip():
    cfg = ExperimentConfig(experiment="prop3", N=3, epsilons=("1/10", "1/20"),
                           seed=7, format="json")
    again = ExperimentConfig.from_dict(cfg.to_dict())
    assert again == cfg


def test_thm1_rows_are_self_verifying():
    report = run_thm1(ExperimentConfig(experiment="thm1", N=2))
    assert report.all_pass
    for row in rows_from_csv(report.to_csv_text()):
        value = rational(row["exact_value"])
        bound = rational(row["bound"])
        eps = rational(row["epsilon"])
        r = rational(row["r"])
        delta = rational(row["delta"])
        assert bound == 2 * r + 3 * delta
        assert (row["pass"] == "True") == (value <= bound and value < eps)


def test_prop2_report_covers_success_and_small_dimension():
    cfg = ExperimentConfig(experiment="prop2", r="1/10", g="e1", alpha="1/2")
    report = run_prop2(cfg)
    assert report.all_pass
    by_n = {row["N"]: row for row in report.rows}
    assert by_n[1]["outcome"] == "dimension-too-small"
    assert by_n[4]["outcome"] == "certified"
    assert report.summary["minimal_certified_N"] == 2
    assert report.summary["dimension_too_small_N"] == [1]
    for row in report.rows:
        if row["outcome"] == "certified":
            assert rational(row["exact_value"]) >= rational(row["bound"])


def test_prop2_random_g_is_seed_deterministic():
    cfg = ExperimentConfig(experiment="prop2", N=4, r="1/10", g="random", seed=77)
    a = run_prop2(cfg).to_json_text()
    b = run_prop2(cfg).to_json_text()
    assert a == b


def test_prop3_rows_and_summary():
    cfg = ExperimentConfig(experiment="prop3", N=3, epsilons=("1/10", "1/20"))
    report = run_prop3(cfg)
    assert report.all_pass
    assert report.summary["four_epsilon_holds"] is False
    assert report.summary["check_monotone"] is True
    for row in report.rows:
        value = rational(row["exact_value"])
        eps = rational(row["epsilon"])
        assert value <= 6 * eps
        assert row["four_epsilon"] == (value <= 4 * eps)
        assert rational(row["max_tail"]) <= rational(row["tail_bound"])


def test_verify_ext_default_grid_row_shape():
    report = run_verify_ext(ExperimentConfig(experiment="verify-ext", N=2, r="1/10"))
    assert report.all_pass
    row = report.rows[0]
    assert row["extreme_count"] == row["expected_count"] == 10
    assert row["set_equal"] is True


def test_sandwich_reports_worst_ratio_within_cap():
    cfg = ExperimentConfig(experiment="sandwich", N=2, r="1/10", trials=200, seed=3)
    report = run_sandwich(cfg)
    assert report.all_pass
    row = report.rows[0]
    assert row["failures"] == 0
    assert rational(row["worst_ratio"]) <= rational(row["ratio_cap"])


def test_reports_are_byte_identical_for_fixed_config():
    cfg = ExperimentConfig(experiment="sandwich", N=1, trials=60, seed=11, format="json")
    assert run_experiment(cfg).render() == run_experiment(cfg).render()
    cfg2 = ExperimentConfig(experiment="thm1", N=1, format="csv")
    assert run_experiment(cfg2).render() == run_experiment(cfg2).render()


def test_csv_column_contract():
    report = run_thm1(ExperimentConfig(experiment="thm1", N=1, epsilon="1/5"))
    header = report.to_csv_text().splitlines()[0].split(",")
    assert header[:2] == ["experiment", "N"]
    for name in ("exact_value", "decimal_value", "bound"):
        assert name in header
    assert header[-1] == "pass"
    assert header.index("exact_value") < header.index("decimal_value") < header.index("bound")


def test_json_report_carries_config_echo_and_verdict():
    cfg = ExperimentConfig(experiment="verify-ext", N=1, r="1/4", format="json")
    payload = json.loads(run_experiment(cfg).to_json_text())
    assert payload["config"]["experiment"] == "verify-ext"
    assert payload["config"]["r"] == "1/4"
    assert payload["all_pass"] is True
    assert payload["rows"][0]["expected_count"] == 6


def test_parse_g_variants():
    rng = random.Random(SEED)
    assert parse_g("e1", 3, rng) == Vec.unit(4, 0)
    assert parse_g(None, 3, rng) == Vec.unit(4, 0)
    assert parse_g("e1+e2", 3, rng) == Vec.unit(4, 0) + Vec.unit(4, 1)
    g = parse_g("random", 4, rng)
    assert g[-1] == 0
    assert sum(abs(c) for c in g) == 1
    explicit = parse_g("1/2,0,-1/2,0", 3, rng)
    assert explicit == Vec([rational("1/2"), 0, rational("-1/2"), 0])
    with pytest.raises(ValueError):
        parse_g("e1+e2", 1, rng)
    with pytest.raises(ValueError):
        parse_g("1/2,1/2", 3, rng)


def test_audit_space_flags_non_extreme_generators():
    gens = sorted([Vec([1, 0]), Vec([-1, 0]), Vec([0, 1]), Vec([0, -1]),
                   Vec(["1/2", "1/2"]), Vec(["-1/2", "-1/2"])])
    sp = PolyhedralNormSpace(2, tuple(gens), "custom")
    cfg = ExperimentConfig(experiment="verify-ext")
    report = audit_space(cfg, sp)
    assert not report.all_pass
    assert report.rows[0]["extreme_count"] == 4
    assert report.rows[0]["expected_count"] == 6


def test_space_file_fills_parameters(tmp_path):
    path = tmp_path / "space.json"
    save_space(make_space_II(2, "1/8"), path)
    cfg = ExperimentConfig(experiment="thm1", epsilon="1/2", space_path=str(path))
    report = run_experiment(cfg)
    assert report.all_pass
    assert report.rows[0]["r"] == "1/8"
    assert report.rows[0]["N"] == 2


def test_space_file_kind_mismatch_is_rejected(tmp_path):
    path = tmp_path / "space.json"
    save_space(make_space_VII(3), path)
    cfg = ExperimentConfig(experiment="thm1", epsilon="1/2", space_path=str(path))
    with pytest.raises(ValueError):
        run_experiment(cfg)


def test_cli_runs_and_exits_zero(capsys):
    code = cli_main(["thm1", "--n", "1", "--epsilon", "1/5"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0].startswith("experiment,N,epsilon")
    assert "thm1,1,1/5" in out


def test_cli_json_format(capsys):
    code = cli_main(["verify-ext", "--n", "1", "--r", "1/10", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["all_pass"] is True


def test_cli_writes_output_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code = cli_main(["sandwich", "--n", "1", "--trials", "20", "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert target.read_text().startswith("experiment,N,r,trials")


def test_cli_config_file_with_flag_override(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"experiment": "thm1", "N": 2, "epsilon": "1/2"}))
    code = cli_main(["--config", str(cfg_path), "--epsilon", "1/5"])
    out = capsys.readouterr().out
    assert code == 0
    rows = rows_from_csv(out)
    assert rows[0]["epsilon"] == "1/5"
    assert rows[0]["N"] == "2"


def test_cli_exit_one_on_failed_audit(tmp_path, capsys):
    gens = sorted([Vec([1, 0]), Vec([-1, 0]), Vec([0, 1]), Vec([0, -1]),
                   Vec(["1/2", "1/2"]), Vec(["-1/2", "-1/2"])])
    sp = PolyhedralNormSpace(2, tuple(gens), "custom")
    path = tmp_path / "space.json"
    save_space(sp, path)
    code = cli_main(["verify-ext", "--space", str(path)])
    capsys.readouterr()
    assert code == 1


def test_cli_rejects_missing_experiment():
    with pytest.raises(SystemExit):
        cli_main([])


def test_cli_byte_identical_runs(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    cli_main(["sandwich", "--n", "1", "--trials", "30", "--seed", "5", "--output", str(a)])
    cli_main(["sandwich", "--n", "1", "--trials", "30", "--seed", "5", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_report_all_pass_reflects_summary_checks():
    cfg = ExperimentConfig(experiment="thm1", N=1, epsilon="1/5")
    report = run_thm1(cfg)
    assert report.all_pass
    doctored = Report(config=report.config, columns=report.columns,
                      rows=report.rows, summary={"check_rows": False})
    assert not doctored.all_pass
