"""End-to-end tests of the command-line interface, run in process."""

import csv
import io
import json

import pytest

from lietype import cli, groups, sylow
from lietype.groups import GroupId


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def records_of(out):
    return [json.loads(line) for line in out.splitlines()]


def test_no_arguments_is_usage_error(capsys):
    assert cli.main([]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
    out = capsys.readouterr().out
    assert "order" in out and "sylow" in out and "check" in out


def test_order_json(capsys):
    code, out, _ = run(capsys, "order", "--family", "G2", "--q", "3")
    assert code == 0
    (rec,) = records_of(out)
    assert rec["order"] == "4245696"
    assert rec["m"] == 6 and rec["d"] == 1 and rec["e0"] == 6
    assert rec["exponents"] == "1:2,2:2,3:1,6:1"


def test_order_rejects_invalid_group_naming_condition(capsys):
    code, out, err = run(capsys, "order", "--family", "A", "--n", "1", "--q", "2")
    assert code == 2
    assert out == ""
    assert "(1,2)" in err


def test_order_alt_and_csv(capsys):
    code, out, _ = run(capsys, "order", "--family", "ALT", "--n", "5", "--format", "csv")
    assert code == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["order"] == "60" and row["family"] == "ALT" and row["n"] == "5"


def test_order_tits_is_flagged_ambient(capsys):
    code, out, _ = run(capsys, "order", "--family", "2F4d", "--q", "2")
    assert code == 0
    (rec,) = records_of(out)
    assert rec["order"] == "17971200"
    assert rec["ambient"] == "true"


def test_sylow_single_prime(capsys):
    code, out, _ = run(capsys, "sylow", "--family", "E8", "--q", "2", "--r", "31")
    assert code == 0
    (rec,) = records_of(out)
    assert rec["sylow_order"] == "961" and rec["status"] == "ok"


def test_sylow_trivial(capsys):
    code, out, _ = run(capsys, "sylow", "--family", "A", "--n", "1", "--q", "5",
                       "--r", "11")
    assert code == 0
    (rec,) = records_of(out)
    assert rec["status"] == "trivial" and rec["sylow_order"] == "1"


def test_sylow_composite_r_is_usage_error(capsys):
    code, _, err = run(capsys, "sylow", "--family", "A", "--n", "1", "--q", "5",
                       "--r", "12")
    assert code == 2 and "prime" in err


def test_sylow_spectrum_round_trips(capsys):
    code, out, _ = run(capsys, "sylow", "--family", "E7", "--q", "3")
    assert code == 0
    recs = records_of(out)
    g = GroupId("E7", None, 3)
    expected = sylow.sylow_spectrum(g).entries
    assert [(rec["r"], int(rec["sylow_order"])) for rec in recs] == list(expected)
    assert recs[0]["a_ratio"] == "1.000000"
    assert all(rec["approx"] == "true" for rec in recs)


def test_sylow_budget_exhaustion_exits_three(capsys):
    code, _, err = run(capsys, "sylow", "--family", "A", "--n", "58", "--q", "2",
                       "--rho-budget", "2")
    assert code == 3
    assert "stalled" in err


def test_check_theorem1_below_q0(capsys):
    code, out, _ = run(capsys, "check", "theorem1", "--families", "exceptional",
                       "--below-q0", "--jobs", "1")
    assert code == 0
    recs = records_of(out)
    summary = recs[-1]
    assert summary["op"] == "summary"
    assert summary["verdict"] == "match"
    assert summary["violations"] == 0 and summary["expected"] == 5
    flagged = {(r["family"], r["q"], r["r"]) for r in recs if r["verdict"] == "expected"}
    assert flagged == {("3D4", 3, 13), ("E6", 3, 13), ("E8", 2, 31),
                       ("F4", 3, 13), ("G2", 3, 13)}


def test_check_theorem1_without_allowance_fails(capsys):
    code, out, _ = run(capsys, "check", "theorem1", "--families", "exceptional",
                       "--below-q0", "--no-allow-expected", "--jobs", "1")
    assert code == 1
    assert records_of(out)[-1]["verdict"] == "mismatch"


def test_check_output_identical_across_job_counts(capsys):
    argv = ["check", "identities", "--q-max", "4", "--i-max", "24"]
    code1, out1, _ = run(capsys, *argv, "--jobs", "1")
    code3, out3, _ = run(capsys, *argv, "--jobs", "3")
    assert code1 == code3 == 0
    assert out1 == out3


def test_check_csv_has_uniform_columns(capsys):
    code, out, _ = run(capsys, "check", "qbound", "--n-max", "4", "--q-max", "5",
                       "--format", "csv", "--jobs", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[-1]["op"] == "summary" and rows[-1]["verdict"] == "pass"
    body = rows[:-1]
    assert body and all(row["verdict"] == "pass" for row in body)
    assert all(row["check"] == "" for row in body)


def test_check_alt_small_range_reports_bound_violations(capsys):
    code, out, _ = run(capsys, "check", "alt", "--n-max", "12", "--jobs", "1")
    assert code == 1
    recs = records_of(out)
    bad = {rec["n"] for rec in recs if rec.get("bound") == "violation"}
    assert bad == {5, 6, 8}
    irregular = {rec["n"] for rec in recs if rec.get("pair") == "expected"}
    assert irregular == {5, 6, 7, 9}
    assert recs[-1]["verdict"] == "fail"


def test_check_artin_sweep_passes(capsys):
    code, out, _ = run(capsys, "check", "artin", "--families", "exceptional",
                       "--psl2-max", "64", "--n-max", "2", "--q-max", "4",
                       "--jobs", "1")
    assert code == 0
    recs = records_of(out)
    assert recs[-1]["verdict"] == "pass"


def test_check_below_q0_rejected_for_alt(capsys):
    code, _, err = run(capsys, "check", "alt", "--below-q0")
    assert code == 2 and "below-q0" in err


def test_check_unknown_name_is_usage_error(capsys):
    assert cli.main(["check", "nonsense"]) == 2
    capsys.readouterr()


def test_check_scan_budget_failure_exits_three(capsys):
    code, out, _ = run(capsys, "check", "theorem1", "--families", "classical",
                       "--n-max", "8", "--q-min", "29", "--q-max", "29",
                       "--rho-budget", "1", "--jobs", "1")
    assert code == 3
    recs = records_of(out)
    assert recs[-1]["verdict"] == "incomplete"
    assert any(rec["verdict"] == "error" for rec in recs)


def test_config_file_defaults_and_flag_override(capsys, tmp_path):
    cfg = tmp_path / "lietype.cfg"
    cfg.write_text("q-max = 3\ni-max = 40  # default sweep\nformat = csv\n")
    code, out, _ = run(capsys, "check", "identities", "--config", str(cfg),
                       "--i-max", "10", "--jobs", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    body = [row for row in rows if row["op"] == "identities"]
    assert {row["q"] for row in body} == {"2", "3"}  # config q-max applied
    assert max(int(row["i"]) for row in body) == 10  # flag beats config


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    code, _, err = run(capsys, "check", "identities", "--config", str(cfg))
    assert code == 2 and "bogus" in err


def test_config_malformed_line(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("just some words\n")
    code, _, err = run(capsys, "check", "identities", "--config", str(cfg))
    assert code == 2 and "key = value" in err


def test_config_missing_file(capsys):
    code, _, err = run(capsys, "check", "identities", "--config", "/nonexistent.cfg")
    assert code == 2 and "cannot read config" in err


def test_jobs_environment_variable(capsys, monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV, "2")
    code, out, _ = run(capsys, "check", "identities", "--q-max", "3", "--i-max", "6")
    assert code == 0
    monkeypatch.setenv(cli.JOBS_ENV, "soon")
    code, _, err = run(capsys, "check", "identities", "--q-max", "3", "--i-max", "6")
    assert code == 2 and cli.JOBS_ENV in err


def test_emitted_integers_reparse_to_library_values(capsys):
    code, out, _ = run(capsys, "order", "--family", "E6", "--q", "3")
    assert code == 0
    (rec,) = records_of(out)
    assert int(rec["order"]) == groups.order(GroupId("E6", None, 3))
