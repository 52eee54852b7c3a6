import subprocess
import sys
from fractions import Fraction
from importlib import resources

import rht.homotopy
from rht.cli import main
from rht.report import Report


def data_path(name):
    return str(resources.files("rht").joinpath("data").joinpath(name))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohomology_command_ranks(capsys):
    code, out, _ = run_cli(capsys, "cohomology", data_path("s2_model.cdga"),
                           "--through", "7", "--machine")
    assert code == 0
    report = Report.parse(out)
    assert report.get("ranks") == "1,0,1,0,0,0,0,0"


def test_cohomology_single_degree(capsys):
    code, out, _ = run_cli(capsys, "cohomology", data_path("wedge335_seed.cdga"),
                           "--degree", "6", "--machine")
    assert code == 0
    report = Report.parse(out)
    assert report.get("degree.6.rank") == "1"
    assert report.get("degree.6.rep.0") == "a*b"


def test_cohomology_malformed_file_names_line(capsys, tmp_path):
    bad = tmp_path / "bad.cdga"
    bad.write_text("cdga t\ngen a 2\ngen b 3\nd b = a\n", encoding="utf-8")
    code, _out, err = run_cli(capsys, "cohomology", str(bad), "--degree", "2")
    assert code == 2
    assert "line 4" in err


def test_model_command_bigraded(capsys):
    code, out, _ = run_cli(capsys, "model", data_path("cp2.ring"),
                           "--bigraded", "--through", "12", "--machine")
    assert code == 0
    report = Report.parse(out)
    rows = [v for k, v in report.fields if k.startswith("gen.")]
    assert any("degree=2" in r and "stage=0" in r for r in rows)
    assert any("degree=5" in r and "stage=1" in r for r in rows)


def test_model_command_warns_below_first_generator(capsys, tmp_path):
    ring = tmp_path / "s9.ring"
    ring.write_text("ring s9\ngen x 9\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "model", str(ring), "--through", "8",
                           "--machine")
    assert code == 0
    assert "warning" in out


def test_distortion_command(capsys):
    code, out, _ = run_cli(capsys, "distortion", data_path("s2_model.cdga"),
                           "--class", "b", "--machine")
    assert code == 0
    assert Report.parse(out).get("exponent") == "4"
    code, out, _ = run_cli(capsys, "distortion", data_path("cp2_model.cdga"),
                           "--class", "y", "--machine")
    assert code == 0
    report = Report.parse(out)
    assert report.get("exponent") == "6"
    assert report.get("sharpness") == "sharp-if-scalable"


def test_distortion_unknown_class(capsys):
    code, _out, err = run_cli(capsys, "distortion", data_path("s2_model.cdga"),
                              "--class", "nope")
    assert code == 2
    assert "unknown class" in err


def test_scalable_command_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "scalable", "csum(4*CP2)", "--machine")
    assert code == 1
    report = Report.parse(out)
    assert report.get("verdict") == "NotScalable"
    assert report.get("certificate.checked") == "true"

    code, out, _ = run_cli(capsys, "scalable", "csum(3*(S2xS2))", "--machine")
    assert code == 0
    assert Report.parse(out).get("verdict") == "Scalable"

    code, out, _ = run_cli(capsys, "scalable", "csum(1*(S2xS2),1*CP2)",
                           "--machine")
    assert code == 1
    assert Report.parse(out).get("verdict") == "Unknown"


def test_pair_command_scaling(capsys):
    code, out, _ = run_cli(capsys, "pair", data_path("wedge335_model.cdga"),
                           "--class", "z", "--bracket", "[[a,c],[a,[a,b]]]",
                           "--scale", "2", "--machine")
    assert code == 0
    report = Report.parse(out)
    base = Fraction(report.get("value"))
    scaled = Fraction(report.get("scaled_value"))
    assert scaled == base * 2 ** 17


def test_pair_command_unit(capsys):
    code, out, _ = run_cli(capsys, "pair", data_path("wedge335_model.cdga"),
                           "--class", "u_b", "--bracket", "[a,b]", "--machine")
    assert code == 0
    assert abs(Fraction(Report.parse(out).get("value"))) == 1


def test_pair_degree_mismatch_rejected(capsys):
    code, _out, err = run_cli(capsys, "pair", data_path("wedge335_model.cdga"),
                              "--class", "z", "--bracket", "[a,b]")
    assert code == 2
    assert "degree" in err


def test_machine_reports_are_deterministic(capsys):
    _c, out1, _ = run_cli(capsys, "model", data_path("wedge335.ring"),
                          "--through", "9", "--machine")
    _c, out2, _ = run_cli(capsys, "model", data_path("wedge335.ring"),
                          "--through", "9", "--machine")
    assert out1 == out2
    assert Report.parse(out1).render_machine() == out1


def test_env_variable_sets_default_cap(capsys, monkeypatch):
    monkeypatch.setenv("RHT_CAP", "4")
    code, out, _ = run_cli(capsys, "cohomology", data_path("s2_model.cdga"),
                           "--machine")
    assert code == 0
    assert Report.parse(out).get("ranks") == "1,0,1,0,0"
    monkeypatch.setenv("RHT_CAP", "zero")
    code, _out, err = run_cli(capsys, "cohomology", data_path("s2_model.cdga"))
    assert code == 2 and "RHT_CAP" in err


def test_verify_paper_filter(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--only", "s2-model",
                           "hopf", "--machine")
    assert code == 0
    report = Report.parse(out)
    keys = [k for k, _v in report.fields if k.startswith("check.")]
    assert keys == ["check.s2-model", "check.hopf"]
    assert report.get("all_pass") == "true"


def test_verify_paper_unknown_battery(capsys):
    code, _out, err = run_cli(capsys, "verify-paper", "--only", "nothing")
    assert code == 2
    assert "unknown batteries" in err


def test_injected_sign_bug_fails_named_battery(capsys, monkeypatch):
    good = rht.homotopy.integrate_0_1

    def flipped(u):
        return -1 * good(u)

    monkeypatch.setattr(rht.homotopy, "integrate_0_1", flipped)
    code, out, _ = run_cli(capsys, "verify-paper", "--only", "integration",
                           "--machine")
    assert code == 1
    report = Report.parse(out)
    assert report.get("all_pass") == "false"
    assert "FAIL" in report.get("check.integration")


def test_cli_subprocess_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "rht.cli", "scalable", "S3", "--machine"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict = Scalable" in proc.stdout
