import json

import pytest

from cotiltkit.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, main

from conftest import data_path

MOD = lambda name: str(data_path("modules", name))
SUBCAT = str(data_path("subcategories", "a4-add-s1.json"))
SES = str(data_path("sequences", "a4-s1-p2-s2.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cotilt_verify_dual_regular(capsys):
    code, out, _ = run(capsys, "cotilt", "verify", MOD("a4-dlambda.json"))
    assert code == EXIT_PASS
    assert "verdict: pass (0-cotilting)" in out


def test_cotilt_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "cotilt", "verify", MOD("a4-s1.json"))
    assert code == EXIT_FAIL and "overall: FAIL" in out


def test_pipeline_main2_output(capsys):
    code, out, _ = run(capsys, "pipeline", "main2", "a4-main2")
    assert code == EXIT_PASS
    assert "id U = 2" in out
    assert "perp U census: 10 of 13 Gamma-fixtures; images: 10" in out


def test_pipeline_main1_output(capsys):
    code, out, _ = run(capsys, "pipeline", "main1", "nakayama-main1")
    assert code == EXIT_PASS
    assert "dimension 14, 4 vertices, 5 arrows" in out
    assert "verdict: pass (1-cotilting)" in out


def test_negative_control_exit_code(capsys):
    code, out, _ = run(capsys, "--format", "csv", "pipeline", "main1", "a5-add-main1")
    assert code == EXIT_FAIL
    assert out.startswith("stage,ok,detail")


def test_algebra_and_module_commands(capsys):
    alg = str(data_path("algebras", "nakayama-3-4.json"))
    assert run(capsys, "algebra", "check", alg)[0] == EXIT_PASS
    code, out, _ = run(capsys, "algebra", "info", alg)
    assert "dimension 12" in out
    code, out, _ = run(capsys, "module", "decompose", MOD("a4-dlambda.json"))
    assert code == EXIT_PASS and out.count(" x1") == 4
    code, out, _ = run(capsys, "module", "tau", MOD("a4-s2.json"))
    assert "result dims [1, 0, 0, 0]" in out
    assert run(capsys, "module", "validate", MOD("a4-p3.json"))[0] == EXIT_PASS
    assert run(capsys, "module", "dual", MOD("a4-p3.json"))[0] == EXIT_PASS


def test_tau_output_file(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    run(capsys, "module", "tau-", MOD("a4-s1.json"), "--output", str(out_file))
    code, out, _ = run(capsys, "hom", str(out_file), MOD("a4-s2.json"))
    assert code == EXIT_PASS and "= 1" in out


def test_hom_and_ext(capsys):
    code, out, _ = run(capsys, "--field", "p=7", "ext", MOD("a4-s2.json"), MOD("a4-s1.json"), "--max-i", "2")
    assert code == EXIT_PASS and "Ext^1(S2, S1) = 1" in out and "field=p=7" in out


def test_conflation_check(capsys):
    base = ["conflation", "check", SES, "--subcat", SUBCAT]
    assert run(capsys, *base, "--structure", "from")[0] == EXIT_PASS
    assert run(capsys, *base, "--structure", "to")[0] == EXIT_FAIL
    assert run(capsys, "conflation", "check", SES)[0] == EXIT_PASS


def test_quotient_commands(capsys):
    code, out, _ = run(capsys, "quotient", "hom", MOD("a4-p2.json"), MOD("a4-s1.json"), "--subcat", SUBCAT)
    assert code == EXIT_PASS and "quotient = 0" in out


def test_perp_census_and_endalg(capsys, tmp_path):
    code, out, _ = run(capsys, "perp", "census", MOD("a4-dlambda.json"), str(data_path("fixtures", "a4.json")))
    assert code == EXIT_PASS and "10 of 10" in out
    exported = tmp_path / "end.json"
    code, out, _ = run(capsys, "endalg", MOD("a4-dlambda.json"), "--export", str(exported))
    assert code == EXIT_PASS and "dimension 10" in out
    assert json.loads(exported.read_text())["vertices"] == 4


def test_report_rerender(capsys, tmp_path):
    saved = tmp_path / "r.json"
    assert main(["--format", "json", "-o", str(saved), "pipeline", "main2", "a4-main2"]) == EXIT_PASS
    capsys.readouterr()
    code, out, _ = run(capsys, "report", str(saved))
    direct = run(capsys, "pipeline", "main2", "a4-main2")[1]
    assert code == EXIT_PASS and out == direct


def test_errors_exit_with_two(capsys, tmp_path):
    code, _, err = run(capsys, "hom", str(tmp_path / "missing.json"), MOD("a4-s1.json"))
    assert code == EXIT_ERROR and err.startswith("error:")
    assert run(capsys, "--field", "reals", "hom", MOD("a4-s1.json"), MOD("a4-s1.json"))[0] == EXIT_ERROR
    assert run(capsys, "pipeline", "main1", "a4-main2")[0] == EXIT_ERROR
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_output_is_deterministic(capsys):
    a = run(capsys, "--format", "json", "pipeline", "main1", "a4-apr-main1")[1]
    b = run(capsys, "--format", "json", "pipeline", "main1", "a4-apr-main1")[1]
    assert a == b
