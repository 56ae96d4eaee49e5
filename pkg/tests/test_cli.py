"""End-to-end tests of the heegner-verify command-line interface."""

import json

from heegner_verify import cli


def _run(args, capsys):
    code = cli.main(args)
    return code, capsys.readouterr().out


def test_report_schema_and_exit_code(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out = _run(["report", "-p", "5", "--json", str(out_path)], capsys)
    assert code == cli.EXIT_OK
    report = json.loads(out_path.read_text())
    assert json.loads(out) == report
    assert set(report) == {"prime", "class_mod9", "config", "sections",
                           "status", "timings_ms"}
    assert report["prime"] == 5 and report["class_mod9"] == 5
    assert report["status"] == "pass"
    assert report["config"]["precision"] == 192
    assert report["config"]["height_tag"] == "x-height"
    names = [s["name"] for s in report["sections"]]
    assert names == ["matrices", "local_fields", "curves", "lseries", "gz", "bsd3"]
    for s in report["sections"]:
        assert s["status"] == "pass"
        assert all(c["status"] == "pass" for c in s["checks"])
    assert set(report["timings_ms"]) == set(names)


def test_report_deterministic():
    config = {"precision": 128, "coeff_cutoff": None, "search_budget": 200000,
              "height_tag": "x-height", "recognition_denominator_bound": 10**4}
    r1 = cli.build_report(5, config)
    r2 = cli.build_report(5, config)
    r1.pop("timings_ms"), r2.pop("timings_ms")
    assert r1 == r2


def test_single_sections(capsys):
    for cmd in ("check-matrices", "check-local", "check-curves"):
        code, out = _run([cmd, "-p", "11"], capsys)
        assert code == cli.EXIT_OK
        section = json.loads(out)
        assert section["status"] == "pass"


def test_bad_prime_class_exit_code(capsys):
    code, _ = _run(["check-matrices", "-p", "7"], capsys)
    assert code == cli.EXIT_EXACT_FAIL


def test_invalid_family_exit_code(capsys):
    code, _ = _run(["lvalue", "E_55"], capsys)
    assert code == cli.EXIT_NUMERIC_FAIL


def test_budget_exit_code(capsys):
    code, _ = _run(["certify", "--n", "33", "--search-budget", "5"], capsys)
    assert code == cli.EXIT_BUDGET


def test_certify_reverifies(capsys):
    code, out = _run(["certify", "--n", "15"], capsys)
    assert code == cli.EXIT_OK
    assert "15" in out and "^3" in out


def test_lvalue_output(capsys):
    code, out = _run(["lvalue", "E_6", "--order", "1"], capsys)
    assert code == cli.EXIT_OK
    assert out.startswith("2.3761866")


def test_points_file(capsys, tmp_path):
    # generator of E_363(Q) supplied instead of searched
    pf = tmp_path / "points.txt"
    pf.write_text("# n x y\n363 149522737/33856 1827752198185/6229504\n")
    code, out = _run(["gz-verify", "-p", "11", "--points", str(pf)], capsys)
    assert code == cli.EXIT_OK
    section = json.loads(out)
    assert section["status"] == "pass"


def test_gz_and_bsd3_for_both_classes(capsys):
    for p in ("5", "11"):
        for cmd in ("gz-verify", "bsd3"):
            code, out = _run([cmd, "-p", p], capsys)
            assert code == cli.EXIT_OK, (cmd, p)
            assert json.loads(out)["status"] == "pass"
