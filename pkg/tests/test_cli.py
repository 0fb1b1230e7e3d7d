import json
import subprocess
import sys


from finite_physics.cli import (EXIT_CONFIG, EXIT_FAIL, EXIT_NO_SOLUTION, EXIT_OK, RunReport,
                                main)

COMMANDS = ["search", "verify-gauss", "riemann", "wick", "leeyang"]


def run(tmp_path, *argv, config=None):
    args = list(argv) + ["--out", str(tmp_path)]
    if config is not None:
        path = tmp_path / "run.ini"
        path.write_text(config)
        args += ["--config", str(path)]
    return main(args)


def snapshot(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.suffix != ".ini"}


def test_search_writes_p577(tmp_path, capsys):
    assert run(tmp_path, "search") == EXIT_OK
    recs = [json.loads(line) for line in (tmp_path / "universes.jsonl").read_text().splitlines()]
    assert len(recs) == 1
    assert recs[0]["universe"]["p"] == "577"
    assert "p=577" in capsys.readouterr().out


def test_search_is_idempotent(tmp_path):
    run(tmp_path, "search")
    first = (tmp_path / "universes.jsonl").read_bytes()
    assert run(tmp_path, "search") == EXIT_OK
    assert (tmp_path / "universes.jsonl").read_bytes() == first
    report = json.loads((tmp_path / "search_report.json").read_text())
    assert report["tables"]["universe"]["cache_hit"] is True


def test_search_no_solution(tmp_path, capsys):
    cfg = "[search]\nB = 6\nK = 3\nmode = A\np_max = 1000000\nextra_divisors =\n"
    assert run(tmp_path, "search", config=cfg) == EXIT_NO_SOLUTION
    assert "no solution" in capsys.readouterr().err


def test_verify_gauss_p577(tmp_path):
    assert run(tmp_path, "verify-gauss") == EXIT_OK
    report = json.loads((tmp_path / "verify_gauss_report.json").read_text())
    assert [r["nu"] for r in report["tables"]["nu"]] == ["2", "4", "6", "12"]


def test_verify_gauss_p17(tmp_path):
    cfg = "[search]\nmode = A\niota = 2\nextra_divisors =\n"
    assert run(tmp_path, "verify-gauss", config=cfg) == EXIT_OK
    report = json.loads((tmp_path / "verify_gauss_report.json").read_text())
    assert [r["nu"] for r in report["tables"]["nu"]] == ["2"]
    assert report["config"]["universe"]["p"] == "17"


def test_missing_universe_is_config_error(tmp_path):
    assert run(tmp_path, "verify-gauss", "--universe", "0123456789abcdef") == EXIT_CONFIG


def test_corrupted_cache_is_config_error(tmp_path, capsys):
    run(tmp_path, "search")
    cache = tmp_path / "universes.jsonl"
    rec = json.loads(cache.read_text())
    rec["universe"]["epsilon"] = "4"
    cache.write_text(json.dumps(rec) + "\n")
    assert run(tmp_path, "verify-gauss", "--universe", rec["id"][:6]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "primitive root" in err
    assert not (tmp_path / "verify_gauss_report.json").exists()


def test_bad_config_file(tmp_path):
    assert main(["search", "--out", str(tmp_path), "--config", str(tmp_path / "nope.ini")]) == EXIT_CONFIG
    assert run(tmp_path, "search", config="[search]\nB = two\n") == EXIT_CONFIG


def test_riemann_real_scale_csv(tmp_path):
    assert run(tmp_path, "riemann") == EXIT_OK
    lines = (tmp_path / "riemann.csv").read_text().splitlines()
    assert lines[0].startswith("mu,l,re_sum")
    errors = [float(line.split(",")[6]) for line in lines[1:]]
    assert all(b <= 2 * a for a, b in zip(errors, errors[1:]))


def test_riemann_imaginary_scale_argument(tmp_path):
    cfg = "[riemann]\nscale = V\nl = 5\nmu = 100, 1000\n"
    assert run(tmp_path, "riemann", config=cfg) == EXIT_OK
    lines = (tmp_path / "riemann.csv").read_text().splitlines()[1:]
    for line in lines:
        arg = float(line.split(",")[7])
        assert abs(abs(arg) - 0.7853981633974483) <= 0.1


def test_riemann_empty_domain(tmp_path):
    assert run(tmp_path, "riemann", config="[riemann]\nl = 0\n") == EXIT_OK
    assert (tmp_path / "riemann.csv").read_text().splitlines() == [
        "mu,l,re_sum,im_sum,re_oracle,im_oracle,abs_error,arg_sum"]


def test_wick_default_and_trivial_grid(tmp_path):
    assert run(tmp_path, "wick") == EXIT_OK
    report = json.loads((tmp_path / "wick_report.json").read_text())
    assert max(row["max_residual"] for row in report["tables"]["grid"]) <= 1e-12
    side = {row["a"]: row for row in report["tables"]["gauss_side_by_side"]}
    assert side["1"]["U"] == [1.0, 0.0]
    assert run(tmp_path, "wick", config="[wick]\nl = 0\nmu = 1\na = 1\n") == EXIT_OK
    report = json.loads((tmp_path / "wick_report.json").read_text())
    assert report["tables"]["grid"][0]["max_residual"] == 0


def test_leeyang_defaults(tmp_path):
    assert run(tmp_path, "leeyang") == EXIT_OK
    recs = [json.loads(line) for line in (tmp_path / "leeyang.jsonl").read_text().splitlines()]
    free, gas = recs[0], recs[1]
    assert free["P_at_1"] == "32" and free["primes"] == ["2"]
    assert gas["P_at_1"] == "13" and gas["primes"] == ["13"]
    assert len(recs) == 2 + 11 * 3
    assert all(r["circle"]["on_circle"] for r in recs[2:])


def test_failed_check_exits_one(tmp_path):
    # a ridiculous tolerance makes the circle check fail
    assert run(tmp_path, "leeyang", config="[leeyang]\ntol = 0\nsweep_N = 12\nsweep_coupling = 2\n") == EXIT_FAIL
    report = json.loads((tmp_path / "leeyang_report.json").read_text())
    assert report["passed"] is False


def test_report_summarizes(tmp_path, capsys):
    assert run(tmp_path, "report") == EXIT_CONFIG
    run(tmp_path, "riemann")
    assert run(tmp_path, "report") == EXIT_OK
    assert "riemann report" in capsys.readouterr().out


def test_exit_code_matches_checks():
    r = RunReport("x", {})
    r.check("a", True)
    assert r.passed
    r.check("b", False, "operands 1 vs 2")
    assert not r.passed
    assert "FAIL b: operands 1 vs 2" in r.summary()


def test_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out, workers in ((a, "1"), (b, "3")):
        out.mkdir()
        for cmd in COMMANDS:
            assert main([cmd, "--out", str(out), "--workers", workers]) == EXIT_OK
    assert snapshot(a) == snapshot(b)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "finite_physics", "search", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "all checks passed" in proc.stdout
