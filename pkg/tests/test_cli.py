import json

from markovsum import cli
from markovsum.catalog import parse_reports_csv

MARKOV_33 = "1.202056903159594285399738161511450"


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_apery_33_digits(self, capsys):
        code, out, _ = run(capsys, "compute", "apery", "--digits", "33")
        assert code == 0
        assert f"value: {MARKOV_33}" in out
        assert "digits proven: 33" in out

    def test_markov_hurwitz_33_digits(self, capsys):
        code, out, _ = run(capsys, "compute", "markov-hurwitz", "--a", "1",
                           "--digits", "33")
        assert code == 0
        assert f"value: {MARKOV_33}" in out

    def test_ratio27_twenty_digits_within_13_terms(self, capsys):
        code, out, _ = run(capsys, "compute", "ratio27-zeta3", "--digits", "20")
        assert code == 0
        terms = int(next(l for l in out.splitlines() if l.startswith("terms used")).split(": ")[1])
        assert terms <= 13

    def test_unknown_formula_is_usage_error(self, capsys):
        code, _, err = run(capsys, "compute", "nosuch")
        assert code == 64
        assert "unknown formula" in err

    def test_non_geometric_shortfall(self, capsys):
        code, out, _ = run(capsys, "compute", "zeta3-direct", "--digits", "20",
                           "--max-terms", "200")
        assert code == 2
        assert "no geometric bound" in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "compute", "apery",
                           "--digits", "10")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == "1"
        assert payload["digits_proven"] >= 10

    def test_rejects_decimal_parameter(self, capsys):
        code, _, err = run(capsys, "compute", "markov-hurwitz", "--a", "0.5")
        assert code == 64

    def test_unknown_flag_rejected(self, capsys):
        code, _, _ = run(capsys, "compute", "apery", "--frobnicate")
        assert code == 64


class TestCompare:
    def test_zeta3_rows(self, capsys):
        code, out, _ = run(capsys, "compare", "zeta3", "--digits", "20",
                           "--max-terms", "400")
        assert code == 0
        rows = parse_reports_csv(out)
        assert [r["entry"] for r in rows] == [
            "zeta3-direct", "apery", "markov-hurwitz", "ratio27-zeta3", "az-zeta3"]
        accelerated = [r for r in rows if r["ratio_bound"] is not None]
        assert all(r["digits_proven"] >= 20 for r in accelerated)

    def test_zeta2_rows(self, capsys):
        code, out, _ = run(capsys, "compare", "zeta2", "--digits", "15",
                           "--max-terms", "400")
        assert code == 0
        rows = parse_reports_csv(out)
        assert [r["entry"] for r in rows] == ["zeta2-direct", "schellbach-zeta2", "zeta2-27"]

    def test_zero_digits_trivial(self, capsys):
        code, out, _ = run(capsys, "compare", "zeta3", "--digits", "0",
                           "--max-terms", "5")
        assert code == 0
        assert len(out.splitlines()) == 6  # header + five rows

    def test_csv_parses_back_losslessly(self, capsys):
        _, out, _ = run(capsys, "compare", "zeta2", "--digits", "10",
                        "--max-terms", "200")
        rows = parse_reports_csv(out)
        assert all(r["schema"] == "1" for r in rows)
        assert all(isinstance(r["terms_used"], int) for r in rows)


class TestVerifyPair:
    def test_canonical_grid(self, capsys):
        code, out, _ = run(capsys, "verify-pair", "3phi2", "--a", "1/3", "--b", "1/5",
                           "--c", "1/7", "--d", "1/11", "--q", "1/2", "--grid", "10x10")
        assert code == 0
        assert "residual_failures: 0" in out
        assert "boundary_equal: True" in out

    def test_big_base_rejected(self, capsys):
        code, _, err = run(capsys, "verify-pair", "3phi2", "--q", "2")
        assert code == 64
        assert "|q| < 1" in err

    def test_fuzz_detected(self, capsys):
        code, out, _ = run(capsys, "verify-pair", "3phi2", "--grid", "4x4", "--fuzz")
        assert code == 1
        assert "first_failure" in out

    def test_unknown_fixture(self, capsys):
        code, _, _ = run(capsys, "verify-pair", "2phi1")
        assert code == 64

    def test_preset_file(self, capsys, tmp_path):
        presets = tmp_path / "presets.json"
        presets.write_text(json.dumps({
            "small": {"a": "1/2", "b": "1/3", "c": "1/5", "d": "1/7", "q": "1/3"}}))
        code, out, _ = run(capsys, "verify-pair", "3phi2", "--grid", "3x3",
                           "--presets", str(presets), "--preset", "small")
        assert code == 0
        assert "'q': '1/3'" in out


class TestVerifyCertificate:
    def test_grid_plus_random(self, capsys):
        code, out, _ = run(capsys, "verify-certificate", "--grid", "6x6",
                           "--random-points", "5", "--seed", "3")
        assert code == 0
        assert "passed: True" in out

    def test_singular_evaluation_exit_code(self, capsys):
        # c = q^-2 makes the extension denominator vanish inside the grid
        code, _, err = run(capsys, "verify-certificate", "--c", "4", "--q", "1/2",
                           "--grid", "6x6")
        assert code == 65
        assert "singularity" in err and "x=1, z=2" in err


class TestSolve:
    def test_u1_closed_forms(self, capsys):
        code, out, _ = run(capsys, "solve", "3phi2-u1", "--x-max", "4")
        assert code == 0
        assert "x=0  U-multiplier: [1]  V-multiplier: [77/47, -346/1457]" in out

    def test_u2_closure(self, capsys):
        code, out, _ = run(capsys, "solve", "4f3-u2", "--x-max", "8")
        assert code == 0
        assert "x=8" in out

    def test_mismatched_form_fails_with_diagnosis(self, capsys):
        code, out, _ = run(capsys, "solve", "3phi2-u1", "--form", "u3", "--x-max", "3")
        assert code == 1
        assert "does not close at x=0" in out

    def test_unknown_family(self, capsys):
        code, _, _ = run(capsys, "solve", "not-a-family")
        assert code == 64


class TestInfrastructure:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0
        assert "apery" in out and "kummer" in out

    def test_reproducible_output(self, capsys):
        first = run(capsys, "verify-certificate", "--grid", "4x4",
                    "--random-points", "3", "--seed", "11")
        second = run(capsys, "verify-certificate", "--grid", "4x4",
                     "--random-points", "3", "--seed", "11")
        assert first == second

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(capsys, "--format", "json", "--output", str(path),
                           "compute", "apery", "--digits", "8")
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())["digits_proven"] >= 8

    def test_format_env_default(self, capsys, monkeypatch):
        monkeypatch.setenv("MARKOVSUM_FORMAT", "json")
        code, out, _ = run(capsys, "compute", "apery", "--digits", "5")
        assert code == 0
        assert json.loads(out)["schema"] == "1"

    def test_missing_verb_usage(self, capsys):
        code, _, _ = run(capsys)
        assert code == 64
