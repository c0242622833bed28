import json

import pytest

from bifree.cli import main


@pytest.fixture
def shift_file(tmp_path):
    path = tmp_path / "shift.json"
    path.write_text(json.dumps({"type": "shift_bihaar"}))
    return str(path)


@pytest.fixture
def zw_file(tmp_path):
    path = tmp_path / "zw.json"
    path.write_text(json.dumps({
        "type": "matrix_state", "dimension": 2,
        "x": ["1", "0", "0", "0"], "y": ["0", "0", "1", "0"],
        "names": ["Z", "W"],
    }))
    return str(path)


@pytest.fixture
def offdiag_file(tmp_path):
    path = tmp_path / "offdiag.json"
    path.write_text(json.dumps({
        "type": "matrix_state", "dimension": 2,
        "x": ["0", "1/2", "2", "0"], "y": ["0", "-1", "3/2", "0"],
    }))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_small(capsys):
    code, out, _ = run(capsys, ["enumerate", "lr"])
    assert code == 0
    assert out.splitlines() == ["{1|2}", "{1,2}"]


def test_enumerate_count_matches_catalan(capsys):
    code, out, _ = run(capsys, ["enumerate", "lllrrl"])
    assert code == 0
    assert len(out.splitlines()) == 132


def test_enumerate_rejects_malformed_chi(capsys):
    code, _, err = run(capsys, ["enumerate", "x"])
    assert code == 2
    assert "malformed" in err


def test_enumerate_rejects_oversized_chi(capsys):
    code, _, err = run(capsys, ["enumerate", "l" * 13])
    assert code == 4


def test_mobius_extremes(capsys):
    code, out, _ = run(capsys, ["mobius", "llll", "0", "1"])
    assert code == 0
    assert out.strip() == "-5"
    code, out, _ = run(capsys, ["mobius", "llll", "{1,2|3,4}", "{1,2|3,4}"])
    assert out.strip() == "1"


def test_mobius_rejects_crossing_partition(capsys):
    code, _, err = run(capsys, ["mobius", "llll", "{1,3|2,4}", "1"])
    assert code == 3


def test_kreweras_command(capsys):
    code, out, _ = run(capsys, ["kreweras", "llll", "0"])
    assert code == 0
    assert out.strip() == "{1,2,3,4}"


def test_cumulant_on_shift_model(capsys, shift_file):
    code, out, _ = run(capsys, ["cumulant", shift_file, "ul ur*"])
    assert code == 0
    assert out.strip() == "1"


def test_cumulant_on_matrix_model(capsys, zw_file):
    # kappa(Z, Z) = phi(ZZ) - phi(Z)^2 = 1/2 - 1/4
    code, out, _ = run(capsys, ["cumulant", zw_file, "Z Z"])
    assert code == 0
    assert out.strip() == "1/4"


def test_cumulant_with_partition(capsys, shift_file):
    code, out, _ = run(capsys, ["cumulant", shift_file, "ul ul*", "{1|2}"])
    assert code == 0
    assert out.strip() == "0"


def test_cumulant_unknown_token(capsys, shift_file):
    code, _, err = run(capsys, ["cumulant", shift_file, "ul uq"])
    assert code == 2


def test_cumulant_degree_limit(capsys, shift_file):
    code, _, err = run(capsys, ["cumulant", shift_file, " ".join(["ul"] * 9)])
    assert code == 4


def test_cumulant_json_output(capsys, zw_file):
    code, out, _ = run(capsys, ["--json", "cumulant", zw_file, "Z Z"])
    payload = json.loads(out)
    assert payload["value"] == "1/4"
    assert payload["word"] == "Z Z"


def test_check_bihaar_passes_on_shift(capsys, shift_file):
    code, out, _ = run(capsys, ["check", "bihaar", shift_file])
    assert code == 0
    assert out.startswith("PASS")


def test_check_birdiagonal_fails_on_projection(capsys, zw_file):
    code, out, _ = run(capsys, ["--max-degree", "3", "check", "birdiagonal",
                                zw_file])
    assert code == 1
    assert out.startswith("FAIL")


def test_check_bieven_passes_on_offdiagonal(capsys, offdiag_file):
    code, out, _ = run(capsys, ["--max-degree", "3", "check", "bieven",
                                offdiag_file])
    assert code == 0


def test_check_rcyclic(capsys, shift_file):
    code, _, _ = run(capsys, ["--max-degree", "4", "check", "rcyclic2",
                              shift_file])
    assert code == 0


def test_check_json_report(capsys, zw_file):
    code, out, _ = run(capsys, ["--json", "--max-degree", "2", "check",
                                "birdiagonal", zw_file])
    payload = json.loads(out)
    assert payload["kind"] == "birdiagonal"
    report = payload["reports"][0]
    assert report["verdict"] is False
    assert report["witnesses"][0]["word"] == "Z"


def test_product_requires_two_models(capsys, shift_file):
    with pytest.raises(SystemExit) as exc:
        main(["product", shift_file])
    assert exc.value.code == 2


def test_product_moment_and_bifree_scan(capsys, tmp_path, shift_file, zw_file):
    code, out, _ = run(capsys, ["product", shift_file, zw_file,
                                "--moment", "Z*@2 ul*@1 ul@1 Z@2"])
    assert code == 0
    assert "= 1/2" in out
    code, out, _ = run(capsys, ["--max-degree", "3", "product", shift_file,
                                zw_file, "--check-bifree"])
    assert code == 0
    assert "PASS" in out


def test_product_cumulant(capsys, shift_file, zw_file):
    code, out, _ = run(capsys, ["product", shift_file, zw_file,
                                "--cumulant", "ul@1 Z@2"])
    assert code == 0
    assert out.strip().endswith("= 0")


def test_verify_single_check(capsys):
    code, out, _ = run(capsys, ["verify", "--only", "quarter-counterexample"])
    assert code == 0
    assert "PASS quarter-counterexample" in out


def test_verify_json_contains_values(capsys):
    code, out, _ = run(capsys, ["--json", "verify",
                                "--only", "quarter-counterexample"])
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert payload["checks"][0]["details"]["value"] == "1/4"


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, ["verify", "--only", "bogus"])
    assert code == 2
    assert "unknown check ids" in err


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, ["verify", "--suite", "other"])
    assert code == 2


def test_missing_model_file(capsys):
    code, _, err = run(capsys, ["cumulant", "/nonexistent.json", "ul"])
    assert code == 2


def test_errors_go_to_stderr_only(capsys):
    code, out, err = run(capsys, ["mobius", "llll", "{1,3|2,4}", "1"])
    assert code == 3
    assert out == ""
    assert err != ""
