import json

import pytest

from umbrakit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_partitions_command(capsys):
    code, out, _ = run(capsys, "partitions", "--v", "(1,1)")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 2
    assert data["schema"] == "1"


def test_gen_tsh_brownian_example(capsys):
    code, out, _ = run(capsys, "gen-tsh", "--process", "brownian",
                       "--d", "1", "--v", "(2)")
    assert code == 0
    data = json.loads(out)
    assert data["tsh"]["coeffs"] == {"(0)": "-t", "(1)": "0", "(2)": "1"}


def test_gen_tsh_verify_roundtrip(capsys, tmp_path):
    path = tmp_path / "q.json"
    code, _, _ = run(capsys, "gen-tsh", "--process", "poisson", "--d", "1",
                     "--v", "(3)", "--output", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--process", "poisson", "--d", "1",
                       "--tsh", str(path))
    assert code == 0
    assert "PASS" in out


def test_verify_family(capsys):
    code, out, _ = run(capsys, "verify", "--family", "bernoulli",
                       "--d", "1", "--max-order", "4")
    assert code == 0
    assert "PASS" in out


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--process", "gamma", "--d", "1",
                       "--max-order", "3")
    assert code == 0
    assert out.count("PASS") == 3


def test_moments_and_cumulants(capsys):
    code, out, _ = run(capsys, "moments", "--process", "poisson", "--d", "1",
                       "--order", "3", "--params", '{"rate": "2"}')
    assert code == 0
    data = json.loads(out)
    assert data["moments"]["moments"]["(1)"] == "2*t"
    code, out, _ = run(capsys, "cumulants", "--process", "brownian",
                       "--d", "1", "--order", "4")
    assert code == 0
    data = json.loads(out)
    assert data["cumulants"]["moments"]["(2)"] == "1"
    assert data["cumulants"]["moments"]["(4)"] == "0"


def test_gen_family(capsys):
    code, out, _ = run(capsys, "gen-family", "--family", "bernoulli",
                       "--v", "(2)", "--t", "1")
    assert code == 0
    data = json.loads(out)
    assert data["polynomial"] == "x1^2 - x1 + 1/6"
    code, out, _ = run(capsys, "gen-family", "--family", "hermite",
                       "--v", "(2)", "--latex")
    assert code == 0
    assert "x_{1}^{2}" in out


def test_ig_check(capsys):
    code, out, _ = run(capsys, "ig-check", "--a", "2", "--b", "3",
                       "--order", "6")
    assert code == 0
    assert "PASS" in out


def test_decompose_command(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"coeffs": {"(2)": "1", "(1)": "3", "(0)": "-t"}}))
    code, out, _ = run(capsys, "decompose", "--process", "brownian",
                       "--d", "1", "--poly", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["exact"] is True
    assert data["coefficients"] == {"(2)": "1", "(1)": "3"}
    # non-harmonic input exits 1 with a residual
    path.write_text(json.dumps({"coeffs": {"(2)": "1"}}))
    code, out, _ = run(capsys, "decompose", "--process", "poisson",
                       "--d", "1", "--poly", str(path))
    assert code == 1
    assert json.loads(out)["exact"] is False


def test_unknown_process_exits_3(capsys):
    code, _, err = run(capsys, "gen-tsh", "--process", "nope", "--v", "(2)")
    assert code == 3
    assert "error" in err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen-tsh"])  # missing required --v
    assert exc.value.code == 2


def test_mc_verify_small(capsys):
    code, out, err = run(capsys, "mc-verify", "--process", "brownian",
                         "--d", "1", "--max-order", "2", "--paths", "10000",
                         "--seed", "1", "--times", "1/2,1")
    assert code == 0
    assert json.loads(out)["passed"] is True
    assert "zero_mean" in err


def test_max_order_env(capsys, monkeypatch):
    monkeypatch.setenv("UMBRA_MAX_ORDER", "3")
    code, _, err = run(capsys, "partitions", "--v", "(4)")
    assert code == 3
    assert "exceeds" in err
