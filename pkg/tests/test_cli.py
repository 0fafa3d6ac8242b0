import json

import pytest

from sidelcorr.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--p", "3", "--m", "4")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == 81 and data["modulus"] == [1, 0, 1, 1, 1]


@pytest.mark.parametrize("p,m,name", [("4", "1", "NotPrime"), ("2", "3", "EvenPrime")])
def test_field_domain_errors(capsys, p, m, name):
    code, out, err = run(capsys, "field", "--p", p, "--m", m)
    assert code == 2 and out == ""
    assert err.startswith(f"error: {name}:") and err.count("\n") == 1


def test_sequence(capsys):
    code, out, _ = run(capsys, "sequence", "--p", "7", "--m", "1", "--M", "2")
    assert code == 0 and json.loads(out)["digits"] == [0, 0, 1, 0, 1, 1]
    code, out, _ = run(capsys, "sequence", "--p", "7", "--m", "1", "--M", "2", "--format", "text")
    assert out.splitlines() == ["7 1 2 3", "0,0,1,0,1,1"]


def test_sequence_zero_multiplier_warns(capsys):
    code, out, err = run(capsys, "sequence", "--p", "7", "--m", "1", "--M", "3", "--multiplier", "0")
    assert code == 0 and set(json.loads(out)["digits"]) == {0}
    assert "warning" in err


def test_sequence_bad_modulus(capsys):
    code, _, err = run(capsys, "sequence", "--p", "7", "--m", "1", "--M", "5")
    assert code == 2 and err.startswith("error: ModulusDoesNotDivide:")


def _values(out):
    return [tuple(v["value"]["coeffs"]) for v in json.loads(out)["values"]]


def test_correlate_tau_zero(capsys):
    base = ["correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2", "--tau", "0"]
    _, out, _ = run(capsys, *base, "--method", "product")
    assert _values(out) == [(-1, 0)]
    _, out, _ = run(capsys, *base, "--method", "brute")
    assert _values(out) == [(0, 0)]


def test_correlate_closed_matches_brute(capsys):
    base = ["correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "3"]
    _, brute, _ = run(capsys, *base, "--method", "brute")
    _, closed, _ = run(capsys, *base, "--method", "closed")
    assert len(_values(brute)) == 80
    assert _values(brute) == _values(closed)


def test_correlate_pure(capsys):
    code, out, _ = run(
        capsys, "correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2", "--tau", "5", "--method", "pure"
    )
    _, prod, _ = run(
        capsys, "correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1", "--c2", "2", "--tau", "5", "--method", "product"
    )
    assert code == 0 and _values(out) == _values(prod)


def test_correlate_missing_option_is_usage_error(capsys):
    code, _, err = run(capsys, "correlate", "--p", "3", "--m", "4", "--M", "4", "--c1", "1")
    assert code == 1 and "--c2" in err


def test_unknown_command_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1


def test_bad_tau(capsys):
    code, _, err = run(capsys, "correlate", "--p", "7", "--m", "1", "--M", "3", "--c1", "1", "--c2", "2", "--tau", "9")
    assert code == 2 and "BadTau" in err


def _dist(capsys, *extra):
    code, out, _ = run(capsys, "distribution", "--p", "3", "--m", "4", "--M", "4", *extra)
    assert code == 0
    data = json.loads(out)
    return {(tuple(e["value"]["coeffs"]), e["count"]) for e in data["entries"]}, data


def test_distribution_product_form_tables(capsys):
    table12 = {((-8, 0), 15), ((-1, -7), 20), ((6, 0), 24), ((-1, 7), 20)}
    table13 = {((0, 0), 15), ((-1, 1), 20), ((-2, 0), 24), ((-1, -1), 20)}
    for method in ("per-tau", "counting"):
        got, data = _dist(capsys, "--c1", "1", "--c2", "2", "--method", method, "--form", "product")
        assert got == table12
        assert data["tau0"]["coeffs"] == [-1, 0]
        assert _dist(capsys, "--c1", "1", "--c2", "3", "--method", method, "--form", "product")[0] == table13


def test_distribution_methods_agree(capsys):
    for c1, c2 in [("1", "2"), ("1", "3"), ("2", "3")]:
        results = [_dist(capsys, "--c1", c1, "--c2", c2, "--method", m)[0] for m in ("per-tau", "counting", "brute")]
        assert results[0] == results[1] == results[2]


def test_jacobi(capsys):
    code, out, _ = run(capsys, "jacobi", "--p", "3", "--m", "4", "--k", "4", "--a", "1", "--b", "2")
    data = json.loads(out)
    assert code == 0 and data["method"] == "pure_formula" and data["value"]["coeffs"] == [-9, 0]
    assert set(data) == {"p", "m", "k", "a", "b", "method", "value"}


def test_gauss(capsys):
    for method in ("brute", "pure"):
        _, out, _ = run(capsys, "gauss", "--p", "3", "--m", "4", "--k", "4", "--method", method)
        assert json.loads(out)["value"]["re"] == -9.0


def test_cyclotomic(capsys):
    _, out, _ = run(capsys, "cyclotomic", "--p", "3", "--m", "4", "--k", "4")
    numbers = json.loads(out)["numbers"]
    assert (numbers[0][0], numbers[0][1], numbers[3][1]) == (1, 6, 4)
    _, csv_out, _ = run(capsys, "cyclotomic", "--p", "3", "--m", "4", "--k", "4", "--format", "csv", "--method", "pure")
    assert csv_out.splitlines()[1] == "0,1,6,6,6"


def test_report(capsys):
    _, out, _ = run(capsys, "report", "--p", "3", "--m", "4", "--M", "4")
    data = json.loads(out)
    assert data["bounds_hold"] and data["welch_bound"] == pytest.approx(7.31823, abs=1e-5)
    assert len(data["distributions"]) == 6


def test_output_is_byte_deterministic(capsys, tmp_path):
    args = ["distribution", "--p", "5", "--m", "2", "--M", "6", "--c1", "1", "--c2", "5", "--format", "csv"]
    first = run(capsys, *args)[1]
    assert first == run(capsys, *args)[1]
    target = tmp_path / "out.csv"
    assert dispatch(args + ["--output", str(target)]) == 0
    assert target.read_text(encoding="utf-8") == first


def test_field_file_override(capsys, tmp_path, gf81):
    # alpha^7 is primitive and not a Frobenius conjugate of alpha (7 is not a power of 3 mod 80)
    spec = {**gf81.spec.to_json(), "alpha": list(gf81.decode(gf81.exp(7)))}
    path = tmp_path / "field.json"
    path.write_text(json.dumps(spec), encoding="utf-8")
    _, default, _ = run(capsys, "sequence", "--p", "3", "--m", "4", "--M", "4")
    code, out, _ = run(capsys, "sequence", "--field-file", str(path), "--M", "4")
    assert code == 0
    data = json.loads(out)
    assert data["field"]["alpha"] == spec["alpha"]
    assert data["digits"] != json.loads(default)["digits"]
    spec["alpha"] = [0, 0, 0, 0]
    path.write_text(json.dumps(spec), encoding="utf-8")
    code, _, err = run(capsys, "sequence", "--field-file", str(path), "--M", "4")
    assert code == 2 and err.startswith("error: NotPrimitive:")


def test_field_required_without_file(capsys):
    assert run(capsys, "sequence", "--M", "2")[0] == 1


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-q", "200")
    assert code == 0
    assert out.splitlines()[-1] == "4762/4762 instances passed"


def test_verify_product_form_fails(capsys):
    code, out, err = run(capsys, "verify", "--max-q", "13", "--form", "product")
    assert code == 3 and "FAIL" in out and "verification failed" in err


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("SIDELCORR_THREADS", "2")
    assert run(capsys, "verify", "--max-q", "30")[0] == 0
    monkeypatch.setenv("SIDELCORR_THREADS", "x")
    assert run(capsys, "verify", "--max-q", "30")[0] == 2
