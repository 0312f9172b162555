import json
import math

import pytest

from lifshitz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_m6(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "i1m_hat", "--m", "6", "--p", "1", "--q", "1")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "1"
    assert doc["value"] == pytest.approx(1.0, rel=1e-14)


def test_eval_m2_csv(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "i1m_hat", "--m", "2", "--p", "1", "--q", "1", "--format", "csv")
    header, row = out.strip().splitlines()
    assert code == 0
    assert float(row.split(",")[header.split(",").index("value")]) == pytest.approx(0.125)


def test_eval_geometric(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "eval_2f1", "--a", "1", "--b", "1", "--c", "1",
                       "--zre", "0.3", "--zim", "0")
    assert json.loads(out)["value"] == pytest.approx(1 / 0.7, rel=1e-15)


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--fn", "i14_closed", "--q", "0.1:3:0.1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 31
    q1 = [ln for ln in lines[1:] if ln.startswith("1,")][0]
    assert float(q1.split(",")[1]) == pytest.approx((math.atan(0.5) + math.log(1.6)) / (32 * math.pi**2))


def test_table_constant(capsys):
    code, out, _ = run(capsys, "table", "--fn", "special_m6", "--q", "0.5:1.5:0.5", "--p", "1", "--format", "csv")
    vals = [float(ln.split(",")[1]) for ln in out.strip().splitlines()[1:]]
    assert vals == [1.0, 1.0, 1.0]


def test_table_empty(capsys):
    code, out, _ = run(capsys, "table", "--fn", "special_m6", "--q", "2:1:0.5", "--p", "1", "--format", "csv")
    assert code == 0 and out.strip() == "q,value,abs_err"


def test_table_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert main(["table", "--fn", "i1m_hat", "--m", "3.5", "--p", "1", "--q", "0.2:2:0.3", "--out", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert not [p for p in tmp_path.iterdir() if p.suffix == ".tmp"]


@pytest.mark.parametrize("argv,code", [
    (["eval", "--fn", "nope", "--p", "1"], 1),
    (["eval", "--fn", "i1m", "--m", "3", "--p", "1"], 1),
    (["eval", "--fn", "i1m", "--m", "3", "--p", "1", "--q", "1", "--a", "2"], 1),
    (["table", "--fn", "i14_closed", "--q", "1:2:0"], 1),
    (["table", "--fn", "special_m6", "--q", "1:2:0.5", "--p", "1:2:0.5"], 1),
    (["eval", "--fn", "i1m", "--m", "7", "--p", "1", "--q", "1"], 3),
    (["eval", "--fn", "eval_2f1", "--a", "0.3", "--b", "0.4", "--c", "1.5", "--zre", "1.5"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


def test_bad_flag_is_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--fn", "i1m", "--bogus", "1"])
    assert exc.value.code == 1


def test_no_convergence_code(capsys, monkeypatch):
    monkeypatch.setenv("LIFSH_MAX_TERMS", "5")
    assert main(["eval", "--fn", "eval_2f1", "--a", "0.5", "--b", "0.5", "--c", "1.5", "--zre", "0.7"]) == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "special-cases", "--tol", "1e-8")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["n_checks"] > 80


def test_verify_failure_exit(capsys):
    code, _, err = run(capsys, "verify", "--suite", "f1-transform", "--tol", "1e-20")
    assert code == 4 and "FAILED" in err


def test_oracle_compare(capsys):
    code, out, _ = run(capsys, "oracle-compare", "--fn", "i1m", "--m", "4", "--p", "0.5:1.5:0.5",
                       "--q", "0.5:1.5:0.5")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 9
    assert max(r[doc["columns"].index("rel_dev")] for r in doc["rows"]) < 1e-6


def test_oracle_compare_unsupported(capsys):
    assert main(["oracle-compare", "--fn", "special_m6", "--p", "1", "--q", "1"]) == 1
