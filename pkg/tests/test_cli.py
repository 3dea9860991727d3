import json
import subprocess
import sys

import pytest

from operadlab.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from operadlab.cochain import dual_numbers
from operadlab.operads import ass_presentation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_soul_ass(capsys):
    code, out, err = run(capsys, "soul", "ass", "--cap", "5")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["result"]["reliable_cohomology"] == [0, 0, 0, 0]
    assert all("reliable" in row for row in rep["result"]["table"])
    assert "wall-clock" in err and "wall" not in out


def test_soul_d_h1(capsys):
    code, out, _ = run(capsys, "soul", "d", "--cap", "4")
    assert json.loads(out)["result"]["reliable_cohomology"][:2] == [0, 1]


def test_soul_mag_non_sigma_acyclic(capsys):
    code, out, _ = run(capsys, "soul", "mag", "--non-sigma", "--cap", "4")
    res = json.loads(out)["result"]
    assert res["operad"] == "uMag" and set(res["reliable_cohomology"]) == {0}


def test_soul_from_presentation_file(capsys, tmp_path):
    p = tmp_path / "ass.json"
    p.write_text(json.dumps(ass_presentation().to_json()))
    code, out, _ = run(capsys, "soul", str(p), "--cap", "4")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["reliable_cohomology"] == [0, 0, 0]


def test_bad_presentation_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"generators": [{"name": "mu"}]}')
    code, _, err = run(capsys, "soul", str(p))
    assert code == EXIT_INPUT and "input error" in err


def test_unknown_operad(capsys):
    assert run(capsys, "soul", "nonsense")[0] == EXIT_INPUT


def test_cap_out_of_range():
    with pytest.raises(SystemExit) as e:
        main(["soul", "ass", "--cap", "9"])
    assert e.value.code == 2


@pytest.mark.parametrize("name, n, dim", [("lie", 2, 1), ("ass", 3, 6), ("d", 2, 4)])
def test_zp(capsys, name, n, dim):
    code, out, _ = run(capsys, "zp", name, "-n", str(n))
    assert json.loads(out)["result"]["dim"] == dim


def test_perm_blocks(capsys):
    code, out, _ = run(capsys, "perm", "--arity", "5", "--blocks")
    res = json.loads(out)["result"]
    assert res["blocks_match"]
    assert set(res["table"][k]["h_dim"] for k in range(4)) == {0}


def test_cochain_dual_numbers(capsys, tmp_path):
    p = tmp_path / "dual_numbers.json"
    p.write_text(dual_numbers("Ass").to_json())
    code, out, _ = run(capsys, "cochain", "--operad", "ass", "--algebra", str(p))
    assert code == EXIT_OK
    assert json.loads(out)["result"]["table"][0]["h_dim"] == 1


def test_cochain_rejects_invalid_algebra(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"operad": "Ass", "dim": 2, "structure": {"mu": [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]}}))
    assert run(capsys, "cochain", "--algebra", str(p))[0] == EXIT_INPUT


def test_csv_output(capsys):
    code, out, _ = run(capsys, "soul", "com", "--cap", "4", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "arity,degree,dim,rank_out,rank_in,h_dim,reliable"
    assert len(lines) == 5


def test_json_is_deterministic(capsys):
    a = run(capsys, "soul", "lie", "--cap", "5", "--seed", "3")[1]
    b = run(capsys, "soul", "lie", "--cap", "5", "--seed", "3")[1]
    assert a == b


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--suite", "5,6")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["result"]["failed"] == []
    assert err.count("[PASS]") == 2


def test_verify_reports_failures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "2")
    rep = json.loads(out)
    assert code == EXIT_FAIL
    assert rep["result"]["failed"] == [2] and rep["result"]["results"][0]["failures"]


def test_verify_bad_suite(capsys):
    assert run(capsys, "verify", "--suite", "13")[0] == EXIT_INPUT


def test_cache_roundtrip(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("OPERADLAB_CACHE", str(tmp_path))
    a = run(capsys, "soul", "ass", "--cap", "4")[1]
    assert list(tmp_path.iterdir())
    b = run(capsys, "soul", "ass", "--cap", "4")[1]
    assert a == b


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "operadlab.cli", "zp", "lie", "-n", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["result"]["dim"] == 1
