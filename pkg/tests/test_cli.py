from __future__ import annotations

import json
import subprocess
import sys

import pytest

from twistcode.cli import main
from twistcode.matrix import parse_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_family(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "JI", "--n", "2", "--q", "3", "--a", "2")
    assert code == 0
    res = json.loads(out)
    assert list(res) == ["q", "n", "a", "dim", "d", "d_status", "H_rank", "bounds"]
    assert (res["dim"], res["d"], res["d_status"]) == (1, 4, "exact")
    assert res["H_rank"] == 3


def test_analyze_file_with_basis(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("5 2\n1 1\n4 4\n")
    code, out, _ = run(capsys, "analyze", str(f), "--a", "2", "--basis")
    res = json.loads(out)
    assert code == 0 and (res["dim"], res["d"]) == (2, 3)
    assert len(res["basis"]) == 2 and list(res)[6] == "basis"


def test_analyze_json_matrix(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"q": 5, "rows": 2, "cols": 2, "entries": [[1, 1], [4, 4]]}))
    code, out, _ = run(capsys, "analyze", str(f), "--a", "2")
    assert code == 0 and json.loads(out)["dim"] == 2


def test_analyze_empty_file(capsys, tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    code, out, err = run(capsys, "analyze", str(f), "--a", "2")
    assert code == 2 and out == ""
    assert "usage:" in err and "empty" in err


def test_malformed_file_reports_position(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3 2\n1 2\n1 x\n")
    code, _, err = run(capsys, "analyze", str(f), "--a", "1")
    assert code == 2 and "line 3, column 2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "nope.txt"), "--a", "1")
    assert code == 2


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze", "--bogus"])
    assert info.value.code == 2


def test_domain_error_exits_1(capsys):
    code, _, err = run(capsys, "analyze", "--family", "J", "--n", "2", "--q", "6", "--a", "1")
    assert code == 1 and "prime power" in err


def test_non_square_is_usage_error(capsys, tmp_path):
    f = tmp_path / "r.txt"
    f.write_text("3 1 2\n1 2\n")
    assert run(capsys, "analyze", str(f), "--a", "1")[0] == 2


@pytest.mark.parametrize("family,extra,first", [
    ("J", [], "1 1 1"),
    ("E", ["--i", "1", "--j", "2"], "0 1 0"),
    ("JI", [], "2 1 1"),
    ("An", [], "1 4 0"),
    ("Bn", [], "1 1 4"),
    ("cycle", [], "0 0 1"),
])
def test_construct(capsys, family, extra, first):
    code, out, _ = run(capsys, "construct", "--family", family, "--n", "3", "--q", "5", *extra)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "5 3" and lines[1] == first
    assert parse_matrix(out).shape == (3, 3)


def test_construct_hadamard(capsys):
    code, out, _ = run(capsys, "construct", "--family", "H", "--n", "4", "--q", "3")
    assert code == 0 and out.splitlines()[1] == "1 1 1 1"
    assert run(capsys, "construct", "--family", "H", "--n", "3", "--q", "3")[0] == 2


def test_construct_json(capsys):
    code, out, _ = run(capsys, "construct", "--family", "J", "--n", "2", "--q", "3", "--json")
    assert json.loads(out) == {"q": 3, "rows": 2, "cols": 2, "entries": [[1, 1], [1, 1]]}


def test_construct_E_needs_indices(capsys):
    assert run(capsys, "construct", "--family", "E", "--n", "3", "--q", "5")[0] == 2


def test_census_outputs(capsys, tmp_path):
    out_json, out_csv = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = run(capsys, "census", "--q", "3", "--n", "2", "--a", "2", "--out", str(out_json), "--csv", str(out_csv))
    assert code == 0 and out == ""
    rep = json.loads(out_json.read_text())
    assert rep["meta"] == {"q": 3, "n": 2, "a": 2, "total": 81}
    assert out_csv.read_text().startswith("k,d,count,witness_index\n")


def test_census_budget_needs_override(capsys):
    code, _, err = run(capsys, "census", "--q", "3", "--n", "4", "--a", "2")
    assert code == 1 and "budget" in err


def test_census_negative_twist(capsys):
    code, out, _ = run(capsys, "census", "--q", "3", "--n", "1", "--a", "-1", "--no-witness")
    rep = json.loads(out)
    assert rep["meta"]["a"] == 2 and "witness" not in rep["buckets"][0]


def test_symmetry_cycle(capsys):
    code, out, _ = run(capsys, "symmetry", "--family", "cycle", "--n", "4", "--q", "3", "--a", "1")
    res = json.loads(out)
    assert list(res) == ["commuting_count", "quasicyclic", "transpose_invariant"]
    assert res["commuting_count"] == 4
    assert res["quasicyclic"]["ell"] == 4 and res["quasicyclic"]["shift_closed"]


def test_symmetry_sigma_and_code_flag(capsys, tmp_path):
    f = tmp_path / "j4.txt"
    f.write_text("5 4\n1 1 1 1\n1 1 1 1\n1 1 1 1\n1 1 1 1\n")
    code, out, _ = run(capsys, "symmetry", "--code", str(f), "--a", "2", "--sigma", "(1 2)(3 4)")
    res = json.loads(out)
    assert res["commuting_count"] == 24 and res["quasicyclic"]["ell"] == 8
    assert res["transpose_invariant"] is True


def test_symmetry_bad_sigma(capsys):
    code, _, _ = run(capsys, "symmetry", "--family", "J", "--n", "3", "--q", "5", "--a", "2", "--sigma", "(1 9)")
    assert code == 1


def test_encode_decode_roundtrip(capsys, tmp_path):
    a = tmp_path / "j3.txt"
    a.write_text("5 3\n1 1 1\n1 1 1\n1 1 1\n")
    code, out, _ = run(capsys, "encode", str(a), "--a", "2", "--message", "1 2 3 4")
    assert code == 0
    C = parse_matrix(out)
    rows = C.tolist()
    original = [r[:] for r in rows]
    rows[1][2] = (rows[1][2] + 3) % 5
    recv = tmp_path / "recv.txt"
    recv.write_text("5 3\n" + "\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    code, out, _ = run(capsys, "decode", str(a), "--a", "2", "--received", str(recv))
    res = json.loads(out)
    assert code == 0
    assert res["codeword"] == original
    assert res["error_weight"] == 1 and res["error"][1][2] == 3
    assert res["message"] == [1, 2, 3, 4]


def test_encode_message_file_and_length(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("1 0 0 0\n")
    code, out, _ = run(capsys, "encode", "--family", "J", "--n", "3", "--q", "5", "--a", "2", "--message-file", str(m))
    assert code == 0
    assert run(capsys, "encode", "--family", "J", "--n", "3", "--q", "5", "--a", "2", "--message", "1 2")[0] == 1
    assert run(capsys, "encode", "--family", "J", "--n", "3", "--q", "5", "--a", "2")[0] == 2


def test_decode_refusal_is_domain_error(capsys, tmp_path):
    r = tmp_path / "r.txt"
    r.write_text("5 3\n0 0 0\n0 0 0\n0 0 0\n")
    code, _, err = run(capsys, "decode", "--family", "E", "--i", "1", "--j", "1", "--n", "3", "--q", "5", "--a", "2",
                       "--received", str(r))
    assert code == 1 and "impossible" in err


def test_decode_coset(capsys, tmp_path):
    r = tmp_path / "r.txt"
    r.write_text("3 2\n1 1\n1 0\n")
    code, out, _ = run(capsys, "decode", "--family", "JI", "--n", "2", "--q", "3", "--a", "2", "--received", str(r), "--coset")
    res = json.loads(out)
    assert code == 0 and res["codeword"] == [[1, 1], [1, 1]] and res["error_weight"] == 1


def test_verify_named_only(capsys):
    code, out, _ = run(capsys, "verify", "--named-only")
    res = json.loads(out)
    assert code == 0 and res["pass"] and res["suite"] == []
    assert len(res["named_examples"]) == 13


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "--seed", "3", "verify", "--trials", "20", "--no-sweeps")
    res = json.loads(out)
    assert code == 0 and res["pass"]
    assert {r["check"] for r in res["suite"]} >= {"code.self_membership", "bounds.spectral_sandwich"}


def test_badprimes(capsys):
    code, out, _ = run(capsys, "badprimes", "--n", "3", "--bound", "100")
    res = json.loads(out)
    assert code == 0 and res["bad"] == [2] and res["count"] == 1


def test_byte_identical_runs():
    argv = [sys.executable, "-m", "twistcode", "analyze", "--family", "H", "--n", "8", "--q", "3", "--a", "2", "--budget", "1000"]
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["d_status"] == "bounds-only"


def test_console_script_help():
    res = subprocess.run([sys.executable, "-m", "twistcode", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for sub in ("analyze", "construct", "census", "symmetry", "encode", "decode", "verify", "badprimes"):
        assert sub in res.stdout
