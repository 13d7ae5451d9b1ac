from __future__ import annotations

import csv
import io
import json

from pcv import stokes
from pcv.cli import main
from pcv.serialize import decode_scalar

VI_E = ["--e0", "2", "--et", "3", "--e1", "5", "--einf", "7/11"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_braid_relations(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "braid-relations")
    assert code == 0
    assert "(S∘T)³=id: PASS" in out


def test_verify_confluence(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "confluence")
    assert code == 0
    assert "F∘Φ factor identity: PASS" in out


def test_verify_mutation_fails(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "braid-relations", "--mutate", "g0t-sign")
    assert code == 1
    assert "FAIL" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fricke-vi", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["exit_code"] == 0
    assert all(c["status"] == "PASS" for s in obj["suites"] for c in s["checks"])


def test_eval_s_v_example(capsys):
    code, out, _ = run(capsys, "eval", "--surface", "v", "--point", "-2,0,0", "--a0", "0", "--a8", "0",
                       "--e1t", "1")
    assert code == 0
    assert json.loads(out)["F~"] == "0"


def test_eval_word_exact(capsys):
    code, out, _ = run(capsys, "eval", "--point", "2,0,0", "--a0", "0", "--at", "0", "--a1", "0", "--a8", "0",
                       "--word", "g0t")
    obj = json.loads(out)
    assert code == 0
    assert [decode_scalar(x) for x in obj["image"]] == [0, -2, 0]


def test_eval_numeric_point(capsys):
    code, out, _ = run(capsys, "eval", "--point", "1,0;0,1;2,0", "--e0", "1,0.5", "--et", "0.3,1",
                       "--e1", "2,0", "--einf", "1,1")
    obj = json.loads(out)
    assert code == 0
    assert isinstance(obj["F"], list) and len(obj["F"]) == 2


def test_lines_counts(capsys):
    code, out, _ = run(capsys, "lines", *VI_E)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 25
    code, out, _ = run(capsys, "lines", "--surface", "v", "--e0", "2/3", "--e1t", "5/7", "--einf", "11/13")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 23


def test_sing(capsys):
    code, out, _ = run(capsys, "sing", "--e0", "1", "--et", "3", "--e1", "5", "--einf", "7")
    obj = json.loads(out)
    assert code == 0 and obj["count"] >= 1


def test_orbit_fixed_at_singular_point(capsys):
    code, out, _ = run(capsys, "orbit", "--word", "g0t^2", "--start", "singular", "--e0", "1", "--et", "3",
                       "--e1", "5", "--einf", "7", "--format", "json")
    assert code == 0
    assert json.loads(out)["classification"] == "fixed"


def test_orbit_needs_nu_on_s_v(capsys):
    code, _, err = run(capsys, "orbit", "--surface", "v", "--word", "g0t^2", "--e0", "2", "--e1t", "3",
                       "--einf", "5")
    assert code == 64 and "--nu" in err


def test_usage_errors(capsys):
    assert run(capsys, "eval", "--point", "1/0x,0,0", *VI_E)[0] == 64
    assert run(capsys, "eval", "--point", "1,0,0", "--e0", "1,0", "--et", "3", "--e1", "5", "--einf", "7")[0] == 64
    assert run(capsys, "nonsense")[0] == 64
    assert run(capsys, "verify", "--suite", "nope")[0] == 64


def test_domain_error(capsys):
    code, _, err = run(capsys, "eval", "--point", "1,0,0", "--e0", "0", "--et", "3", "--e1", "5", "--einf", "7")
    assert code == 65 and err


def test_deterministic_output(capsys):
    outs = [run(capsys, "orbit", "--word", "g0t^2", "--max-iter", "20", *VI_E, "--seed", "9")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "stokes", "--seed", "4", "--confluent")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_stokes_round_trip(tmp_path, capsys):
    d = stokes.random_admissible(12)
    path = tmp_path / "data.json"
    path.write_text(json.dumps(d.to_json()))
    code, out, _ = run(capsys, "stokes", "--input", str(path), "--braid", "b0t", "--confluent")
    obj = json.loads(out)
    assert code == 0
    assert stokes.StokesDataVI.from_json(obj["data"]) == d
    assert decode_scalar(obj["admissibility"]) == 0
    assert decode_scalar(obj["fricke"]) == 0
    X = tuple(decode_scalar(x) for x in obj["traces"])
    assert X == tuple(stokes.traces_from_stokes(d)[:3])


def test_stokes_bad_input(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"s": {}}')
    assert run(capsys, "stokes", "--input", str(path))[0] == 64
