import io
import json
import subprocess
import sys

import pytest

from elnet.cli import format_decimal, main, parse_network
from elnet.errors import ParseError, ValidationError
from elnet.exact import Mat
from elnet.network import Network
from fractions import Fraction

SINGLE_EDGE = {"boundary": 2, "interior": [], "edges": [{"u": "1", "v": "2", "w": "1"}]}


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def test_parse_network_examples(tmp_path):
    net = parse_network(write(tmp_path, "n.json", SINGLE_EDGE))
    assert net == Network(2, [], [(1, 2, 1)])
    zero = dict(SINGLE_EDGE, edges=[{"u": "1", "v": "2", "w": "0"}])
    with pytest.raises(ValidationError):
        parse_network(write(tmp_path, "z.json", zero))
    far = dict(SINGLE_EDGE, edges=[{"u": "1", "v": "9", "w": "1"}])
    with pytest.raises(ValidationError):
        parse_network(write(tmp_path, "f.json", far))
    bad = tmp_path / "bad.json"
    bad.write_text('{"boundary": 2,\n "edges": [', encoding="utf-8")
    with pytest.raises(ParseError, match="line 2"):
        parse_network(str(bad))


def test_response_command(tmp_path):
    code, out, _ = run(["response", write(tmp_path, "n.json", SINGLE_EDGE)])
    assert code == 0
    assert Mat.from_json(json.loads(out)) == Mat([[1, -1], [-1, 1]])
    code, out, _ = run(["response", "-"], stdin=json.dumps(SINGLE_EDGE))
    assert code == 0 and json.loads(out)["data"] == [["1", "-1"], ["-1", "1"]]


def test_input_errors_exit_2(tmp_path):
    assert run(["response", str(tmp_path / "missing.json")])[0] == 2
    assert run(["response", "-"], stdin="{")[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run(["efficient"])[0] == 2
    assert run(["act", "1:1", "--zero", "1", "--bogus"])[0] == 2
    assert run(["act", "1:-1", "--zero", "1"])[0] == 2
    assert run(["act", "9:1", "--zero", "1"])[0] == 2
    assert run(["verify", "dims", "--tau", "abc"])[0] == 2


def test_transform_command(tmp_path):
    star = {
        "boundary": 3,
        "interior": ["v"],
        "edges": [{"u": str(k), "v": "v", "w": "3"} for k in (1, 2, 3)],
    }
    path = write(tmp_path, "star.json", star)
    code, out, _ = run(["transform", path, "--move", "y_to_delta", "--at", "v"])
    assert code == 0
    tri = json.loads(out)
    assert tri["interior"] == [] and [e["w"] for e in tri["edges"]] == ["1", "1", "1"]
    _, before, _ = run(["response", path])
    _, after, _ = run(["response", "-"], stdin=out)
    assert before == after
    code, _, err = run(["transform", path, "--move", "series", "--at", "v"])
    assert code == 2 and "degree 3" in err


def test_act_zero_matrix_matches_network_response():
    word = "3:1,4:2/3,3:5,2:7"
    code, matrix, _ = run(["act", word, "--zero", "2"])
    assert code == 0
    _, net, _ = run(["act", word, "--zero", "2", "--emit", "network"])
    _, via_network, _ = run(["response", "-"], stdin=net)
    assert matrix == via_network


def test_act_on_a_network(tmp_path):
    path = write(tmp_path, "n.json", SINGLE_EDGE)
    code, out, _ = run(["act", "1:1", "--network", path])
    assert code == 0
    half = Fraction(1, 2)
    assert Mat.from_json(json.loads(out)) == Mat([[half, -half], [-half, half]])
    code, out, _ = run(["act", "1:1", "--network", path, "--emit", "network"])
    assert len(json.loads(out)["interior"]) == 1


def test_factorize_command(tmp_path):
    m = {"rows": 2, "cols": 2, "data": [["2", "8"], ["1/2", "5/2"]]}
    code, out, _ = run(["factorize", write(tmp_path, "m.json", m), "-n", "1"])
    assert code == 0 and json.loads(out) == ["2", "1/2", "3"]
    ident = {"rows": 2, "cols": 2, "data": [["1", "0"], ["0", "1"]]}
    code, _, err = run(["factorize", write(tmp_path, "i.json", ident), "-n", "1"])
    assert code == 1 and "NotInTopCell" in err
    code, _, _ = run(["factorize", write(tmp_path, "m2.json", m), "-n", "2"])
    assert code == 2


def test_efficient_command():
    code, out, _ = run(["efficient", "-n", "2", "--list"])
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "count=5 catalan=5"
    assert lines[-2].startswith("1 4 2 5 3")


def test_verify_efficient_line():
    code, out, _ = run(["verify", "efficient", "-n", "3"])
    assert code == 0 and out == "count=14 expected=14 PASS\n"


def test_verify_dims_table():
    code, out, _ = run(["verify", "dims"])
    assert code == 0
    assert len(out.splitlines()) == 5 and all(l.endswith("PASS") for l in out.splitlines())


def test_verify_braid_is_seeded_and_stable():
    argv = ["verify", "braid", "--tau", "1", "--trials", "100", "--seed", "7"]
    first = run(argv)
    assert first[0] == 0
    assert run(argv) == first
    assert run(["verify", "braid", "--tau", "0", "--trials", "20", "--seed", "1"])[0] == 0


@pytest.mark.parametrize("suite", ["relations", "stabilizer", "b2", "action", "cells"])
def test_other_suites_pass(suite):
    code, out, _ = run(["verify", suite, "--trials", "10", "--seed", "3"])
    assert code == 0, out


def test_decimal_display():
    assert format_decimal(Fraction(1, 3), 3) == "0.333"
    assert format_decimal(Fraction(-2, 3), 2) == "-0.67"
    assert format_decimal(Fraction(5, 2), 0) == "2"
    code, out, _ = run(["--decimal", "2", "act", "2:1/3", "--zero", "1"])
    assert json.loads(out)["data"][0] == ["0.33", "-0.33"]
    assert run(["--decimal", "-1", "efficient", "-n", "1"])[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "elnet.cli", "verify", "efficient", "-n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "count=5 expected=5 PASS\n"
