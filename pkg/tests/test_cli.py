import json

import pytest

from agpd.cli import main, parse_error_model, UsageError
from agpd.pdset import prepare_hermitian


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_field(capsys):
    code, doc = run(capsys, "field", "--curve", "hermitian:4")
    assert code == 0 and sorted(doc["ker_tr"]) == sorted(["0", "z^5", "z^10", "z^0"])


def test_curve(capsys):
    code, doc = run(capsys, "curve", "--curve", "normtrace:2:3")
    assert code == 0 and doc["n"] == 32 and doc["genus"] == 9 and len(doc["points"]) == 32
    assert sum(len(v) for v in doc["y_lines"].values()) == 32


def test_orbits_q4(capsys):
    code, doc = run(capsys, "orbits", "--curve", "hermitian:4")
    assert code == 0
    assert doc["lines"][:4] == [["z^1", "z^6", "z^11"], ["z^2", "z^7", "z^12"],
                                ["z^3", "z^8", "z^13"], ["z^4", "z^9", "z^14"]]
    assert doc["lines"][4:] == [["z^0", "z^5", "z^10"], ["0"]]


def test_code_dump(capsys, tmp_path):
    path = tmp_path / "code.json"
    code, doc = run(capsys, "--json", str(path), "code", "--curve", "hermitian:3", "--gamma", "13")
    assert code == 0 and doc["k"] == 11 and json.loads(path.read_text()) == doc


def test_pdset(capsys):
    code, doc = run(capsys, "pdset", "--curve", "hermitian:3", "--gamma", "5", "--pd", "two")
    assert code == 0 and doc["pre_dedup"] == 24


def test_simulate_exhaustive_x_burst(capsys):
    code, doc = run(capsys, "simulate", "--curve", "hermitian:3", "--gamma", "5", "--pd", "x-burst",
                    "--exhaustive")
    assert code == 0 and doc["failures"] == 0 and doc["trials"] == 9 * 728
    assert doc["successes"] + doc["failures"] == doc["trials"]


def test_simulate_is_reproducible(capsys):
    argv = ["simulate", "--curve", "hermitian:3", "--gamma", "5", "--pd", "y-burst",
            "--errors", "random:w=4", "--trials", "60", "--seed", "5"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv, "--workers", "3")
    for d in (a, b):
        d.pop("wall_clock"), d.pop("workers")
    assert a == b


def test_simulate_normtrace(capsys):
    code, doc = run(capsys, "simulate", "--curve", "normtrace:2:3", "--gamma", "17", "--pd", "nt")
    assert code == 0 and doc["trials"] == 400 and doc["failures"] == 0


def test_decode(capsys):
    code, doc = run(capsys, "decode", "--curve", "hermitian:2", "--gamma", "3", "--pd", "two",
                    "--word", "z,0,0,0,0,0,0,0")
    assert code == 0 and doc["status"] == "DECODED" and set(doc["codeword"]) == {"0"}


def test_verify_table1(capsys):
    code, doc = run(capsys, "verify", "--suite", "table1", "--q", "3")
    assert code == 0 and doc["passed"]


@pytest.mark.parametrize("argv,expected", [
    (["bogus"], 1),
    (["code", "--curve", "hermitian:3"], 1),
    (["decode", "--curve", "hermitian:2", "--gamma", "3", "--pd", "two", "--word", "0,0"], 1),
    (["code", "--curve", "hermitian:3", "--gamma", "27"], 2),
    (["code", "--curve", "hermitian:6", "--gamma", "3"], 2),
    (["pdset", "--curve", "hermitian:2", "--gamma", "3", "--pd", "y-burst"], 2),
])
def test_exit_codes(capsys, argv, expected):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == expected


def test_error_model_language():
    code = prepare_hermitian(3, 5)
    m = parse_error_model("xline:a=z^3;values=random", code)
    assert len(m.supports) == 1 and len(m.supports[0].positions) == 3 and m.values == "random"
    m = parse_error_model("yline:b=z^1;values=all", code)
    assert len(m.supports[0].positions) == 4
    assert parse_error_model("pair:2,7", code).supports[0].positions == (2, 7)
    assert parse_error_model("random:w=2", code).supports[0].weight == 2
    assert len(parse_error_model("xline:a=*", code).supports) == 9
    for bad in ("zline:a=1", "pair:3,3", "random:w=0", "xline:a=z^3;values=some"):
        with pytest.raises(UsageError):
            parse_error_model(bad, code)


def test_info_alias_gives_same_code(capsys):
    outs = []
    for info in ("orbit-prefix", "prop32"):
        assert main(["code", "--curve", "hermitian:3", "--gamma", "5", "--info", info]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
