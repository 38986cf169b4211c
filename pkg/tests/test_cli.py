"""Command-line interface: subcommands, exit codes, and the persisted
polynomial table."""

import json
import os

from kbracket.cli import main
from kbracket.statesum import PolyTable


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_and_bracket(tmp_path, capsys):
    path = str(tmp_path / "trefoil.json")
    code, out, _ = run(
        ["gen", "braid", "--strands", "2", "--word", "1,1,1", "--out", path],
        capsys,
    )
    assert code == 0 and os.path.exists(path)
    code, out, _ = run(["bracket", path], capsys)
    assert code == 0
    assert "t^9" in out


def test_expand_equal_routes(tmp_path, capsys):
    path = str(tmp_path / "kink.json")
    run(["gen", "kink", "--count", "2", "--out", path], capsys)
    table = str(tmp_path / "polys.json")
    code, out, _ = run(
        ["--poly-table", table, "expand", path, "--order", "2"], capsys
    )
    assert code == 0
    assert "EQUAL" in out
    # the table was persisted and is loadable
    assert PolyTable.load(table).known_orders()


def test_gen_torus_and_star(tmp_path, capsys):
    path = str(tmp_path / "prod.json")
    code, _, _ = run(
        ["gen", "torus", "--curves", "1,1,0;1,0,1", "--out", path], capsys
    )
    assert code == 0
    code, out, _ = run(["bracket", path], capsys)
    assert code == 0 and "(1," in out
    code, out, _ = run(
        ["star", "--alpha", "1,0", "--beta", "0,1", "--order", "1"], capsys
    )
    assert code == 0
    assert "lambda_0" in out and "lambda_1" in out


def test_poly_and_phi(tmp_path, capsys):
    table = str(tmp_path / "polys.json")
    code, out, _ = run(["--poly-table", table, "poly", "--k", "3"], capsys)
    assert code == 0
    assert "1/6" in out
    code, out, _ = run(["phi", "--j", "1", "--i", "1"], capsys)
    assert code == 0
    assert out.strip() == "-4"


def test_verify_subset(capsys):
    code, out, _ = run(["verify", "phi", "--quick"], capsys)
    assert code == 0
    assert "OK" in out
    code, _, err = run(["verify", "nonsense"], capsys)
    assert code == 2


def test_malformed_input_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "surface": {"kind": "torus"},
                "crossings": [{"id": 0}],
                "edges": [],
                "free_loops": [],
                "marked": "all",
            }
        )
    )
    code, _, err = run(["bracket", str(bad)], capsys)
    assert code == 2
    code, _, err = run(["bracket", str(tmp_path / "missing.json")], capsys)
    assert code == 2
