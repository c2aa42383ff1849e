"""Command-line driver: output shapes and the exit-code contract."""

import json

import pytest

from mealy import ALESHIN, SWAP, parse_machine, serialize_machine
from mealy.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def fx(fixture_dir):
    def path(name):
        return str(fixture_dir / (name + ".mealy"))

    return path


def test_info(capsys, fx):
    code, out, err = run(capsys, "info", fx("swap"))
    assert code == EXIT_OK
    assert "states: 2 (x y)" in out
    assert "letters: 2 (a b)" in out
    assert "invertible: True" in out
    assert "bireversible: True" in out
    assert "minimal: False" in out
    assert "connected: True" in out


def test_info_dot(capsys, fx, tmp_path):
    target = tmp_path / "m.dot"
    code, out, err = run(capsys, "info", fx("swap"), "--dot", str(target))
    assert code == EXIT_OK
    assert target.read_text().startswith("digraph mealy {")
    assert "dot written" in err


def test_minimize(capsys, fx):
    code, out, err = run(capsys, "minimize", fx("swap"))
    assert code == EXIT_OK
    m = parse_machine(out)
    assert m.n_states == 1
    assert m.states == ("x",)


def test_dual(capsys, fx):
    code, out, err = run(capsys, "dual", fx("aleshin"))
    assert code == EXIT_OK
    assert out == serialize_machine(ALESHIN.dual())


def test_power(capsys, fx):
    code, out, err = run(capsys, "power", fx("swap"), "2")
    assert code == EXIT_OK
    m = parse_machine(out)
    assert m.n_states == 4
    assert m.states == ("xx", "xy", "yx", "yy")


def test_power_budget(capsys, fx):
    code, out, err = run(capsys, "power", fx("swap"), "25")
    assert code == EXIT_BUDGET
    assert "budget exceeded" in err


def test_reduce(capsys, fx):
    code, out, err = run(capsys, "reduce", fx("swap"))
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("primal (2 states, 2 letters) -> (1 states")
    assert lines[-1] == "final: 1 states, 1 letters (md-trivial)"


def test_reduce_dual_first(capsys, fx):
    code, out, err = run(capsys, "reduce", fx("cyc"), "--dual-first")
    assert code == EXIT_OK
    assert out.strip() == "final: 2 states, 2 letters"


def test_degree_finite(capsys, fx):
    code, out, err = run(capsys, "degree", fx("swap"))
    assert code == EXIT_OK
    assert out.strip() == "connection degree: 1"


def test_degree_lower_bound(capsys, fx):
    code, out, err = run(capsys, "degree", fx("dual_aleshin"), "--max", "6")
    assert code == EXIT_BUDGET
    assert "at least 6" in out


def test_portrait(capsys, fx):
    code, out, err = run(capsys, "portrait", fx("six"), "1", "-k", "3")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "(root) σ"


def test_portrait_dot(capsys, fx, tmp_path):
    target = tmp_path / "p.dot"
    code, out, err = run(capsys, "portrait", fx("aleshin"), "z", "-k", "2",
                         "--dot", str(target))
    assert code == EXIT_OK
    assert target.read_text().startswith("digraph portrait {")


def test_closure(capsys, fx):
    code, out, err = run(capsys, "closure", fx("swap"))
    assert code == EXIT_OK
    m = parse_machine(out)
    assert m.letters == ("a", "aa")


def test_closure_needs_finite_dual(capsys, fx):
    code, out, err = run(capsys, "closure", fx("aleshin"),
                         "--max-elements", "100")
    assert code == EXIT_BUDGET
    assert "mealy:" in err


def test_order(capsys, fx):
    code, out, err = run(capsys, "order", fx("triv"))
    assert code == EXIT_OK
    assert out.strip() == "semigroup order: Finite(1)"


def test_order_lower_bound(capsys, fx):
    code, out, err = run(capsys, "order", fx("dual_aleshin"),
                         "--max-elements", "50")
    assert code == EXIT_BUDGET
    assert "at least" in out.lower() or "AtLeast" in out


def test_decide_free(capsys, fx, tmp_path):
    cert = tmp_path / "verdict.json"
    code, out, err = run(capsys, "decide", fx("dual_aleshin"),
                         "--max-power", "8", "--certificate", str(cert))
    assert code == EXIT_OK
    assert "free semigroup of rank 2" in out
    assert str(cert) in out
    doc = json.loads(cert.read_text())
    assert doc["kind"] == "FreeRank2"
    assert [e["type"] for e in doc["evidence"]] == \
        ["md_reduction", "connected_powers"]


def test_decide_finite(capsys, fx, tmp_path):
    cert = tmp_path / "verdict.json"
    code, out, err = run(capsys, "decide", fx("swap"),
                         "--certificate", str(cert))
    assert code == EXIT_OK
    assert "finite semigroup of order 1" in out
    assert json.loads(cert.read_text())["order"] == 1


def test_decide_infinite_group(capsys, fx, tmp_path):
    cert = tmp_path / "verdict.json"
    code, out, err = run(capsys, "decide", fx("six"),
                         "--certificate", str(cert))
    assert code == EXIT_OK
    assert "infinite group" in out
    assert json.loads(cert.read_text())["kind"] == "InfiniteGroup"


def test_decide_default_certificate_path(capsys, fx, tmp_path):
    src = tmp_path / "m.mealy"
    with open(fx("swap")) as fh:
        src.write_text(fh.read())
    code, out, err = run(capsys, "decide", str(src))
    assert code == EXIT_OK
    assert (tmp_path / "m.mealy.verdict.json").exists()


def test_decide_semi_decision_only(capsys, fx):
    code, out, err = run(capsys, "decide", fx("triv"))
    assert code == EXIT_BUDGET
    assert "semi-decision only" in err


def test_census_classify(capsys):
    code, out, err = run(capsys, "census", "--states", "2", "--letters", "2",
                         "--filter", "bireversible", "--mode", "up-to-iso",
                         "--max-power", "8")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["total"] == 8
    assert doc["mode"] == "up-to-iso"


def test_census_counts_only(capsys):
    code, out, err = run(capsys, "census", "--states", "3", "--letters", "2",
                         "--filter", "bireversible", "--counts-only")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["counts"]["labeled"] == 144
    assert doc["counts"]["up_to_iso"] == 28


def test_census_counts_only_guards(capsys):
    code, out, err = run(capsys, "census", "--states", "3", "--letters", "3",
                         "--filter", "bireversible", "--counts-only")
    assert code == EXIT_INPUT
    assert "--counts-only" in err


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.mealy"
    bad.write_text("states: x\nletters: a\nx a -> x")
    code, out, err = run(capsys, "info", str(bad))
    assert code == EXIT_INPUT
    assert "mealy: line 3" in err


def test_missing_file_exit_code(capsys, tmp_path):
    code, out, err = run(capsys, "info", str(tmp_path / "nope.mealy"))
    assert code == EXIT_INPUT
    assert "mealy:" in err
