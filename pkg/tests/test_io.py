"""Machine documents, the JSON mirror, and DOT export."""

import numpy as np
import pytest

from mealy import (
    ALESHIN,
    BABY,
    CYC,
    SIX,
    SWAP,
    TRIV,
    ParseError,
    machine_from_json,
    machine_to_dot,
    machine_to_json,
    parse_machine,
    serialize_machine,
)
from mealy.io import IncompleteMachineError
from strategies import random_machines

FIXTURE_MACHINES = {
    "triv.mealy": TRIV,
    "aleshin.mealy": ALESHIN,
    "baby_aleshin.mealy": BABY,
    "six.mealy": SIX,
    "swap.mealy": SWAP,
    "cyc.mealy": CYC,
}


def _same(a, b):
    return (a.states == b.states and a.letters == b.letters
            and np.array_equal(a.delta, b.delta)
            and np.array_equal(a.rho, b.rho))


def test_fixture_files_parse_to_the_library_machines(fixture_dir):
    for name, want in FIXTURE_MACHINES.items():
        got = parse_machine((fixture_dir / name).read_text())
        assert _same(got, want), name


def test_dual_aleshin_fixture(fixture_dir):
    got = parse_machine((fixture_dir / "dual_aleshin.mealy").read_text())
    assert _same(got, ALESHIN.dual())


def test_round_trip_fixtures(fixture_dir):
    for path in sorted(fixture_dir.glob("*.mealy")):
        machine = parse_machine(path.read_text())
        assert _same(parse_machine(serialize_machine(machine)), machine)


def test_round_trip_random():
    for machine in random_machines(seed=73, count=100, max_states=4,
                                   max_letters=3):
        assert _same(parse_machine(serialize_machine(machine)), machine)


def test_normalized_documents_are_stable():
    for machine in (TRIV, ALESHIN, SIX):
        text = serialize_machine(machine)
        assert serialize_machine(parse_machine(text)) == text


def test_one_line_document():
    got = parse_machine("states: x; letters: a; x a -> x a")
    assert _same(got, TRIV)


def test_comments_and_blank_lines():
    text = """
# a machine
states: x y   # two states
letters: a

x a -> y a ; y a -> x a   # both arrows
"""
    m = parse_machine(text)
    assert m.states == ("x", "y")
    assert m.delta.tolist() == [[1, 0]]


def _err(text):
    with pytest.raises(ParseError) as info:
        parse_machine(text)
    return info.value


def test_parse_error_positions():
    err = _err("states: x\nletters: a\nx a -> x")
    assert (err.line, err.column) == (3, 1)
    assert "STATE LETTER -> STATE LETTER" in str(err)
    err = _err("states: x\nletters: a\n   x b -> x a")
    assert (err.line, err.column) == (3, 4)
    assert "unknown letter" in str(err)


def test_header_errors():
    assert "missing states" in str(_err(""))
    assert "missing letters" in str(_err("states: x"))
    assert "listed twice" in str(_err("states: x\nstates: y\nletters: a"))
    assert "empty" in str(_err("states:\nletters: a"))
    assert "duplicate state name" in str(_err("states: x x\nletters: a"))
    assert "reserved token" in str(_err("states: ->\nletters: a"))
    assert "before states/letters" in str(_err("x a -> x a"))


def test_transition_errors():
    base = "states: x y\nletters: a\n"
    assert "unknown state" in str(_err(base + "w a -> x a"))
    assert "unknown state" in str(_err(base + "x a -> w a"))
    assert "duplicate transition" in str(
        _err(base + "x a -> x a\nx a -> y a"))


def test_incomplete_machine():
    text = "states: x y\nletters: a b\nx a -> x a\nx b -> x b\ny a -> y a"
    with pytest.raises(IncompleteMachineError) as info:
        parse_machine(text)
    assert info.value.missing == (("y", "b"),)
    assert isinstance(info.value, ParseError)


def test_json_round_trip():
    for machine in (TRIV, ALESHIN, SIX, CYC):
        doc = machine_to_json(machine)
        assert _same(machine_from_json(doc), machine)
    import json

    parsed = json.loads(machine_to_json(SWAP))
    assert parsed["states"] == ["x", "y"]
    assert parsed["delta"] == [[1, 0], [1, 0]]
    assert parsed["rho"] == [[0, 1], [0, 1]]


def test_dot_output():
    dot = machine_to_dot(SWAP)
    assert dot.startswith("digraph mealy {")
    assert dot.rstrip().endswith("}")
    assert '"x" -> "y" [label="a|a, b|b"];' in dot
    assert '"y" -> "x" [label="a|a, b|b"];' in dot
    # one line per distinct (source, target) pair
    edges = [l for l in dot.splitlines() if "->" in l]
    assert len(edges) == 2
    dot = machine_to_dot(ALESHIN)
    edges = [l for l in dot.splitlines() if "->" in l]
    targets = {(l.split('"')[1], l.split('"')[3]) for l in edges}
    assert ("z", "x") in targets
    assert len(edges) == len(targets)
