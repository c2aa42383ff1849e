"""Line-based machine documents, a JSON mirror, and DOT export.

Format: a `states:` line, a `letters:` line, then one transition per
statement, `STATE LETTER -> STATE LETTER`.  Statements are separated by
newlines or `;`, comments run from `#` to end of line.  Every
(state, letter) pair must appear exactly once.
"""

from __future__ import annotations

import json

import numpy as np

from .machine import MealyMachine, MealyError


class ParseError(MealyError):
    def __init__(self, message, line, column):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column


class IncompleteMachineError(ParseError):
    def __init__(self, missing, line):
        self.missing = tuple(missing)
        pairs = ", ".join("(%s, %s)" % p for p in self.missing)
        super().__init__("missing transitions: %s" % pairs, line, 1)


def _statements(text):
    """Yield (line_no, column, statement) with comments stripped."""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 1
        for piece in line.split(";"):
            stripped = piece.strip()
            if stripped:
                yield line_no, col + len(piece) - len(piece.lstrip()), stripped
            col += len(piece) + 1


def _parse_names(stmt, line, col, kind):
    names = stmt.split(":", 1)[1].split()
    if not names:
        raise ParseError("empty %s list" % kind, line, col)
    seen = set()
    for n in names:
        if n == "->":
            raise ParseError("reserved token %r as %s name" % (n, kind),
                             line, col)
        if n in seen:
            raise ParseError("duplicate %s name %r" % (kind, n), line, col)
        seen.add(n)
    return tuple(names)


def parse_machine(text) -> MealyMachine:
    states = letters = None
    transitions = {}
    last_line = 1
    for line, col, stmt in _statements(text):
        last_line = line
        if stmt.startswith("states:"):
            if states is not None:
                raise ParseError("states listed twice", line, col)
            states = _parse_names(stmt, line, col, "state")
        elif stmt.startswith("letters:"):
            if letters is not None:
                raise ParseError("letters listed twice", line, col)
            letters = _parse_names(stmt, line, col, "letter")
        else:
            if states is None or letters is None:
                raise ParseError(
                    "transition before states/letters header", line, col)
            tokens = stmt.split()
            if len(tokens) != 5 or tokens[2] != "->":
                raise ParseError(
                    "expected STATE LETTER -> STATE LETTER", line, col)
            src, inp, _, dst, out = tokens
            if src not in states:
                raise ParseError("unknown state %r" % src, line, col)
            if dst not in states:
                raise ParseError("unknown state %r" % dst, line, col)
            if inp not in letters:
                raise ParseError("unknown letter %r" % inp, line, col)
            if out not in letters:
                raise ParseError("unknown letter %r" % out, line, col)
            if (src, inp) in transitions:
                raise ParseError(
                    "duplicate transition for (%s, %s)" % (src, inp),
                    line, col)
            transitions[(src, inp)] = (dst, out)
    if states is None:
        raise ParseError("missing states: line", last_line, 1)
    if letters is None:
        raise ParseError("missing letters: line", last_line, 1)
    missing = [(s, a) for s in states for a in letters
               if (s, a) not in transitions]
    if missing:
        raise IncompleteMachineError(missing, last_line)
    s_idx = {s: k for k, s in enumerate(states)}
    l_idx = {a: k for k, a in enumerate(letters)}
    delta = np.empty((len(letters), len(states)), dtype=np.int64)
    rho = np.empty((len(states), len(letters)), dtype=np.int64)
    for (src, inp), (dst, out) in transitions.items():
        delta[l_idx[inp], s_idx[src]] = s_idx[dst]
        rho[s_idx[src], l_idx[inp]] = l_idx[out]
    return MealyMachine(states=states, letters=letters, delta=delta, rho=rho)


def serialize_machine(machine) -> str:
    lines = ["states: " + " ".join(machine.states),
             "letters: " + " ".join(machine.letters)]
    for x, s in enumerate(machine.states):
        for i, a in enumerate(machine.letters):
            lines.append("%s %s -> %s %s"
                         % (s, a, machine.states[machine.delta[i, x]],
                            machine.letters[machine.rho[x, i]]))
    return "\n".join(lines) + "\n"


def machine_to_json(machine, **kwargs) -> str:
    doc = {
        "states": list(machine.states),
        "letters": list(machine.letters),
        "delta": machine.delta.tolist(),
        "rho": machine.rho.tolist(),
    }
    return json.dumps(doc, **kwargs)


def machine_from_json(text) -> MealyMachine:
    doc = json.loads(text)
    return MealyMachine(states=tuple(doc["states"]),
                        letters=tuple(doc["letters"]),
                        delta=np.array(doc["delta"]),
                        rho=np.array(doc["rho"]))


def machine_to_dot(machine) -> str:
    """State graph with transitions merged per edge, labeled in|out."""
    merged = {}
    for x in range(machine.n_states):
        for i in range(machine.n_letters):
            dst = int(machine.delta[i, x])
            lab = "%s|%s" % (machine.letters[i],
                             machine.letters[machine.rho[x, i]])
            merged.setdefault((x, dst), []).append(lab)
    lines = ["digraph mealy {", "  rankdir=LR;", "  node [shape=circle];"]
    for s in machine.states:
        lines.append('  "%s";' % s)
    for (x, dst), labs in sorted(merged.items()):
        lines.append('  "%s" -> "%s" [label="%s"];'
                     % (machine.states[x], machine.states[dst],
                        ", ".join(labs)))
    lines.append("}")
    return "\n".join(lines) + "\n"
