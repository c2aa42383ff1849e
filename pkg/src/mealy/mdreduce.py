"""Alternating minimization of a machine and its dual.

A machine is md-trivial when the alternation collapses it to the
one-state one-letter machine; md-triviality is where the finiteness
decisions for two-state machines bottom out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .machine import MealyMachine, PreconditionError
from .minimize import is_minimal, minimize


@dataclass(frozen=True)
class ReductionStep:
    side: str       # "primal" or "dual"
    before: tuple   # (n_states, n_letters)
    after: tuple


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple
    final: MealyMachine

    @property
    def trivial(self) -> bool:
        return self.final.n_states == 1 and self.final.n_letters == 1


def md_reduce(machine, dual_first=False) -> ReductionTrace:
    """Minimize machine and dual alternately until both are minimal.

    Each productive step strictly shrinks n_states * n_letters, so the
    loop terminates.  The result is returned in the original orientation.
    dual_first only changes which side is tried first; the reduced pair
    is the same up to renaming either way (confluence, tested).
    """
    steps = []
    current = machine
    sides = ("dual", "primal") if dual_first else ("primal", "dual")
    while True:
        for side in sides:
            if side == "primal":
                if not is_minimal(current):
                    small = minimize(current)
                    steps.append(ReductionStep(
                        "primal",
                        (current.n_states, current.n_letters),
                        (small.n_states, small.n_letters)))
                    current = small
                    break
            else:
                if not is_minimal(current.dual()):
                    small = minimize(current.dual()).dual()
                    steps.append(ReductionStep(
                        "dual",
                        (current.n_states, current.n_letters),
                        (small.n_states, small.n_letters)))
                    current = small
                    break
        else:
            return ReductionTrace(tuple(steps), current)


def is_md_trivial(machine) -> bool:
    return md_reduce(machine).trivial


def md_reduce_two_state(machine) -> ReductionTrace:
    """Reduction entry point for two-state machines.

    Tries the short schedule first (one primal minimization, one dual
    minimization); that is usually the whole story, but a collapse on one
    side can re-open the other (a one-state machine's dual always folds to
    one letter, and a letter merge can equalize the two production rows),
    so the general alternation finishes whatever remains.  The final
    machine always equals md_reduce's.
    """
    if machine.n_states != 2:
        raise PreconditionError("shortcut applies to two-state machines only")
    steps = []
    current = machine
    if not is_minimal(current):
        small = minimize(current)
        steps.append(ReductionStep(
            "primal",
            (current.n_states, current.n_letters),
            (small.n_states, small.n_letters)))
        current = small
    if not is_minimal(current.dual()):
        small = minimize(current.dual()).dual()
        steps.append(ReductionStep(
            "dual",
            (current.n_states, current.n_letters),
            (small.n_states, small.n_letters)))
        current = small
    if not is_minimal(current):
        tail = md_reduce(current)
        steps.extend(tail.steps)
        current = tail.final
    return ReductionTrace(tuple(steps), current)
