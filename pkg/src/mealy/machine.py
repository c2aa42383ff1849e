"""Mealy machines as immutable letter-to-letter transducers.

A machine couples a finite state set with a finite alphabet through two
total tables: ``delta``, indexed (letter, state), moves states, and
``rho``, indexed (state, letter), rewrites letters.  Each state word acts
on letter words (length- and prefix-preserving) and each letter word acts
on state words; everything else in this package is built from these two
actions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# materializing a power automaton above this many states is refused
DEFAULT_POWER_BUDGET = 2 ** 20

StateWord = tuple
LetterWord = tuple


class MealyError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(MealyError):
    """A machine description is malformed (shape, range or naming)."""


class BudgetError(MealyError):
    """An operation refused to exceed its size or work budget."""

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class PreconditionError(MealyError):
    """An operation was applied to a machine outside its declared domain."""


def _check_names(names, what):
    if len(names) == 0:
        raise ValidationError("machine needs at least one %s" % what)
    seen = set()
    for name in names:
        if not isinstance(name, str) or name == "":
            raise ValidationError("%s names must be non-empty strings" % what)
        if name in seen:
            raise ValidationError("duplicate %s name %r" % (what, name))
        seen.add(name)


@dataclass(frozen=True, eq=False)
class MealyMachine:
    """An immutable transducer over named states and letters.

    Tables hold dense integer indices; the name tuples are a sidecar used
    only at the boundary (parsing, printing).  Instances hash and compare
    by names plus tables.
    """

    states: tuple
    letters: tuple
    delta: np.ndarray  # shape (n_letters, n_states); delta[i, x] = state reached from x on letter i
    rho: np.ndarray    # shape (n_states, n_letters); rho[x, i] = letter produced by x on letter i

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "letters", tuple(self.letters))
        delta = np.array(self.delta, dtype=np.int64)
        rho = np.array(self.rho, dtype=np.int64)
        delta.flags.writeable = False
        rho.flags.writeable = False
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "rho", rho)
        validate(self)
        object.__setattr__(self, "_state_index", {s: k for k, s in enumerate(self.states)})
        object.__setattr__(self, "_letter_index", {s: k for k, s in enumerate(self.letters)})

    @property
    def n_states(self):
        return len(self.states)

    @property
    def n_letters(self):
        return len(self.letters)

    def state_index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.n_states:
                raise ValidationError("state index %d out of range" % name)
            return int(name)
        try:
            return self._state_index[name]
        except KeyError:
            raise ValidationError("unknown state %r" % (name,)) from None

    def letter_index(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.n_letters:
                raise ValidationError("letter index %d out of range" % name)
            return int(name)
        try:
            return self._letter_index[name]
        except KeyError:
            raise ValidationError("unknown letter %r" % (name,)) from None

    def __eq__(self, other):
        if not isinstance(other, MealyMachine):
            return NotImplemented
        return (self.states == other.states and self.letters == other.letters
                and np.array_equal(self.delta, other.delta)
                and np.array_equal(self.rho, other.rho))

    def __hash__(self):
        return hash((self.states, self.letters,
                     self.delta.tobytes(), self.rho.tobytes()))

    def __repr__(self):
        return "MealyMachine(%d states, %d letters)" % (self.n_states, self.n_letters)

    # -- structural predicates ------------------------------------------------

    def is_invertible(self) -> bool:
        """True when every state's production row permutes the alphabet."""
        n = self.n_letters
        return all(len(set(row)) == n for row in self.rho.tolist())

    def is_reversible(self) -> bool:
        """True when every letter's transition row permutes the states."""
        n = self.n_states
        return all(len(set(row)) == n for row in self.delta.tolist())

    def is_bireversible(self) -> bool:
        """Invertible, reversible, and the inverse machine is reversible too."""
        if not (self.is_invertible() and self.is_reversible()):
            return False
        return self.inverse().is_reversible()

    # -- derived machines -----------------------------------------------------

    def inverse(self) -> "MealyMachine":
        """The machine running productions backwards: x --rho_x(i)|i--> delta_i(x)."""
        if not self.is_invertible():
            raise PreconditionError("inverse requires an invertible machine")
        rho_inv = np.empty_like(self.rho)
        rows = np.arange(self.n_states)[:, None]
        rho_inv[rows, self.rho] = np.arange(self.n_letters)[None, :]
        # delta_inv[j, x] = delta[rho_inv[x, j], x]
        delta_inv = self.delta[rho_inv.T, np.arange(self.n_states)[None, :]]
        return MealyMachine(self.states, self.letters, delta_inv, rho_inv)

    def dual(self) -> "MealyMachine":
        """Swap the roles of states and letters (pure table transpose)."""
        return MealyMachine(self.letters, self.states, self.rho, self.delta)

    def power(self, n, budget=DEFAULT_POWER_BUDGET) -> "MealyMachine":
        """The machine whose states are length-n state words, same alphabet.

        State order is lexicographic in the component indices.  Refuses to
        materialize more than ``budget`` states.
        """
        from . import tables

        if n < 1:
            raise PreconditionError("power exponent must be >= 1")
        size = self.n_states ** n
        if size > budget:
            raise BudgetError("power would materialize %d states (budget %d)" % (size, budget),
                              required=size, budget=budget)
        t_n, f_n = tables.level_tables(self.delta, self.rho, n)
        joiner = "" if all(len(s) == 1 for s in self.states) else "-"
        names = tuple(joiner.join(combo)
                      for combo in itertools.product(self.states, repeat=n))
        return MealyMachine(names, self.letters, t_n, f_n.T)

    def permuted(self, state_perm=None, letter_perm=None) -> "MealyMachine":
        """Relabel through permutations given as old-index -> new-index maps."""
        sp = np.arange(self.n_states) if state_perm is None else np.asarray(state_perm)
        lp = np.arange(self.n_letters) if letter_perm is None else np.asarray(letter_perm)
        delta_new = np.empty_like(self.delta)
        rho_new = np.empty_like(self.rho)
        delta_new[lp[:, None], sp[None, :]] = sp[self.delta]
        rho_new[sp[:, None], lp[None, :]] = lp[self.rho]
        states_new = [None] * self.n_states
        letters_new = [None] * self.n_letters
        for x, name in enumerate(self.states):
            states_new[sp[x]] = name
        for i, name in enumerate(self.letters):
            letters_new[lp[i]] = name
        return MealyMachine(tuple(states_new), tuple(letters_new), delta_new, rho_new)


def validate(machine) -> None:
    """Check totality, index ranges and naming; raise ValidationError if bad."""
    _check_names(machine.states, "state")
    _check_names(machine.letters, "letter")
    n_s, n_l = len(machine.states), len(machine.letters)
    delta = np.asarray(machine.delta)
    rho = np.asarray(machine.rho)
    if delta.shape != (n_l, n_s):
        raise ValidationError("delta table shape %r, expected (%d, %d)"
                              % (delta.shape, n_l, n_s))
    if rho.shape != (n_s, n_l):
        raise ValidationError("rho table shape %r, expected (%d, %d)"
                              % (rho.shape, n_s, n_l))
    if delta.size and (delta.min() < 0 or delta.max() >= n_s):
        bad = np.argwhere((delta < 0) | (delta >= n_s))[0]
        raise ValidationError("delta[%d, %d] = %d out of state range"
                              % (bad[0], bad[1], delta[bad[0], bad[1]]))
    if rho.size and (rho.min() < 0 or rho.max() >= n_l):
        bad = np.argwhere((rho < 0) | (rho >= n_l))[0]
        raise ValidationError("rho[%d, %d] = %d out of letter range"
                              % (bad[0], bad[1], rho[bad[0], bad[1]]))


def state_word(machine, names) -> StateWord:
    """Build a state word from an iterable of names (or a bare string)."""
    if isinstance(names, str):
        names = list(names)
    return tuple(machine.state_index(n) for n in names)


def letter_word(machine, names) -> LetterWord:
    if isinstance(names, str):
        names = list(names)
    return tuple(machine.letter_index(n) for n in names)


def state_names(machine, word) -> str:
    joiner = "" if all(len(s) == 1 for s in machine.states) else " "
    return joiner.join(machine.states[x] for x in word)


def letter_names(machine, word) -> str:
    joiner = "" if all(len(s) == 1 for s in machine.letters) else " "
    return joiner.join(machine.letters[i] for i in word)


def rho_apply(machine, u, s) -> LetterWord:
    """Image of letter word s under the production action of state word u.

    The first state of u acts first; the empty state word is the identity.
    """
    delta, rho = machine.delta, machine.rho
    out = list(s)
    for x in u:
        cur = x
        for k, a in enumerate(out):
            out[k] = int(rho[cur, a])
            cur = int(delta[a, cur])
    return tuple(out)


def delta_apply(machine, s, u) -> StateWord:
    """Image of state word u under the transition action of letter word s.

    Mirror of rho_apply with the roles of the two tables exchanged.
    """
    delta, rho = machine.delta, machine.rho
    out = list(u)
    for i in s:
        cur = i
        for k, x in enumerate(out):
            out[k] = int(delta[cur, x])
            cur = int(rho[x, cur])
    return tuple(out)
