"""Bounded enumeration of the generated semigroup and the tensor closure.

Elements are equivalence classes of nonempty state words under the
production action on letter words.  Identity of two words is decided
exactly: the pool of all words up to the current length is section-closed,
so once the refinement of "equal action on inputs of length d" is stable
under one more input letter, depth-d agreement propagates to every depth.
Enumeration halts when some length contributes no new element; every
longer word then reduces by induction.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import tables
from .machine import (MealyMachine, MealyError, PreconditionError,
                      DEFAULT_POWER_BUDGET, rho_apply, letter_names)
from .minimize import _LeveledRefinement, ConsistencyError

DEFAULT_MAX_ELEMENTS = 10_000
DEFAULT_MAX_DEPTH = 12
_REPS_PER_ELEMENT = 4


def action_signature(machine, word, depth, _cache=None):
    """Images of every length-`depth` input under the action of `word`,
    as a packed int64 array.  Equal-action words at any depth share it;
    at a certified depth it separates distinct semigroup elements."""
    key = depth
    if _cache is not None and key in _cache:
        t = _cache[key]
    else:
        # transition table of the dual power: t[x, s] = packed image of s
        # under the single state x
        t, _ = tables.level_tables(machine.rho, machine.delta, depth)
        if _cache is not None:
            _cache[key] = t
    idx = np.arange(machine.n_letters ** depth, dtype=np.int64)
    for x in word:
        idx = t[x, idx]
    return idx


def _signature_hash(machine, word, depth, _cache=None):
    sig = action_signature(machine, word, depth, _cache)
    h = hashlib.sha256()
    h.update(b"%d:%d:" % (depth, machine.n_letters))
    h.update(np.ascontiguousarray(sig, dtype="<i8").tobytes())
    return h.hexdigest()


@dataclass(frozen=True)
class SemigroupElement:
    index: int
    witness: tuple            # shortest state word realizing the class
    signature: Optional[str]  # sha256 of the action table at the certified
                              # depth; None when the scan exceeded a cap or
                              # the tables are over budget


@dataclass(frozen=True)
class OrderBound:
    finite: bool
    value: int

    def __str__(self):
        return ("Finite(%d)" if self.finite else "AtLeast(%d)") % self.value


@dataclass
class SemigroupTable:
    status: str                      # "Finite" | "BudgetExceeded"
    elements: tuple
    certificate_depth: int
    halt_length: Optional[int]       # length that contributed nothing new
    right_mult: Optional[tuple]      # element x generator -> element index
    n_classes_found: int
    reps: tuple = ()                 # extra stored representatives per element
    generator_class: tuple = ()      # state -> element index of that state
    machine: Optional[MealyMachine] = field(default=None, repr=False)

    @property
    def order(self) -> Optional[int]:
        return len(self.elements) if self.status == "Finite" else None

    def classify(self, word) -> int:
        """Element index of an arbitrary nonempty state word, folded
        through the right-multiplication table."""
        if self.status != "Finite":
            raise PreconditionError("classification needs a Finite table")
        word = tuple(word)
        if not word:
            raise PreconditionError("only nonempty words have a class")
        cls = self.generator_class[word[0]]
        for x in word[1:]:
            cls = self.right_mult[cls][x]
        return cls

    def to_dict(self):
        return {
            "status": self.status,
            "certificate_depth": self.certificate_depth,
            "halt_length": self.halt_length,
            "n_classes_found": self.n_classes_found,
            "elements": [
                {"index": e.index, "witness": list(e.witness),
                 "signature": e.signature}
                for e in self.elements
            ],
            "right_mult": None if self.right_mult is None
            else [list(row) for row in self.right_mult],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def _scan_witnesses(ref, n_states, lengths):
    """First (length-lex) witness per refinement class, plus a few extra
    representatives, scanning lengths in ascending order."""
    witness = {}
    reps = {}
    new_by_length = {}
    for l in lengths:
        o = ref.offset[l]
        span = n_states ** l
        labels_l = ref.labels[o:o + span]
        uniq, first = np.unique(labels_l, return_index=True)
        fresh = 0
        for lab, packed in zip(uniq.tolist(), first.tolist()):
            word = tables.unpack(packed, n_states, l)
            if lab not in witness:
                witness[lab] = word
                reps[lab] = [word]
                fresh += 1
            elif len(reps[lab]) < _REPS_PER_ELEMENT:
                reps[lab].append(word)
        new_by_length[l] = fresh
    return witness, reps, new_by_length


def enumerate_semigroup(machine, max_elements=DEFAULT_MAX_ELEMENTS,
                        max_depth=DEFAULT_MAX_DEPTH,
                        budget=DEFAULT_POWER_BUDGET) -> SemigroupTable:
    """Breadth-first element discovery by word length.

    Returns status Finite with a complete right-multiplication table, or
    BudgetExceeded (element cap, length cap, or table budget); budget
    exhaustion is a status, never an exception.
    """
    n_states = machine.n_states
    ref = None
    exceeded = False
    halt = None
    length = 0
    while True:
        length += 1
        if length > max_depth:
            exceeded = True
            length -= 1
            break
        projected = sum(n_states ** l for l in range(1, length + 1))
        if projected > budget:
            exceeded = True
            length -= 1
            break
        ref = _LeveledRefinement(machine, range(1, length + 1), budget,
                                 keep_history=False)
        witness, reps, new_by_length = _scan_witnesses(
            ref, n_states, range(1, length + 1))
        if new_by_length[length] == 0:
            halt = length
            break
        if ref.n_classes > max_elements:
            exceeded = True
            break
    if ref is None:  # not even length 1 fit the budgets
        return SemigroupTable(status="BudgetExceeded", elements=(),
                              certificate_depth=0, halt_length=None,
                              right_mult=None, n_classes_found=0,
                              machine=machine)
    cert_depth = ref.depth + 1
    order = sorted(witness, key=lambda lab: (len(witness[lab]), witness[lab]))
    index_of = {lab: i for i, lab in enumerate(order)}
    # hashes are frozen only for certified-finite tables whose total
    # signature work fits the budget; identity never depends on them
    sign_cheap = (not exceeded and
                  len(order) * machine.n_letters ** cert_depth <= budget)
    cache = {}
    elements = tuple(
        SemigroupElement(index=i, witness=witness[lab],
                         signature=_signature_hash(machine, witness[lab],
                                                   cert_depth, cache)
                         if sign_cheap else None)
        for i, lab in enumerate(order))
    rep_lists = tuple(tuple(reps[lab]) for lab in order)
    right = None
    gen_class = ()
    if not exceeded:
        rows = []
        for lab in order:
            w = witness[lab]
            rows.append(tuple(index_of[ref.labels[ref.flat(
                len(w) + 1, tables.pack(w + (x,), n_states))]]
                for x in range(n_states)))
        right = tuple(rows)
        gen_class = tuple(index_of[ref.labels[ref.flat(1, x)]]
                          for x in range(n_states))
    return SemigroupTable(
        status="BudgetExceeded" if exceeded else "Finite",
        elements=elements,
        certificate_depth=cert_depth,
        halt_length=halt,
        right_mult=right,
        n_classes_found=int(ref.n_classes),
        reps=rep_lists,
        generator_class=gen_class,
        machine=machine)


def semigroup_order(machine, max_elements=DEFAULT_MAX_ELEMENTS,
                    max_depth=DEFAULT_MAX_DEPTH,
                    budget=DEFAULT_POWER_BUDGET) -> OrderBound:
    table = enumerate_semigroup(machine, max_elements, max_depth, budget)
    if table.status == "Finite":
        return OrderBound(True, table.order)
    return OrderBound(False, table.n_classes_found)


def tensor_closure(machine, max_elements=DEFAULT_MAX_ELEMENTS,
                   max_depth=DEFAULT_MAX_DEPTH,
                   budget=DEFAULT_POWER_BUDGET, check=True) -> MealyMachine:
    """Re-alphabetize over the finite dual semigroup.

    States are kept; the letters become the dual semigroup's elements, so
    every letter word is equivalent to a single new letter.  Transitions:
    a class letter moves state x along its witness word, and x maps a
    class letter to the class of the witness's image under x.
    """
    dual_table = enumerate_semigroup(machine.dual(), max_elements,
                                     max_depth, budget)
    if dual_table.status != "Finite":
        raise PreconditionError(
            "dual semigroup not certified finite (%s, %d classes found)"
            % (dual_table.status, dual_table.n_classes_found))
    n_states = machine.n_states
    xi = dual_table.elements
    names = tuple(letter_names(machine, e.witness) for e in xi)
    delta_bar = np.empty((len(xi), n_states), dtype=np.int64)
    rho_bar = np.empty((n_states, len(xi)), dtype=np.int64)
    for k, e in enumerate(xi):
        for x in range(n_states):
            cur = x
            for letter in e.witness:
                cur = int(machine.delta[letter, cur])
            delta_bar[k, x] = cur
            rho_bar[x, k] = dual_table.classify(
                rho_apply(machine, (x,), e.witness))
    closed = MealyMachine(states=machine.states, letters=names,
                          delta=delta_bar, rho=rho_bar)
    if check:
        _check_well_defined(machine, dual_table, delta_bar, rho_bar)
    return closed


def _check_well_defined(machine, dual_table, delta_bar, rho_bar):
    """Every stored representative of a class must induce the same state
    displacement and the same class image as the witness."""
    for k, rep_words in enumerate(dual_table.reps):
        for rep in rep_words:
            for x in range(machine.n_states):
                cur = x
                for letter in rep:
                    cur = int(machine.delta[letter, cur])
                if cur != delta_bar[k, x]:
                    raise ConsistencyError(
                        "class %d: representatives disagree on delta at state %d"
                        % (k, x))
                img = dual_table.classify(rho_apply(machine, (x,), rep))
                if img != rho_bar[x, k]:
                    raise ConsistencyError(
                        "class %d: representatives disagree on rho at state %d"
                        % (k, x))


def is_tensor_closed(machine, max_elements=DEFAULT_MAX_ELEMENTS,
                     max_depth=DEFAULT_MAX_DEPTH,
                     budget=DEFAULT_POWER_BUDGET) -> bool:
    """True iff the machine is isomorphic to its tensor closure."""
    closed = tensor_closure(machine, max_elements, max_depth, budget,
                            check=False)
    if (closed.n_states, closed.n_letters) != (machine.n_states,
                                               machine.n_letters):
        return False
    from .census import canonical_form
    return canonical_form(machine) == canonical_form(closed)


@dataclass(frozen=True)
class CompleteComponentsReport:
    exponent: int
    ok: bool
    n_components: int
    missing: Optional[tuple]  # (source word, target word) lacking an edge


def verify_complete_components(machine, m,
                               budget=DEFAULT_POWER_BUDGET,
                               assume_closed=False) -> CompleteComponentsReport:
    """Check that every component of the m-th power has an edge between
    every ordered vertex pair (self-loops included)."""
    if machine.n_states != 2:
        raise PreconditionError("complete-component check needs 2 states")
    if not machine.is_invertible() or not machine.is_reversible():
        raise PreconditionError(
            "complete-component check needs an invertible reversible machine")
    if not assume_closed and not is_tensor_closed(machine, budget=budget):
        raise PreconditionError("machine is not tensor closed")
    from .connectivity import _power_labels
    t, _ = tables.level_tables(machine.delta, machine.rho, m)
    labels = _power_labels(machine, m, budget, "weak")
    n_comp = int(labels.max()) + 1 if labels.size else 0
    members = {}
    for v, lab in enumerate(labels.tolist()):
        members.setdefault(lab, []).append(v)
    for verts in members.values():
        succ = {u: set(t[:, u].tolist()) for u in verts}
        for u in verts:
            for v in verts:
                if v not in succ[u]:
                    return CompleteComponentsReport(
                        exponent=m, ok=False, n_components=n_comp,
                        missing=(tables.unpack(u, machine.n_states, m),
                                 tables.unpack(v, machine.n_states, m)))
    return CompleteComponentsReport(exponent=m, ok=True,
                                    n_components=n_comp, missing=None)
