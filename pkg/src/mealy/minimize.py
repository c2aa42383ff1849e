"""State equivalence and minimization.

Two states are equivalent when they produce the same function on letter
words.  The fixed point of the usual refinement (start from equal
production rows, refine by transition successors) is computed either
Moore-style for a bounded number of rounds (k_classes) or with a
Hopcroft worklist (nerode_partition).  words_equivalent lifts the test
to state words of arbitrary, possibly different, lengths via power
automata.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import tables
from .machine import (
    BudgetError,
    DEFAULT_POWER_BUDGET,
    MealyError,
    MealyMachine,
    PreconditionError,
)


class ConsistencyError(MealyError):
    """A refinement result failed an internal cross-check."""


@dataclass(frozen=True)
class Partition:
    """Blocks over the state set; ids are contiguous and blocks are
    numbered in order of their smallest member."""

    block_of: tuple
    n_blocks: int
    depth: Optional[int]  # refinement rounds applied, None for the fixed point

    def blocks(self):
        out = [[] for _ in range(self.n_blocks)]
        for x, b in enumerate(self.block_of):
            out[b].append(x)
        return out

    def same_block(self, x, y) -> bool:
        return self.block_of[x] == self.block_of[y]


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    block: Optional[int] = None        # shared block id when equivalent
    separating: Optional[tuple] = None  # letter word with differing images otherwise


def _canonical_labels(raw):
    """Renumber arbitrary labels so block ids follow smallest members."""
    order = {}
    out = []
    for v in raw:
        if v not in order:
            order[v] = len(order)
        out.append(order[v])
    return out, len(order)


def _row_keys(machine):
    return [machine.rho[x].tobytes() for x in range(machine.n_states)]


def k_classes(machine, k) -> Partition:
    """The partition after exactly k refinement rounds (round 0 groups
    equal production rows)."""
    if k < 0:
        raise PreconditionError("k must be >= 0")
    labels, n = _canonical_labels(_row_keys(machine))
    delta = machine.delta
    for _ in range(k):
        keys = [
            (labels[x],) + tuple(labels[delta[i, x]] for i in range(machine.n_letters))
            for x in range(machine.n_states)
        ]
        new_labels, new_n = _canonical_labels(keys)
        if new_n == n:
            break  # stable from here on
        labels, n = new_labels, new_n
    return Partition(tuple(labels), n, depth=k)


def nerode_partition(machine) -> Partition:
    """Fixed point of the refinement, via a Hopcroft-style worklist."""
    n = machine.n_states
    n_letters = machine.n_letters
    by_row = {}
    for x in range(n):
        by_row.setdefault(machine.rho[x].tobytes(), []).append(x)

    blocks = {}
    block_of = [0] * n
    for bid, members in enumerate(by_row.values()):
        blocks[bid] = set(members)
        for x in members:
            block_of[x] = bid

    pre = [[[] for _ in range(n)] for _ in range(n_letters)]
    for i in range(n_letters):
        row = machine.delta[i].tolist()
        for x in range(n):
            pre[i][row[x]].append(x)

    work = deque((bid, i) for bid in blocks for i in range(n_letters))
    in_work = set(work)
    next_id = len(blocks)
    while work:
        bid, i = work.popleft()
        in_work.discard((bid, i))
        preimage = set()
        for y in blocks[bid]:
            preimage.update(pre[i][y])
        touched = {}
        for x in preimage:
            touched.setdefault(block_of[x], set()).add(x)
        for cid, inter in touched.items():
            block = blocks[cid]
            if len(inter) == len(block):
                continue
            rest = block - inter
            # the smaller half becomes the new block; cid keeps the rest,
            # so pending (cid, j) splitters stay valid
            small = inter if len(inter) <= len(rest) else rest
            blocks[cid] = block - small
            blocks[next_id] = small
            for x in small:
                block_of[x] = next_id
            for j in range(n_letters):
                work.append((next_id, j))
                in_work.add((next_id, j))
            next_id += 1

    labels, n_blocks = _canonical_labels(block_of)
    return Partition(tuple(labels), n_blocks, depth=None)


def is_minimal(machine) -> bool:
    return nerode_partition(machine).n_blocks == machine.n_states


def minimize(machine) -> MealyMachine:
    """Quotient by the fixed-point partition; block representatives are the
    smallest member states, which fixes the state numbering."""
    part = nerode_partition(machine)
    if part.n_blocks == machine.n_states:
        return machine
    members = part.blocks()
    reps = [b[0] for b in members]
    delta_q = np.empty((machine.n_letters, part.n_blocks), dtype=np.int64)
    rho_q = np.empty((part.n_blocks, machine.n_letters), dtype=np.int64)
    for b, rep in enumerate(reps):
        rho_q[b] = machine.rho[rep]
        for i in range(machine.n_letters):
            delta_q[i, b] = part.block_of[machine.delta[i, rep]]
    # every member must agree with its representative
    for b, group in enumerate(members):
        for x in group:
            if machine.rho[x].tobytes() != machine.rho[reps[b]].tobytes():
                raise ConsistencyError("production rows differ inside block %d" % b)
            for i in range(machine.n_letters):
                if part.block_of[machine.delta[i, x]] != delta_q[i, b]:
                    raise ConsistencyError("successor blocks differ inside block %d" % b)
    names = tuple(machine.states[rep] for rep in reps)
    return MealyMachine(names, machine.letters, delta_q, rho_q)


# -- equivalence of state words ----------------------------------------------

class _LeveledRefinement:
    """Shared refinement over the disjoint union of power automata.

    Words of every requested length are refined together, so class ids are
    comparable across lengths.  Keeps the per-round history for
    certificate extraction.
    """

    def __init__(self, machine, lengths, budget=DEFAULT_POWER_BUDGET,
                 keep_history=True):
        lengths = sorted(set(lengths))
        if not lengths or lengths[0] < 1:
            raise PreconditionError("word lengths must be >= 1")
        n_states = machine.n_states
        total = sum(n_states ** l for l in lengths)
        if total > budget:
            raise BudgetError(
                "union of powers needs %d cells (budget %d)" % (total, budget),
                required=total, budget=budget)
        self.machine = machine
        self.lengths = lengths
        all_levels = tables.all_level_tables(machine.delta, machine.rho, lengths[-1])
        self.t = {l: all_levels[l - 1][0] for l in lengths}
        self.f = {l: all_levels[l - 1][1] for l in lengths}
        self.offset = {}
        run = 0
        for l in lengths:
            self.offset[l] = run
            run += n_states ** l
        self.total = run
        # keep_history=False drops the per-round partitions (certificate
        # extraction needs them, bulk enumeration does not; long chains
        # would otherwise cost rounds x pool memory)
        self.keep_history = keep_history
        self._refine()

    def _refine(self):
        n_letters = self.machine.n_letters
        key = np.empty(self.total, dtype=np.int64)
        for l in self.lengths:
            o = self.offset[l]
            span = self.machine.n_states ** l
            acc = np.zeros(span, dtype=np.int64)
            for i in range(n_letters):
                acc = acc * n_letters + self.f[l][i]
            key[o:o + span] = acc
        _, labels = np.unique(key, return_inverse=True)
        history = [labels] if self.keep_history else None
        n_classes = labels.max() + 1 if self.total else 0
        depth = 0
        while True:
            combined = labels.copy()
            width = n_classes
            for i in range(n_letters):
                succ = np.empty(self.total, dtype=np.int64)
                for l in self.lengths:
                    o = self.offset[l]
                    span = self.machine.n_states ** l
                    succ[o:o + span] = labels[o + self.t[l][i]]
                _, combined = np.unique(combined * width + succ, return_inverse=True)
                width = combined.max() + 1
            new_n = int(width)
            if new_n == n_classes:
                break
            labels = combined
            depth += 1
            if history is not None:
                history.append(labels)
            n_classes = new_n
        self.history = history
        self.labels = labels
        self.n_classes = int(n_classes)
        self.depth = depth  # classes at this round are the fixed point

    def flat(self, length, packed):
        return self.offset[length] + packed

    def label_of(self, length, word):
        return int(self.labels[self.flat(length, tables.pack(word, self.machine.n_states))])

    def separating_word(self, u, v):
        """Shortest letter word on which u and v produce different images
        (lexicographically first among those); None if equivalent."""
        if self.history is None:
            raise PreconditionError(
                "separating words need keep_history=True")
        lu, lv = len(u), len(v)
        ou, ov = self.offset[lu], self.offset[lv]
        pu = tables.pack(u, self.machine.n_states)
        pv = tables.pack(v, self.machine.n_states)
        if self.labels[ou + pu] == self.labels[ov + pv]:
            return None
        word = []
        while True:
            # first refinement round separating the current pair; it drops
            # strictly with every descent step, so the loop terminates
            level = 0
            while self.history[level][ou + pu] == self.history[level][ov + pv]:
                level += 1
            if level == 0:
                for i in range(self.machine.n_letters):
                    if self.f[lu][i][pu] != self.f[lv][i][pv]:
                        word.append(i)
                        return tuple(word)
                raise ConsistencyError("row split without a differing letter")
            prev = self.history[level - 1]
            for i in range(self.machine.n_letters):
                su = self.t[lu][i][pu]
                sv = self.t[lv][i][pv]
                if prev[ou + su] != prev[ov + sv]:
                    word.append(i)
                    pu, pv = su, sv
                    break
            else:
                raise ConsistencyError("class split without a differing successor")


def words_equivalent(machine, u, v, budget=DEFAULT_POWER_BUDGET) -> EquivalenceVerdict:
    """Do the state words u and v produce the same function on letter words?

    Certificate: the shared block id in the union-of-powers partition, or
    a separating letter word (shortest, lexicographically first).
    """
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise PreconditionError("state words must be non-empty")
    ref = _LeveledRefinement(machine, [len(u), len(v)], budget=budget)
    lu = ref.label_of(len(u), u)
    lv = ref.label_of(len(v), v)
    if lu == lv:
        return EquivalenceVerdict(True, block=lu)
    return EquivalenceVerdict(False, separating=ref.separating_word(u, v))
