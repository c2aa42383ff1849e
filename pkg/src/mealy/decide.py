"""Decision procedures for finiteness and freeness of generated (semi)groups.

For two-state reversible machines, a disconnected power certifies a finite
semigroup and, in the invertible case, md-triviality decides finiteness
exactly; the only alternative is a free semigroup of rank 2.  Two-letter
invertible-reversible machines are decided through their dual.  Every
verdict carries machine-checkable evidence; `certificates` replays it
through an independent code path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .machine import (MealyMachine, PreconditionError, BudgetError,
                      DEFAULT_POWER_BUDGET, state_names)
from .minimize import _LeveledRefinement, nerode_partition
from .mdreduce import md_reduce
from .connectivity import connection_degree, power_components
from . import tables

FINITE_SEMIGROUP = "FiniteSemigroup"
FREE_RANK_2 = "FreeRank2"
FINITE_GROUP = "FiniteGroup"
INFINITE_GROUP = "InfiniteGroup"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    kind: str
    evidence: tuple
    order: Optional[int] = None
    bound: Optional[int] = None

    def to_dict(self):
        return {"kind": self.kind, "order": self.order, "bound": self.bound,
                "evidence": [dict(e) for e in self.evidence]}

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def _trace_evidence(trace, dual_first=False):
    return {
        "type": "md_reduction",
        "dual_first": dual_first,
        "trivial": trace.trivial,
        "steps": [{"side": s.side, "before": list(s.before),
                   "after": list(s.after)} for s in trace.steps],
        "final": [trace.final.n_states, trace.final.n_letters],
    }


def _degree_evidence(deg):
    report = deg.disconnected_power
    return {
        "type": "disconnected_power",
        "exponent": report.exponent,
        "n_components": report.n_components,
        "component_sizes": list(report.sizes),
    }


def _enumeration_evidence(table):
    return {
        "type": "enumeration",
        "status": table.status,
        "order": table.order,
        "certificate_depth": table.certificate_depth,
        "halt_length": table.halt_length,
        "n_classes_found": table.n_classes_found,
    }


def _try_order(machine, max_elements, max_depth):
    from .semigroup import enumerate_semigroup
    table = enumerate_semigroup(machine, max_elements, max_depth)
    return table


def decide_two_state_reversible(machine, max_power=16,
                                max_elements=10_000, max_depth=12,
                                budget=DEFAULT_POWER_BUDGET) -> Verdict:
    """Finite-or-free dichotomy for two-state reversible machines.

    A disconnected power proves finiteness outright.  Invertible machines
    are decided exactly through md-triviality even when no power up to
    max_power disconnects; non-invertible ones stay Unknown past the scan.
    """
    if machine.n_states != 2:
        raise PreconditionError("dichotomy needs exactly 2 states")
    if not machine.is_reversible():
        raise PreconditionError("dichotomy needs a reversible machine")
    deg = connection_degree(machine, max_power=max_power, budget=budget)
    if deg.finite:
        evidence = [_degree_evidence(deg)]
        table = _try_order(machine, max_elements, max_depth)
        evidence.append(_enumeration_evidence(table))
        return Verdict(kind=FINITE_SEMIGROUP, evidence=tuple(evidence),
                       order=table.order)
    scan = {"type": "connected_powers", "up_to": max_power}
    if machine.is_invertible():
        trace = md_reduce(machine)
        ev = _trace_evidence(trace)
        if trace.trivial:
            table = _try_order(machine, max_elements, max_depth)
            return Verdict(kind=FINITE_SEMIGROUP,
                           evidence=(ev, _enumeration_evidence(table)),
                           order=table.order)
        return Verdict(kind=FREE_RANK_2, evidence=(ev, scan))
    return Verdict(kind=UNKNOWN, evidence=(scan,), bound=max_power)


def _require_inv_rev(machine, n_states=None, n_letters=None):
    if n_states is not None and machine.n_states != n_states:
        raise PreconditionError("needs exactly %d states" % n_states)
    if n_letters is not None and machine.n_letters != n_letters:
        raise PreconditionError("needs exactly %d letters" % n_letters)
    if not machine.is_invertible() or not machine.is_reversible():
        raise PreconditionError("needs an invertible reversible machine")


def decide_finite_group_2state(machine) -> Verdict:
    """Two-state invertible-reversible machines generate a finite group
    exactly when md-trivial."""
    _require_inv_rev(machine, n_states=2)
    trace = md_reduce(machine)
    ev = _trace_evidence(trace)
    if trace.trivial:
        return Verdict(kind=FINITE_GROUP, evidence=(ev,))
    return Verdict(kind=INFINITE_GROUP, evidence=(ev,))


def decide_free_semigroup_2state(machine,
                                 max_elements=10_000,
                                 max_depth=12) -> Verdict:
    """Freeness for two-state invertible-reversible machines: free of
    rank 2 exactly when not md-trivial."""
    _require_inv_rev(machine, n_states=2)
    trace = md_reduce(machine)
    ev = _trace_evidence(trace)
    if trace.trivial:
        table = _try_order(machine, max_elements, max_depth)
        return Verdict(kind=FINITE_SEMIGROUP,
                       evidence=(ev, _enumeration_evidence(table)),
                       order=table.order)
    return Verdict(kind=FREE_RANK_2, evidence=(ev,))


def decide_finite_group_2letter(machine) -> Verdict:
    """Two-letter invertible-reversible machines: decide via the dual,
    which is two-state; group finiteness transfers both ways."""
    _require_inv_rev(machine, n_letters=2)
    inner = decide_finite_group_2state(machine.dual())
    transfer = {"type": "dual_transfer",
                "note": "md-reduction performed on the dual machine"}
    return Verdict(kind=inner.kind,
                   evidence=(transfer,) + inner.evidence,
                   order=inner.order, bound=inner.bound)


@dataclass(frozen=True)
class Relation:
    u: tuple
    v: tuple
    certificate_depth: int

    def words(self, machine):
        return state_names(machine, self.u), state_names(machine, self.v)


@dataclass(frozen=True)
class NoRelationUpTo:
    max_len: int
    checked_words: int
    certificate_depth: int


def free_relation_search(machine, max_len, depth=None,
                         budget=DEFAULT_POWER_BUDGET):
    """Exhaustive relation search over all pairs of distinct nonempty
    state words up to max_len.

    Equality of actions is decided exactly by stabilized refinement over
    the pooled powers; the first relation in length-lex order is returned,
    else NoRelationUpTo.  `depth` caps the certified refinement depth.
    """
    if max_len < 1:
        raise PreconditionError("max_len must be >= 1")
    ref = _LeveledRefinement(machine, range(1, max_len + 1), budget,
                             keep_history=False)
    cert = ref.depth + 1
    if depth is not None and cert > depth:
        raise BudgetError(
            "certificate needs depth %d (cap %d)" % (cert, depth),
            required=cert, budget=depth)
    n_states = machine.n_states
    seen = {}
    total = 0
    for l in range(1, max_len + 1):
        o = ref.offset[l]
        span = n_states ** l
        labels_l = ref.labels[o:o + span]
        total += span
        for packed in range(span):
            lab = int(labels_l[packed])
            word = tables.unpack(packed, n_states, l)
            if lab in seen:
                return Relation(u=seen[lab], v=word, certificate_depth=cert)
            seen[lab] = word
    return NoRelationUpTo(max_len=max_len, checked_words=total,
                          certificate_depth=cert)


def _is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeClassReport:
    exponent: int
    p: int
    connected: bool
    asserted: bool      # hypothesis (connected power) met
    class_sizes: tuple
    all_equal: bool
    p_power: bool
    ok: bool


def verify_prime_class_sizes(machine, m,
                             budget=DEFAULT_POWER_BUDGET) -> PrimeClassReport:
    """For a reversible machine with a prime number of states, report the
    Nerode class sizes of the m-th power; when that power is connected
    they must be equal and a power of p.  Disconnected powers produce an
    exploratory (non-asserted) report."""
    if not machine.is_reversible():
        raise PreconditionError("class-size check needs a reversible machine")
    p = machine.n_states
    if not _is_prime(p):
        raise PreconditionError("state count %d is not prime" % p)
    connected = power_components(machine, m, budget).connected
    part = nerode_partition(machine.power(m, budget))
    sizes = tuple(np.bincount(part.block_of).tolist())
    all_equal = len(set(sizes)) == 1
    common = sizes[0]
    p_power = common > 0
    while p_power and common > 1:
        if common % p:
            p_power = False
        common //= p
    ok = all_equal and p_power
    return PrimeClassReport(exponent=m, p=p, connected=connected,
                            asserted=connected, class_sizes=sizes,
                            all_equal=all_equal, p_power=p_power, ok=ok)
