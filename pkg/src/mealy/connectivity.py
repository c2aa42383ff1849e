"""Connectivity of power automata and the connection degree.

The states of the n-th power are length-n state words; the transition
action of letters connects them.  For reversible machines the pattern of
connected components across powers separates finite semigroups from free
ones, so this module certifies both sides: a connected power plus the
first disconnected one, or a lower bound when no power disconnects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from . import tables
from .machine import BudgetError, DEFAULT_POWER_BUDGET, PreconditionError


class UnionFind:
    """Plain disjoint sets with path compression, for machine-sized graphs."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.n_components = n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.n_components -= 1


@dataclass(frozen=True)
class ComponentReport:
    exponent: int
    n_components: int
    sizes: tuple            # ordered like representatives
    representatives: tuple  # one state word per component, smallest first
    connected: bool


def components(machine) -> ComponentReport:
    """Weak components of the machine itself, by union-find over the
    (state, letter) transition edges."""
    uf = UnionFind(machine.n_states)
    for i in range(machine.n_letters):
        row = machine.delta[i].tolist()
        for x in range(machine.n_states):
            uf.union(x, row[x])
    roots = [uf.find(x) for x in range(machine.n_states)]
    reps = sorted(set(roots))
    sizes = tuple(roots.count(r) for r in reps)
    return ComponentReport(
        exponent=1,
        n_components=len(reps),
        sizes=sizes,
        representatives=tuple((r,) for r in reps),
        connected=len(reps) == 1,
    )


def _power_labels(machine, n, budget, connection="weak"):
    size = machine.n_states ** n
    if size > budget:
        raise BudgetError(
            "power %d has %d words (budget %d)" % (n, size, budget),
            required=size, budget=budget)
    t_n, _ = tables.level_tables(machine.delta, machine.rho, n)
    rows = np.tile(np.arange(size), machine.n_letters)
    cols = t_n.reshape(-1)
    graph = csr_matrix(
        (np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(size, size))
    _, labels = _cc(graph, directed=True, connection=connection)
    return labels


def power_components(machine, n, budget=DEFAULT_POWER_BUDGET,
                     connection="weak") -> ComponentReport:
    """Components of the n-th power without materializing the machine;
    words are packed integers throughout."""
    if n < 1:
        raise PreconditionError("power exponent must be >= 1")
    labels = _power_labels(machine, n, budget, connection)
    values, firsts = np.unique(labels, return_index=True)
    order = np.argsort(firsts)
    sizes = np.bincount(labels)
    reps = tuple(tables.unpack(int(firsts[k]), machine.n_states, n) for k in order)
    return ComponentReport(
        exponent=n,
        n_components=len(values),
        sizes=tuple(int(sizes[values[k]]) for k in order),
        representatives=reps,
        connected=len(values) == 1,
    )


@dataclass(frozen=True)
class ConnectionDegree:
    """Finite(n): power n connected (or n == 0) and power n+1 disconnected,
    both carried as certificates.  AtLeast(b): powers 1..b all connected."""

    finite: bool
    value: int
    connected_power: Optional[ComponentReport] = None
    disconnected_power: Optional[ComponentReport] = None

    def __str__(self):
        if self.finite:
            return "Finite(%d)" % self.value
        return "AtLeast(%d)" % self.value


def connection_degree(machine, max_power=16,
                      budget=DEFAULT_POWER_BUDGET) -> ConnectionDegree:
    """Scan powers upward for the first disconnected one.

    Once a power disconnects, all higher powers do too, so the scan can
    stop at the first hit.  A machine disconnected at power 1 has degree
    0; a scan that never disconnects reports only a lower bound.
    """
    previous = None
    for m in range(1, max_power + 1):
        report = power_components(machine, m, budget=budget)
        if not report.connected:
            return ConnectionDegree(
                finite=True, value=m - 1,
                connected_power=previous, disconnected_power=report)
        previous = report
    return ConnectionDegree(finite=False, value=max_power,
                            connected_power=previous)


@dataclass(frozen=True)
class GrowthReport:
    ok: bool
    degree: int
    sizes_by_exponent: dict


def verify_component_growth(machine, degree=None, extra=3,
                            budget=DEFAULT_POWER_BUDGET) -> GrowthReport:
    """For a reversible two-state machine with finite connection degree n,
    every component of every power m >= n has size exactly 2^n; check the
    powers n..n+extra."""
    if machine.n_states != 2:
        raise PreconditionError("component growth law applies to two-state machines")
    if not machine.is_reversible():
        raise PreconditionError("component growth law needs a reversible machine")
    if degree is None:
        found = connection_degree(machine, budget=budget)
        if not found.finite:
            raise PreconditionError("no disconnected power found up to the scan bound")
        degree = found.value
    expected = 2 ** degree
    sizes = {}
    ok = True
    for m in range(max(degree, 1), degree + extra + 1):
        report = power_components(machine, m, budget=budget)
        sizes[m] = report.sizes
        if any(s != expected for s in report.sizes):
            ok = False
    return GrowthReport(ok=ok, degree=degree, sizes_by_exponent=sizes)
