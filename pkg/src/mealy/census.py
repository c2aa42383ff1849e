"""Family enumeration, canonical forms up to renaming, and census reports.

Machines are compared up to simultaneous state and letter renaming via a
canonical key: the lexicographically smallest serialized table over all
renamings.  Families are generated structurally (permutation rows for
reversible / invertible universes) with cheap filters applied before
canonicalization.
"""

from __future__ import annotations

import csv
import io as _io
import itertools
import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .machine import (MealyMachine, MealyError, PreconditionError,
                      BudgetError, DEFAULT_POWER_BUDGET)
from .minimize import is_minimal
from .connectivity import components, connection_degree
from .mdreduce import is_md_trivial

KNOWN_FILTERS = ("invertible", "reversible", "bireversible", "connected",
                 "minimal")
MODES = ("labeled", "up-to-iso")
DEFAULT_UNIVERSE_BUDGET = 50_000_000
_CANON_LIMIT = 2_000_000  # state perms x letter perms


@dataclass(frozen=True)
class FamilySpec:
    n_states: int
    n_letters: int
    filters: frozenset = frozenset()
    mode: str = "labeled"

    def __post_init__(self):
        if self.n_states < 1 or self.n_letters < 1:
            raise PreconditionError("sizes must be >= 1")
        filters = frozenset(self.filters)
        for f in filters:
            if f not in KNOWN_FILTERS:
                raise PreconditionError("unknown filter %r" % (f,))
        if "bireversible" in filters:
            filters = filters | {"invertible", "reversible"}
        object.__setattr__(self, "filters", filters)
        if self.mode not in MODES:
            raise PreconditionError("unknown mode %r" % (self.mode,))


def serialize_table(machine) -> bytes:
    """Name-independent encoding of the transition tables."""
    return (bytes((machine.n_states, machine.n_letters))
            + machine.delta.astype(np.uint8).tobytes()
            + machine.rho.astype(np.uint8).tobytes())


def _iter_renamings(n_states, n_letters):
    for sp in itertools.permutations(range(n_states)):
        spa = np.array(sp)
        for lp in itertools.permutations(range(n_letters)):
            yield spa, np.array(lp)


def _permuted_tables(delta, rho, sp, lp):
    delta_new = np.empty_like(delta)
    rho_new = np.empty_like(rho)
    delta_new[lp[:, None], sp[None, :]] = sp[delta]
    rho_new[sp[:, None], lp[None, :]] = lp[rho]
    return delta_new, rho_new


def _check_canon_size(n_states, n_letters):
    if n_states > 255 or n_letters > 255:
        raise MealyError("tables too large for byte serialization")
    if math.factorial(n_states) * math.factorial(n_letters) > _CANON_LIMIT:
        raise MealyError("canonicalization size limit exceeded at %d states, "
                         "%d letters" % (n_states, n_letters))


def canonical_form(machine) -> bytes:
    """Minimum serialized table over all state x letter renamings; equal
    keys decide isomorphism."""
    _check_canon_size(machine.n_states, machine.n_letters)
    head = bytes((machine.n_states, machine.n_letters))
    best = None
    for sp, lp in _iter_renamings(machine.n_states, machine.n_letters):
        d, r = _permuted_tables(machine.delta, machine.rho, sp, lp)
        cand = d.astype(np.uint8).tobytes() + r.astype(np.uint8).tobytes()
        if best is None or cand < best:
            best = cand
    return head + best


def canonical_machine(machine) -> MealyMachine:
    """The renaming of the machine realizing its canonical key."""
    _check_canon_size(machine.n_states, machine.n_letters)
    best = None
    best_perms = None
    for sp, lp in _iter_renamings(machine.n_states, machine.n_letters):
        d, r = _permuted_tables(machine.delta, machine.rho, sp, lp)
        cand = d.astype(np.uint8).tobytes() + r.astype(np.uint8).tobytes()
        if best is None or cand < best:
            best = cand
            best_perms = (tuple(sp), tuple(lp))
    return machine.permuted(best_perms[0], best_perms[1])


def isomorphic(a, b) -> bool:
    if (a.n_states, a.n_letters) != (b.n_states, b.n_letters):
        return False
    return canonical_form(a) == canonical_form(b)


def _universe_size(spec) -> int:
    ns, nl = spec.n_states, spec.n_letters
    d = (math.factorial(ns) ** nl if "reversible" in spec.filters
         else ns ** (ns * nl))
    r = (math.factorial(nl) ** ns if "invertible" in spec.filters
         else nl ** (ns * nl))
    return d * r


def _default_names(n_states, n_letters):
    if n_states > 10 or n_letters > 26:
        raise MealyError("no default naming beyond 10 states / 26 letters")
    states = tuple(str(x) for x in range(n_states))
    letters = tuple("abcdefghijklmnopqrstuvwxyz"[i] for i in range(n_letters))
    return states, letters


def enumerate_family(spec, budget=DEFAULT_UNIVERSE_BUDGET):
    """Stream every machine of the family exactly once.

    In up-to-iso mode only machines equal to their own canonical form are
    emitted (generate and reject).
    """
    size = _universe_size(spec)
    if size > budget:
        raise BudgetError("universe has %d candidates (budget %d)"
                          % (size, budget), required=size, budget=budget)
    ns, nl = spec.n_states, spec.n_letters
    states, letters = _default_names(ns, nl)
    if "reversible" in spec.filters:
        delta_choices = itertools.product(
            itertools.permutations(range(ns)), repeat=nl)
    else:
        delta_choices = (
            tuple(flat[x * ns:(x + 1) * ns] for x in range(nl))
            for flat in itertools.product(range(ns), repeat=ns * nl))
    check_bir = "bireversible" in spec.filters
    check_conn = "connected" in spec.filters
    check_min = "minimal" in spec.filters
    for delta in delta_choices:
        if "invertible" in spec.filters:
            rho_choices = itertools.product(
                itertools.permutations(range(nl)), repeat=ns)
        else:
            rho_choices = (
                tuple(flat[x * nl:(x + 1) * nl] for x in range(ns))
                for flat in itertools.product(range(nl), repeat=ns * nl))
        for rho in rho_choices:
            m = MealyMachine(states=states, letters=letters,
                             delta=np.array(delta), rho=np.array(rho))
            if check_bir and not m.is_bireversible():
                continue
            if check_conn and not components(m).connected:
                continue
            if check_min and not is_minimal(m):
                continue
            if spec.mode == "up-to-iso" and \
                    serialize_table(m) != canonical_form(m):
                continue
            yield m


@dataclass(frozen=True)
class CensusRow:
    key: str            # canonical key, hex
    n_states: int
    n_letters: int
    md_trivial: Optional[bool]
    verdict: Optional[str]
    degree: Optional[str]
    order: Optional[str]


@dataclass
class CensusReport:
    spec: FamilySpec
    rows: tuple
    summary: dict
    elapsed: float

    def to_csv(self) -> str:
        buf = _io.StringIO()
        w = csv.writer(buf)
        w.writerow(["key", "n_states", "n_letters", "md_trivial", "verdict",
                    "degree", "order"])
        for r in self.rows:
            w.writerow([r.key, r.n_states, r.n_letters, r.md_trivial,
                        r.verdict, r.degree, r.order])
        return buf.getvalue()

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.summary, **kwargs)


ALL_ANALYSES = ("md_trivial", "verdict", "degree", "order")


def _analyze_one(args):
    (states, letters, delta, rho, analyses, max_power,
     max_elements, max_depth) = args
    m = MealyMachine(states=states, letters=letters,
                     delta=np.array(delta), rho=np.array(rho))
    key = canonical_form(m).hex()
    md = verdict = degree = order = None
    if "md_trivial" in analyses:
        md = is_md_trivial(m)
    if "degree" in analyses:
        # scan only as deep as the word budget affords; the row then
        # carries AtLeast(cap) instead of aborting the whole census
        cap = max_power
        while cap > 1 and m.n_states ** cap > DEFAULT_POWER_BUDGET:
            cap -= 1
        degree = str(connection_degree(m, max_power=cap))
    if "order" in analyses:
        from .semigroup import semigroup_order
        order = str(semigroup_order(m, max_elements=max_elements,
                                    max_depth=max_depth))
    if "verdict" in analyses:
        from .decide import decide_two_state_reversible
        if m.n_states == 2 and m.is_reversible():
            verdict = decide_two_state_reversible(m, max_power=max_power).kind
        else:
            verdict = "n/a"
    return CensusRow(key=key, n_states=m.n_states, n_letters=m.n_letters,
                     md_trivial=md, verdict=verdict, degree=degree,
                     order=order)


def classify_family(spec, analyses=ALL_ANALYSES, jobs=1,
                    budget=DEFAULT_UNIVERSE_BUDGET, max_power=16,
                    max_elements=10_000, max_depth=12,
                    csv_path=None, json_path=None,
                    journal_path=None) -> CensusReport:
    """Run the selected analyses on every family member.

    Deterministic: rows are sorted by canonical key.  A journal file of
    finished keys allows resuming an interrupted run.  Per-machine budget
    exhaustion lands in the row (AtLeast / BudgetExceeded), never aborts.
    """
    t0 = time.monotonic()
    done = set()
    if journal_path:
        try:
            with open(journal_path) as fh:
                done = {line.strip() for line in fh if line.strip()}
        except FileNotFoundError:
            pass
    tasks = []
    skipped = []
    for m in enumerate_family(spec, budget):
        key = canonical_form(m).hex()
        if key in done:
            skipped.append(key)
            continue
        tasks.append((m.states, m.letters, m.delta.tolist(), m.rho.tolist(),
                      tuple(analyses), max_power, max_elements, max_depth))
    if jobs > 1 and len(tasks) > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(_analyze_one, tasks)
    else:
        rows = [_analyze_one(t) for t in tasks]
    if journal_path:
        with open(journal_path, "a") as fh:
            for r in rows:
                fh.write(r.key + "\n")
    rows = tuple(sorted(rows, key=lambda r: r.key))
    verdicts = {}
    md_count = 0
    for r in rows:
        if r.verdict is not None:
            verdicts[r.verdict] = verdicts.get(r.verdict, 0) + 1
        if r.md_trivial:
            md_count += 1
    elapsed = time.monotonic() - t0
    summary = {
        "n_states": spec.n_states,
        "n_letters": spec.n_letters,
        "filters": sorted(spec.filters),
        "mode": spec.mode,
        "total": len(rows) + len(skipped),
        "analyzed": len(rows),
        "resumed_skips": len(skipped),
        "verdicts": verdicts,
        "md_trivial": md_count,
        "elapsed_s": round(elapsed, 3),
    }
    report = CensusReport(spec=spec, rows=rows, summary=summary,
                          elapsed=elapsed)
    if csv_path:
        with open(csv_path, "w") as fh:
            fh.write(report.to_csv())
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(report.to_json(indent=2))
    return report


# -- two-letter bireversible fast path ------------------------------------

@dataclass(frozen=True)
class BireversibleCensusReport:
    n_states: int
    counts: dict        # mode -> count
    matching_3446: tuple
    elapsed: float

    def to_dict(self):
        return {"n_states": self.n_states, "counts": dict(self.counts),
                "matching_3446": list(self.matching_3446),
                "elapsed_s": round(self.elapsed, 3)}


def _bireversible_filter_chunk(dpair, n):
    """dpair: (chunk, 2, n) permutation rows.  Returns (chunk, 2**n) bool:
    which output-row masks (bit x set = state x swaps the two letters)
    leave the inverse machine reversible."""
    chunk = dpair.shape[0]
    n_masks = 1 << n
    masks = np.arange(n_masks, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)  # (masks, n)
    ok = np.ones((chunk, n_masks), dtype=bool)
    for j in range(2):
        # inverse transition row j at state x reads delta row rho_x(j)
        plain = dpair[:, j, :]          # (chunk, n)
        swapped = dpair[:, 1 - j, :]
        e = np.where(bits[None, :, :], swapped[:, None, :], plain[:, None, :])
        ok &= (np.int64(1) << e.astype(np.int64)).sum(axis=2) == n_masks - 1
    return ok


def _pack_keys(deltas, masks, n):
    weights = (np.int64(n) ** np.arange(2 * n - 1, -1, -1)).astype(np.int64)
    flat = deltas.reshape(deltas.shape[0], 2 * n).astype(np.int64)
    return (flat @ weights) * (1 << n) + masks


def _mask_rho(mask, n):
    rho = np.empty((n, 2), dtype=np.int64)
    for x in range(n):
        if (mask >> x) & 1:
            rho[x] = (1, 0)
        else:
            rho[x] = (0, 1)
    return rho


def two_letter_bireversible_census(n_states,
                                   chunk_pairs=20_000,
                                   progress=None) -> BireversibleCensusReport:
    """Count bireversible 2-letter machines with the given state count,
    labeled and under several quotients, flagging any mode that matches
    the 3446 figure."""
    t0 = time.monotonic()
    n = n_states
    if n > 8:
        raise MealyError("fast census supports at most 8 states")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    n_perm = len(perms)
    n_masks = 1 << n
    kept_delta = []
    kept_mask = []
    labeled = 0
    for lo in range(0, n_perm * n_perm, chunk_pairs):
        hi = min(lo + chunk_pairs, n_perm * n_perm)
        idx = np.arange(lo, hi)
        dpair = np.stack([perms[idx // n_perm], perms[idx % n_perm]], axis=1)
        ok = _bireversible_filter_chunk(dpair, n)
        pi, mi = np.nonzero(ok)
        labeled += len(pi)
        kept_delta.append(dpair[pi])
        kept_mask.append(mi.astype(np.int64))
        if progress:
            progress("filter", hi, n_perm * n_perm, labeled)
    deltas = np.concatenate(kept_delta) if kept_delta else \
        np.empty((0, 2, n), dtype=np.int8)
    masks = np.concatenate(kept_mask) if kept_mask else \
        np.empty(0, dtype=np.int64)

    # canonical key: min packed table over all state perms x letter swaps;
    # conjugating an {id, swap} output row by a letter swap fixes it, so
    # only the state perm moves the mask bits
    sp_inv = np.argsort(perms, axis=1).astype(np.int64)
    all_masks = np.arange(n_masks, dtype=np.int64)
    best = _pack_keys(deltas.astype(np.int64), masks, n)
    for k in range(n_perm):
        spi = sp_inv[k]
        sp = perms[k].astype(np.int8)
        bit_tab = (((all_masks[:, None] >> spi[None, :]) & 1)
                   << np.arange(n)[None, :]).sum(axis=1)
        m2 = bit_tab[masks]
        base = deltas[:, :, spi]
        for flip in (False, True):
            d2 = sp[base[:, ::-1, :]] if flip else sp[base]
            np.minimum(best, _pack_keys(d2.astype(np.int64), m2, n), out=best)
        if progress and (k + 1) % 120 == 0:
            progress("canon", k + 1, n_perm, labeled)

    uniq_keys, rep_idx = np.unique(best, return_index=True)
    up_to_iso = len(uniq_keys)
    states, letters = _default_names(n, 2)
    conn = 0
    mini = 0
    for ridx in rep_idx.tolist():
        delta = deltas[ridx].astype(np.int64)
        m = MealyMachine(states=states, letters=letters, delta=delta,
                         rho=_mask_rho(int(masks[ridx]), n))
        if components(m).connected:
            conn += 1
        if is_minimal(m):
            mini += 1
    counts = {
        "labeled": int(labeled),
        "up_to_iso": int(up_to_iso),
        "up_to_iso_connected": int(conn),
        "up_to_iso_minimal": int(mini),
    }
    matching = tuple(k for k, v in counts.items() if v == 3446)
    return BireversibleCensusReport(n_states=n, counts=counts,
                                    matching_3446=matching,
                                    elapsed=time.monotonic() - t0)
