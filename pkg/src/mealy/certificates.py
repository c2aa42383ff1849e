"""Independent validation of verdict evidence.

Deliberately naive replays: explicit word tuples, dict-based union-find,
and signature dictionaries built from rho_apply / delta_apply.  None of
the packed-table machinery of the main algorithms is used, so a bug there
cannot also hide here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .machine import rho_apply, delta_apply

DEFAULT_BRUTE_POWER_CAP = 12


def brute_component_sizes(machine, n):
    """Component sizes of the n-th power over explicit word tuples."""
    parent = {}

    def find(w):
        root = w
        while parent[root] != root:
            root = parent[root]
        while parent[w] != root:
            parent[w], w = root, parent[w]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    words = list(itertools.product(range(machine.n_states), repeat=n))
    for w in words:
        parent.setdefault(w, w)
    for w in words:
        for i in range(machine.n_letters):
            union(w, delta_apply(machine, (i,), w))
    sizes = {}
    for w in words:
        sizes[find(w)] = sizes.get(find(w), 0) + 1
    return sorted(sizes.values())


def _naive_signature_partition(machine, depth):
    """States grouped by their production images on all words of length
    <= depth."""
    inputs = [s for l in range(1, depth + 1)
              for s in itertools.product(range(machine.n_letters), repeat=l)]
    sig = {}
    for x in range(machine.n_states):
        key = tuple(rho_apply(machine, (x,), s) for s in inputs)
        sig.setdefault(key, []).append(x)
    return list(sig.values())


def _naive_minimize(machine):
    """Quotient by the depth-|A| signature partition, rebuilt by hand."""
    from .machine import MealyMachine
    import numpy as np
    groups = _naive_signature_partition(machine, machine.n_states)
    groups.sort(key=min)
    block_of = {}
    for b, grp in enumerate(groups):
        for x in grp:
            block_of[x] = b
    reps = [min(grp) for grp in groups]
    delta = np.array([[block_of[int(machine.delta[i, x])] for x in reps]
                      for i in range(machine.n_letters)])
    rho = np.array([[int(machine.rho[x, i])
                     for i in range(machine.n_letters)] for x in reps])
    states = tuple(machine.states[x] for x in reps)
    return MealyMachine(states=states, letters=machine.letters,
                        delta=delta, rho=rho)


def replay_md_reduction(machine, dual_first=False):
    """Size trail of alternating naive minimization, primal and dual.

    Sides are retried in preference order after every productive step,
    matching the main reducer's scheduling."""
    steps = []
    current = machine
    sides = ("dual", "primal") if dual_first else ("primal", "dual")
    while True:
        for side in sides:
            before = (current.n_states, current.n_letters)
            if side == "primal":
                reduced = _naive_minimize(current)
            else:
                reduced = _naive_minimize(current.dual()).dual()
            after = (reduced.n_states, reduced.n_letters)
            if after != before:
                steps.append((side, before, after))
                current = reduced
                break
        else:
            return steps, current


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    details: tuple

    def __bool__(self):
        return self.ok


def check_relation(machine, u, v, depth):
    """Bounded replay: the two words act identically on every input of
    length <= depth + 1."""
    for l in range(1, depth + 2):
        for s in itertools.product(range(machine.n_letters), repeat=l):
            if rho_apply(machine, tuple(u), s) != rho_apply(machine, tuple(v), s):
                return False
    return True


def check_no_relation(machine, max_len, depth_cap=10):
    """All nonempty words up to max_len are pairwise distinct as actions:
    certified by an input depth at which signatures are injective."""
    words = [w for l in range(1, max_len + 1)
             for w in itertools.product(range(machine.n_states), repeat=l)]
    for depth in range(1, depth_cap + 1):
        inputs = list(itertools.product(range(machine.n_letters),
                                        repeat=depth))
        sig = {}
        clash = False
        for w in words:
            key = tuple(rho_apply(machine, w, s) for s in inputs)
            if key in sig:
                clash = True
                break
            sig[key] = w
        if not clash:
            return True
    return False


def _check_enumeration(machine, ev):
    """Validate a Finite enumeration certificate: class count, halt rule,
    and stability of the depth-d signature partition."""
    if ev.get("status") != "Finite":
        return True, "enumeration evidence is a budget status; nothing to check"
    d = ev["certificate_depth"]
    halt = ev["halt_length"]
    order = ev["order"]

    def classes_at(depth):
        inputs = [s for l in range(1, depth + 1)
                  for s in itertools.product(range(machine.n_letters),
                                             repeat=l)]
        sig = {}
        for l in range(1, halt + 1):
            for w in itertools.product(range(machine.n_states), repeat=l):
                key = tuple(rho_apply(machine, w, s) for s in inputs)
                sig.setdefault(key, []).append(w)
        return sig

    at_d = classes_at(d)
    if len(at_d) != len(classes_at(d + 1)):
        return False, "signature partition not stable at claimed depth"
    witnesses = [min((len(w), w) for w in grp)[1] for grp in at_d.values()]
    if sum(1 for w in witnesses if len(w) < halt) != order:
        return False, "class count disagrees with claimed order"
    if any(len(w) == halt for w in witnesses):
        return False, "halt length still produced a new class"
    return True, "enumeration: %d classes, stable at depth %d" % (order, d)


def check_verdict(machine, verdict, brute_power_cap=DEFAULT_BRUTE_POWER_CAP):
    """Replay every piece of evidence attached to a verdict."""
    evidence = verdict.to_dict()["evidence"] if hasattr(verdict, "to_dict") \
        else list(verdict["evidence"])
    target = machine
    details = []
    ok = True
    for ev in evidence:
        kind = ev.get("type")
        if kind == "dual_transfer":
            target = machine.dual()
            details.append("evidence below replayed on the dual")
        elif kind == "disconnected_power":
            sizes = brute_component_sizes(target, ev["exponent"])
            good = (len(sizes) == ev["n_components"]
                    and sizes == sorted(ev["component_sizes"]))
            ok &= good
            details.append("power %d components %s: %s"
                           % (ev["exponent"], sizes,
                              "confirmed" if good else "MISMATCH"))
        elif kind == "connected_powers":
            bound = min(ev["up_to"], brute_power_cap)
            good = all(len(brute_component_sizes(target, e)) == 1
                       for e in range(1, bound + 1))
            ok &= good
            details.append("powers 1..%d connected: %s"
                           % (bound, "confirmed" if good else "MISMATCH"))
        elif kind == "md_reduction":
            steps, final = replay_md_reduction(target, ev["dual_first"])
            got = [[s, list(b), list(a)] for s, b, a in steps]
            want = [[s["side"], s["before"], s["after"]]
                    for s in ev["steps"]]
            trivial = (final.n_states, final.n_letters) == (1, 1)
            good = got == want and trivial == ev["trivial"] \
                and [final.n_states, final.n_letters] == ev["final"]
            ok &= good
            details.append("md-reduction replay: %s"
                           % ("confirmed" if good else "MISMATCH"))
        elif kind == "enumeration":
            good, msg = _check_enumeration(target, ev)
            ok &= good
            details.append(msg)
        elif kind == "relation":
            good = check_relation(target, ev["u"], ev["v"], ev["depth"])
            ok &= good
            details.append("relation replay: %s"
                           % ("confirmed" if good else "MISMATCH"))
        else:
            ok = False
            details.append("unknown evidence type %r" % (kind,))
    return CheckResult(ok=bool(ok), details=tuple(details))
