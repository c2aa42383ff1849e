#!/usr/bin/env python3
"""Decide finite-or-free for two-state reversible machines and replay the
evidence independently."""

from mealy import (ALESHIN, CYC, SIX, SWAP, check_verdict,
                   decide_finite_group_2letter, decide_two_state_reversible,
                   free_relation_search)
from mealy.decide import NoRelationUpTo, Relation


def show(name, machine, verdict):
    print("%-14s -> %s" % (name, verdict.kind), end="")
    if verdict.order is not None:
        print(" (order %d)" % verdict.order, end="")
    print()
    for ev in verdict.to_dict()["evidence"]:
        print("    evidence: %s" % ev["type"])
    replay = check_verdict(machine, verdict)
    print("    independent replay: %s" % ("ok" if replay.ok else "FAILED"))


def main():
    for name, m in [("SWAP", SWAP), ("CYC", CYC),
                    ("dual(ALESHIN)", ALESHIN.dual())]:
        show(name, m, decide_two_state_reversible(m, max_power=8))

    # SIX has six states but two letters; the decision runs on its dual
    show("SIX", SIX, decide_finite_group_2letter(SIX))

    # relation search is the ground-level view of the same dichotomy
    print()
    for name, m, max_len in [("SWAP", SWAP, 4),
                             ("dual(ALESHIN)", ALESHIN.dual(), 6)]:
        res = free_relation_search(m, max_len)
        if isinstance(res, Relation):
            print("%-14s relation: %s = %s" % (name, res.u, res.v))
        else:
            assert isinstance(res, NoRelationUpTo)
            print("%-14s no relation among %d words up to length %d"
                  % (name, res.checked_words, res.max_len))


if __name__ == "__main__":
    main()
