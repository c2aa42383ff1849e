#!/usr/bin/env python3
"""Enumerate whole families, classify them, and count the bireversible
2-letter machines at several sizes."""

from mealy import (FamilySpec, classify_family, enumerate_family,
                   semigroup_order, tensor_closure, serialize_machine, SWAP,
                   two_letter_bireversible_census)


def main():
    # the 16 invertible-reversible 2x2 machines, fully classified
    spec = FamilySpec(2, 2, frozenset({"invertible", "reversible"}))
    report = classify_family(spec, analyses=("md_trivial", "verdict"),
                             max_power=8)
    print("2x2 invertible-reversible family:")
    print("    verdicts:", report.summary["verdicts"])
    print("    md-trivial:", report.summary["md_trivial"])

    # the finite side admits a tensor closure; SWAP's has a two-step letter
    closed = tensor_closure(SWAP)
    print("\ntensor closure of SWAP:")
    print(serialize_machine(closed))
    print("dual semigroup order:", semigroup_order(SWAP.dual()))

    # representatives up to renaming come straight off the enumerator
    reps = list(enumerate_family(
        FamilySpec(2, 2, frozenset({"bireversible"}), mode="up-to-iso")))
    print("bireversible 2x2 representatives: %d" % len(reps))

    # counts race through the structured fast path
    for n in range(2, 6):
        rep = two_letter_bireversible_census(n)
        print("n=%d: %s  (%.2f s)" % (n, rep.counts, rep.elapsed))


if __name__ == "__main__":
    main()
