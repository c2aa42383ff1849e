#!/usr/bin/env python3
"""Portraits: the permutation trees behind state actions, and the square
identities the homogeneous shapes satisfy."""

import random

from mealy import (SIX, Portrait, build_j_tau, classify_homogeneity,
                   identity_portrait, portrait_of, portrait_product)
from mealy.portrait import render_text

ID = (0, 1)
SIGMA = (1, 0)


def main():
    p = portrait_of(SIX, "1", 3)
    print("portrait of SIX state 1, depth 3:")
    print(render_text(p, SIX.letters))
    print("homogeneity:", classify_homogeneity(p).kind)

    # products of portraits follow concatenation of the state words
    q = portrait_of(SIX, "2", 3)
    pq = portrait_product(p, q)
    assert pq == portrait_of(SIX, ("1", "2"), 3)
    print("\nportrait('1') * portrait('2') root:", pq.root)

    # homogeneous portraits square to the identity
    rng = random.Random(7)
    depth = 5
    labels = []
    for level in range(depth):
        labels.extend([rng.choice((ID, SIGMA))] * (2 ** level))
    h = Portrait(2, depth, tuple(labels))
    print("\nrandom homogeneous portrait squared is the identity:",
          portrait_product(h, h) == identity_portrait(2, depth))

    # extending with unequal taus under a swap root breaks the square
    j = Portrait(2, 2, (SIGMA, ID, ID))
    for taus in [(ID, ID), (SIGMA, SIGMA), (ID, SIGMA)]:
        ext = build_j_tau(j, taus)
        sq = portrait_product(ext, ext)
        print("taus %s -> square is identity: %s"
              % (taus, sq == identity_portrait(2, ext.depth)))


if __name__ == "__main__":
    main()
