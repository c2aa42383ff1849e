#!/usr/bin/env python3
"""Load the shelf machines, poke at their structure, round-trip a file."""

from mealy import (ALESHIN, BABY, SIX, SWAP, delta_apply, letter_word,
                   minimize, parse_machine, rho_apply, serialize_machine,
                   state_word)


def describe(name, m):
    flags = []
    if m.is_invertible():
        flags.append("invertible")
    if m.is_reversible():
        flags.append("reversible")
    if m.is_bireversible():
        flags.append("bireversible")
    print("%-8s %d states, %d letters  %s" %
          (name, m.n_states, m.n_letters, " ".join(flags) or "-"))


def main():
    for name, m in [("ALESHIN", ALESHIN), ("BABY", BABY), ("SIX", SIX),
                    ("SWAP", SWAP)]:
        describe(name, m)

    # the action of a state on a letter word: output the production of the
    # head, hand the tail to the successor state
    x = state_word(ALESHIN, "x")
    aba = letter_word(ALESHIN, "aba")
    print("\nALESHIN state x on 'aba':",
          "".join(ALESHIN.letters[i] for i in rho_apply(ALESHIN, x, aba)))
    print("state moved along 'aba':",
          ALESHIN.states[delta_apply(ALESHIN, aba, x)[0]])

    # SWAP's two states behave identically, so it minimizes to one state
    small = minimize(SWAP)
    print("\nminimize(SWAP): %d state(s)" % small.n_states)

    # machine documents round-trip exactly
    text = serialize_machine(ALESHIN)
    assert serialize_machine(parse_machine(text)) == text
    print("\nserialized ALESHIN:\n" + text)


if __name__ == "__main__":
    main()
