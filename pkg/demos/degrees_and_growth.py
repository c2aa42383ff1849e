#!/usr/bin/env python3
"""Connection degrees: scan powers until one disconnects, then watch the
component sizes lock to 2^n."""

from mealy import (ALESHIN, BABY, SWAP, connection_degree, power_components,
                   verify_component_growth)


def main():
    for name, m in [("SWAP", SWAP), ("BABY", BABY),
                    ("dual(ALESHIN)", ALESHIN.dual())]:
        deg = connection_degree(m, max_power=8)
        print("%-14s degree %s" % (name, deg))
        if deg.finite:
            d = deg.disconnected_power
            print("    power %d splits into sizes %s"
                  % (d.exponent, list(d.sizes)))

    # once a two-state machine disconnects, every component of every later
    # power has size exactly 2^degree
    deg = connection_degree(SWAP).value
    report = verify_component_growth(SWAP, deg)
    print("\nSWAP growth law (degree %d):" % deg)
    for exponent, sizes in sorted(report.sizes_by_exponent.items()):
        print("    power %d component sizes %s" % (exponent, list(sizes)))
    print("    all equal to 2^%d: %s" % (deg, report.ok))

    # the free side never disconnects; each power is one orbit
    for n in range(1, 6):
        rep = power_components(ALESHIN.dual(), n)
        print("dual(ALESHIN) power %d: %d component(s) of %d words"
              % (n, rep.n_components, sum(rep.sizes)))


if __name__ == "__main__":
    main()
