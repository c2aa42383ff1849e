"""Power connectivity and the connection degree."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from mealy import (
    ALESHIN,
    BABY,
    CYC,
    SIX,
    SWAP,
    TRIV,
    BudgetError,
    MealyMachine,
    components,
    connection_degree,
    power_components,
    verify_component_growth,
)
from strategies import machines, random_machines


def test_components_of_fixtures():
    for m in (TRIV, ALESHIN, BABY, SIX, SWAP, CYC):
        assert components(m).connected


def test_disconnected_power_one():
    # two fixed states: already disconnected before any powering
    m = MealyMachine(("x", "y"), ("a",), [[0, 1]], [[0], [0]])
    report = components(m)
    assert report.n_components == 2
    deg = connection_degree(m)
    assert deg.finite and deg.value == 0
    assert deg.connected_power is None
    assert deg.disconnected_power.exponent == 1


def test_swap_degree_frozen():
    deg = connection_degree(SWAP)
    assert str(deg) == "Finite(1)"
    assert deg.connected_power.exponent == 1
    split = deg.disconnected_power
    assert split.exponent == 2
    # xx,yy on one side, xy,yx on the other
    assert split.sizes == (2, 2)
    assert split.representatives == ((0, 0), (0, 1))


def test_baby_degree_frozen():
    deg = connection_degree(BABY)
    assert str(deg) == "Finite(1)"
    split = deg.disconnected_power
    assert split.exponent == 2
    assert split.sizes == (3, 6)
    assert split.representatives[0] == (0, 0)
    # the small component is exactly the diagonal words
    labels = {w: k for k, w in enumerate(split.representatives)}
    assert oracles.power_component_sizes(BABY, 2) == (3, 6)


def test_dual_aleshin_all_powers_connected():
    deg = connection_degree(ALESHIN.dual(), max_power=8)
    assert not deg.finite
    assert deg.value == 8
    assert str(deg) == "AtLeast(8)"
    assert deg.connected_power.exponent == 8
    assert deg.disconnected_power is None


def test_cyc_all_powers_connected():
    deg = connection_degree(CYC, max_power=10)
    assert not deg.finite and deg.value == 10


def test_power_components_match_oracle_on_fixtures():
    for m in (ALESHIN, BABY, SWAP, CYC):
        for n in (1, 2, 3):
            report = power_components(m, n)
            assert tuple(sorted(report.sizes)) == oracles.power_component_sizes(m, n)
            assert sum(report.sizes) == m.n_states ** n
            assert len(report.representatives) == report.n_components


@settings(max_examples=120, deadline=None)
@given(machines(max_states=4, max_letters=3), st.integers(1, 3))
def test_power_components_match_oracle(machine, n):
    report = power_components(machine, n)
    assert tuple(sorted(report.sizes)) == oracles.power_component_sizes(machine, n)
    assert report.connected == (report.n_components == 1)


def test_random_degree_matches_oracle():
    for machine in random_machines(seed=5, count=120, max_states=3, max_letters=3):
        deg = connection_degree(machine, max_power=4)
        slow = oracles.connection_degree(machine, max_power=4)
        if deg.finite:
            assert deg.value == slow
        else:
            assert slow is None


def test_monotone_once_disconnected():
    # whenever some power disconnects, all larger scanned powers do too
    for machine in random_machines(seed=17, count=60, max_states=3, max_letters=2):
        seen_split = False
        for n in range(1, 5):
            connected = power_components(machine, n).connected
            if seen_split:
                assert not connected
            seen_split = seen_split or not connected


def test_growth_law_on_swap_and_baby():
    # SWAP has degree 1: every component of powers 1..4 has 2 states
    report = verify_component_growth(SWAP, extra=3)
    assert report.ok and report.degree == 1
    assert set(report.sizes_by_exponent) == {1, 2, 3, 4}
    for sizes in report.sizes_by_exponent.values():
        assert all(s == 2 for s in sizes)
    # BABY is three-state, outside the law's domain
    from mealy import PreconditionError

    with pytest.raises(PreconditionError):
        verify_component_growth(BABY)


def test_budget_is_enforced():
    with pytest.raises(BudgetError):
        power_components(SIX, 9, budget=10 ** 6)
    # dual(ALESHIN) never disconnects, so the scan must reach power 17,
    # which is over this budget (2^17 > 10^5 >= 2^16)
    with pytest.raises(BudgetError):
        connection_degree(ALESHIN.dual(), max_power=17, budget=10 ** 5)
