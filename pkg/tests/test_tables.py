"""Packed power tables against direct word computation."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from mealy import ALESHIN, SIX
from mealy.tables import all_level_tables, level_tables, pack, unpack


def test_pack_unpack_round_trip():
    for n_states in (2, 3, 5):
        for length in (1, 2, 3):
            for word in itertools.product(range(n_states), repeat=length):
                assert unpack(pack(word, n_states), n_states, length) == word


def test_pack_is_msb_first():
    assert pack((1, 0, 2), 3) == 1 * 9 + 0 * 3 + 2


def test_level_tables_match_word_moves():
    for machine in (ALESHIN, SIX):
        for n in (1, 2, 3):
            t_n, f_n = level_tables(machine.delta, machine.rho, n)
            for word in itertools.product(range(machine.n_states), repeat=n):
                w = pack(word, machine.n_states)
                for i in range(machine.n_letters):
                    moved = oracles.move_word(machine, i, word)
                    assert t_n[i, w] == pack(moved, machine.n_states)
                    out = oracles.act_word_on_word(machine, word, (i,))
                    assert f_n[i, w] == out[0]


@settings(max_examples=40)
@given(st.integers(1, 4))
def test_all_levels_agree_with_single_levels(n):
    levels = all_level_tables(ALESHIN.delta, ALESHIN.rho, n)
    assert len(levels) == n
    for k, (t_k, f_k) in enumerate(levels, start=1):
        t_ref, f_ref = level_tables(ALESHIN.delta, ALESHIN.rho, k)
        assert (t_k == t_ref).all()
        assert (f_k == f_ref).all()
