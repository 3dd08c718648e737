import hypothesis
import hypothesis.strategies as strat
import numpy as np
import pytest

from semichu.boolean_domain import (BAR, BOT, BULLET, LEQ, MEET, N, XNOR, Y, BoolVal, bool_bar,
                                    bool_leq, bool_meet, bool_meet_all, bullet, format_value,
                                    join_values, meet_reduce)

values = strat.sampled_from([BOT, Y, N])


@hypothesis.given(values, values)
def test_meet_commutative(u, v):
    assert bool_meet(u, v) == bool_meet(v, u)


@hypothesis.given(values, values, values)
def test_meet_associative(u, v, w):
    assert bool_meet(bool_meet(u, v), w) == bool_meet(u, bool_meet(v, w))


@hypothesis.given(values)
def test_meet_idempotent(u):
    assert bool_meet(u, u) == u


@hypothesis.given(values, values)
def test_order_agrees_with_meet(u, v):
    assert bool_leq(u, v) == (bool_meet(u, v) == u)


@hypothesis.given(values, values, values)
def test_bullet_associative(u, v, w):
    assert bullet(bullet(u, v), w) == bullet(u, bullet(v, w))


@hypothesis.given(values, values)
def test_bullet_commutative(u, v):
    assert bullet(u, v) == bullet(v, u)


@hypothesis.given(values)
def test_bullet_unit_and_absorbing(u):
    assert bullet(u, Y) == u
    assert bullet(u, N) == N


@hypothesis.given(values)
def test_bar_is_involution(u):
    assert bool_bar(bool_bar(u)) == u


@hypothesis.given(values, values)
def test_bar_preserves_meets(u, v):
    assert bool_bar(bool_meet(u, v)) == bool_meet(bool_bar(u), bool_bar(v))


def test_bullet_table():
    assert bullet(BOT, BOT) == BOT
    assert bullet(BOT, Y) == BOT
    assert bullet(Y, Y) == Y
    assert BULLET.dtype == np.int8


def test_xnor_table():
    assert XNOR[Y, Y] == Y and XNOR[N, N] == Y
    assert XNOR[Y, N] == N and XNOR[N, Y] == N
    assert (XNOR[BOT] == BOT).all() and (XNOR[:, BOT] == BOT).all()


def test_lookup_tables_consistent():
    for u in (BOT, Y, N):
        for v in (BOT, Y, N):
            assert LEQ[u, v] == (MEET[u, v] == u)
    assert list(BAR) == [BOT, N, Y]


def test_meet_all_and_reduce():
    assert bool_meet_all([Y, Y]) == Y
    assert bool_meet_all([Y, N]) == BOT
    with pytest.raises(ValueError):
        bool_meet_all([])
    stack = np.array([[Y, N, Y], [Y, Y, BOT]], dtype=np.int8)
    assert list(meet_reduce(stack)) == [Y, BOT, BOT]
    assert list(meet_reduce(stack, axis=1)) == [BOT, BOT]


def test_join_of_chain():
    assert join_values([BOT, Y]) == Y
    assert join_values([]) == BOT
    with pytest.raises(ValueError):
        join_values([Y, N])


def test_symbols_and_parse():
    assert format_value(BOT) == 'bot'
    assert format_value(N) == 'N'
    assert BoolVal.parse('y') is BoolVal.Y
    assert BoolVal.parse('BOT') is BoolVal.BOT
    with pytest.raises(ValueError):
        BoolVal.parse('maybe')
