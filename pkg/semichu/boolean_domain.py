# Semichu - Boolean Domain
#
# The three-valued domain {Y, N, ⊥} with its meet law, the • monoid and
# the bar involution. Values are stored as small ints so whole tables can
# be combined with numpy lookups.

from enum import IntEnum
from typing import Iterable

import numpy as np


class BoolVal(IntEnum):
    """Element of the boolean domain"""
    BOT = 0
    Y = 1
    N = 2

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def parse(cls, text: str) -> 'BoolVal':
        key = text.strip().upper()
        for value, symbol in _SYMBOLS.items():
            if key in (symbol.upper(), value.name):
                return value
        raise ValueError(f"not a boolean-domain value: {text!r}")


_SYMBOLS = {BoolVal.BOT: 'bot', BoolVal.Y: 'Y', BoolVal.N: 'N'}

BOT, Y, N = int(BoolVal.BOT), int(BoolVal.Y), int(BoolVal.N)

# Lookup tables indexed by the int codes
MEET = np.array([[BOT, BOT, BOT],
                 [BOT, Y, BOT],
                 [BOT, BOT, N]], dtype=np.int8)

LEQ = np.array([[True, True, True],
                [False, True, False],
                [False, False, True]], dtype=bool)

BAR = np.array([BOT, N, Y], dtype=np.int8)

# x•Y = x, x•N = N, ⊥•⊥ = ⊥
BULLET = np.array([[BOT, BOT, N],
                   [BOT, Y, N],
                   [N, N, N]], dtype=np.int8)

# Equivalence test used to build maximal tables outside the NN discipline
XNOR = np.array([[BOT, BOT, BOT],
                 [BOT, Y, N],
                 [BOT, N, Y]], dtype=np.int8)

# -1 marks the missing join of Y and N
JOIN = np.array([[BOT, Y, N],
                 [Y, Y, -1],
                 [N, -1, N]], dtype=np.int8)


def bool_meet(u: int, v: int) -> BoolVal:
    return BoolVal(int(MEET[u, v]))


def bool_leq(u: int, v: int) -> bool:
    return bool(LEQ[u, v])


def bool_bar(u: int) -> BoolVal:
    return BoolVal(int(BAR[u]))


def bullet(u: int, v: int) -> BoolVal:
    """
    Commutative monoid law of the boolean domain

    Args:
        u, v: Boolean-domain values

    Returns:
        u • v (Y is the unit, N is absorbing)
    """
    return BoolVal(int(BULLET[u, v]))


def bool_meet_all(values: Iterable[int]) -> BoolVal:
    """Meet of a nonempty family of values."""
    result = None
    for value in values:
        result = int(value) if result is None else int(MEET[result, value])
    if result is None:
        raise ValueError("meet of an empty family")
    return BoolVal(result)


def meet_reduce(tables: np.ndarray, axis: int = 0) -> np.ndarray:
    """Pointwise meet of a stack of BOOL tables along ``axis``."""
    stack = np.moveaxis(np.asarray(tables, dtype=np.int8), axis, 0)
    if stack.shape[0] == 0:
        raise ValueError("meet of an empty stack")
    result = stack[0].copy()
    for layer in stack[1:]:
        result = MEET[result, layer]
    return result


def join_values(values: Iterable[int]) -> BoolVal:
    """Join of a family of pairwise comparable values (a chain)."""
    result = BOT
    for value in values:
        result = int(JOIN[result, value])
        if result < 0:
            raise ValueError("Y and N have no join")
    return BoolVal(result)


def format_value(value: int) -> str:
    return BoolVal(int(value)).symbol
