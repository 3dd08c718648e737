# Semichu - Fraser Canonical Tensor Product
#
# Bi-filters of S_A × S_B, their closure, the order they induce on the
# canonical tensor product and the comparison with the minimal product.

"""
Fraser canonical tensor product
===============================

Elements of the canonical product are represented by generated
bi-filters F{U}; F{U} ⊑ F{V} iff F{U} ⊇ F{V}. Membership of a pair in
F{U} decides whether the meet of U lies below the pure tensor of that
pair, so every order question reduces to a closure computation.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from .closure_enum import NextClosure
from .config import get_cap
from .exceptions import CapExceededError, InternalConsistencyError, PreconditionError
from .lattice_core import SemiLattice
from .tensor_products import TensorSpace, TensorTable, minimal_leq_criterion

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


@dataclass(frozen=True)
class BiFilter:
    """Generated bi-filter as a set of (state of A, state of B) pairs"""
    pairs: FrozenSet[Pair]

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)


class IsomorphismReport(BaseModel):
    """Comparison of the canonical and minimal tensor products"""
    fraser_count: int
    minimal_count: int
    bijective: bool
    order_preserving: bool
    order_reflecting: bool
    witness: Optional[List[str]] = None

    @property
    def isomorphic(self) -> bool:
        return self.bijective and self.order_preserving and self.order_reflecting


# ============================================
# Mask helpers
# ============================================

def _to_mask(lattice_a: SemiLattice, lattice_b: SemiLattice, pairs: Iterable[Pair]) -> np.ndarray:
    mask = np.zeros((lattice_a.size, lattice_b.size), dtype=bool)
    for a, b in pairs:
        mask[lattice_a.index(a), lattice_b.index(b)] = True
    return mask


def _to_bifilter(lattice_a: SemiLattice, lattice_b: SemiLattice, mask: np.ndarray) -> BiFilter:
    return BiFilter(frozenset((lattice_a.elements[i], lattice_b.elements[j])
                              for i, j in np.argwhere(mask)))


def _up_closure(lattice_a: SemiLattice, lattice_b: SemiLattice, mask: np.ndarray) -> np.ndarray:
    leq_a = lattice_a.leq_table.astype(np.int32)
    leq_b = lattice_b.leq_table.astype(np.int32)
    return (leq_a.T @ mask.astype(np.int32) @ leq_b) > 0


def _meet_close(meet_table: np.ndarray, members: np.ndarray) -> np.ndarray:
    """Closure of a membership vector under binary meets."""
    closed = members.copy()
    while True:
        idx = np.flatnonzero(closed)
        grown = closed.copy()
        grown[meet_table[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, closed):
            return closed
        closed = grown


def _closure_mask(lattice_a: SemiLattice, lattice_b: SemiLattice, mask: np.ndarray) -> np.ndarray:
    current = mask.copy()
    while True:
        grown = _up_closure(lattice_a, lattice_b, current)
        for j in range(lattice_b.size):
            if grown[:, j].any():
                grown[:, j] = _meet_close(lattice_a.meet_table, grown[:, j])
        for i in range(lattice_a.size):
            if grown[i].any():
                grown[i] = _meet_close(lattice_b.meet_table, grown[i])
        if np.array_equal(grown, current):
            return current
        current = grown


def _is_bifilter_mask(lattice_a: SemiLattice, lattice_b: SemiLattice, mask: np.ndarray) -> bool:
    if not np.array_equal(_up_closure(lattice_a, lattice_b, mask), mask):
        return False
    for j in range(lattice_b.size):
        idx = np.flatnonzero(mask[:, j])
        if not mask[lattice_a.meet_table[np.ix_(idx, idx)], j].all():
            return False
    for i in range(lattice_a.size):
        idx = np.flatnonzero(mask[i])
        if not mask[i, lattice_b.meet_table[np.ix_(idx, idx)]].all():
            return False
    return True


# ============================================
# Bi-filters
# ============================================

def is_bifilter(lattice_a: SemiLattice, lattice_b: SemiLattice, pairs: Iterable[Pair]) -> bool:
    """Upward closed and closed under meets along each coordinate."""
    return _is_bifilter_mask(lattice_a, lattice_b, _to_mask(lattice_a, lattice_b, pairs))


def bifilter_closure(lattice_a: SemiLattice, lattice_b: SemiLattice,
                     pairs: Iterable[Pair]) -> BiFilter:
    """
    Least bi-filter containing a nonempty pair set

    Up-closure and the two meet rules are applied until nothing changes.
    On products with few pairs the result is re-checked for minimality:
    dropping any pair outside the generators must break a rule.

    Args:
        lattice_a, lattice_b: Factor spaces of states
        pairs: Nonempty generator set U

    Returns:
        F{U}
    """
    generators = _to_mask(lattice_a, lattice_b, pairs)
    if not generators.any():
        raise PreconditionError("bifilter_closure needs a nonempty pair set")
    closed = _closure_mask(lattice_a, lattice_b, generators)

    if closed.size <= get_cap('bifilter_minimality_pairs'):
        for i, j in np.argwhere(closed & ~generators):
            smaller = closed.copy()
            smaller[i, j] = False
            if _is_bifilter_mask(lattice_a, lattice_b, smaller):
                raise InternalConsistencyError(
                    f"bi-filter closure is not minimal: ({lattice_a.elements[i]},{lattice_b.elements[j]}) is removable")
    return _to_bifilter(lattice_a, lattice_b, closed)


def fraser_member(lattice_a: SemiLattice, lattice_b: SemiLattice,
                  pairs: Iterable[Pair], pair: Pair) -> bool:
    """True iff ``pair`` lies in F{U}."""
    lattice_a.index(pair[0])
    lattice_b.index(pair[1])
    return pair in bifilter_closure(lattice_a, lattice_b, pairs)


def fraser_leq(lattice_a: SemiLattice, lattice_b: SemiLattice,
               left: Iterable[Pair], right: Iterable[Pair]) -> bool:
    closure = bifilter_closure(lattice_a, lattice_b, left)
    right = list(right)
    if not right:
        raise PreconditionError("fraser_leq needs a nonempty right-hand side")
    return all(v in closure for v in right)


def fraser_equal(lattice_a: SemiLattice, lattice_b: SemiLattice,
                 left: Iterable[Pair], right: Iterable[Pair]) -> bool:
    return bifilter_closure(lattice_a, lattice_b, left) == bifilter_closure(lattice_a, lattice_b, right)


def fraser_meet(lattice_a: SemiLattice, lattice_b: SemiLattice,
                left: Iterable[Pair], right: Iterable[Pair]) -> BiFilter:
    """F{U} ⊓ F{V} = F{U ∪ V}."""
    return bifilter_closure(lattice_a, lattice_b, list(left) + list(right))


def enumerate_fraser(lattice_a: SemiLattice, lattice_b: SemiLattice) -> List[BiFilter]:
    """
    Every generated bi-filter, i.e. every element of the canonical product

    Returns:
        Distinct bi-filters in lectic order of their pair sets
    """
    count = lattice_a.size * lattice_b.size
    limit = get_cap('minimal_pairs')
    if count > limit:
        raise CapExceededError('minimal_pairs', limit, count)
    shape = (lattice_a.size, lattice_b.size)

    def closure(flat: np.ndarray) -> np.ndarray:
        if not flat.any():
            return flat.copy()
        return _closure_mask(lattice_a, lattice_b, flat.reshape(shape)).reshape(-1)

    enumerator = NextClosure(count, closure, description=f"fraser {lattice_a.name}x{lattice_b.name}")
    result = [_to_bifilter(lattice_a, lattice_b, flat.reshape(shape)) for flat in enumerator if flat.any()]
    logger.info(f"Fraser tensor {lattice_a.name} x {lattice_b.name}: {len(result)} bi-filters")
    return result


# ============================================
# Comparison with the minimal tensor product
# ============================================

def compare_orders(lattice_a: SemiLattice, lattice_b: SemiLattice,
                   pairs: Iterable[Pair], pair: Pair) -> Dict[str, bool]:
    """
    Both verdicts on "meet of U below the pure tensor of pair"

    A Fraser verdict of true forces a minimal verdict of true.

    Returns:
        {'fraser': bool, 'minimal': bool}
    """
    pairs = list(pairs)
    fraser = fraser_member(lattice_a, lattice_b, pairs, pair)
    minimal = minimal_leq_criterion(lattice_a, lattice_b, pairs, pair)
    if fraser and not minimal:
        raise InternalConsistencyError(
            f"pair {pair} is in the bi-filter of {sorted(pairs)} but fails the minimal criterion")
    return {'fraser': fraser, 'minimal': minimal}


def order_isomorphism(space: TensorSpace) -> IsomorphismReport:
    """
    Check F ↦ ⟨Ω(F)⟩ between generated bi-filters and minimal members

    Bijectivity onto the enumerated minimal product plus preservation and
    reflection of the reverse-inclusion orders.
    """
    lattice_a, lattice_b = space.lattice_a, space.lattice_b
    bifilters = enumerate_fraser(lattice_a, lattice_b)
    minimal = set(space.enumerate_minimal())
    images = [space.closed_pairs(f.pairs) for f in bifilters]

    bijective = len(set(images)) == len(images) and set(images) == minimal
    witness = None
    if not bijective:
        collided = next((f for f, img in zip(bifilters, images) if images.count(img) > 1), None)
        if collided is not None:
            witness = sorted(f"({a},{b})" for a, b in collided.pairs)

    preserving = reflecting = True
    for f, img_f in zip(bifilters, images):
        for g, img_g in zip(bifilters, images):
            below_fraser = f.pairs >= g.pairs
            below_minimal = img_f >= img_g
            if below_fraser and not below_minimal:
                preserving = False
                witness = witness or sorted(f"({a},{b})" for a, b in f.pairs)
            if below_minimal and not below_fraser:
                reflecting = False
                witness = witness or sorted(f"({a},{b})" for a, b in g.pairs)

    report = IsomorphismReport(fraser_count=len(bifilters), minimal_count=len(minimal),
                               bijective=bijective, order_preserving=preserving,
                               order_reflecting=reflecting, witness=witness)
    logger.info(f"{lattice_a.name} x {lattice_b.name}: fraser {report.fraser_count}, "
                f"minimal {report.minimal_count}, isomorphic={report.isomorphic}")
    return report


def matches_fraser_element(table: TensorTable) -> bool:
    """
    True iff the table is Ω of some generated bi-filter

    The table is compared against Ω of every enumerated bi-filter.
    """
    space = table.space
    return any(space.omega(f.pairs) == table for f in enumerate_fraser(space.lattice_a, space.lattice_b))
