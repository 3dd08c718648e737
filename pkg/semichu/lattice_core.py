# Semichu - Lattice Core
#
# Finite Inf semi-lattices: loading, meets/joins, irreducibles and the
# structural classifiers (pure description, simplex, distributive,
# orthocomplementation).

"""
Lattice core
============

A SemiLattice is built once from its order table and is immutable
afterwards. Binary meets are tabulated at construction time; every other
meet is a fold over that table.

Element ids are the public currency of this module. Index-based helpers
(suffix ``_idx``) are used by the effect and tensor modules where numpy
vectorization matters.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field

from .config import get_cap
from .documents import SemilatticeDocument
from .exceptions import CapExceededError, PreconditionError, SchemaError, UnknownElementError

logger = logging.getLogger(__name__)


class Verdict(NamedTuple):
    """Boolean answer together with an optional witness"""
    holds: bool
    witness: Optional[tuple] = None


class StarReport(BaseModel):
    """Result of checking an orthocomplementation map"""
    valid: bool
    violations: List[Tuple[str, List[str]]] = Field(default_factory=list)


def _check_partial_order(leq: np.ndarray) -> None:
    if not np.all(np.diag(leq)):
        raise SchemaError("order relation is not reflexive")
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise SchemaError(f"cycle: order relation is not antisymmetric at ({i},{j})")
    composed = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    if np.any(composed & ~leq):
        raise SchemaError("order relation is not transitive")


def _build_meet_table(elements: Sequence[str], leq: np.ndarray) -> np.ndarray:
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        for j in range(i, n):
            lower = leq[:, i] & leq[:, j]
            # greatest lower bound: a lower bound above every lower bound
            glb = np.flatnonzero(lower & leq[lower].all(axis=0)) if lower.any() else []
            if len(glb) != 1:
                raise SchemaError(f"no meet for ({elements[i]},{elements[j]})")
            table[i, j] = table[j, i] = glb[0]
    return table


class SemiLattice:
    """
    Finite meet-semilattice with bottom and an optional star map

    Args:
        name: Display name
        elements: Element ids in declaration order
        leq: Boolean order table, leq[i, j] iff elements[i] ⊑ elements[j]
        star: Optional involution on the non-bottom elements
    """

    def __init__(self, name: str, elements: Sequence[str], leq: np.ndarray,
                 star: Optional[Dict[str, str]] = None):
        if len(elements) == 0:
            raise SchemaError("empty carrier")
        self.name = name
        self.elements: Tuple[str, ...] = tuple(elements)
        self._index = {element: i for i, element in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise SchemaError("duplicate element ids")

        leq = np.array(leq, dtype=bool)
        n = len(self.elements)
        if leq.shape != (n, n):
            raise SchemaError(f"order table has shape {leq.shape}, expected {(n, n)}")
        _check_partial_order(leq)
        self.leq_table = leq
        self.meet_table = _build_meet_table(self.elements, leq)
        self.compatible_table = (leq.astype(np.int32) @ leq.T.astype(np.int32)) > 0

        bottoms = np.flatnonzero(leq.all(axis=1))
        if len(bottoms) != 1:
            raise SchemaError("missing bottom")
        self.bottom_index = int(bottoms[0])

        self.star_index: Optional[np.ndarray] = None
        if star is not None:
            self.star_index = self._star_indices(star)

        for table in (self.leq_table, self.meet_table, self.compatible_table):
            table.flags.writeable = False

    def _star_indices(self, star: Dict[str, str]) -> np.ndarray:
        mapping = np.full(self.size, -1, dtype=np.int32)
        for source, target in star.items():
            if source not in self._index or target not in self._index:
                raise SchemaError(f"malformed star: unknown id in {source}->{target}")
            i, j = self._index[source], self._index[target]
            if i == self.bottom_index or j == self.bottom_index:
                raise SchemaError("malformed star: bottom cannot be mapped")
            mapping[i] = j
        missing = [self.elements[i] for i in range(self.size)
                   if i != self.bottom_index and mapping[i] < 0]
        if missing:
            raise SchemaError(f"malformed star: no image for {', '.join(missing)}")
        return mapping

    # -- basic access ------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"SemiLattice({self.name!r}, {self.size} elements)"

    @property
    def bottom(self) -> str:
        return self.elements[self.bottom_index]

    @property
    def has_star(self) -> bool:
        return self.star_index is not None

    @property
    def star(self) -> Optional[Dict[str, str]]:
        if self.star_index is None:
            return None
        return {self.elements[i]: self.elements[j]
                for i, j in enumerate(self.star_index) if j >= 0}

    def with_star(self, star: Optional[Dict[str, str]]) -> 'SemiLattice':
        return SemiLattice(self.name, self.elements, self.leq_table, star)

    def index(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElementError(f"unknown element id '{element}' in {self.name}") from None

    def indices(self, elements: Iterable[str]) -> List[int]:
        return [self.index(e) for e in elements]

    def same_structure(self, other: 'SemiLattice') -> bool:
        return (self.elements == other.elements
                and np.array_equal(self.leq_table, other.leq_table))

    # -- order -------------------------------------------------------------

    def leq(self, x: str, y: str) -> bool:
        return bool(self.leq_table[self.index(x), self.index(y)])

    def compatible(self, x: str, y: str) -> bool:
        """True iff x and y have a common upper bound."""
        return bool(self.compatible_table[self.index(x), self.index(y)])

    def meet_idx(self, i: int, j: int) -> int:
        return int(self.meet_table[i, j])

    def meet_indices(self, indices: Iterable[int]) -> int:
        result = None
        for i in indices:
            result = int(i) if result is None else int(self.meet_table[result, i])
        if result is None:
            raise PreconditionError("meet of an empty set is not defined")
        return result

    def meet(self, xs: Iterable[str]) -> str:
        """
        Greatest lower bound of a nonempty set

        Args:
            xs: Element ids

        Returns:
            The meet, as an element id
        """
        return self.elements[self.meet_indices(self.indices(xs))]

    def join_indices(self, indices: Iterable[int]) -> Optional[int]:
        indices = list(indices)
        if not indices:
            return self.bottom_index
        upper = self.leq_table[indices].all(axis=0)
        if not upper.any():
            return None
        return self.meet_indices(np.flatnonzero(upper))

    def join_if_exists(self, xs: Iterable[str]) -> Optional[str]:
        """Least upper bound when the elements are compatible, else None."""
        result = self.join_indices(self.indices(xs))
        return None if result is None else self.elements[result]

    def upset_idx(self, i: int, strict: bool = False) -> np.ndarray:
        row = self.leq_table[i].copy()
        if strict:
            row[i] = False
        return np.flatnonzero(row)

    def downset_idx(self, i: int, strict: bool = False) -> np.ndarray:
        col = self.leq_table[:, i].copy()
        if strict:
            col[i] = False
        return np.flatnonzero(col)

    def upset(self, x: str) -> List[str]:
        return [self.elements[i] for i in self.upset_idx(self.index(x))]

    def downset(self, x: str) -> List[str]:
        return [self.elements[i] for i in self.downset_idx(self.index(x))]

    # -- special elements ---------------------------------------------------

    def maximal_indices(self) -> List[int]:
        return [i for i in range(self.size) if self.leq_table[i].sum() == 1]

    def maximal_elements(self) -> List[str]:
        return [self.elements[i] for i in self.maximal_indices()]

    def irreducible_indices(self, include_bottom: bool = True) -> List[int]:
        """
        Completely meet-irreducible elements as indices

        Every element is the meet of the irreducibles above it, so with
        ``include_bottom`` this is the smallest meet-generating set.
        """
        result = []
        for i in range(self.size):
            above = self.upset_idx(i, strict=True)
            if len(above) == 0 or self.meet_indices(above) != i:
                result.append(i)
        if not include_bottom and self.size > 1:
            result = [i for i in result if i != self.bottom_index]
        return result

    def meet_irreducibles(self) -> List[str]:
        # bottom is left out of the pure states except for the one-element carrier
        return [self.elements[i] for i in self.irreducible_indices(include_bottom=False)]

    # -- graphs ------------------------------------------------------------

    def order_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        for i, j in np.argwhere(self.leq_table):
            if i != j:
                graph.add_edge(self.elements[i], self.elements[j])
        return graph

    def hasse_edges(self) -> List[Tuple[str, str]]:
        """Cover pairs (lower, upper) sorted by declaration order."""
        reduced = nx.transitive_reduction(self.order_graph())
        return sorted(reduced.edges(), key=lambda e: (self._index[e[0]], self._index[e[1]]))


def semilattice_from_order(name: str, elements: Sequence[str], leq: np.ndarray,
                           star: Optional[Dict[str, str]] = None) -> SemiLattice:
    return SemiLattice(name, elements, leq, star)


def load_semilattice(doc: SemilatticeDocument) -> SemiLattice:
    """
    Build a validated SemiLattice from a document

    The order is the reflexive-transitive closure of the declared covers.

    Args:
        doc: Parsed semilattice document

    Returns:
        SemiLattice

    Raises:
        SchemaError: cycle, missing bottom, missing meet, malformed star
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(doc.elements)
    graph.add_edges_from(doc.covers)
    try:
        cycle = nx.find_cycle(graph)
        raise SchemaError(f"cycle in covers: {' -> '.join(u for u, _ in cycle)}")
    except nx.NetworkXNoCycle:
        pass

    closure = nx.transitive_closure_dag(graph)
    index = {e: i for i, e in enumerate(doc.elements)}
    leq = np.eye(len(doc.elements), dtype=bool)
    for lower, upper in closure.edges():
        leq[index[lower], index[upper]] = True

    lattice = SemiLattice(doc.name, doc.elements, leq, doc.star)
    if doc.bottom is not None and doc.bottom != lattice.bottom:
        raise SchemaError(f"declared bottom '{doc.bottom}' is not below every element")
    logger.debug(f"Loaded {lattice}")
    return lattice


def to_document(lattice: SemiLattice) -> SemilatticeDocument:
    return SemilatticeDocument(
        name=lattice.name,
        elements=list(lattice.elements),
        covers=lattice.hasse_edges(),
        bottom=lattice.bottom,
        star=lattice.star,
    )


# ============================================
# Structural classifiers
# ============================================

def _require_structural_cap(lattice: SemiLattice) -> None:
    limit = get_cap('structural_elements')
    if lattice.size > limit:
        raise CapExceededError('structural_elements', limit, lattice.size)


def has_pure_description(lattice: SemiLattice) -> bool:
    """Irreducibles coincide with maximal elements and generate every state."""
    _require_structural_cap(lattice)
    pure = lattice.maximal_indices()
    if sorted(lattice.irreducible_indices(include_bottom=False)) != pure:
        return False
    pure_mask = np.zeros(lattice.size, dtype=bool)
    pure_mask[pure] = True
    for i in range(lattice.size):
        above = np.flatnonzero(lattice.leq_table[i] & pure_mask)
        if lattice.meet_indices(above) != i:
            return False
    return True


def _require_pure_description(lattice: SemiLattice, operation: str) -> List[int]:
    if not has_pure_description(lattice):
        raise PreconditionError(f"{operation} needs a space of states with a pure description")
    return lattice.maximal_indices()


def is_simplex(lattice: SemiLattice) -> Verdict:
    """
    Unique decomposition of every state as a meet of pure states

    A state σ has a second decomposition iff dropping one pure state above
    it leaves a set whose meet is still σ.

    Returns:
        Verdict; the witness is (σ, first decomposition, second decomposition)
    """
    pure = _require_pure_description(lattice, 'is_simplex')
    pure_mask = np.zeros(lattice.size, dtype=bool)
    pure_mask[pure] = True
    for i in range(lattice.size):
        above = [int(p) for p in np.flatnonzero(lattice.leq_table[i] & pure_mask)]
        if len(above) < 2:
            continue
        if any(lattice.meet_indices(q for q in above if q != p) == i for p in above):
            return Verdict(False, _decomposition_witness(lattice, i, above))
    return Verdict(True)


def _decomposition_witness(lattice: SemiLattice, i: int, above: List[int]) -> tuple:
    found = []
    for size in range(1, len(above) + 1):
        for subset in combinations(above, size):
            if lattice.meet_indices(subset) == i:
                found.append([lattice.elements[k] for k in subset])
                if len(found) == 2:
                    return (lattice.elements[i], found[0], found[1])
    raise AssertionError("unreachable: a second decomposition was detected")


def distributive_triple_holds(lattice: SemiLattice, sigma: str, sigma1: str, sigma2: str) -> bool:
    """
    Distributivity condition on a single triple

    If σ1 ⊓ σ2 ⊑ σ (σ distinct from σ1 and σ2) there must be σ1' ⊒ σ1 and
    σ2' ⊒ σ2 with σ = σ1' ⊓ σ2'. Triples outside the hypothesis hold.
    """
    s, s1, s2 = lattice.index(sigma), lattice.index(sigma1), lattice.index(sigma2)
    return _triple_holds(lattice, s, s1, s2)


def _triple_holds(lattice: SemiLattice, s: int, s1: int, s2: int) -> bool:
    if s == s1 or s == s2 or not lattice.leq_table[lattice.meet_idx(s1, s2), s]:
        return True
    up1 = lattice.upset_idx(s1)
    up2 = lattice.upset_idx(s2)
    return bool(np.any(lattice.meet_table[np.ix_(up1, up2)] == s))


def is_distributive(lattice: SemiLattice) -> Verdict:
    """Literal distributivity search; the witness is the first failing (σ, σ1, σ2)."""
    _require_structural_cap(lattice)
    n = lattice.size
    for s in range(n):
        for s1 in range(n):
            for s2 in range(n):
                if not _triple_holds(lattice, s, s1, s2):
                    names = lattice.elements
                    return Verdict(False, (names[s], names[s1], names[s2]))
    return Verdict(True)


def non_simplex_witness(lattice: SemiLattice) -> Optional[Tuple[str, str, str]]:
    """
    Three states certifying a non-simplex space

    Returns:
        (σ1, σ2, σ3) with σ1 ∥ σ2, σ3 ⊒ σ1 ⊓ σ2 and σ3 incompatible with
        both σ1 and σ2; None for a simplex
    """
    _require_pure_description(lattice, 'non_simplex_witness')
    leq, comp = lattice.leq_table, lattice.compatible_table
    n = lattice.size
    for s1 in range(n):
        for s2 in range(n):
            if leq[s1, s2] or leq[s2, s1]:
                continue
            candidates = leq[lattice.meet_idx(s1, s2)] & ~comp[s1] & ~comp[s2]
            hits = np.flatnonzero(candidates)
            if len(hits):
                names = lattice.elements
                return names[s1], names[s2], names[int(hits[0])]
    return None


def quasi_antipodal(lattice: SemiLattice, x: str, y: str) -> bool:
    """Incompatible, yet each is compatible with everything strictly below the other."""
    i, j = lattice.index(x), lattice.index(y)
    return _quasi_antipodal_idx(lattice, i, j)


def _quasi_antipodal_idx(lattice: SemiLattice, i: int, j: int) -> bool:
    comp = lattice.compatible_table
    if comp[i, j]:
        return False
    below_j = lattice.downset_idx(j, strict=True)
    below_i = lattice.downset_idx(i, strict=True)
    return bool(comp[i, below_j].all() and comp[j, below_i].all())


def validate_star(lattice: SemiLattice) -> StarReport:
    if not lattice.has_star:
        raise PreconditionError(f"{lattice.name} has no star map")
    star = lattice.star_index
    names = lattice.elements
    nonbottom = [i for i in range(lattice.size) if i != lattice.bottom_index]
    violations = []
    for i in nonbottom:
        if star[star[i]] != i:
            violations.append(('involutive', [names[i], names[star[i]]]))
    for i in nonbottom:
        for j in nonbottom:
            if lattice.leq_table[i, j] and not lattice.leq_table[star[j], star[i]]:
                violations.append(('order_reversing', [names[i], names[j]]))
    for i in nonbottom:
        if not _quasi_antipodal_idx(lattice, i, star[i]):
            violations.append(('quasi_antipodal', [names[i], names[star[i]]]))
    return StarReport(valid=not violations, violations=violations)


def canonical_star(lattice: SemiLattice) -> Dict[str, str]:
    """σ ↦ meet of the pure states not above σ, for a simplex space."""
    verdict = is_simplex(lattice)
    if not verdict.holds:
        raise PreconditionError(f"canonical_star needs a simplex; {lattice.name} is not one")
    pure = lattice.maximal_indices()
    star = {}
    for i in range(lattice.size):
        if i == lattice.bottom_index:
            continue
        outside = [p for p in pure if not lattice.leq_table[i, p]]
        if not outside:
            raise PreconditionError(f"no pure state outside the upset of {lattice.elements[i]}")
        star[lattice.elements[i]] = lattice.elements[lattice.meet_indices(outside)]
    return star
