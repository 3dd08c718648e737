# Semichu - Tensor Products
#
# Pure tensors, the Ω map, Galois closure and the minimal / maximal /
# regular tensor products of two States/Effects Chu spaces.

"""
Tensor products
===============

A ``TensorTable`` is a BOOL-valued matrix indexed by pairs of effects.
Elements of the minimal tensor product are meets of pure tensors; they
are represented canonically by their Galois-closed pair set. Elements of
the maximal product are the meet-bilinear tables obeying the quotient
conditions; the regular product adds the marginal disciplines.

All tables of one ``TensorSpace`` share the two Chu spaces; tables over
different spaces never compare equal.
"""

import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .boolean_domain import BAR, BOT, BULLET, LEQ, MEET, N, XNOR, Y, bullet, format_value, meet_reduce
from .chu_effects import ChuSpace, state_index_from_column, pure_effect_indices
from .closure_enum import NextClosure
from .config import OUTPUT_CONFIG, get_cap
from .exceptions import CapExceededError, InternalConsistencyError, PreconditionError
from .lattice_core import SemiLattice, is_simplex

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
PairSet = FrozenSet[Pair]

__all__ = ['bullet', 'TensorTable', 'TensorSpace', 'tensor_space', 'minimal_leq_criterion',
           'pure_tensor', 'omega', 'table_meet', 'table_leq', 'galois_closure',
           'sigma_witness', 'non_nn_maximal_example']


class TensorTable:
    """
    BOOL-valued table over E_A × E_B

    Args:
        space: TensorSpace the table lives in
        cells: int8 array of shape (|E_A|, |E_B|)
    """

    def __init__(self, space: 'TensorSpace', cells: np.ndarray):
        self.space = space
        self.cells = np.array(cells, dtype=np.int8)
        if self.cells.shape != space.shape:
            raise PreconditionError(f"table shape {self.cells.shape} does not match {space.shape}")
        self.cells.flags.writeable = False

    @property
    def chu_a(self) -> ChuSpace:
        return self.space.chu_a

    @property
    def chu_b(self) -> ChuSpace:
        return self.space.chu_b

    def cell(self, e: str, m: str) -> int:
        return int(self.cells[self.chu_a.index(e), self.chu_b.index(m)])

    def key(self) -> bytes:
        return self.cells.tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorTable):
            return NotImplemented
        return (self.chu_a is other.chu_a and self.chu_b is other.chu_b
                and np.array_equal(self.cells, other.cells))

    def __hash__(self) -> int:
        return hash((id(self.chu_a), id(self.chu_b), self.key()))

    def __repr__(self) -> str:
        return f"TensorTable({self.chu_a.name} x {self.chu_b.name})"

    def describe(self) -> Dict[str, Dict[str, str]]:
        """Labelled cell listing."""
        return {ea: {eb: format_value(v) for eb, v in zip(self.chu_b.labels, row)}
                for ea, row in zip(self.chu_a.labels, self.cells)}


# ============================================
# Order-theoretic word-problem criterion
# ============================================

def minimal_leq_criterion(lattice_a: SemiLattice, lattice_b: SemiLattice,
                          pairs: Iterable[Pair], target: Pair) -> bool:
    """
    Decide ⊓_U ι(σ_i, τ_i) ⊑ ι(target) in the minimal tensor product

    Meets over all of U must lie below the target, and for every proper
    nonempty K ⊂ U either the first components over K or the second
    components over U∖K must meet below the target.

    Args:
        lattice_a, lattice_b: Factor spaces of states
        pairs: Nonempty generator set U
        target: Pure tensor (σ_A, σ_B)

    Returns:
        True iff the meet of U lies below the target
    """
    unique = list(dict.fromkeys(pairs))
    if not unique:
        raise PreconditionError("the criterion needs a nonempty pair set")
    firsts = lattice_a.indices(p[0] for p in unique)
    seconds = lattice_b.indices(p[1] for p in unique)
    ta, tb = lattice_a.index(target[0]), lattice_b.index(target[1])
    if len(unique) > get_cap('criterion_warning'):
        logger.warning(f"criterion over {len(unique)} generators scans 2^{len(unique)} subsets")
    return _criterion_idx(lattice_a, lattice_b, firsts, seconds, ta, tb)


def _criterion_idx(lattice_a: SemiLattice, lattice_b: SemiLattice,
                   firsts: Sequence[int], seconds: Sequence[int], ta: int, tb: int) -> bool:
    leq_a, leq_b = lattice_a.leq_table, lattice_b.leq_table
    if not leq_a[lattice_a.meet_indices(firsts), ta]:
        return False
    if not leq_b[lattice_b.meet_indices(seconds), tb]:
        return False
    k = len(firsts)
    full = (1 << k) - 1
    for mask in range(1, full):
        inside = [firsts[i] for i in range(k) if mask >> i & 1]
        if leq_a[lattice_a.meet_indices(inside), ta]:
            continue
        outside = [seconds[i] for i in range(k) if not mask >> i & 1]
        if not leq_b[lattice_b.meet_indices(outside), tb]:
            return False
    return True


# ============================================
# Tensor space
# ============================================

class TensorSpace:
    """
    Bipartite setting built from two Chu spaces

    Args:
        chu_a: Left factor
        chu_b: Right factor
    """

    def __init__(self, chu_a: ChuSpace, chu_b: ChuSpace):
        self.chu_a = chu_a
        self.chu_b = chu_b
        self.lattice_a = chu_a.states
        self.lattice_b = chu_b.states
        self.shape = (chu_a.size, chu_b.size)
        self.pair_shape = (self.lattice_a.size, self.lattice_b.size)

    def __repr__(self) -> str:
        return f"TensorSpace({self.chu_a.name}, {self.chu_b.name})"

    # -- pairs -------------------------------------------------------------

    def pairs_to_mask(self, pairs: Iterable[Pair]) -> np.ndarray:
        mask = np.zeros(self.pair_shape, dtype=bool)
        for a, b in pairs:
            mask[self.lattice_a.index(a), self.lattice_b.index(b)] = True
        return mask

    def mask_to_pairs(self, mask: np.ndarray) -> PairSet:
        names_a, names_b = self.lattice_a.elements, self.lattice_b.elements
        return frozenset((names_a[i], names_b[j]) for i, j in np.argwhere(mask))

    def sorted_pairs(self, pairs: Iterable[Pair]) -> List[Pair]:
        return sorted(pairs, key=lambda p: (self.lattice_a.index(p[0]), self.lattice_b.index(p[1])))

    def all_pairs(self) -> List[Pair]:
        return [(a, b) for a in self.lattice_a.elements for b in self.lattice_b.elements]

    # -- pure tensors and Ω -------------------------------------------------

    @property
    def pure_stack(self) -> np.ndarray:
        """Cells of every pure tensor, shape (|S_A|, |S_B|, |E_A|, |E_B|)."""
        if not hasattr(self, '_pure_stack'):
            cols_a = self.chu_a.eval_table.T[:, None, :, None]
            cols_b = self.chu_b.eval_table.T[None, :, None, :]
            stack = BULLET[cols_a, cols_b]
            stack.flags.writeable = False
            self._pure_stack = stack
        return self._pure_stack

    def table(self, cells: np.ndarray) -> TensorTable:
        return TensorTable(self, cells)

    def pure_tensor(self, sigma_a: str, sigma_b: str) -> TensorTable:
        i, j = self.lattice_a.index(sigma_a), self.lattice_b.index(sigma_b)
        return self.table(self.pure_stack[i, j])

    def _omega_mask(self, mask: np.ndarray) -> np.ndarray:
        if not mask.any():
            raise PreconditionError("Ω of the empty pair set is not defined")
        return meet_reduce(self.pure_stack[mask])

    def omega(self, pairs: Iterable[Pair]) -> TensorTable:
        """
        Meet of the pure tensors of a pair set

        Args:
            pairs: Nonempty subset of S_A × S_B

        Returns:
            Ω(U) as a TensorTable
        """
        return self.table(self._omega_mask(self.pairs_to_mask(pairs)))

    def _check_same(self, *tables: TensorTable) -> None:
        for t in tables:
            if t.chu_a is not self.chu_a or t.chu_b is not self.chu_b:
                raise PreconditionError("tables over mismatched Chu spaces")

    def table_meet(self, tables: Sequence[TensorTable]) -> TensorTable:
        if not tables:
            raise PreconditionError("meet of no tables")
        self._check_same(*tables)
        return self.table(meet_reduce(np.stack([t.cells for t in tables])))

    def table_leq(self, phi: TensorTable, psi: TensorTable) -> bool:
        self._check_same(phi, psi)
        return bool(LEQ[phi.cells, psi.cells].all())

    # -- Galois closure ----------------------------------------------------

    def _closure_mask_cells(self, cells: np.ndarray) -> np.ndarray:
        return LEQ[cells[None, None], self.pure_stack].all(axis=(2, 3))

    def closure_mask(self, phi: TensorTable) -> np.ndarray:
        self._check_same(phi)
        return self._closure_mask_cells(phi.cells)

    def galois_closure(self, phi: TensorTable) -> PairSet:
        """Pairs whose pure tensor lies above the table."""
        return self.mask_to_pairs(self.closure_mask(phi))

    def closed_pairs(self, pairs: Iterable[Pair]) -> PairSet:
        """Canonical closed representative ⟨Ω(U)⟩ of a pair set."""
        return self.mask_to_pairs(self._closure_mask_cells(self._omega_mask(self.pairs_to_mask(pairs))))

    def minimal_generators(self, pairs: Iterable[Pair]) -> List[Pair]:
        """Product-order minimal pairs of a pair set."""
        mask = self.pairs_to_mask(pairs)
        leq_a, leq_b = self.lattice_a.leq_table, self.lattice_b.leq_table
        result = []
        coords = [tuple(c) for c in np.argwhere(mask)]
        for i, j in coords:
            below = any((k, l) != (i, j) and leq_a[k, i] and leq_b[l, j] for k, l in coords)
            if not below:
                result.append((self.lattice_a.elements[i], self.lattice_b.elements[j]))
        return self.sorted_pairs(result)

    # -- minimal tensor product -------------------------------------------

    def minimal_leq(self, left: Iterable[Pair], right: Iterable[Pair]) -> bool:
        """Ω(left) ⊑ Ω(right), decided by the criterion on every pair of ``right``."""
        left = list(left)
        right = list(right)
        if not left or not right:
            raise PreconditionError("minimal_leq needs nonempty pair sets")
        return all(minimal_leq_criterion(self.lattice_a, self.lattice_b, left, v) for v in right)

    def is_minimal_member(self, phi: TensorTable) -> bool:
        mask = self.closure_mask(phi)
        if not mask.any():
            return False
        return bool(np.array_equal(self._omega_mask(mask), phi.cells))

    def _require_pair_cap(self) -> None:
        limit = get_cap('minimal_pairs')
        count = self.lattice_a.size * self.lattice_b.size
        if count > limit:
            raise CapExceededError('minimal_pairs', limit, count)

    def _flat_closure(self, flat: np.ndarray) -> np.ndarray:
        if not flat.any():
            return flat.copy()
        mask = flat.reshape(self.pair_shape)
        return self._closure_mask_cells(self._omega_mask(mask)).reshape(-1)

    def enumerate_minimal(self) -> List[PairSet]:
        """
        Every element of the minimal tensor product as a closed pair set

        Returns:
            Closed pair sets in lectic order
        """
        self._require_pair_cap()
        enumerator = NextClosure(self.lattice_a.size * self.lattice_b.size, self._flat_closure,
                                 description=f"minimal {self.lattice_a.name}x{self.lattice_b.name}")
        result = [self.mask_to_pairs(flat.reshape(self.pair_shape))
                  for flat in enumerator if flat.any()]
        logger.info(f"Minimal tensor {self.lattice_a.name} x {self.lattice_b.name}: {len(result)} elements")
        return result

    def minimal_tables(self) -> List[TensorTable]:
        return [self.omega(pairs) for pairs in self.enumerate_minimal()]

    def pure_tensor_maxima(self) -> List[TensorTable]:
        """ι(p, q) for pure p and q."""
        return [self.pure_tensor(self.lattice_a.elements[p], self.lattice_b.elements[q])
                for p in self.lattice_a.maximal_indices() for q in self.lattice_b.maximal_indices()]

    # -- maximal tensor product -------------------------------------------

    def _marker_effects(self) -> Tuple[int, int, int, int]:
        return (self.chu_a.yes_effect, self.chu_a.yes_bar_effect,
                self.chu_b.yes_effect, self.chu_b.yes_bar_effect)

    def _bilinear(self, cells: np.ndarray) -> bool:
        meets_a, meets_b = self.chu_a.label_meet_table, self.chu_b.label_meet_table
        if (meets_a < 0).any() or (meets_b < 0).any():
            raise PreconditionError("effect spaces are not closed under meets")
        rows_ok = np.array_equal(cells[meets_a], MEET[cells[:, None, :], cells[None, :, :]])
        if not rows_ok:
            return False
        cols = cells.T
        return bool(np.array_equal(cols[meets_b], MEET[cols[:, None, :], cols[None, :, :]]))

    def _quotient(self, cells: np.ndarray) -> bool:
        ya, _, yb, _ = self._marker_effects()
        bars_a, bars_b = self.chu_a.bar_table, self.chu_b.bar_table
        if cells[ya, yb] != Y:
            return False
        if not np.array_equal(cells[bars_a, yb], BAR[cells[:, yb]]):
            return False
        return bool(np.array_equal(cells[ya, bars_b], BAR[cells[ya, :]]))

    def is_maximal_member(self, phi: TensorTable) -> bool:
        """Meet-bilinear and satisfying the three quotient conditions."""
        self._check_same(phi)
        return self._bilinear(phi.cells) and self._quotient(phi.cells)

    def satisfies_nn(self, phi: TensorTable) -> bool:
        _, ya_bar, _, yb_bar = self._marker_effects()
        return bool((phi.cells[:, yb_bar] == N).all() and (phi.cells[ya_bar, :] == N).all())

    def is_regular_member(self, phi: TensorTable) -> bool:
        """
        Regular tensor membership of a maximal member

        NN condition, bar discipline on rows/columns whose marginal cell is
        Y, and the (⊥,N)/(N,⊥)/(⊥,⊥) discipline over disjoint effect pairs
        where the marginal cell is ⊥.
        """
        if not self.is_maximal_member(phi):
            raise PreconditionError("regular membership is defined for maximal members only")
        if not self.satisfies_nn(phi):
            return False
        cells = phi.cells
        ya, _, yb, _ = self._marker_effects()
        bars_a, bars_b = self.chu_a.bar_table, self.chu_b.bar_table

        for e in np.flatnonzero(cells[:, yb] == Y):
            if not np.array_equal(cells[e, bars_b], BAR[cells[e]]):
                return False
        for m in np.flatnonzero(cells[ya, :] == Y):
            if not np.array_equal(cells[bars_a, m], BAR[cells[:, m]]):
                return False

        disjoint_b = self.chu_b.label_meet_table == self.chu_b.bottom_effect
        for e in np.flatnonzero(cells[:, yb] == BOT):
            if _clashes(cells[e], disjoint_b):
                return False
        disjoint_a = self.chu_a.label_meet_table == self.chu_a.bottom_effect
        for m in np.flatnonzero(cells[ya, :] == BOT):
            if _clashes(cells[:, m], disjoint_a):
                return False
        return True

    def classify_table(self, phi: TensorTable) -> Dict[str, bool]:
        """Membership ladder of a table."""
        maximal = self.is_maximal_member(phi)
        return {
            'maximal': maximal,
            'nn': maximal and self.satisfies_nn(phi),
            'regular': maximal and self.is_regular_member(phi),
            'minimal': self.is_minimal_member(phi),
        }

    def _require_grid_cap(self) -> None:
        limit = get_cap('effect_grid')
        largest = max(self.chu_a.size, self.chu_b.size)
        if largest > limit:
            raise CapExceededError('effect_grid', limit, largest)

    def enumerate_maximal(self, nn_only: bool = False) -> List[TensorTable]:
        """
        Every member of the maximal tensor product

        Rows over the meet-irreducible effects of A are chosen among the
        meet-homomorphisms E_B → BOOL restricted to the irreducibles of B;
        partial columns must stay restrictions of homomorphisms E_A → BOOL.
        Completed grids are extended by meets and re-checked.

        Args:
            nn_only: Restrict to tables meeting the NN condition

        Returns:
            TensorTables in search order
        """
        self._require_grid_cap()
        search = _GridSearch(self, nn_only)
        tables = search.run()
        logger.info(f"Maximal tensor {self.chu_a.name} x {self.chu_b.name}"
                    f"{' (NN)' if nn_only else ''}: {len(tables)} tables")
        return tables

    def enumerate_regular(self) -> List[TensorTable]:
        return [t for t in self.enumerate_maximal(nn_only=True) if self.is_regular_member(t)]

    # -- marginals and suprema --------------------------------------------

    def marginal_eta(self, phi: TensorTable) -> str:
        """State of S_A whose column is e ↦ Φ(e, Y_B)."""
        if not self.is_maximal_member(phi):
            raise PreconditionError("marginals are defined for maximal members")
        col = phi.cells[:, self.chu_b.yes_effect].copy()
        return self.lattice_a.elements[state_index_from_column(self.chu_a, col)]

    def marginal_lambda(self, phi: TensorTable) -> str:
        """State of S_B whose column is m ↦ Φ(Y_A, m)."""
        if not self.is_maximal_member(phi):
            raise PreconditionError("marginals are defined for maximal members")
        row = phi.cells[self.chu_a.yes_effect, :].copy()
        return self.lattice_b.elements[state_index_from_column(self.chu_b, row)]

    def sup_minimal(self, phi: TensorTable, psi: TensorTable) -> Optional[TensorTable]:
        """
        Least upper bound of two minimal members

        Returns:
            Ω of the common pure tensors above both, or None when there are none
        """
        for t in (phi, psi):
            if not self.is_minimal_member(t):
                raise PreconditionError("sup_minimal needs minimal members")
        common = self.closure_mask(phi) & self.closure_mask(psi)
        result = self.table(self._omega_mask(common)) if common.any() else None
        if self._both_simplex():
            self._check_simplex_sup(phi, psi, result)
        return result

    def _both_simplex(self) -> bool:
        try:
            return is_simplex(self.lattice_a).holds and is_simplex(self.lattice_b).holds
        except PreconditionError:
            return False

    def _check_simplex_sup(self, phi: TensorTable, psi: TensorTable,
                           result: Optional[TensorTable]) -> None:
        gens_phi = self.minimal_generators(self.galois_closure(phi))
        gens_psi = self.minimal_generators(self.galois_closure(psi))
        terms = []
        for sa, sb in gens_phi:
            for ta, tb in gens_psi:
                ja = self.lattice_a.join_if_exists([sa, ta])
                jb = self.lattice_b.join_if_exists([sb, tb])
                if ja is not None and jb is not None:
                    terms.append((ja, jb))
        closed_form = self.omega(terms) if terms else None
        if (closed_form is None) != (result is None) or (result is not None and closed_form != result):
            raise InternalConsistencyError("supremum disagrees with the simplex closed form")


def _clashes(values: np.ndarray, disjoint: np.ndarray) -> bool:
    """True if some disjoint pair carries Y, or N on both sides."""
    a, b = values[:, None], values[None, :]
    bad = (a == Y) | (b == Y) | ((a == N) & (b == N))
    return bool((bad & disjoint).any())


# ============================================
# Maximal tensor grid search
# ============================================

def _meet_homs(chu: ChuSpace) -> np.ndarray:
    """All meet-homomorphisms E → BOOL as rows: Y above f_Y, N above f_N."""
    lattice = chu.effect_lattice
    leq, comp = lattice.leq_table, lattice.compatible_table
    size = chu.size
    rows = []
    for fy in range(-1, size):
        for fn in range(-1, size):
            if fy >= 0 and fn >= 0 and comp[fy, fn]:
                continue
            row = np.full(size, BOT, dtype=np.int8)
            if fy >= 0:
                row[leq[fy]] = Y
            if fn >= 0:
                row[leq[fn]] = N
            rows.append(row)
    return np.unique(np.array(rows), axis=0)


class _GridSearch:
    """Backtracking over the irreducible grid of a maximal tensor product."""

    def __init__(self, space: TensorSpace, nn_only: bool):
        self.space = space
        self.nn_only = nn_only
        chu_a, chu_b = space.chu_a, space.chu_b
        for chu in (chu_a, chu_b):
            if (chu.bar_table < 0).any():
                raise PreconditionError(f"{chu.name} is not closed under bar")
        self.ya, self.ya_bar, self.yb, self.yb_bar = space._marker_effects()

        gens_a = chu_a.meet_irreducible_effects()
        first = [self.ya, self.ya_bar]
        rest = [g for g in gens_a if g not in first]
        # keep each generator next to its bar so the Y_B column prunes early
        ordered = list(first)
        for g in rest:
            if g in ordered:
                continue
            ordered.append(g)
            partner = int(chu_a.bar_table[g])
            if partner in rest and partner not in ordered:
                ordered.append(partner)
        self.gens_a = ordered
        self.gens_b = chu_b.meet_irreducible_effects()
        self.col_yb = self.gens_b.index(self.yb)
        self.col_yb_bar = self.gens_b.index(self.yb_bar)
        self.bar_pos_b = [self.gens_b.index(int(chu_b.bar_table[g])) for g in self.gens_b]
        self.row_pos = {g: t for t, g in enumerate(self.gens_a)}
        self.bar_row = [self.row_pos[int(chu_a.bar_table[g])] for g in self.gens_a]

        homs_b = _meet_homs(chu_b)
        # a homomorphism is determined by its values on the irreducibles
        self.full_rows = {row[self.gens_b].tobytes(): row for row in homs_b}
        self.candidates = np.unique(homs_b[:, self.gens_b], axis=0)

        restricted_a = _meet_homs(chu_a)[:, self.gens_a]
        self.prefixes = [set(r[:t].tobytes() for r in restricted_a)
                         for t in range(len(self.gens_a) + 1)]

        # generators of A above each effect, as positions in gens_a
        leq_a = chu_a.row_leq
        self.above_a = [[t for t, g in enumerate(self.gens_a) if leq_a[e, g]] for e in range(chu_a.size)]

    def _row_options(self, t: int) -> np.ndarray:
        cands = self.candidates
        g = self.gens_a[t]
        if self.nn_only:
            cands = cands[cands[:, self.col_yb_bar] == N]
        if g == self.ya:
            cands = cands[cands[:, self.col_yb] == Y]
            bar_ok = (cands[:, self.bar_pos_b] == BAR[cands]).all(axis=1)
            cands = cands[bar_ok]
        if g == self.ya_bar and self.nn_only:
            cands = cands[(cands == N).all(axis=1)]
        return cands

    def run(self) -> List[TensorTable]:
        k = len(self.gens_a)
        options = [self._row_options(t) for t in range(k)]
        grid = np.zeros((k, len(self.gens_b)), dtype=np.int8)
        found: List[TensorTable] = []
        seen = set()
        progress = tqdm(desc='maximal grid', unit='grid', disable=not OUTPUT_CONFIG['progress'],
                        leave=False)

        def extend(t: int) -> None:
            if t == k:
                progress.update(1)
                table = self._complete(grid)
                if table is not None and table.key() not in seen:
                    seen.add(table.key())
                    found.append(table)
                return
            for row in options[t]:
                grid[t] = row
                if not self._columns_ok(grid, t):
                    continue
                if not self._bar_ok(grid, t):
                    continue
                extend(t + 1)

        try:
            extend(0)
        finally:
            progress.close()
        return found

    def _columns_ok(self, grid: np.ndarray, t: int) -> bool:
        prefix_set = self.prefixes[t + 1]
        return all(grid[:t + 1, c].tobytes() in prefix_set for c in range(grid.shape[1]))

    def _bar_ok(self, grid: np.ndarray, t: int) -> bool:
        partner = self.bar_row[t]
        if partner > t:
            return True
        return grid[partner, self.col_yb] == BAR[grid[t, self.col_yb]]

    def _complete(self, grid: np.ndarray) -> Optional[TensorTable]:
        rows = np.array([self.full_rows[r.tobytes()] for r in grid])
        cells = np.stack([meet_reduce(rows[above]) for above in self.above_a])
        table = self.space.table(cells)
        if not self.space.is_maximal_member(table):
            return None
        if self.nn_only and not self.space.satisfies_nn(table):
            return None
        return table


# ============================================
# Separating witnesses
# ============================================

def sigma_witness(space: TensorSpace, sigma1: str, sigma2: str, tau1: str, tau2: str) -> TensorTable:
    """
    Regular but non-minimal table for orthocomplemented non-simplex factors

    Built on the pure effects: Y at (Y_A, Y_B), N along the bar-of-Y row and
    column, N at three star-pair cells, ⊥ elsewhere; then extended by meets.

    Args:
        space: TensorSpace over two reduced effect spaces
        sigma1, sigma2: Distinct pure states of S_A with σ1* ⋢ σ2
        tau1, tau2: Distinct pure states of S_B with τ1* ⋢ τ2

    Returns:
        The Σ table
    """
    chu_a, chu_b = space.chu_a, space.chu_b
    if chu_a.kind != 'reduced' or chu_b.kind != 'reduced':
        raise PreconditionError("the Σ witness is built on reduced effect spaces")
    _check_witness_states(chu_a.states, sigma1, sigma2)
    _check_witness_states(chu_b.states, tau1, tau2)

    pure_a, pure_b = pure_effect_indices(chu_a), pure_effect_indices(chu_b)
    pos_a = {e: i for i, e in enumerate(pure_a)}
    pos_b = {e: i for i, e in enumerate(pure_b)}
    ya, ya_bar, yb, yb_bar = space._marker_effects()

    grid = np.full((len(pure_a), len(pure_b)), BOT, dtype=np.int8)
    grid[pos_a[ya_bar], :] = N
    grid[:, pos_b[yb_bar]] = N
    grid[pos_a[ya], pos_b[yb]] = Y

    # l(σ,σ*) or, flipped, l(σ*,σ)
    def left(state: str, flipped: bool) -> int:
        return pos_a[_star_pair_effect(chu_a, state, flipped)]

    def right(state: str, flipped: bool) -> int:
        return pos_b[_star_pair_effect(chu_b, state, flipped)]

    grid[left(sigma1, False), right(tau1, False)] = N
    grid[left(sigma1, True), right(tau2, True)] = N
    grid[left(sigma2, True), right(tau1, True)] = N

    leq_a, leq_b = chu_a.row_leq, chu_b.row_leq
    half = np.stack([meet_reduce(grid[[pos_a[p] for p in pure_a if leq_a[e, p]]])
                     for e in range(chu_a.size)])
    cells = np.stack([meet_reduce(half[:, [pos_b[q] for q in pure_b if leq_b[m, q]]], axis=1)
                      for m in range(chu_b.size)], axis=1)
    return space.table(cells)


def _star_pair_effect(chu: ChuSpace, state: str, flipped: bool) -> int:
    i = chu.states.index(state)
    j = int(chu.states.star_index[i])
    found = chu.lookup_idx(j, i) if flipped else chu.lookup_idx(i, j)
    if found < 0:
        raise PreconditionError(f"{chu.name} lacks the star-pair effect of {state}")
    return found


def _check_witness_states(lattice: SemiLattice, first: str, second: str) -> None:
    i, j = lattice.index(first), lattice.index(second)
    pure = lattice.maximal_indices()
    if i not in pure or j not in pure:
        raise PreconditionError(f"{first} and {second} must be pure states of {lattice.name}")
    if i == j:
        raise PreconditionError(f"witness states of {lattice.name} must be distinct")
    if lattice.leq_table[int(lattice.star_index[i]), j]:
        raise PreconditionError(f"{first}* lies below {second} in {lattice.name}")


def non_nn_maximal_example(space: TensorSpace, sigma_a: Optional[str] = None,
                           sigma_b: Optional[str] = None) -> TensorTable:
    """
    Maximal member failing the NN condition

    cell(e, m) = eval(e, σ_A) ⊙ eval(m, σ_B) where ⊙ is the equivalence test
    (Y⊙Y = N⊙N = Y, mixed = N, ⊥ absorbing); the bar-of-Y corner is Y.
    """
    i = space.lattice_a.index(sigma_a) if sigma_a else space.lattice_a.bottom_index
    j = space.lattice_b.index(sigma_b) if sigma_b else space.lattice_b.bottom_index
    cols_a = space.chu_a.eval_table[:, i]
    cols_b = space.chu_b.eval_table[:, j]
    return space.table(XNOR[cols_a[:, None], cols_b[None, :]])


# ============================================
# Functional API
# ============================================

@lru_cache(maxsize=64)
def tensor_space(chu_a: ChuSpace, chu_b: ChuSpace) -> TensorSpace:
    """Shared TensorSpace for a pair of Chu spaces."""
    return TensorSpace(chu_a, chu_b)


def pure_tensor(chu_a: ChuSpace, chu_b: ChuSpace, sigma_a: str, sigma_b: str) -> TensorTable:
    return tensor_space(chu_a, chu_b).pure_tensor(sigma_a, sigma_b)


def omega(chu_a: ChuSpace, chu_b: ChuSpace, pairs: Iterable[Pair]) -> TensorTable:
    return tensor_space(chu_a, chu_b).omega(pairs)


def table_meet(tables: Sequence[TensorTable]) -> TensorTable:
    if not tables:
        raise PreconditionError("meet of no tables")
    return tables[0].space.table_meet(tables)


def table_leq(phi: TensorTable, psi: TensorTable) -> bool:
    return phi.space.table_leq(phi, psi)


def galois_closure(phi: TensorTable) -> PairSet:
    return phi.space.galois_closure(phi)
