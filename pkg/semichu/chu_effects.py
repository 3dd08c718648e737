# Semichu - Chu Effects
#
# Natural and reduced effect spaces over a space of states, the
# evaluation table, Chu-axiom validation and the two reconstruction
# theorems (effect from a state functional, state from an effect
# functional).

"""
Effects and States/Effects Chu spaces
=====================================

An effect is stored as a label pair (yes part, no part) where either part
may be absent ("."):

    l(s1,s2)   Y above s1, N above s2, ⊥ elsewhere
    l(s1,.)    Y above s1, ⊥ elsewhere
    l(.,s2)    N above s2, ⊥ elsewhere
    l(.,.)     constant ⊥ (bottom effect)

Labels are canonical for natural and reduced spaces; the evaluation rows
are the ground truth and every check compares rows.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from .boolean_domain import BAR, BOT, JOIN, LEQ, MEET, N, Y
from .config import get_cap
from .exceptions import (CapExceededError, InternalConsistencyError, PreconditionError,
                         SchemaError)
from .lattice_core import (SemiLattice, _quasi_antipodal_idx, has_pure_description,
                           validate_star)

logger = logging.getLogger(__name__)

Predicate = Union[Mapping[str, int], Sequence[int], np.ndarray]


@dataclass(frozen=True)
class Effect:
    """Normalized effect label; ``None`` stands for an absent part"""
    yes: Optional[str]
    no: Optional[str]

    @property
    def label(self) -> str:
        return f"l({self.yes or '.'},{self.no or '.'})"

    def __str__(self) -> str:
        return self.label


_EFFECT_RE = re.compile(r'l\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)')


def parse_effect(text: str) -> Effect:
    match = _EFFECT_RE.fullmatch(text.strip())
    if not match:
        raise SchemaError(f"malformed effect literal: {text!r}")
    yes, no = (None if part == '.' else part for part in match.groups())
    return Effect(yes, no)


class ChuReport(BaseModel):
    """Outcome of the Chu-axiom check"""
    space: str
    passed: bool
    checks: List[str] = Field(default_factory=list)
    violations: List[Tuple[str, List[str]]] = Field(default_factory=list)


class ChuSpace:
    """
    States/Effects Chu space: states, effects and the evaluation table

    Args:
        states: Space of states
        effects: Effect labels in a fixed order
        name: Display name
        kind: 'natural', 'reduced' or 'custom'
    """

    def __init__(self, states: SemiLattice, effects: Sequence[Effect],
                 name: Optional[str] = None, kind: str = 'custom'):
        self.states = states
        self.effects: Tuple[Effect, ...] = tuple(effects)
        self.kind = kind
        self.name = name or f"{kind}({states.name})"
        self._index = {effect: i for i, effect in enumerate(self.effects)}
        if len(self._index) != len(self.effects):
            raise SchemaError(f"duplicate effect labels in {self.name}")

        n = states.size
        self.yes_idx = np.array([-1 if e.yes is None else states.index(e.yes)
                                 for e in self.effects], dtype=np.int32)
        self.no_idx = np.array([-1 if e.no is None else states.index(e.no)
                                for e in self.effects], dtype=np.int32)
        self._code = np.full((n + 1, n + 1), -1, dtype=np.int32)
        self._code[self.yes_idx + 1, self.no_idx + 1] = np.arange(len(self.effects))
        self.eval_table = self._evaluate_all()
        self.eval_table.flags.writeable = False

    @classmethod
    def from_effects(cls, states: SemiLattice, labels: Iterable[Union[str, Effect]],
                     name: Optional[str] = None) -> 'ChuSpace':
        """Hand-built space from an explicit list of effect labels."""
        effects = [parse_effect(x) if isinstance(x, str) else x for x in labels]
        return cls(states, effects, name=name, kind='custom')

    def _evaluate_all(self) -> np.ndarray:
        leq = self.states.leq_table
        size = (len(self.effects), self.states.size)
        yes_mask = np.zeros(size, dtype=bool)
        no_mask = np.zeros(size, dtype=bool)
        has_yes, has_no = self.yes_idx >= 0, self.no_idx >= 0
        yes_mask[has_yes] = leq[self.yes_idx[has_yes]]
        no_mask[has_no] = leq[self.no_idx[has_no]]
        clash = np.flatnonzero((yes_mask & no_mask).any(axis=1))
        if len(clash):
            raise SchemaError(f"effect {self.effects[clash[0]]} has compatible yes/no parts")
        return np.where(yes_mask, Y, np.where(no_mask, N, BOT)).astype(np.int8)

    # -- lookup ------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.effects)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"ChuSpace({self.name!r}, {self.size} effects)"

    @property
    def labels(self) -> List[str]:
        return [e.label for e in self.effects]

    def index(self, effect: Union[str, Effect]) -> int:
        if isinstance(effect, str):
            effect = parse_effect(effect)
        try:
            return self._index[effect]
        except KeyError:
            raise SchemaError(f"effect {effect} is not in {self.name}") from None

    def lookup_idx(self, yes: int, no: int) -> int:
        """Index of the effect with the given part indices (-1 = absent), or -1."""
        return int(self._code[yes + 1, no + 1])

    def _required(self, yes: int, no: int, what: str) -> int:
        i = self.lookup_idx(yes, no)
        if i < 0:
            raise PreconditionError(f"{self.name} does not contain {what}")
        return i

    @property
    def yes_effect(self) -> int:
        return self._required(self.states.bottom_index, -1, 'Y_E')

    @property
    def yes_bar_effect(self) -> int:
        return self._required(-1, self.states.bottom_index, 'the bar of Y_E')

    @property
    def bottom_effect(self) -> int:
        return self._required(-1, -1, 'the bottom effect')

    # -- structure ---------------------------------------------------------

    @cached_property
    def state_join_table(self) -> np.ndarray:
        n = self.states.size
        table = np.full((n, n), -1, dtype=np.int32)
        for i in range(n):
            for j in range(i, n):
                k = self.states.join_indices([i, j])
                table[i, j] = table[j, i] = -1 if k is None else k
        return table

    @cached_property
    def label_meet_table(self) -> np.ndarray:
        """E×E table of label meets (index into effects, -1 if outside the space)."""
        join = self.state_join_table

        def combine(parts: np.ndarray) -> np.ndarray:
            a, b = parts[:, None], parts[None, :]
            both = (a >= 0) & (b >= 0)
            return np.where(both, join[np.maximum(a, 0), np.maximum(b, 0)], -1)

        return self._code[combine(self.yes_idx) + 1, combine(self.no_idx) + 1]

    @cached_property
    def bar_table(self) -> np.ndarray:
        return self._code[self.no_idx + 1, self.yes_idx + 1]

    @cached_property
    def row_leq(self) -> np.ndarray:
        rows = self.eval_table
        return LEQ[rows[:, None, :], rows[None, :, :]].all(axis=2)

    @cached_property
    def effect_lattice(self) -> SemiLattice:
        """Effects ordered pointwise by their rows."""
        try:
            return SemiLattice(f"E[{self.name}]", self.labels, self.row_leq)
        except SchemaError as e:
            raise PreconditionError(f"effects of {self.name} do not form a semilattice: {e}") from e

    def meet_irreducible_effects(self) -> List[int]:
        return self.effect_lattice.irreducible_indices(include_bottom=True)

    def column(self, state: str) -> np.ndarray:
        return self.eval_table[:, self.states.index(state)]

    def row(self, effect: Union[str, Effect]) -> np.ndarray:
        return self.eval_table[self.index(effect)]


# ============================================
# Construction
# ============================================

def _require_effect_cap(states: SemiLattice, count: int) -> None:
    limit = get_cap('structural_elements')
    if states.size > limit:
        raise CapExceededError('structural_elements', limit, states.size)
    limit = get_cap('effects')
    if count > limit:
        raise CapExceededError('effects', limit, count)


def _one_sided(states: SemiLattice) -> List[Effect]:
    effects = [Effect(None, None)]
    effects += [Effect(x, None) for x in states.elements]
    effects += [Effect(None, x) for x in states.elements]
    return effects


def natural_effects(states: SemiLattice) -> ChuSpace:
    """
    Natural space of effects over a space of states

    Args:
        states: Space of states

    Returns:
        ChuSpace holding every incompatible two-sided label and every
        one-sided label
    """
    comp = states.compatible_table
    names = states.elements
    two_sided = [Effect(names[i], names[j])
                 for i in range(states.size) for j in range(states.size) if not comp[i, j]]
    _require_effect_cap(states, len(two_sided) + 2 * states.size + 1)
    space = ChuSpace(states, _one_sided(states) + two_sided,
                     name=f"natural({states.name})", kind='natural')
    logger.debug(f"Built {space}")
    return space


def reduced_effects(states: SemiLattice) -> ChuSpace:
    """Two-sided effects restricted to l(σ,σ') with σ' ⊒ σ*, for a valid star."""
    report = validate_star(states)
    if not report.valid:
        raise PreconditionError(f"invalid star on {states.name}: {report.violations[0]}")
    star = states.star_index
    leq = states.leq_table
    names = states.elements
    nonbottom = [i for i in range(states.size) if i != states.bottom_index]
    two_sided = [Effect(names[i], names[j]) for i in nonbottom for j in nonbottom
                 if leq[star[i], j]]
    _require_effect_cap(states, len(two_sided) + 2 * states.size + 1)
    space = ChuSpace(states, _one_sided(states) + two_sided,
                     name=f"reduced({states.name})", kind='reduced')
    logger.debug(f"Built {space}")
    return space


# ============================================
# Effect operations
# ============================================

def effect_meet(chu: ChuSpace, e1: Union[str, Effect], e2: Union[str, Effect]) -> Effect:
    i = int(chu.label_meet_table[chu.index(e1), chu.index(e2)])
    if i < 0:
        raise PreconditionError(f"{chu.name} is not closed under the meet of {e1} and {e2}")
    return chu.effects[i]


def effect_bar(chu: ChuSpace, e: Union[str, Effect]) -> Effect:
    i = int(chu.bar_table[chu.index(e)])
    if i < 0:
        raise PreconditionError(f"{chu.name} is not closed under bar at {e}")
    return chu.effects[i]


def evaluate(chu: ChuSpace, e: Union[str, Effect], state: str) -> int:
    return int(chu.eval_table[chu.index(e), chu.states.index(state)])


def check_chu_axioms(chu: ChuSpace) -> ChuReport:
    """
    Exhaustive check of the Chu-space axioms

    Binary meets are enough: finite nonempty meets follow by induction.
    """
    states, table = chu.states, chu.eval_table
    names, labels = states.elements, chu.labels
    violations: List[Tuple[str, List[str]]] = []
    checks = ['state_meet_hom', 'effect_meet_hom', 'extensional', 'separated',
              'closed_meet', 'closed_bar', 'contains_units', 'state_tests']

    # eval(e, σ⊓σ') = eval(e, σ) ∧ eval(e, σ')
    for i in range(states.size):
        for j in range(i, states.size):
            expected = MEET[table[:, i], table[:, j]]
            bad = np.flatnonzero(table[:, states.meet_idx(i, j)] != expected)
            if len(bad):
                violations.append(('state_meet_hom', [labels[bad[0]], names[i], names[j]]))

    meets = chu.label_meet_table
    for a in range(chu.size):
        for b in range(a, chu.size):
            k = meets[a, b]
            if k < 0:
                violations.append(('closed_meet', [labels[a], labels[b]]))
            elif not np.array_equal(table[k], MEET[table[a], table[b]]):
                violations.append(('effect_meet_hom', [labels[a], labels[b]]))

    _, first, counts = np.unique(table, axis=0, return_index=True, return_counts=True)
    for row_first, count in zip(first, counts):
        if count > 1:
            twins = np.flatnonzero((table == table[row_first]).all(axis=1))
            violations.append(('extensional', [labels[t] for t in twins]))
    _, first, counts = np.unique(table.T, axis=0, return_index=True, return_counts=True)
    for col_first, count in zip(first, counts):
        if count > 1:
            twins = np.flatnonzero((table.T == table.T[col_first]).all(axis=1))
            violations.append(('separated', [names[t] for t in twins]))

    for a in np.flatnonzero(chu.bar_table < 0):
        violations.append(('closed_bar', [labels[a]]))
    bottom = states.bottom_index
    for unit, (yes, no) in (('Y_E', (bottom, -1)), ('bottom_effect', (-1, -1))):
        if chu.lookup_idx(yes, no) < 0:
            violations.append(('contains_units', [unit]))

    # every non-bottom state must be the yes part of some effect
    present = set(int(i) for i in chu.yes_idx if i >= 0)
    for i in range(states.size):
        if i != bottom and i not in present:
            violations.append(('state_tests', [names[i]]))

    report = ChuReport(space=chu.name, passed=not violations, checks=checks,
                       violations=violations)
    if not report.passed:
        logger.info(f"{chu.name}: {len(violations)} Chu-axiom violations")
    return report


# ============================================
# Reconstruction theorems
# ============================================

def _state_vector(chu: ChuSpace, a: Predicate) -> np.ndarray:
    if isinstance(a, Mapping):
        vector = np.full(chu.states.size, -1, dtype=np.int8)
        for state, value in a.items():
            vector[chu.states.index(state)] = int(value)
        if (vector < 0).any():
            raise PreconditionError("state predicate is not total")
        return vector
    vector = np.asarray(a, dtype=np.int8)
    if vector.shape != (chu.states.size,):
        raise PreconditionError("state predicate has the wrong length")
    return vector


def _effect_vector(chu: ChuSpace, b: Predicate) -> np.ndarray:
    if isinstance(b, Mapping):
        vector = np.full(chu.size, -1, dtype=np.int8)
        for effect, value in b.items():
            vector[chu.index(effect)] = int(value)
        if (vector < 0).any():
            raise PreconditionError("effect predicate is not total")
        return vector
    vector = np.asarray(b, dtype=np.int8)
    if vector.shape != (chu.size,):
        raise PreconditionError("effect predicate has the wrong length")
    return vector


def effect_index_from_row(chu: ChuSpace, row: np.ndarray) -> int:
    """Index-level version of :func:`effect_from_state_predicate`."""
    states = chu.states
    leq = states.leq_table
    if not LEQ[row[:, None], row[None, :]][leq].all():
        raise PreconditionError("state predicate is not monotone")
    if not (row[states.meet_table] == MEET[row[:, None], row[None, :]]).all():
        raise PreconditionError("state predicate does not preserve meets")
    ys, ns = np.flatnonzero(row == Y), np.flatnonzero(row == N)
    yes = states.meet_indices(ys) if len(ys) else -1
    no = states.meet_indices(ns) if len(ns) else -1
    i = chu.lookup_idx(yes, no)
    if i < 0:
        raise PreconditionError(f"the predicate's effect is not in {chu.name}")
    if not np.array_equal(chu.eval_table[i], row):
        raise InternalConsistencyError("reconstructed effect does not reproduce the predicate")
    return i


def effect_from_state_predicate(chu: ChuSpace, a: Predicate) -> Effect:
    """
    Unique effect whose row is the given state functional

    Args:
        chu: Chu space
        a: Value in {Y, N, ⊥} for every state (mapping or aligned sequence)

    Returns:
        l(meet a⁻¹(Y), meet a⁻¹(N)), with "." for empty preimages
    """
    return chu.effects[effect_index_from_row(chu, _state_vector(chu, a))]


def state_index_from_column(chu: ChuSpace, col: np.ndarray) -> int:
    """Index-level version of :func:`state_from_effect_predicate`."""
    if not LEQ[col[:, None], col[None, :]][chu.row_leq].all():
        raise PreconditionError("effect predicate is not monotone")
    meets = chu.label_meet_table
    inside = meets >= 0
    if not (col[np.maximum(meets, 0)] == MEET[col[:, None], col[None, :]])[inside].all():
        raise PreconditionError("effect predicate does not preserve meets")
    bars = chu.bar_table
    if (bars < 0).any() or not np.array_equal(col[bars], BAR[col]):
        raise PreconditionError("effect predicate is not bar-equivariant")
    if col[chu.yes_effect] != Y:
        raise PreconditionError("effect predicate does not send Y_E to Y")

    yes_parts = [int(chu.yes_idx[e]) for e in np.flatnonzero(col == Y)]
    if any(p < 0 for p in yes_parts):
        raise PreconditionError("an effect without a yes part is sent to Y")
    joined = chu.states.join_indices(yes_parts)
    if joined is None:
        raise PreconditionError("effects sent to Y have no common state")
    if not np.array_equal(chu.eval_table[:, joined], col):
        raise PreconditionError("effect predicate is not the column of a state")
    return joined


def state_from_effect_predicate(chu: ChuSpace, b: Predicate) -> str:
    """
    Unique state whose column is the given effect functional

    The effects sent to Y meet to l_B; the state is the yes part of l_B.
    """
    return chu.states.elements[state_index_from_column(chu, _effect_vector(chu, b))]


def chain_sup(chu: ChuSpace, chain: Sequence[str]) -> str:
    """Supremum of a chain of states rebuilt from the pointwise join of its columns."""
    states = chu.states
    idx = states.indices(chain)
    if not idx:
        raise PreconditionError("empty chain")
    for i in idx:
        for j in idx:
            if not (states.leq_table[i, j] or states.leq_table[j, i]):
                raise PreconditionError(f"{states.elements[i]} and {states.elements[j]} are not comparable")
    col = np.full(chu.size, BOT, dtype=np.int8)
    for i in idx:
        col = JOIN[col, chu.eval_table[:, i]]
    result = state_index_from_column(chu, col)
    top = max(idx, key=lambda i: states.leq_table[:, i].sum())
    if result != top:
        raise InternalConsistencyError("chain supremum differs from the largest chain element")
    return states.elements[result]


# ============================================
# Maximal and atomic effects
# ============================================

def max_effects(chu: ChuSpace) -> List[Effect]:
    """
    Maximal effects: quasi-antipodal two-sided labels plus Y_E and its bar

    Cross-checked against direct maximality in the effect order.
    """
    if not has_pure_description(chu.states):
        raise PreconditionError(f"{chu.states.name} has no pure description")
    computed = {chu.yes_effect, chu.yes_bar_effect}
    for i, (yes, no) in enumerate(zip(chu.yes_idx, chu.no_idx)):
        if yes >= 0 and no >= 0 and _quasi_antipodal_idx(chu.states, int(yes), int(no)):
            computed.add(i)
    direct = set(chu.effect_lattice.maximal_indices())
    if computed != direct:
        raise InternalConsistencyError(
            f"maximal effects of {chu.name} disagree: "
            f"{sorted(chu.labels[i] for i in computed ^ direct)}")
    return [chu.effects[i] for i in sorted(computed)]


def pure_effect_indices(chu: ChuSpace) -> List[int]:
    return [chu.index(e) for e in max_effects(chu)]


def atoms(chu: ChuSpace) -> List[Effect]:
    """One-sided effects on pure states: l(Σ,.) and l(.,Σ)."""
    result = []
    for p in chu.states.maximal_indices():
        for yes, no in ((p, -1), (-1, p)):
            i = chu.lookup_idx(yes, no)
            if i >= 0:
                result.append(chu.effects[i])
    return result


def pure_effect_decomposition(chu: ChuSpace, e: Union[str, Effect]) -> List[Effect]:
    """
    Pure effects above ``e`` in a reduced space; their meet must be ``e``

    Also checks l(σ,σ') = l(σ,σ*) ⊓ l(σ'*,σ') for two-sided labels.
    """
    if chu.kind != 'reduced':
        raise PreconditionError("pure-effect decomposition is defined for reduced spaces")
    i = chu.index(e)
    pure = pure_effect_indices(chu)
    above = [p for p in pure if chu.row_leq[i, p]]
    if not above:
        raise InternalConsistencyError(f"no pure effect lies above {chu.effects[i]}")
    row = chu.eval_table[above[0]]
    for p in above[1:]:
        row = MEET[row, chu.eval_table[p]]
    if not np.array_equal(row, chu.eval_table[i]):
        raise InternalConsistencyError(f"{chu.effects[i]} is not the meet of the pure effects above it")

    yes, no = int(chu.yes_idx[i]), int(chu.no_idx[i])
    if yes >= 0 and no >= 0:
        star = chu.states.star_index
        left = chu.lookup_idx(yes, int(star[yes]))
        right = chu.lookup_idx(int(star[no]), no)
        if left < 0 or right < 0 or chu.label_meet_table[left, right] != i:
            raise InternalConsistencyError(f"{chu.effects[i]} does not split along its star pairs")
    return [chu.effects[p] for p in above]


def irreducible_decomposition(chu: ChuSpace, e: Union[str, Effect]) -> List[Effect]:
    """Meet-irreducible effects above ``e``; their meet must be ``e``."""
    i = chu.index(e)
    lattice = chu.effect_lattice
    above = [p for p in chu.meet_irreducible_effects() if lattice.leq_table[i, p]]
    if not above or lattice.meet_indices(above) != i:
        raise InternalConsistencyError(f"{chu.effects[i]} is not the meet of the irreducible effects above it")
    return [chu.effects[p] for p in above]
