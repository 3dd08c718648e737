# Semichu - Morphisms and Channels
#
# Chu morphisms between States/Effects spaces: meet-preserving state maps
# with their dual effect maps, composition, pointwise infima, exhaustive
# enumeration on small spaces and the induced channels on tensor products.

import logging
from functools import partial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .boolean_domain import MEET
from .chu_effects import ChuSpace, Effect, effect_index_from_row
from .config import get_cap
from .exceptions import CapExceededError, InternalConsistencyError, PreconditionError, SchemaError
from .lattice_core import Verdict
from .tensor_products import TensorTable, tensor_space

logger = logging.getLogger(__name__)

StateMap = Union[Mapping[str, str], Sequence[int], np.ndarray]


def _as_index_map(source: ChuSpace, target: ChuSpace, state_map: StateMap) -> np.ndarray:
    if isinstance(state_map, Mapping):
        missing = [s for s in source.states.elements if s not in state_map]
        if missing:
            raise PreconditionError(f"state map is not total: no image for {', '.join(missing)}")
        extra = [s for s in state_map if s not in source.states.elements]
        if extra:
            raise SchemaError(f"state map mentions unknown states: {', '.join(extra)}")
        return np.array([target.states.index(state_map[s]) for s in source.states.elements],
                        dtype=np.int32)
    mapping = np.asarray(state_map, dtype=np.int32)
    if mapping.shape != (source.states.size,):
        raise PreconditionError("state map has the wrong length")
    if (mapping < 0).any() or (mapping >= target.states.size).any():
        raise PreconditionError("state map points outside the target states")
    return mapping


def _meet_failure(source: ChuSpace, target: ChuSpace, mapping: np.ndarray) -> Optional[Tuple[int, int]]:
    meets_s, meets_t = source.states.meet_table, target.states.meet_table
    image_of_meet = mapping[meets_s]
    meet_of_images = meets_t[mapping[:, None], mapping[None, :]]
    bad = np.argwhere(image_of_meet != meet_of_images)
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return None


def is_morphism(source: ChuSpace, target: ChuSpace, state_map: StateMap) -> Verdict:
    """
    Check that a state map preserves binary meets

    Args:
        source, target: Chu spaces
        state_map: Total map from source states to target states

    Returns:
        Verdict; the witness is a pair of source states whose meet is not preserved
    """
    mapping = _as_index_map(source, target, state_map)
    failure = _meet_failure(source, target, mapping)
    if failure is None:
        return Verdict(True)
    names = source.states.elements
    return Verdict(False, (names[failure[0]], names[failure[1]]))


def _same_space(a: ChuSpace, b: ChuSpace) -> bool:
    return a is b or (a.states.same_structure(b.states) and a.labels == b.labels)


class Morphism:
    """
    Chu morphism with its adjoint computed at construction

    Args:
        source: Chu space of the domain
        target: Chu space of the codomain
        state_map: Meet-preserving map on states (ids or indices)

    Raises:
        PreconditionError: if the map does not preserve meets or its adjoint
            leaves the source effect space
    """

    def __init__(self, source: ChuSpace, target: ChuSpace, state_map: StateMap):
        self.source = source
        self.target = target
        self.mapping = _as_index_map(source, target, state_map)
        failure = _meet_failure(source, target, self.mapping)
        if failure is not None:
            names = source.states.elements
            raise PreconditionError(
                f"state map does not preserve the meet of {names[failure[0]]} and {names[failure[1]]}")
        self.mapping.flags.writeable = False
        self.adjoint = self._build_adjoint()
        self.adjoint.flags.writeable = False

    def _build_adjoint(self) -> np.ndarray:
        # f*(m) is the source effect whose row is σ ↦ eval(m, f(σ))
        pulled = self.target.eval_table[:, self.mapping]
        adjoint = np.array([effect_index_from_row(self.source, row) for row in pulled], dtype=np.int32)
        if not np.array_equal(self.source.eval_table[adjoint], pulled):
            raise InternalConsistencyError("adjoint violates the duality equation")
        return adjoint

    def __call__(self, state: str) -> str:
        return self.target.states.elements[self.mapping[self.source.states.index(state)]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (_same_space(self.source, other.source) and _same_space(self.target, other.target)
                and np.array_equal(self.mapping, other.mapping))

    def __hash__(self) -> int:
        return hash((self.source.name, self.target.name, self.mapping.tobytes()))

    def __repr__(self) -> str:
        return f"Morphism({self.source.name} -> {self.target.name})"

    @property
    def state_map(self) -> Dict[str, str]:
        names_s, names_t = self.source.states.elements, self.target.states.elements
        return {names_s[i]: names_t[j] for i, j in enumerate(self.mapping)}

    @property
    def adjoint_map(self) -> Dict[str, str]:
        return {self.target.labels[m]: self.source.labels[e] for m, e in enumerate(self.adjoint)}

    def pull_back(self, effect: Union[str, Effect]) -> Effect:
        """f*(m) for an effect of the target."""
        return self.source.effects[self.adjoint[self.target.index(effect)]]

    def duality_holds(self) -> bool:
        pulled = self.target.eval_table[:, self.mapping]
        return bool(np.array_equal(self.source.eval_table[self.adjoint], pulled))

    def adjoint_is_surjective(self) -> bool:
        return len(set(self.adjoint.tolist())) == self.source.size

    def state_map_is_injective(self) -> bool:
        return len(set(self.mapping.tolist())) == self.source.states.size


def identity(chu: ChuSpace) -> Morphism:
    return Morphism(chu, chu, np.arange(chu.states.size))


def adjoint(f: Morphism) -> Dict[str, str]:
    """Effect map of a morphism, target label ↦ source label."""
    return f.adjoint_map


def compose(f: Morphism, g: Morphism) -> Morphism:
    """
    g after f; the adjoint is f* after g*

    Raises:
        PreconditionError: when the target of f is not the source of g
    """
    if not _same_space(f.target, g.source):
        raise PreconditionError(f"cannot compose {f} with {g}: endpoint mismatch")
    result = Morphism(f.source, g.target, g.mapping[f.mapping])
    if not np.array_equal(result.adjoint, f.adjoint[g.adjoint]):
        raise InternalConsistencyError("adjoint of a composite is not the composite of adjoints")
    return result


def morphism_meet(f: Morphism, g: Morphism) -> Morphism:
    """
    Pointwise infimum of two morphisms with the same endpoints

    Its adjoint is the pointwise meet of the two adjoints.
    """
    if not (_same_space(f.source, g.source) and _same_space(f.target, g.target)):
        raise PreconditionError("morphism_meet needs morphisms with the same endpoints")
    meets = f.target.states.meet_table[f.mapping, g.mapping]
    result = Morphism(f.source, f.target, meets)
    rows = f.source.eval_table
    if not np.array_equal(rows[result.adjoint], MEET[rows[f.adjoint], rows[g.adjoint]]):
        raise InternalConsistencyError("adjoint of a meet is not the meet of adjoints")
    return result


def enumerate_morphisms(source: ChuSpace, target: ChuSpace) -> List[Morphism]:
    """
    Every morphism between two small Chu spaces

    Backtracks over state images in declaration order; a partial map is
    abandoned as soon as two assigned states with an assigned meet violate
    meet preservation.
    """
    limit = get_cap('morphism_elements')
    largest = max(source.states.size, target.states.size)
    if largest > limit:
        raise CapExceededError('morphism_elements', limit, largest)

    meets_s, meets_t = source.states.meet_table, target.states.meet_table
    n, m = source.states.size, target.states.size
    mapping = np.full(n, -1, dtype=np.int32)
    found: List[Morphism] = []

    def consistent(k: int) -> bool:
        for i in range(k + 1):
            for j in range(i, k + 1):
                w = meets_s[i, j]
                if w <= k and mapping[w] != meets_t[mapping[i], mapping[j]]:
                    return False
        return True

    def extend(k: int) -> None:
        if k == n:
            found.append(Morphism(source, target, mapping.copy()))
            return
        for value in range(m):
            mapping[k] = value
            if consistent(k):
                extend(k + 1)
        mapping[k] = -1

    extend(0)
    logger.debug(f"{source.name} -> {target.name}: {len(found)} morphisms")
    return found


def composition_law_failure(f: Morphism, gs: Sequence[Morphism]) -> Optional[int]:
    """
    Check (g∘f)* = f*∘g* for one f against many g at once

    Works on evaluation tables: the composite adjoint must reproduce the
    rows σ ↦ eval(m, g(f(σ))).

    Returns:
        Position in ``gs`` of the first failure, or None
    """
    if not gs:
        return None
    if not all(_same_space(f.target, g.source) for g in gs):
        raise PreconditionError("composition law needs composable morphisms")
    maps = np.stack([g.mapping for g in gs])
    adjoints = np.stack([g.adjoint for g in gs])
    target_rows = gs[0].target.eval_table
    expected = np.transpose(target_rows[:, maps[:, f.mapping]], (1, 0, 2))
    actual = f.source.eval_table[f.adjoint[adjoints]]
    bad = np.flatnonzero((expected != actual).any(axis=(1, 2)))
    return int(bad[0]) if len(bad) else None


def meet_law_failure(f: Morphism, gs: Sequence[Morphism]) -> Optional[int]:
    """
    Check (f ⊓ g)* = f* ⊓ g* pointwise for one f against many g

    Returns:
        Position in ``gs`` of the first failure, or None
    """
    if not gs:
        return None
    maps = np.stack([g.mapping for g in gs])
    adjoints = np.stack([g.adjoint for g in gs])
    meets = f.target.states.meet_table[f.mapping[None, :], maps]
    expected = np.transpose(f.target.eval_table[:, meets], (1, 0, 2))
    rows = f.source.eval_table
    actual = MEET[rows[f.adjoint][None, :, :], rows[adjoints]]
    bad = np.flatnonzero((expected != actual).any(axis=(1, 2)))
    return int(bad[0]) if len(bad) else None


# ============================================
# Channels on tensor products
# ============================================

def apply_channel_minimal(f: Morphism, g: Morphism, phi: TensorTable) -> TensorTable:
    """
    Ω(U) ↦ Ω({(f(σ), g(τ)) : (σ,τ) ∈ U})

    The image is computed from the closed pair set and from its minimal
    generators; the two must agree.
    """
    space = phi.space
    if not (_same_space(space.chu_a, f.source) and _same_space(space.chu_b, g.source)):
        raise PreconditionError("channel endpoints do not match the table")
    if not space.is_minimal_member(phi):
        raise PreconditionError("the minimal channel acts on minimal members")
    image_space = tensor_space(f.target, g.target)

    def push(pairs) -> TensorTable:
        return image_space.omega((f(a), g(b)) for a, b in pairs)

    closed = space.galois_closure(phi)
    image = push(closed)
    if push(space.minimal_generators(closed)) != image:
        raise InternalConsistencyError("minimal channel depends on the representative")
    return image


def apply_channel_regular(f: Morphism, g: Morphism, phi: TensorTable) -> TensorTable:
    """(e, m) ↦ Φ(f*(e), g*(m)) on tables of the source tensor space."""
    space = phi.space
    if not (_same_space(space.chu_a, f.source) and _same_space(space.chu_b, g.source)):
        raise PreconditionError("channel endpoints do not match the table")
    return tensor_space(f.target, g.target).table(phi.cells[np.ix_(f.adjoint, g.adjoint)])


def tensor_channel_minimal(f: Morphism, g: Morphism) -> Callable[[TensorTable], TensorTable]:
    return partial(apply_channel_minimal, f, g)


def tensor_channel_regular(f: Morphism, g: Morphism) -> Callable[[TensorTable], TensorTable]:
    return partial(apply_channel_regular, f, g)
