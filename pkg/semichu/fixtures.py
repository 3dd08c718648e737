# Semichu - Fixture Corpus
#
# Named fixture spaces shipped with the package and an exhaustive
# generator of small semilattices up to isomorphism.

import logging
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Union

import networkx as nx
import numpy as np

from .config import FIXTURE_DIR, get_cap, get_fixture_files
from .documents import load_document
from .exceptions import CapExceededError, SchemaError
from .lattice_core import SemiLattice, load_semilattice

logger = logging.getLogger(__name__)

FIXTURE_ALIASES = {
    'FLAT4*': 'FLAT4star',
    'FLAT4⋆': 'FLAT4star',
    'FLAT4STAR': 'FLAT4star',
    'SINGLETON': 'singleton',
}

# Fixtures with at most five elements, used by the exhaustive suites
SMALL_FIXTURES = ['singleton', 'BOOL', 'CHAIN2', 'CHAIN3', 'FLAT3', 'FLAT4star']


def list_fixtures() -> List[str]:
    return sorted(path.stem for path in get_fixture_files())


def fixture_path(name: str) -> Path:
    name = FIXTURE_ALIASES.get(name, FIXTURE_ALIASES.get(name.upper(), name))
    return FIXTURE_DIR / f"{name}.json"


def load_fixture(name: str) -> SemiLattice:
    """
    Load a shipped fixture by name

    Args:
        name: Fixture name such as 'FLAT3' (aliases like 'FLAT4*' accepted)

    Returns:
        SemiLattice (cached, shared between callers)
    """
    path = fixture_path(name)
    if not path.exists():
        raise SchemaError(f"unknown fixture '{name}' (available: {', '.join(list_fixtures())})")
    return _load_path(path)


@lru_cache(maxsize=None)
def _load_path(path: Path) -> SemiLattice:
    return load_semilattice(load_document(path))


def load_fixtures(names: Optional[List[str]] = None) -> Dict[str, SemiLattice]:
    return {name: load_fixture(name) for name in (names or list_fixtures())}


# ============================================
# Exhaustive generator
# ============================================

def _strict_orders(k: int) -> Iterator[np.ndarray]:
    """Transitive strict orders on k points whose relations point from lower to higher index."""
    slots = list(combinations(range(k), 2))
    for bits in range(1 << len(slots)):
        rel = np.zeros((k, k), dtype=bool)
        for pos, (i, j) in enumerate(slots):
            if bits >> pos & 1:
                rel[i, j] = True
        if k and ((rel.astype(np.int32) @ rel.astype(np.int32)) > 0)[~rel].any():
            continue
        yield rel


def _with_bottom(rel: np.ndarray) -> np.ndarray:
    k = rel.shape[0]
    leq = np.eye(k + 1, dtype=bool)
    leq[0, :] = True
    leq[1:, 1:] |= rel
    return leq


def _has_meets(leq: np.ndarray) -> bool:
    n = leq.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            lower = leq[:, i] & leq[:, j]
            if not (lower & leq[lower].all(axis=0)).any():
                return False
    return True


def _cover_graph(leq: np.ndarray) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(leq.shape[0]))
    graph.add_edges_from((int(i), int(j)) for i, j in np.argwhere(leq) if i != j)
    return nx.transitive_reduction(graph)


def semilattices_of_size(n: int) -> List[SemiLattice]:
    """
    All semilattices with exactly n elements, one per isomorphism class

    Strict orders on the n-1 non-bottom points are generated with edges
    from lower to higher index (every order has such a labelling), a
    bottom is added, and candidates are bucketed by Weisfeiler-Lehman hash
    before exact isomorphism tests on the cover graphs.

    Args:
        n: Carrier size (1 <= n <= generator cap)

    Returns:
        List of SemiLattice named 'L{n}_{k}' with elements bot, x1, ...
    """
    limit = get_cap('generator_elements')
    if n > limit:
        raise CapExceededError('generator_elements', limit, n)
    if n < 1:
        return []

    buckets: Dict[str, List[nx.DiGraph]] = {}
    orders: List[np.ndarray] = []
    for rel in _strict_orders(n - 1):
        leq = _with_bottom(rel)
        if not _has_meets(leq):
            continue
        graph = _cover_graph(leq)
        key = nx.weisfeiler_lehman_graph_hash(graph)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            continue
        bucket.append(graph)
        orders.append(leq)

    elements = ['bot'] + [f"x{i}" for i in range(1, n)]
    result = [SemiLattice(f"L{n}_{k}", elements, leq) for k, leq in enumerate(orders, start=1)]
    logger.debug(f"{len(result)} semilattices with {n} elements")
    return result


def semilattices_up_to(n: int) -> Iterator[SemiLattice]:
    """Every semilattice with 1..n elements up to isomorphism."""
    for size in range(1, n + 1):
        yield from semilattices_of_size(size)


def resolve_operand(operand: Union[str, Path]) -> SemiLattice:
    """A JSON path or a fixture name, optionally prefixed with 'A=' or 'B='."""
    text = str(operand)
    if len(text) > 2 and text[1] == '=' and text[0] in 'AB':
        text = text[2:]
    path = Path(text)
    if path.suffix == '.json' or path.exists():
        return load_semilattice(load_document(path))
    return load_fixture(text)
