# Semichu - Export
#
# DOT (Hasse diagrams through graphviz) and structured JSON exports of
# spaces of states, effect spaces and enumerated tensor carriers.

import json
import logging
from typing import Any, Dict, List, NamedTuple, Sequence, Union

import graphviz
import networkx as nx
import numpy as np

from .boolean_domain import format_value
from .chu_effects import ChuSpace
from .config import OUTPUT_CONFIG
from .documents import canonical_json, format_pairset
from .exceptions import SchemaError
from .fraser_canonical import enumerate_fraser
from .lattice_core import SemiLattice, to_document
from .tensor_products import TensorSpace

logger = logging.getLogger(__name__)

FORMATS = ('dot', 'structured')


class Carrier(NamedTuple):
    """Finite poset given by labels and an order table"""
    name: str
    labels: List[str]
    leq: np.ndarray


def hasse_graph(labels: Sequence[str], leq: np.ndarray) -> nx.DiGraph:
    """Transitive reduction of an order table, edges pointing upwards."""
    graph = nx.DiGraph()
    graph.add_nodes_from(labels)
    graph.add_edges_from((labels[i], labels[j]) for i, j in np.argwhere(leq) if i != j)
    reduced = nx.transitive_reduction(graph)
    reduced.add_nodes_from(labels)
    return reduced


def _carrier_of(obj: Union[SemiLattice, ChuSpace, Carrier]) -> Carrier:
    if isinstance(obj, SemiLattice):
        return Carrier(obj.name, list(obj.elements), obj.leq_table)
    if isinstance(obj, ChuSpace):
        return Carrier(obj.name, obj.labels, obj.row_leq)
    return obj


def minimal_carrier(space: TensorSpace) -> Carrier:
    """Minimal tensor product ordered by reverse inclusion of closed pair sets."""
    closed = space.enumerate_minimal()
    leq = np.array([[a >= b for b in closed] for a in closed], dtype=bool)
    labels = [format_pairset(space.sorted_pairs(c)) for c in closed]
    return Carrier(f"minimal({space.lattice_a.name},{space.lattice_b.name})", labels, leq)


def fraser_carrier(lattice_a: SemiLattice, lattice_b: SemiLattice) -> Carrier:
    bifilters = enumerate_fraser(lattice_a, lattice_b)
    leq = np.array([[f.pairs >= g.pairs for g in bifilters] for f in bifilters], dtype=bool)

    def key(pair):
        return lattice_a.index(pair[0]), lattice_b.index(pair[1])

    labels = [format_pairset(sorted(f.pairs, key=key)) for f in bifilters]
    return Carrier(f"fraser({lattice_a.name},{lattice_b.name})", labels, leq)


def to_dot(obj: Union[SemiLattice, ChuSpace, Carrier]) -> str:
    """
    Hasse diagram as DOT source

    Args:
        obj: Space of states, effect space or tensor carrier

    Returns:
        DOT text with one node per element and one edge per cover
    """
    carrier = _carrier_of(obj)
    graph = hasse_graph(carrier.labels, carrier.leq)
    dot = graphviz.Digraph(name=carrier.name, graph_attr={'rankdir': 'BT'})
    for label in carrier.labels:
        dot.node(label)
    order = {label: i for i, label in enumerate(carrier.labels)}
    for lower, upper in sorted(graph.edges(), key=lambda e: (order[e[0]], order[e[1]])):
        dot.edge(lower, upper)
    return dot.source


def to_structured(obj: Union[SemiLattice, ChuSpace, Carrier]) -> str:
    """Canonical JSON: the semilattice document, or a generic order document."""
    if isinstance(obj, SemiLattice):
        return canonical_json(to_document(obj))
    carrier = _carrier_of(obj)
    graph = hasse_graph(carrier.labels, carrier.leq)
    order = {label: i for i, label in enumerate(carrier.labels)}
    data: Dict[str, Any] = {
        'name': carrier.name,
        'elements': carrier.labels,
        'covers': [list(e) for e in sorted(graph.edges(), key=lambda e: (order[e[0]], order[e[1]]))],
    }
    if isinstance(obj, ChuSpace):
        data['kind'] = obj.kind
        data['states'] = list(obj.states.elements)
        data['evaluation'] = {label: [format_value(v) for v in row] for label, row in zip(obj.labels, obj.eval_table)}
    return json.dumps(data, indent=OUTPUT_CONFIG['json_indent'], ensure_ascii=False) + '\n'


def export(obj: Union[SemiLattice, ChuSpace, Carrier], fmt: str) -> str:
    if fmt == 'dot':
        return to_dot(obj)
    if fmt == 'structured':
        return to_structured(obj)
    raise SchemaError(f"unknown export format '{fmt}' (choose from {', '.join(FORMATS)})")
