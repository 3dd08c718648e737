import json

import pytest

from semichu.exceptions import SchemaError
from semichu.export import export, fraser_carrier, hasse_graph, minimal_carrier, to_dot, to_structured
from semichu.fixtures import fixture_path
from semichu.tensor_products import tensor_space


def test_flat3_dot(flat3):
    dot = to_dot(flat3)
    assert dot.count('->') == 3
    assert 'rankdir=BT' in dot
    for element in flat3:
        assert element in dot


def test_natural_bool_effects(natural, bool_l):
    chu = natural(bool_l)
    assert hasse_graph(chu.labels, chu.row_leq).number_of_nodes() == 9
    dot = export(chu, 'dot')
    assert '"l(Y,N)"' in dot


def test_structured_lattice_matches_the_fixture(flat3):
    assert to_structured(flat3) == fixture_path('FLAT3').read_text(encoding='utf-8')


def test_structured_effect_space(natural, bool_l):
    data = json.loads(to_structured(natural(bool_l)))
    assert data['kind'] == 'natural'
    assert data['states'] == ['bot', 'Y', 'N']
    assert data['evaluation']['l(Y,N)'] == ['bot', 'Y', 'N']
    assert len(data['elements']) == 9


def test_minimal_carrier(natural, chain2):
    carrier = minimal_carrier(tensor_space(natural(chain2), natural(chain2)))
    assert len(carrier.labels) == 5
    data = json.loads(export(carrier, 'structured'))
    assert len(data['covers']) == 5


def test_fraser_carrier_matches_minimal(natural, chain2):
    fraser = fraser_carrier(chain2, chain2)
    minimal = minimal_carrier(tensor_space(natural(chain2), natural(chain2)))
    assert sorted(fraser.labels) == sorted(minimal.labels)
    assert hasse_graph(fraser.labels, fraser.leq).number_of_edges() == 5


def test_unknown_format(flat3):
    with pytest.raises(SchemaError):
        export(flat3, 'svg')
