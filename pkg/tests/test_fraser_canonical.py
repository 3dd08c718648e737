from itertools import combinations

import pytest

from semichu.exceptions import PreconditionError
from semichu.fraser_canonical import (bifilter_closure, compare_orders, enumerate_fraser, fraser_equal,
                                      fraser_leq, fraser_meet, fraser_member, is_bifilter,
                                      matches_fraser_element, order_isomorphism)
from semichu.tensor_products import non_nn_maximal_example, sigma_witness, tensor_space

DIAGONAL = [('s1', 's1'), ('s2', 's2'), ('s3', 's3')]


class TestBiFilters:

    def test_bottom_pair_generates_everything(self, flat3, chain2):
        closure = bifilter_closure(flat3, chain2, [('bot', 'bot')])
        assert len(closure) == flat3.size * chain2.size

    def test_coordinate_meet_rule(self, flat3):
        pairs = [('s1', 's1'), ('s2', 's1')]
        assert not is_bifilter(flat3, flat3, pairs)
        closure = bifilter_closure(flat3, flat3, pairs)
        assert ('bot', 's1') in closure
        assert ('s3', 's1') in closure
        assert ('bot', 'bot') not in closure

    def test_diagonal_is_already_closed(self, flat3):
        assert is_bifilter(flat3, flat3, DIAGONAL)
        assert bifilter_closure(flat3, flat3, DIAGONAL).pairs == frozenset(DIAGONAL)

    def test_upward_closure(self, chain3, chain2):
        closure = bifilter_closure(chain3, chain2, [('m', 'bot')])
        assert closure.pairs == {('m', 'bot'), ('m', 't'), ('t', 'bot'), ('t', 't')}

    def test_empty_generators(self, flat3):
        with pytest.raises(PreconditionError):
            bifilter_closure(flat3, flat3, [])

    def test_closure_is_a_bifilter(self, flat3, bool_l):
        pairs = [(a, b) for a in flat3 for b in bool_l]
        for subset in combinations(pairs, 2):
            assert is_bifilter(flat3, bool_l, bifilter_closure(flat3, bool_l, subset))


class TestOrder:

    def test_membership(self, flat3):
        assert fraser_member(flat3, flat3, DIAGONAL, ('s1', 's1'))
        assert not fraser_member(flat3, flat3, DIAGONAL, ('bot', 'bot'))

    def test_leq_meet_and_equality(self, chain2):
        assert fraser_leq(chain2, chain2, [('bot', 'bot')], [('t', 't'), ('bot', 't')])
        assert not fraser_leq(chain2, chain2, [('t', 't')], [('bot', 'bot')])
        meet = fraser_meet(chain2, chain2, [('bot', 't')], [('t', 'bot')])
        assert meet.pairs == {('bot', 't'), ('t', 'bot'), ('t', 't')}
        assert fraser_equal(chain2, chain2, [('bot', 't'), ('t', 't')], [('bot', 't')])

    def test_three_diagonal_pairs_diverge(self, flat3):
        assert compare_orders(flat3, flat3, DIAGONAL, ('bot', 'bot')) == {'fraser': False, 'minimal': True}

    def test_two_diagonal_pairs_agree(self, flat3):
        assert compare_orders(flat3, flat3, DIAGONAL[:2], ('bot', 'bot')) == {'fraser': False, 'minimal': False}

    def test_fraser_implies_minimal(self, flat3, chain3):
        pairs = [(a, b) for a in flat3 for b in chain3]
        for subset in combinations(pairs, 2):
            for target in pairs:
                verdict = compare_orders(flat3, chain3, subset, target)
                assert verdict['minimal'] or not verdict['fraser']


class TestEnumeration:

    def test_chain2_square(self, chain2):
        bifilters = enumerate_fraser(chain2, chain2)
        assert len(bifilters) == 5
        assert all(is_bifilter(chain2, chain2, f) for f in bifilters)

    def test_singleton(self, singleton, bool_l):
        assert len(enumerate_fraser(singleton, bool_l)) == bool_l.size

    def test_isomorphic_with_a_distributive_factor(self, natural, chain2, flat3):
        report = order_isomorphism(tensor_space(natural(chain2), natural(flat3)))
        assert report.isomorphic, report.witness
        assert report.fraser_count == report.minimal_count

    def test_pure_tensor_matches_a_bifilter(self, natural, bool_l):
        space = tensor_space(natural(bool_l), natural(bool_l))
        assert matches_fraser_element(space.pure_tensor('Y', 'N'))
        assert not matches_fraser_element(non_nn_maximal_example(space))

    def test_maximal_tables_match_exactly_the_minimal_ones(self, natural, bool_l):
        space = tensor_space(natural(bool_l), natural(bool_l))
        minimal = {t.key() for t in space.minimal_tables()}
        maximal = space.enumerate_maximal()
        assert any(t.key() not in minimal for t in maximal)
        for table in maximal:
            assert matches_fraser_element(table) == (table.key() in minimal)

    def test_sigma_matches_no_bifilter(self, reduced, flat4):
        space = tensor_space(reduced(flat4), reduced(flat4))
        assert not matches_fraser_element(sigma_witness(space, 'a', 'b', 'a', 'b'))
