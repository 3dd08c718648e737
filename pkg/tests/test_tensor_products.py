from itertools import combinations

import hypothesis
import hypothesis.strategies as strat
import numpy as np
import pytest

from semichu.boolean_domain import BOT, N, Y
from semichu.config import override_caps
from semichu.exceptions import CapExceededError, PreconditionError
from semichu.fixtures import load_fixture
from semichu.tensor_products import (TensorSpace, minimal_leq_criterion, non_nn_maximal_example,
                                     omega, pure_tensor, sigma_witness, table_leq, table_meet,
                                     tensor_space)
from semichu.verify import natural_space


@pytest.fixture(scope='module')
def bool_square(natural, bool_l):
    return tensor_space(natural(bool_l), natural(bool_l))


@pytest.fixture(scope='module')
def chain2_square(natural, chain2):
    return tensor_space(natural(chain2), natural(chain2))


@pytest.fixture(scope='module')
def flat4_reduced_square(reduced, flat4):
    return tensor_space(reduced(flat4), reduced(flat4))


class TestPureTensors:

    def test_cells_are_bullet_products(self, bool_square):
        iota = bool_square.pure_tensor('Y', 'N')
        assert iota.cell('l(Y,N)', 'l(N,Y)') == Y
        assert iota.cell('l(Y,N)', 'l(Y,N)') == N
        assert iota.cell('l(.,.)', 'l(N,Y)') == BOT
        assert iota.cell('l(.,.)', 'l(Y,N)') == N

    def test_pure_tensor_is_the_omega_of_its_pair(self, natural, bool_l, flat3):
        a, b = natural(bool_l), natural(flat3)
        assert omega(a, b, [('Y', 's1')]) == pure_tensor(a, b, 'Y', 's1')

    def test_omega_is_a_meet(self, bool_square):
        pairs = [('Y', 'Y'), ('N', 'N')]
        tables = [bool_square.pure_tensor(*p) for p in pairs]
        assert bool_square.omega(pairs) == table_meet(tables)
        for t in tables:
            assert table_leq(bool_square.omega(pairs), t)

    def test_omega_of_nothing(self, bool_square):
        with pytest.raises(PreconditionError):
            bool_square.omega([])

    def test_tables_are_read_only(self, bool_square):
        iota = bool_square.pure_tensor('Y', 'Y')
        with pytest.raises(ValueError):
            iota.cells[0, 0] = Y

    def test_mismatched_tables(self, bool_square, chain2_square):
        with pytest.raises(PreconditionError):
            bool_square.table_leq(bool_square.pure_tensor('Y', 'Y'), chain2_square.pure_tensor('t', 't'))

    def test_space_is_shared(self, natural, bool_l):
        assert tensor_space(natural(bool_l), natural(bool_l)) is tensor_space(natural(bool_l), natural(bool_l))


class TestGaloisClosure:

    def test_closure_of_a_pure_tensor_is_its_upset(self, chain2_square):
        closed = chain2_square.galois_closure(chain2_square.pure_tensor('bot', 't'))
        assert closed == {('bot', 't'), ('t', 't')}

    def test_closed_pairs(self, chain2_square):
        assert chain2_square.closed_pairs([('bot', 'bot')]) == frozenset(chain2_square.all_pairs())
        assert chain2_square.closed_pairs([('bot', 't'), ('t', 'bot')]) == {('bot', 't'), ('t', 'bot'), ('t', 't')}

    def test_minimal_generators(self, chain2_square):
        pairs = [('bot', 't'), ('t', 'bot'), ('t', 't')]
        assert chain2_square.minimal_generators(pairs) == [('bot', 't'), ('t', 'bot')]


class TestMinimalOrder:

    def test_diagonal_is_not_below_bottom_pair(self, flat3):
        assert not minimal_leq_criterion(flat3, flat3, [('s1', 's1'), ('s2', 's2')], ('bot', 'bot'))

    def test_member_of_the_generators(self, flat3):
        assert minimal_leq_criterion(flat3, flat3, [('s1', 's1'), ('s2', 's2')], ('s1', 's1'))

    def test_empty_generator_set(self, flat3):
        with pytest.raises(PreconditionError):
            minimal_leq_criterion(flat3, flat3, [], ('bot', 'bot'))

    @pytest.mark.parametrize('names', [('BOOL', 'FLAT3'), ('FLAT3', 'FLAT3'), ('CHAIN3', 'FLAT3'), ('CHAIN2', 'BOOL')])
    def test_criterion_matches_tables(self, natural, names):
        la, lb = (load_fixture(n) for n in names)
        space = tensor_space(natural(la), natural(lb))
        pairs = space.all_pairs()
        for size in (1, 2, 3):
            for subset in combinations(pairs, size):
                left = space.omega(subset)
                for target in pairs:
                    expected = space.table_leq(left, space.pure_tensor(*target))
                    assert minimal_leq_criterion(la, lb, subset, target) == expected, (subset, target)

    def test_minimal_leq_of_pair_sets(self, chain2_square):
        assert chain2_square.minimal_leq([('bot', 'bot')], [('t', 't')])
        assert not chain2_square.minimal_leq([('t', 't')], [('bot', 'bot')])


class TestMinimalEnumeration:

    def test_chain2_square_has_five_elements(self, chain2_square):
        closed = chain2_square.enumerate_minimal()
        assert len(closed) == 5
        assert frozenset(chain2_square.all_pairs()) in closed

    def test_singleton_square(self, natural, singleton):
        space = tensor_space(natural(singleton), natural(singleton))
        assert len(space.enumerate_minimal()) == 1

    def test_every_enumerated_table_is_minimal(self, chain2_square):
        for table in chain2_square.minimal_tables():
            assert chain2_square.is_minimal_member(table)

    def test_pair_cap(self, natural, flat4):
        space = TensorSpace(natural(flat4), natural(flat4))
        override_caps(10)
        try:
            with pytest.raises(CapExceededError):
                space.enumerate_minimal()
        finally:
            override_caps(None)


class TestMaximalAndRegular:

    def test_pure_tensors_are_maximal_members(self, bool_square):
        for a in ('bot', 'Y', 'N'):
            for b in ('bot', 'Y', 'N'):
                table = bool_square.pure_tensor(a, b)
                assert bool_square.is_maximal_member(table)
                assert bool_square.is_regular_member(table)

    def test_minimal_within_regular_within_maximal(self, chain2_square):
        maximal = chain2_square.enumerate_maximal()
        maximal_keys = {t.key() for t in maximal}
        regular_keys = {t.key() for t in chain2_square.enumerate_regular()}
        minimal_keys = {t.key() for t in chain2_square.minimal_tables()}
        assert minimal_keys <= regular_keys <= maximal_keys

    def test_regular_equals_minimal_with_bool(self, natural, bool_l, chain2):
        space = tensor_space(natural(bool_l), natural(chain2))
        regular = {t.key() for t in space.enumerate_regular()}
        minimal = {t.key() for t in space.minimal_tables()}
        assert regular == minimal

    def test_non_nn_example(self, bool_square):
        table = non_nn_maximal_example(bool_square)
        membership = bool_square.classify_table(table)
        assert membership['maximal']
        assert not membership['nn']
        assert not membership['regular']
        assert table.cell('l(.,bot)', 'l(.,bot)') == Y

    def test_regular_needs_a_maximal_member(self, bool_square):
        zeros = bool_square.table(np.zeros(bool_square.shape, dtype=np.int8))
        assert not bool_square.is_maximal_member(zeros)
        with pytest.raises(PreconditionError):
            bool_square.is_regular_member(zeros)

    def test_marginals_of_a_pure_tensor(self, bool_square):
        table = bool_square.pure_tensor('Y', 'N')
        assert bool_square.marginal_eta(table) == 'Y'
        assert bool_square.marginal_lambda(table) == 'N'

    def test_grid_cap(self, natural, flat4):
        space = TensorSpace(natural(flat4), natural(flat4))
        override_caps(20)
        try:
            with pytest.raises(CapExceededError):
                space.enumerate_maximal()
        finally:
            override_caps(None)


class TestSuprema:

    def test_sup_in_chain2_square(self, chain2_square):
        left = chain2_square.pure_tensor('bot', 't')
        right = chain2_square.pure_tensor('t', 'bot')
        assert chain2_square.sup_minimal(left, right) == chain2_square.pure_tensor('t', 't')

    def test_sup_without_common_upper_bound(self, natural, flat3):
        space = tensor_space(natural(flat3), natural(flat3))
        assert space.sup_minimal(space.pure_tensor('s1', 's1'), space.pure_tensor('s2', 's2')) is None

    def test_sup_needs_minimal_members(self, bool_square):
        table = non_nn_maximal_example(bool_square)
        with pytest.raises(PreconditionError):
            bool_square.sup_minimal(table, table)


class TestSigmaWitness:

    def test_regular_but_not_minimal(self, flat4_reduced_square):
        sigma = sigma_witness(flat4_reduced_square, 'a', 'b', 'a', 'b')
        membership = flat4_reduced_square.classify_table(sigma)
        assert membership == {'maximal': True, 'nn': True, 'regular': True, 'minimal': False}

    def test_states_must_be_distinct(self, flat4_reduced_square):
        with pytest.raises(PreconditionError):
            sigma_witness(flat4_reduced_square, 'a', 'a', 'a', 'b')

    def test_second_state_must_avoid_the_star(self, flat4_reduced_square):
        with pytest.raises(PreconditionError):
            sigma_witness(flat4_reduced_square, 'a', 'a*', 'a', 'b')

    def test_needs_reduced_spaces(self, natural, flat4):
        space = tensor_space(natural(flat4), natural(flat4))
        with pytest.raises(PreconditionError):
            sigma_witness(space, 'a', 'b', 'a', 'b')

    @pytest.mark.slow
    def test_found_by_the_regular_enumeration(self, flat4_reduced_square):
        sigma = sigma_witness(flat4_reduced_square, 'a', 'b', 'a', 'b')
        regular = {t.key() for t in flat4_reduced_square.enumerate_regular()}
        assert sigma.key() in regular


class TestGaloisLaw:

    @hypothesis.settings(max_examples=50, deadline=None)
    @hypothesis.given(strat.sets(strat.integers(min_value=0, max_value=8), min_size=1, max_size=5))
    def test_closure_is_extensive_and_idempotent(self, picks):
        space = tensor_space(natural_space(load_fixture('BOOL')), natural_space(load_fixture('CHAIN3')))
        pairs = space.all_pairs()
        subset = [pairs[i] for i in sorted(picks)]
        closed = space.closed_pairs(subset)
        assert set(subset) <= closed
        assert space.closed_pairs(closed) == closed
        assert space.omega(closed) == space.omega(subset)

    def test_pure_tensor_maxima(self, natural, flat3):
        space = tensor_space(natural(flat3), natural(flat3))
        maxima = space.pure_tensor_maxima()
        assert len(maxima) == 9
        for table in maxima:
            assert space.is_minimal_member(table)
            assert len(space.galois_closure(table)) == 1
