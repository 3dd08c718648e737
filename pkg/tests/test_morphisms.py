import hypothesis
import hypothesis.strategies as strat
import pytest

from semichu.config import override_caps
from semichu.exceptions import CapExceededError, PreconditionError, SchemaError
from semichu.fixtures import load_fixture
from semichu.morphisms import (Morphism, adjoint, apply_channel_minimal, apply_channel_regular,
                               compose, composition_law_failure, enumerate_morphisms, identity,
                               is_morphism, meet_law_failure, morphism_meet, tensor_channel_minimal,
                               tensor_channel_regular)
from semichu.tensor_products import tensor_space
from semichu.verify import channel_audit, natural_space

SWAP = {'bot': 'bot', 'Y': 'N', 'N': 'Y'}


@pytest.fixture(scope='module')
def bool_chu(natural, bool_l):
    return natural(bool_l)


@pytest.fixture(scope='module')
def swap(bool_chu):
    return Morphism(bool_chu, bool_chu, SWAP)


class TestMorphisms:

    def test_identity(self, bool_chu):
        f = identity(bool_chu)
        assert f.state_map == {'bot': 'bot', 'Y': 'Y', 'N': 'N'}
        assert f.adjoint.tolist() == list(range(bool_chu.size))

    def test_swap_adjoint(self, swap):
        assert swap('Y') == 'N'
        assert adjoint(swap)['l(Y,N)'] == 'l(N,Y)'
        assert swap.pull_back('l(Y,.)').label == 'l(N,.)'
        assert swap.duality_holds()

    def test_map_breaking_meets(self, natural, flat3, bool_chu):
        bad = {'bot': 'bot', 's1': 'Y', 's2': 'Y', 's3': 'N'}
        verdict = is_morphism(natural(flat3), bool_chu, bad)
        assert not verdict.holds
        assert verdict.witness == ('s1', 's2')
        with pytest.raises(PreconditionError):
            Morphism(natural(flat3), bool_chu, bad)

    def test_partial_map(self, bool_chu):
        with pytest.raises(PreconditionError):
            Morphism(bool_chu, bool_chu, {'bot': 'bot', 'Y': 'Y'})

    def test_unknown_state_in_map(self, bool_chu):
        with pytest.raises(SchemaError):
            Morphism(bool_chu, bool_chu, dict(SWAP, zz='Y'))

    def test_constant_map(self, natural, flat3, bool_chu):
        f = Morphism(natural(flat3), bool_chu, {s: 'bot' for s in flat3})
        assert not f.state_map_is_injective()
        assert not f.adjoint_is_surjective()
        assert f.pull_back('l(bot,.)').label == 'l(bot,.)'
        assert f.pull_back('l(Y,N)').label == 'l(.,.)'

    def test_identity_is_bijective(self, bool_chu):
        f = identity(bool_chu)
        assert f.adjoint_is_surjective() and f.state_map_is_injective()


class TestAlgebra:

    def test_swap_is_an_involution(self, swap, bool_chu):
        assert compose(swap, swap) == identity(bool_chu)

    def test_composition_endpoints(self, natural, flat3, swap, bool_chu):
        f = Morphism(natural(flat3), bool_chu, {s: 'bot' for s in flat3})
        with pytest.raises(PreconditionError):
            compose(swap, f)
        assert compose(f, swap).state_map == f.state_map

    def test_meet_with_the_identity(self, swap, bool_chu):
        meet = morphism_meet(identity(bool_chu), swap)
        assert meet.state_map == {'bot': 'bot', 'Y': 'bot', 'N': 'bot'}

    def test_enumeration_counts(self, bool_chu, natural, chain2):
        assert len(enumerate_morphisms(bool_chu, bool_chu)) == 9
        assert len(enumerate_morphisms(natural(chain2), natural(chain2))) == 3

    def test_enumeration_cap(self, natural, flat3):
        chu = natural(flat3)
        override_caps(3)
        try:
            with pytest.raises(CapExceededError):
                enumerate_morphisms(chu, chu)
        finally:
            override_caps(None)

    @pytest.mark.parametrize('names', [('bool_l', 'bool_l'), ('flat3', 'bool_l'), ('chain3', 'chain2')])
    def test_laws_over_all_morphisms(self, request, natural, names):
        a, b = (natural(request.getfixturevalue(n)) for n in names)
        maps = enumerate_morphisms(a, b)
        onward = enumerate_morphisms(b, b)
        for f in maps:
            assert f.duality_holds()
            assert meet_law_failure(f, maps) is None
            assert composition_law_failure(f, onward) is None
            if f.adjoint_is_surjective():
                assert f.state_map_is_injective()


class TestChannels:

    def test_channels_agree_on_pure_tensors(self, swap, bool_chu, natural, chain2):
        chain = natural(chain2)
        g = identity(chain)
        space = tensor_space(bool_chu, chain)
        image_space = tensor_space(bool_chu, chain)
        for a in ('bot', 'Y', 'N'):
            for b in ('bot', 't'):
                iota = space.pure_tensor(a, b)
                expected = image_space.pure_tensor(swap(a), b)
                assert apply_channel_minimal(swap, g, iota) == expected
                assert apply_channel_regular(swap, g, iota) == expected

    def test_channel_partials(self, swap, bool_chu):
        space = tensor_space(bool_chu, bool_chu)
        phi = space.omega([('Y', 'Y'), ('N', 'N')])
        minimal = tensor_channel_minimal(swap, swap)(phi)
        assert minimal == space.omega([('N', 'N'), ('Y', 'Y')])
        assert tensor_channel_regular(swap, swap)(phi) == minimal

    @pytest.mark.parametrize('names', [
        ('bool_l', 'chain2', 'chain2', 'bool_l'),
        ('chain2', 'flat3', 'bool_l', 'chain3'),
        ('chain3', 'flat3', 'bool_l', 'bool_l'),
    ])
    def test_channel_laws_between_different_spaces(self, request, natural, names):
        a, a2, b, b2 = (natural(request.getfixturevalue(n)) for n in names)
        space = tensor_space(a, b)
        fs, gs = enumerate_morphisms(a, a2), enumerate_morphisms(b, b2)
        assert fs and gs
        holds, witness = channel_audit(space, space.minimal_tables(), space.enumerate_maximal(), fs, gs)
        assert holds, witness

    def test_channel_endpoint_mismatch(self, swap, natural, chain2):
        chain = natural(chain2)
        phi = tensor_space(chain, chain).pure_tensor('t', 't')
        with pytest.raises(PreconditionError):
            apply_channel_regular(swap, swap, phi)
        with pytest.raises(PreconditionError):
            apply_channel_minimal(swap, swap, phi)


BOOL_MAPS = enumerate_morphisms(natural_space(load_fixture('BOOL')), natural_space(load_fixture('BOOL')))
CHAIN2_MAPS = enumerate_morphisms(natural_space(load_fixture('CHAIN2')), natural_space(load_fixture('CHAIN2')))


@hypothesis.settings(max_examples=40, deadline=None)
@hypothesis.given(strat.sampled_from(BOOL_MAPS), strat.sampled_from(CHAIN2_MAPS),
                  strat.sets(strat.integers(min_value=0, max_value=5), min_size=1, max_size=3))
def test_channels_agree_on_minimal_members(f, g, picks):
    space = tensor_space(f.source, g.source)
    pairs = space.all_pairs()
    phi = space.omega(pairs[i] for i in picks)
    image = apply_channel_minimal(f, g, phi)
    assert image == apply_channel_regular(f, g, phi)
    assert space.is_minimal_member(image)
