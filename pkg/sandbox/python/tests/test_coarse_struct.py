#  Copyright (c) 2021. Harvard University
#
#  Developed by Research Software Engineering,
#  Faculty of Arts and Sciences, Research Computing (FAS RC)
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
#

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lsskit.cli.fixtures import random_bounded_scale, random_space
from lsskit.errors import PreconditionError
from lsskit.propa.prop_a import PropertyAWitness, search_witness, \
    verify_witness
from lsskit.structure.coarse_struct import Entourage, SakoWitness, \
    coarse_closure, coarse_to_lss, is_uniformly_locally_finite, \
    lss_to_coarse, verify_sako_witness, witness_lss_to_sako, \
    witness_sako_to_lss
from lsskit.structure.core_family import GroundSet, bits

from .oracles import grounds, naive_closure, seeds


def test_entourage_operations():
    g = GroundSet.of_size(4)
    e = Entourage(g, {(0, 1), (1, 2)})
    assert e.inverse().sorted_pairs() == [(1, 0), (2, 1)]
    assert e.compose(e).sorted_pairs() == [(0, 2)]
    assert e.slice(1) == {2}
    assert Entourage.diagonal(g).issubset(Entourage.squares(g, [0b1111]))
    with pytest.raises(ValueError):
        Entourage(g, {(0, 4)})


def test_components_to_coarse(d23):
    cs = lss_to_coarse(d23)
    assert len(cs.controlled) == 1
    assert len(cs.controlled[0].pairs) == 2 * 2 + 3 * 3
    assert is_uniformly_locally_finite(cs).witness == 3
    assert cs.is_controlled(Entourage(d23.ground, {(0, 1), (4, 2)}))
    assert not cs.is_controlled(Entourage(d23.ground, {(1, 2)}))


def test_closure_of_chained_generators():
    g = GroundSet.of_size(4)
    cs = coarse_closure(g, [Entourage(g, {(0, 1)}), Entourage(g, {(1, 2)})])
    assert len(cs.controlled) == 1
    assert len(cs.controlled[0].pairs) == 3 * 3 + 1
    assert coarse_to_lss(cs).blocks == (0b0111, 0b1000)


@given(seeds)
def test_lss_round_trip(seed):
    space = random_space(seed)
    back = coarse_to_lss(lss_to_coarse(space))
    assert back.blocks == space.blocks


@given(st.data())
def test_closure_is_generated_equivalence(data):
    g = data.draw(grounds(max_size=5))
    pair = st.tuples(st.integers(0, g.size - 1), st.integers(0, g.size - 1))
    relations = [Entourage(g, p) for p in
                 data.draw(st.lists(st.sets(pair, max_size=4), max_size=3))]
    cs = coarse_closure(g, relations)
    assert len(cs.controlled) == 1
    assert set(cs.controlled[0].pairs) == naive_closure(g, relations)
    again = lss_to_coarse(coarse_to_lss(cs))
    assert again.controlled == cs.controlled


def sako_of(space, test, support, sets, epsilon):
    ground = space.ground
    return SakoWitness(epsilon, Entourage.squares(ground, test.masks),
                       Entourage.squares(ground, support.masks),
                       {(x, z, l) for x in range(ground.size)
                        for z, l in sets[x]})


def test_sako_verdicts_agree():
    for seed in range(150):
        space = random_space(seed, max_points=6)
        cs = lss_to_coarse(space)
        test = random_bounded_scale(seed + 1, space)
        support = random_bounded_scale(seed + 2, space)
        rng = random.Random(seed)
        sets = []
        for x in range(space.size):
            block = list(bits(space.blocks[space.block_of[x]]))
            extra = rng.sample(block, rng.randint(0, len(block)))
            sets.append({(x, 1)} | {(z, rng.randint(1, 2)) for z in extra})
        epsilon = Fraction(rng.randint(1, 4), 2)
        plain = verify_witness(space, PropertyAWitness(epsilon, test,
                                                       support, sets))
        sako = verify_sako_witness(cs, sako_of(space, test, support, sets,
                                               epsilon))
        assert plain.holds == sako.holds
        assert plain.max_ratio == sako.max_ratio
        assert plain.pairs == sako.pairs


def test_witness_conversion_on_components(d23, comp):
    w = search_witness(d23, 1, comp, comp, 1).witness
    cs = lss_to_coarse(d23)
    sako = witness_lss_to_sako(d23, w)
    assert verify_sako_witness(cs, sako)
    back = witness_sako_to_lss(cs, sako)
    assert back.sets == w.sets
    assert verify_witness(d23, back)


def test_witness_conversion_over_random_spaces():
    for seed in range(100):
        space = random_space(seed)
        cs = lss_to_coarse(space)
        test = random_bounded_scale(seed + 3, space)
        sets = [{(z, 1) for z in bits(space.blocks[space.block_of[x]])}
                for x in range(space.size)]
        w = PropertyAWitness(1, test, space.maximal_bounded, sets)
        sako = witness_lss_to_sako(space, w)
        assert verify_sako_witness(cs, sako)
        assert verify_witness(space, witness_sako_to_lss(cs, sako))


def test_uncontrolled_witness(d23):
    cs = lss_to_coarse(d23)
    g = d23.ground
    w = SakoWitness(1, Entourage(g, {(0, 2)}), Entourage.diagonal(g),
                    {(x, x, 1) for x in range(g.size)})
    with pytest.raises(PreconditionError):
        verify_sako_witness(cs, w)
    with pytest.raises(PreconditionError):
        witness_sako_to_lss(cs, w)


def test_failing_witness_does_not_convert(d23, comp):
    sets = [{(x, 1)} for x in range(d23.size)]
    with pytest.raises(PreconditionError):
        witness_lss_to_sako(d23, PropertyAWitness(1, comp, comp, sets))
