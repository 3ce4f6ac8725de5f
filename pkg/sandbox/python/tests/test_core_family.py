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

import pytest
from hypothesis import given, strategies as st

from lsskit.errors import GroundSetMismatch, InvalidScale
from lsskit.structure.core_family import GroundSet, Scale, SetFamily, \
    Subset, extend_to_scale, horizon, is_trivial, iterated_star, \
    multiplicity, r_multiplicity, refines, singleton_cover, star, \
    star_family, trivial_extension, whole_cover

from .oracles import grounds, mask, scales, subsets


def balls1(space):
    return space.metric.ball_cover(1)


def test_ground_set_rejects_empty_and_duplicates():
    with pytest.raises(ValueError):
        GroundSet([])
    with pytest.raises(ValueError):
        GroundSet(["a", "a"])


def test_unknown_label():
    g = GroundSet(["a", "b"])
    assert g.index("b") == 1
    with pytest.raises(KeyError):
        g.index("c")


def test_scale_conditions():
    g = GroundSet.of_size(3)
    with pytest.raises(InvalidScale):
        Scale(g, (mask(0, 1), 0, mask(2)))
    with pytest.raises(InvalidScale):
        Scale(g, (mask(0, 1), ))
    family = SetFamily(g, (mask(0, 1), 0))
    assert len(family) == 2
    with pytest.raises(ValueError):
        SetFamily(g, (mask(3), ))


def test_ground_mismatch():
    a = GroundSet.of_size(3)
    b = GroundSet(["x", "y", "z"])
    with pytest.raises(GroundSetMismatch):
        star(Subset(a, 1), singleton_cover(b))


def test_star_on_path(p5):
    u = balls1(p5)
    g = p5.ground
    assert star(g.subset([0]), u).members == (0, 1, 2)
    assert star(g.subset([2]), u).mask == g.full
    assert star(Subset(g, 0), u).is_empty()
    assert star_family(u, u).element(2).mask == g.full
    assert iterated_star(u, 1).element(2).mask == g.full


def test_horizon_and_multiplicity(p5):
    u = balls1(p5)
    g = p5.ground
    assert horizon(g.subset([1, 2]), u) == frozenset({0, 1, 2, 3})
    assert horizon(Subset(g, 0), u) == frozenset()
    assert multiplicity(u) == 3
    assert multiplicity(SetFamily.of(g, [[0, 1, 2], [3, 4]])) == 1


def test_r_multiplicity(p5, comp):
    u = balls1(p5)
    assert r_multiplicity(u, p5.metric, 0) == multiplicity(u)
    assert r_multiplicity(u, p5.metric, 1) == 5
    with pytest.raises(GroundSetMismatch):
        r_multiplicity(comp, p5.metric, 1)


def test_refines_on_path(p5):
    u = balls1(p5)
    assert refines(u, whole_cover(p5.ground))
    check = refines(whole_cover(p5.ground), u)
    assert not check
    assert check.counterexample == 0
    assert refines(u, u).witness == (0, 1, 2, 3, 3)


def test_trivial_extension(p5):
    family = SetFamily.of(p5.ground, [[0, 1], []])
    extended = trivial_extension(family)
    assert len(extended) == 6
    assert refines(extended, balls1(p5))
    assert extend_to_scale(balls1(p5)) == balls1(p5)
    assert is_trivial(singleton_cover(p5.ground))
    assert not is_trivial(balls1(p5))


@pytest.mark.parametrize("m, lo, hi", [(0, 11, 13), (1, 9, 15), (2, 5, 19),
                                      (3, 0, 24)])
def test_iterated_star_radii(p25, m, lo, hi):
    tower = iterated_star(balls1(p25), m)
    assert tower.element(12).members == tuple(range(lo, hi + 1))


def test_iterated_star_height():
    g = GroundSet.of_size(2)
    with pytest.raises(ValueError):
        iterated_star(singleton_cover(g), -1)


@given(st.data())
def test_star_contains_and_is_monotone(data):
    g = data.draw(grounds())
    u = data.draw(scales(g))
    a = data.draw(subsets(g))
    b = data.draw(subsets(g))
    sa = star(Subset(g, a), u)
    assert Subset(g, a).issubset(sa)
    assert sa.issubset(star(Subset(g, a | b), u))


@given(st.data())
def test_horizon_empty_iff_set_empty(data):
    g = data.draw(grounds())
    u = data.draw(scales(g))
    a = data.draw(subsets(g))
    assert (len(horizon(Subset(g, a), u)) == 0) == (a == 0)


@given(st.data())
def test_refines_is_a_preorder(data):
    g = data.draw(grounds())
    u = data.draw(scales(g))
    v = Scale.of_family(star_family(u, u))
    w = whole_cover(g)
    assert refines(u, u)
    assert refines(u, v)
    assert refines(v, w)
    assert refines(u, w)


@given(st.data())
def test_star_of_a_neighbour_stays_in_the_tower(data):
    g = data.draw(grounds())
    u = data.draw(scales(g))
    n = data.draw(st.integers(min_value=1, max_value=3))
    outer = iterated_star(u, n)
    inner = iterated_star(u, n - 1)
    for x in range(g.size):
        big = star(g.subset([x]), outer)
        for y in star(g.subset([x]), u):
            assert star(g.subset([y]), inner).issubset(big)


@given(st.data())
def test_star_family_is_a_scale(data):
    g = data.draw(grounds())
    u = data.draw(scales(g))
    result = star_family(u, u)
    assert isinstance(result, Scale)
    assert all(m for m in result.masks)
