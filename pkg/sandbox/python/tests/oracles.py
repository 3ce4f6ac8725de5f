"""
Brute force oracles and hypothesis strategies shared by the tests
"""

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

import itertools
from typing import List, Set, Tuple

from hypothesis import strategies as st

from lsskit.cli.fixtures import random_bounded_scale, random_space
from lsskit.structure.core_family import GroundSet, Scale, SetFamily, bits, \
    mask_of, trivial_extension

seeds = st.integers(min_value=0, max_value=2 ** 31)


@st.composite
def grounds(draw, max_size: int = 6) -> GroundSet:
    return GroundSet.of_size(draw(st.integers(min_value=1,
                                              max_value=max_size)))


@st.composite
def families(draw, ground: GroundSet, max_elements: int = 5) -> SetFamily:
    masks = draw(st.lists(st.integers(min_value=0, max_value=ground.full),
                          max_size=max_elements))
    return SetFamily(ground, tuple(masks))


@st.composite
def scales(draw, ground: GroundSet, max_elements: int = 5) -> Scale:
    return trivial_extension(draw(families(ground, max_elements)))


@st.composite
def subsets(draw, ground: GroundSet) -> int:
    return draw(st.integers(min_value=0, max_value=ground.full))


@st.composite
def spaces_with_scales(draw):
    seed = draw(seeds)
    space = random_space(seed)
    return space, random_bounded_scale(seed + 7, space)


def naive_nets(ambient: int, family: SetFamily) -> List[Tuple[int, ...]]:
    """
    Every subset of the ambient set that is independent and maximal
    """
    def near(x, y):
        return any(m >> x & 1 and m >> y & 1 for m in family.masks)

    points = list(bits(ambient))
    result = []
    for k in range(len(points) + 1):
        for candidate in itertools.combinations(points, k):
            if any(near(x, y) for x, y in itertools.combinations(candidate, 2)):
                continue
            if all(x in candidate or any(near(x, y) for y in candidate)
                   for x in points):
                result.append(candidate)
    return sorted(result)


def naive_cover_size(target: int, masks) -> int:
    if not target:
        return 0
    for k in range(1, len(masks) + 1):
        for combo in itertools.combinations(masks, k):
            u = 0
            for m in combo:
                u |= m
            if target & ~u == 0:
                return k
    return -1


def naive_closure(ground: GroundSet, relations) -> Set[Tuple[int, int]]:
    """
    Closes diagonal plus relations under inverse, composition and union
    by repeated squaring of the single union relation
    """
    r = {(x, x) for x in range(ground.size)}
    for e in relations:
        r |= set(e.pairs)
    while True:
        step = r | {(y, x) for x, y in r}
        step |= {(x, z) for x, y in step for w, z in step if y == w}
        if step == r:
            return r
        r = step


def all_subsets(ground: GroundSet):
    return range(1, ground.full + 1)


def mask(*ids) -> int:
    return mask_of(ids)


def bounded_subsets(space) -> List[int]:
    """
    All nonempty bounded sets, by enumerating subsets of maximal bounded sets
    """
    result = []
    for b in space.blocks:
        members = list(bits(b))
        for k in range(1, 1 << len(members)):
            result.append(mask_of(
                members[i] for i in range(len(members)) if k >> i & 1
            ))
    return sorted(result)
