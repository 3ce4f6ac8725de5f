"""
Fixture library: generated space documents and seeded random
spaces, scales and maps. Every generator is deterministic given its
parameters and seed.
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
import random
import string
from typing import List, Sequence

from lsskit.cli.document import SpaceDocument, parse_space
from lsskit.errors import DocumentError
from lsskit.maps import SpaceMap
from lsskit.structure.core_family import GroundSet, Scale, bits, mask_of
from lsskit.structure.lss import INF, LssSpace, build_lss
from lsskit.util.resources import get_fixture, get_fixtures


def _metric_document(labels: List[str], distance, scales=None) \
        -> SpaceDocument:
    n = len(labels)
    metric = tuple(tuple(distance(i, j) for j in range(n)) for i in range(n))
    return SpaceDocument(labels, metric=metric, scales=scales or {})


def path_document(n: int) -> SpaceDocument:
    """
    Path 0..n-1 with metric |i - j|
    """
    if n < 1:
        raise ValueError("A path needs at least one point")
    return _metric_document([str(i) for i in range(n)],
                            lambda i, j: abs(i - j))


def components_document(sizes: Sequence[int]) -> SpaceDocument:
    """
    Disjoint groups at infinite distance, distance 1 inside a group.
    Group g is labelled by the g-th letter: a1, a2, b1, ...
    """
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("Every component needs at least one point")
    if len(sizes) > len(string.ascii_lowercase):
        raise ValueError("At most {:d} components"
                         .format(len(string.ascii_lowercase)))
    labels = []
    group = []
    for g, size in enumerate(sizes):
        for i in range(size):
            labels.append("{}{:d}".format(string.ascii_lowercase[g], i + 1))
            group.append(g)
    comp = tuple(tuple(l for l, h in zip(labels, group) if h == g)
                 for g in range(len(sizes)))

    def distance(i, j):
        if i == j:
            return 0
        return 1 if group[i] == group[j] else INF

    return _metric_document(labels, distance, {"Comp": comp})


def grid_document(d: int, s: int = 4) -> SpaceDocument:
    """
    Grid {0..s}^d with the sup metric
    """
    if d < 1 or s < 0:
        raise ValueError("Grid needs d >= 1 and s >= 0")
    points = list(itertools.product(range(s + 1), repeat=d))
    return _metric_document(
        [",".join(str(c) for c in p) for p in points],
        lambda i, j: max(abs(a - b) for a, b in zip(points[i], points[j]))
    )


def product_document(t: int, s: int = 1) -> SpaceDocument:
    """
    Truncated product of the grids {0..s}^i for i = 1..t; the distance
    is the sum of the sup distances of the factors
    """
    if t < 1 or s < 0:
        raise ValueError("Product needs t >= 1 and s >= 0")
    factors = [list(itertools.product(range(s + 1), repeat=i))
               for i in range(1, t + 1)]
    points = list(itertools.product(*factors))

    def distance(i, j):
        return sum(max(abs(a - b) for a, b in zip(p, q))
                   for p, q in zip(points[i], points[j]))

    labels = ["|".join(",".join(str(c) for c in f) for f in p)
              for p in points]
    return _metric_document(labels, distance)


def _random_scale(rng: random.Random, n: int, max_element: int) \
        -> List[List[int]]:
    elements = []
    for _ in range(rng.randint(0, n)):
        size = rng.randint(1, min(max_element, n))
        elements.append(sorted(rng.sample(range(n), size)))
    covered = {x for e in elements for x in e}
    elements.extend([x] for x in range(n) if x not in covered)
    return elements


def random_document(seed: int, max_points: int = 8, max_generators: int = 2,
                    max_element: int = 3) -> SpaceDocument:
    rng = random.Random(seed)
    n = rng.randint(1, max_points)
    labels = ["x{:d}".format(i) for i in range(n)]
    generators = tuple(
        tuple(tuple(labels[x] for x in e)
              for e in _random_scale(rng, n, max_element))
        for _ in range(rng.randint(1, max_generators))
    )
    return SpaceDocument(labels, generators=generators)


def random_space(seed: int, max_points: int = 8, max_generators: int = 2,
                 max_element: int = 3) -> LssSpace:
    return random_document(seed, max_points, max_generators,
                           max_element).to_space()


def random_bounded_scale(seed: int, space: LssSpace,
                         max_elements: int = 4) -> Scale:
    """
    Random uniformly bounded scale: subsets of maximal bounded sets,
    completed by singletons
    """
    rng = random.Random(seed)
    masks = []
    blocks = list(space.blocks)
    for _ in range(rng.randint(0, max_elements)):
        block = list(bits(rng.choice(blocks)))
        masks.append(mask_of(rng.sample(block, rng.randint(1, len(block)))))
    covered = 0
    for m in masks:
        covered |= m
    masks.extend(1 << x for x in range(space.size) if not covered >> x & 1)
    return Scale(space.ground, tuple(masks))


def random_map(seed: int, source: LssSpace, target: LssSpace) -> SpaceMap:
    rng = random.Random(seed)
    return SpaceMap(source, target,
                    tuple(rng.randrange(target.size)
                          for _ in range(source.size)))


def random_equivalence(seed: int, max_points: int = 6,
                       max_fiber: int = 2) -> SpaceMap:
    """
    Coarse equivalence onto a random space: every maximal bounded set
    of the target receives its own bounded group of source points
    """
    target = random_space(seed, max_points)
    rng = random.Random(seed + 1)
    sizes = [rng.randint(1, max_fiber) for _ in target.blocks]
    ground = GroundSet(["s{:d}".format(i) for i in range(sum(sizes))])
    elements = []
    table = []
    start = 0
    for block, size in zip(target.blocks, sizes):
        ids = list(range(start, start + size))
        start += size
        if size == 1:
            elements.append(1 << ids[0])
        else:
            elements.extend(mask_of(p) for p in zip(ids, ids[1:]))
        points = list(bits(block))
        table.extend(rng.choice(points) for _ in ids)
    source = build_lss(ground, [Scale(ground, tuple(elements))])
    return SpaceMap(source, target, tuple(table))


def named_document(name: str) -> SpaceDocument:
    path = get_fixture(name)
    if path is None:
        raise DocumentError(name, "no such fixture, known: {}"
                            .format(", ".join(get_fixtures())))
    return parse_space(path)


def named_fixtures() -> List[str]:
    return list(get_fixtures())
