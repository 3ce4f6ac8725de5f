"""
Large scale structures on finite sets

A large scale structure on a finite set is represented by its lattice of
bounded sets. The bounded sets are the least family that contains every
singleton and every element of every generator scale and is closed under

* taking nonempty subsets: a family refining a uniformly bounded family
  up to singletons is uniformly bounded;
* unions of two overlapping members: if B1 and B2 meet, then
  B1 \\u222a B2 lies in the star of B1 against any common uniformly
  bounded family containing both, and stars are uniformly bounded.

On a finite set the closure is a partition of the ground set into
maximal bounded sets ("blocks"): overlapping blocks would merge. A set
is bounded iff it lies inside one block and a family is uniformly
bounded iff each of its elements does. The blocks form the coarsest
uniformly bounded scale, ``maximal_bounded``.

An :class:`InfMetric` induces the structure generated by the covers by
closed n-balls, n = 1..D, where D is the largest finite distance. Balls
of radius D already contain whole finite-distance components, so larger
radii generate nothing new.
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

import logging
import math
from typing import Optional, Sequence, Tuple, Union

import attr
import networkx as nx

from lsskit.errors import InvalidMetric, PreconditionError
from lsskit.structure.core_family import GroundSet, Scale, SetFamily, \
    Subset, Verdict, bits, mask_of, same_ground, singleton_cover, \
    popcount, lowest

INF = math.inf


@attr.s(frozen=True, auto_attribs=True)
class InfMetric:
    """
    Metric with values in the naturals extended by infinity
    """

    ground: GroundSet
    dist: Tuple[Tuple[Union[int, float], ...], ...] = \
        attr.ib(converter=lambda rows: tuple(tuple(r) for r in rows))

    def __attrs_post_init__(self):
        n = self.ground.size
        d = self.dist
        if len(d) != n or any(len(row) != n for row in d):
            raise InvalidMetric("Distance matrix must be {0:d}x{0:d}".format(n))
        for x in range(n):
            if d[x][x] != 0:
                raise InvalidMetric("dist({0},{0}) must be 0"
                                    .format(self.ground.labels[x]))
            for y in range(n):
                v = d[x][y]
                if v != INF and (v < 0 or int(v) != v):
                    raise InvalidMetric("dist({},{}) = {} is not a natural "
                                        "number or inf".format(
                        self.ground.labels[x], self.ground.labels[y], v))
                if v != d[y][x]:
                    raise InvalidMetric("dist is not symmetric at ({},{})"
                        .format(self.ground.labels[x], self.ground.labels[y]))
                if x != y and v == 0:
                    raise InvalidMetric("Distinct points {} and {} at distance 0"
                        .format(self.ground.labels[x], self.ground.labels[y]))
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if d[x][z] > d[x][y] + d[y][z]:
                        raise InvalidMetric(
                            "Triangle inequality fails for {}, {}, {}".format(
                                self.ground.labels[x], self.ground.labels[y],
                                self.ground.labels[z]
                            )
                        )

    def ball(self, x: int, r: int) -> int:
        return mask_of(y for y in range(self.ground.size)
                       if self.dist[x][y] <= r)

    def diameter(self, mask: int) -> Union[int, float]:
        ids = list(bits(mask))
        return max((self.dist[x][y] for x in ids for y in ids), default=0)

    @property
    def max_finite(self) -> int:
        return max((v for row in self.dist for v in row if v != INF),
                   default=0)

    def ball_cover(self, r: int) -> Scale:
        return Scale(self.ground,
                     tuple(self.ball(x, r) for x in range(self.ground.size)))


@attr.s(frozen=True, auto_attribs=True)
class LssSpace:
    ground: GroundSet
    generators: Tuple[Scale, ...] = attr.ib(converter=tuple)
    blocks: Tuple[int, ...] = attr.ib(converter=tuple)
    """
    Maximal bounded sets as bitmasks, ordered by smallest element
    """
    block_of: Tuple[int, ...] = attr.ib(converter=tuple)
    """
    Index of the block containing each element
    """
    metric: Optional[InfMetric] = attr.ib(default=None, eq=False)

    @property
    def size(self) -> int:
        return self.ground.size

    @property
    def maximal_bounded(self) -> Scale:
        return Scale(self.ground, self.blocks)

    def block_containing(self, mask: int) -> Optional[int]:
        """
        Index of the block containing a nonempty set, None if the set is
        not bounded
        """
        if mask == 0:
            return None
        b = self.block_of[lowest(mask)]
        if mask & ~self.blocks[b]:
            return None
        return b

    def is_bounded(self, target: Union[Subset, int]) -> bool:
        mask = target.mask if isinstance(target, Subset) else target
        if popcount(mask) < 2:
            return True
        return self.block_containing(mask) is not None

    def same_block(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]


def _blocks(ground: GroundSet, generators: Sequence[SetFamily]) \
        -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(ground.size))
    for scale in generators:
        for m in scale.masks:
            if not m:
                continue
            first = lowest(m)
            graph.add_edges_from((first, y) for y in bits(m) if y != first)
    components = [mask_of(c) for c in nx.connected_components(graph)]
    components.sort(key=lowest)
    block_of = [0] * ground.size
    for i, b in enumerate(components):
        for x in bits(b):
            block_of[x] = i
    return tuple(components), tuple(block_of)


def build_lss(ground: GroundSet, generators: Sequence[SetFamily],
              metric: InfMetric = None) -> LssSpace:
    """
    Builds the bounded-set lattice generated by the given scales.

    Overlapping unions chain generator elements into connected
    components of the graph joining points that share an element;
    the components are the maximal bounded sets.
    """
    scales = []
    for i, g in enumerate(generators):
        same_ground(ground, g.ground, "space and generator {:d}".format(i))
        scales.append(Scale.of_family(g))
    blocks, block_of = _blocks(ground, scales)
    logging.debug("Bounded-set lattice with {:d} maximal bounded sets over "
                  "{:d} points".format(len(blocks), ground.size))
    return LssSpace(ground, tuple(scales), blocks, block_of, metric)


def is_uniformly_bounded(family: SetFamily, space: LssSpace) -> Verdict:
    """
    :return: on success the witness maps every element index to the
        index of a maximal bounded set containing it (None for empty
        elements); on failure the counterexample is an offending index
    """
    same_ground(family.ground, space.ground, "family and space")
    mapping = []
    for i, m in enumerate(family.masks):
        if m == 0:
            mapping.append(None)
            continue
        b = space.block_containing(m)
        if b is None:
            return Verdict(False, counterexample=i)
        mapping.append(b)
    return Verdict(True, witness=tuple(mapping))


def trace(family: SetFamily, ids: Sequence[int], ground: GroundSet) \
        -> SetFamily:
    """
    Traces a family on the subset given by ``ids``, relabelled so
    that ``ids[k]`` becomes element ``k`` of ``ground``
    """
    result = []
    for m in family.masks:
        t = 0
        for k, x in enumerate(ids):
            if m >> x & 1:
                t |= 1 << k
        if t:
            result.append(t)
    return SetFamily(ground, tuple(result))


def subspace(space: LssSpace, y: Subset) -> LssSpace:
    """
    Structure induced on ``y``. Every parent generator is traced on
    ``y`` and completed by the singletons of ``y``. The trace of the
    parent's maximal bounded sets is traced too, so a family on ``y``
    is uniformly bounded iff it is a refinement of a trace of a
    uniformly bounded family of the parent.
    """
    same_ground(space.ground, y.ground, "space and subspace")
    if y.is_empty():
        raise PreconditionError("Subspace must be nonempty")
    ids = y.members
    ground = GroundSet(tuple(space.ground.labels[x] for x in ids))
    singles = singleton_cover(ground).masks
    generators = []
    for g in list(space.generators) + [space.maximal_bounded]:
        traced = trace(g, ids, ground)
        generators.append(Scale(ground, traced.masks + singles))
    metric = None
    if space.metric is not None:
        metric = InfMetric(ground, [[space.metric.dist[a][b] for b in ids]
                                    for a in ids])
    return build_lss(ground, generators, metric)


def metric_lss(metric: InfMetric) -> LssSpace:
    top = metric.max_finite
    if top == 0:
        generators = [singleton_cover(metric.ground)]
    else:
        generators = [metric.ball_cover(r) for r in range(1, top + 1)]
    return build_lss(metric.ground, generators, metric)
