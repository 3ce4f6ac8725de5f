"""
Coarse structures on finite sets

The controlled sets of a coarse structure contain the diagonal and are
closed under inverses, composition, finite unions and subsets. They are
stored as the antichain of maximal controlled sets; membership is the
subset test. On a finite set finite unions make the antichain a single
relation, the equivalence relation generated by the generators.

This module also converts between large scale structures and coarse
structures and between the two forms of property A witnesses.
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
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Sequence, Set, Tuple

import attr
import networkx as nx

from lsskit.errors import InconsistentRoutesError, PreconditionError
from lsskit.propa.prop_a import PropertyAWitness, Violation, WitnessCheck, \
    as_fraction, compare, summarize, verify_witness
from lsskit.structure.core_family import GroundSet, Scale, Verdict, bits, \
    mask_of, same_ground, trivial_extension
from lsskit.structure.lss import LssSpace, build_lss

Pair = Tuple[int, int]


@attr.s(frozen=True, auto_attribs=True)
class Entourage:
    ground: GroundSet
    pairs: FrozenSet[Pair] = attr.ib(converter=frozenset)

    def __attrs_post_init__(self):
        n = self.ground.size
        for x, y in self.pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError("Pair ({}, {}) is outside the ground set"
                                 .format(x, y))

    @classmethod
    def diagonal(cls, ground: GroundSet) -> "Entourage":
        return cls(ground, {(x, x) for x in range(ground.size)})

    @classmethod
    def squares(cls, ground: GroundSet, masks: Iterable[int]) -> "Entourage":
        return cls(ground, {(x, y) for m in masks
                            for x in bits(m) for y in bits(m)})

    def inverse(self) -> "Entourage":
        return Entourage(self.ground, {(y, x) for x, y in self.pairs})

    def compose(self, other: "Entourage") -> "Entourage":
        """
        Pairs (x, z) with (x, y) in self and (y, z) in other
        """
        succ = {}
        for y, z in other.pairs:
            succ.setdefault(y, set()).add(z)
        return Entourage(self.ground, {(x, z) for x, y in self.pairs
                                       for z in succ.get(y, ())})

    def union(self, other: "Entourage") -> "Entourage":
        return Entourage(self.ground, self.pairs | other.pairs)

    def issubset(self, other: "Entourage") -> bool:
        return self.pairs <= other.pairs

    def slice(self, x: int) -> Set[int]:
        return {y for a, y in self.pairs if a == x}

    def sorted_pairs(self) -> List[Pair]:
        return sorted(self.pairs)


@attr.s(frozen=True, auto_attribs=True)
class CoarseSpace:
    ground: GroundSet
    generators: Tuple[Entourage, ...] = attr.ib(converter=tuple)
    controlled: Tuple[Entourage, ...] = attr.ib(converter=tuple)
    """
    Maximal controlled sets
    """

    def is_controlled(self, e: Entourage) -> bool:
        return any(e.issubset(c) for c in self.controlled)


def _maximal(relations: Iterable[Entourage]) -> Tuple[Entourage, ...]:
    unique = set(relations)
    kept = [r for r in unique
            if not any(r.pairs < o.pairs for o in unique)]
    return tuple(sorted(kept, key=Entourage.sorted_pairs))


def coarse_closure(ground: GroundSet,
                   generators: Sequence[Entourage]) -> CoarseSpace:
    for g in generators:
        same_ground(ground, g.ground, "coarse structure and generator")
    antichain = _maximal([Entourage.diagonal(ground)] + list(generators))
    rounds = 0
    while True:
        rounds += 1
        produced = set(antichain)
        for r in antichain:
            produced.add(r.inverse())
            for s in antichain:
                produced.add(r.compose(s))
                produced.add(r.union(s))
        step = _maximal(produced)
        if step == antichain:
            break
        antichain = step
    logging.debug("Coarse closure stable after {:d} rounds".format(rounds))
    return CoarseSpace(ground, tuple(generators), antichain)


def lss_to_coarse(space: LssSpace) -> CoarseSpace:
    return coarse_closure(space.ground,
                          [Entourage.squares(space.ground, space.blocks)])


def _classes(cs: CoarseSpace) -> List[int]:
    # maximal B with B x B controlled
    graph = nx.Graph()
    graph.add_nodes_from(range(cs.ground.size))
    for c in cs.controlled:
        graph.add_edges_from((x, y) for x, y in c.pairs
                             if x != y and (y, x) in c.pairs)
    return [mask_of(c) for c in nx.connected_components(graph)]


def coarse_to_lss(cs: CoarseSpace) -> LssSpace:
    """
    Bounded sets are the B with B x B controlled; the maximal ones
    generate the structure
    """
    classes = sorted(_classes(cs), key=lambda m: (m & -m))
    scale = trivial_extension(Scale(cs.ground, tuple(classes)))
    return build_lss(cs.ground, [scale])


def is_uniformly_locally_finite(cs: CoarseSpace) -> Verdict:
    """
    Always true on a finite set; the witness is the largest slice
    T[x] of a maximal controlled set
    """
    return Verdict(True, witness=max(
        len(c.slice(x)) for c in cs.controlled for x in range(cs.ground.size)
    ))


@attr.s(frozen=True, auto_attribs=True)
class SakoWitness:
    epsilon: Fraction = attr.ib(converter=as_fraction)
    t: Entourage
    s: Entourage
    a: FrozenSet[Tuple[int, int, int]] = attr.ib(converter=frozenset)
    """
    Triples (x, y, level)
    """

    def slice(self, x: int) -> FrozenSet[Tuple[int, int]]:
        return frozenset((y, l) for a, y, l in self.a if a == x)


def verify_sako_witness(cs: CoarseSpace, w: SakoWitness) -> WitnessCheck:
    same_ground(cs.ground, w.t.ground, "coarse space and witness")
    if w.epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    for name, e in (("T", w.t), ("S", w.s)):
        if not cs.is_controlled(e):
            raise PreconditionError("{} is not controlled".format(name))
    violations = []
    measured = []
    slices = [w.slice(x) for x in range(cs.ground.size)]
    for x in range(cs.ground.size):
        if (x, 1) not in slices[x]:
            violations.append(Violation("diagonal", x))
    for x, y, l in sorted(w.a):
        if (x, y) not in w.s.pairs or l < 1:
            violations.append(Violation("support", x, y))
    for x, y in w.t.sorted_pairs():
        d, i, ok = compare(w.epsilon, slices[x], slices[y])
        measured.append((d, i))
        if not ok:
            violations.append(Violation("ratio", x, y, d, i))
    return summarize(violations, measured)


def witness_lss_to_sako(space: LssSpace, w: PropertyAWitness) -> SakoWitness:
    if not verify_witness(space, w):
        raise PreconditionError("Witness does not verify")
    ground = space.ground
    t = Entourage.squares(ground, w.test_scale.masks)
    s = Entourage.squares(ground, w.support_scale.masks)
    a = {(x, z, l) for x in range(ground.size) for z, l in w.sets[x]}
    return SakoWitness(w.epsilon, t, s, a)


def witness_sako_to_lss(cs: CoarseSpace, w: SakoWitness) -> PropertyAWitness:
    """
    Support scale: the slices V_x = {y : (x, y, l) in A}, trivially
    extended. Test scale: maximal cliques of the symmetric part of T,
    so that y near x implies (x, y) in T.
    """
    if not verify_sako_witness(cs, w):
        raise PreconditionError("Witness does not verify")
    ground = cs.ground
    n = ground.size
    slices = [mask_of(y for y, _ in w.slice(x)) for x in range(n)]
    span = Entourage.squares(ground, slices)
    reach = w.s.inverse().compose(w.s)
    if not span.issubset(reach) or not cs.is_controlled(span):
        raise InconsistentRoutesError("Union of slice squares is not "
                                      "controlled by S^-1 S")
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((x, y) for x, y in w.t.pairs
                         if x < y and (y, x) in w.t.pairs)
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(graph))
    test = Scale(ground, tuple(mask_of(c) for c in cliques))
    support = trivial_extension(Scale(ground, tuple(slices)))
    sets = [w.slice(x) for x in range(n)]
    return PropertyAWitness(w.epsilon, test, support, sets)
