"""
Maps between finite large scale spaces

Every quantifier over uniformly bounded families in the definitions of
bornologous maps, coarse embeddings, coarse surjectivity and closeness
reduces to the maximal bounded sets: any uniformly bounded family
refines the maximal bounded partition, and images, preimages and stars
are monotone under refinement.

:func:`is_coarse_equivalence` decides equivalence twice, once by
constructing the inverse and checking both closeness conditions, and
once through the characterization as a bornologous coarse embedding
that is coarsely surjective. The two verdicts must agree.
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
from collections import Counter
from typing import Optional, Tuple

import attr

from lsskit.errors import InconsistentRoutesError, InvalidMap, \
    PreconditionError
from lsskit.structure.core_family import SetFamily, Subset, Verdict, bits, \
    star_mask
from lsskit.structure.lss import LssSpace


@attr.s(frozen=True, auto_attribs=True)
class SpaceMap:
    source: LssSpace
    target: LssSpace
    table: Tuple[int, ...] = attr.ib(converter=tuple)

    def __attrs_post_init__(self):
        if len(self.table) != self.source.size:
            raise InvalidMap("Map table has {:d} entries for {:d} points"
                             .format(len(self.table), self.source.size))
        for x, y in enumerate(self.table):
            if not 0 <= y < self.target.size:
                raise InvalidMap("Image of {} is out of range"
                                 .format(self.source.ground.labels[x]))

    @classmethod
    def identity(cls, space: LssSpace) -> "SpaceMap":
        return cls(space, space, tuple(range(space.size)))

    @classmethod
    def constant(cls, source: LssSpace, target: LssSpace, y: int = 0):
        return cls(source, target, (y, ) * source.size)

    @classmethod
    def inclusion(cls, sub: LssSpace, parent: LssSpace) -> "SpaceMap":
        """
        Sends each element to the element of ``parent`` with the same label
        """
        return cls(sub, parent,
                   tuple(parent.ground.index(l) for l in sub.ground.labels))

    @classmethod
    def of_labels(cls, source: LssSpace, target: LssSpace, table: dict):
        missing = [l for l in source.ground.labels if l not in table]
        if missing:
            raise InvalidMap("Map is not total: no image for {}"
                             .format(", ".join(missing)))
        return cls(source, target, tuple(
            target.ground.index(table[l]) for l in source.ground.labels
        ))

    def as_labels(self) -> dict:
        return {
            self.source.ground.labels[x]: self.target.ground.labels[y]
            for x, y in enumerate(self.table)
        }

    def compose(self, after: "SpaceMap") -> "SpaceMap":
        """
        The map ``after`` applied after ``self``
        """
        if self.target.ground != after.source.ground:
            raise InvalidMap("Maps are not composable")
        return SpaceMap(self.source, after.target,
                        tuple(after.table[y] for y in self.table))

    def image(self, mask: int) -> int:
        m = 0
        for x in bits(mask):
            m |= 1 << self.table[x]
        return m

    def preimage(self, mask: int) -> int:
        m = 0
        for x, y in enumerate(self.table):
            if mask >> y & 1:
                m |= 1 << x
        return m

    def image_family(self, family: SetFamily) -> SetFamily:
        return SetFamily(self.target.ground,
                         tuple(self.image(m) for m in family.masks))

    def preimage_family(self, family: SetFamily) -> SetFamily:
        return SetFamily(self.source.ground,
                         tuple(self.preimage(m) for m in family.masks))

    @property
    def image_mask(self) -> int:
        return self.image(self.source.ground.full)

    @property
    def max_fiber(self) -> int:
        return max(Counter(self.table).values())


@attr.s(frozen=True, auto_attribs=True)
class MapReport:
    bornologous: Verdict
    coarse_embedding: Verdict
    coarsely_surjective: Verdict
    equivalence: Verdict
    """
    On success the witness is the pair of closeness checks for
    ``f.g`` against the identity of the target and ``g.f`` against
    the identity of the source
    """
    inverse: Optional[SpaceMap] = None


def is_bornologous(f: SpaceMap) -> Verdict:
    """
    :return: counterexample is a maximal bounded set of the source
        whose image is unbounded
    """
    for b in f.source.blocks:
        if not f.target.is_bounded(f.image(b)):
            return Verdict(False, counterexample=Subset(f.source.ground, b))
    return Verdict(True)


def is_coarse_embedding(f: SpaceMap) -> Verdict:
    """
    :return: counterexample is a maximal bounded set of the target
        whose preimage is unbounded
    """
    for c in f.target.blocks:
        if not f.source.is_bounded(f.preimage(c)):
            return Verdict(False, counterexample=Subset(f.target.ground, c))
    return Verdict(True)


def is_coarsely_surjective(f: SpaceMap) -> Verdict:
    target = f.target
    reached = star_mask(f.image_mask, target.blocks)
    if reached == target.ground.full:
        return Verdict(True, witness=target.maximal_bounded)
    missing = [c for c in target.blocks if not c & reached]
    return Verdict(False, counterexample=Subset(target.ground, missing[0]))


def are_close(f: SpaceMap, g: SpaceMap) -> Verdict:
    """
    :return: witness is the target's maximal bounded scale;
        counterexample is the first point x with f(x), g(x) in
        different maximal bounded sets
    """
    if f.source.ground != g.source.ground or \
            f.target.ground != g.target.ground:
        raise InvalidMap("Closeness requires maps with the same source "
                         "and target")
    for x in range(f.source.size):
        if not f.target.same_block(f.table[x], g.table[x]):
            return Verdict(False, counterexample=x)
    return Verdict(True, witness=f.target.maximal_bounded)


def _choose_inverse(f: SpaceMap) -> Optional[SpaceMap]:
    # for every y the smallest x with f(x) in the block of y
    target = f.target
    first = {}
    for x, y in enumerate(f.table):
        first.setdefault(target.block_of[y], x)
    table = []
    for y in range(target.size):
        x = first.get(target.block_of[y])
        if x is None:
            return None
        table.append(x)
    return SpaceMap(target, f.source, tuple(table))


def _inverse_checks(f: SpaceMap, g: SpaceMap) -> Tuple[Verdict, Verdict,
                                                       Verdict]:
    return (
        is_bornologous(g),
        are_close(g.compose(f), SpaceMap.identity(f.target)),
        are_close(f.compose(g), SpaceMap.identity(f.source)),
    )


def construct_coarse_inverse(f: SpaceMap) -> SpaceMap:
    failed = [
        name for name, check in (
            ("bornologous", is_bornologous),
            ("coarse embedding", is_coarse_embedding),
            ("coarsely surjective", is_coarsely_surjective)
        ) if not check(f)
    ]
    if failed:
        raise PreconditionError("Map has no coarse inverse, it is not: "
                                + ", ".join(failed))
    g = _choose_inverse(f)
    if g is None or not all(_inverse_checks(f, g)):
        raise InconsistentRoutesError(
            "Constructed inverse fails its post-conditions"
        )
    return g


def is_coarse_equivalence(f: SpaceMap) -> MapReport:
    bornologous = is_bornologous(f)
    embedding = is_coarse_embedding(f)
    surjective = is_coarsely_surjective(f)
    by_properties = bool(bornologous and embedding and surjective)

    g = _choose_inverse(f)
    checks = None
    by_inverse = False
    if g is not None and bornologous:
        checks = _inverse_checks(f, g)
        by_inverse = all(checks)

    if by_inverse != by_properties:
        raise InconsistentRoutesError(
            "Equivalence verdicts disagree: inverse route {}, "
            "property route {}".format(by_inverse, by_properties)
        )
    logging.debug("Coarse equivalence: {}".format(by_inverse))
    if by_inverse:
        equivalence = Verdict(True, witness=(checks[1], checks[2]))
        return MapReport(bornologous, embedding, surjective, equivalence, g)
    if not bornologous:
        reason = "bornologous"
    elif g is None:
        reason = "inverse"
    else:
        reason = ("inverse bornologous", "close to target identity",
                  "close to source identity")[
            [bool(c) for c in checks].index(False)
        ]
    return MapReport(bornologous, embedding, surjective,
                     Verdict(False, counterexample=reason))
