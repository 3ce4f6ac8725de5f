"""
Set families over a finite ground set

Subsets are encoded as integer bitmasks over element ids, so every
operation of this module is exact set algebra. Families are immutable,
keep duplicate elements and report results by element index.

The module provides stars of subsets and of families, iterated stars,
horizons, refinement, trivial extension and multiplicity of a family.
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

from typing import Any, FrozenSet, Iterable, Iterator, List, Optional, \
    Sequence, Tuple

import attr

from lsskit.errors import GroundSetMismatch, InvalidScale


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """
    Yields element ids of a bitmask in ascending order
    """
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@attr.s(frozen=True, auto_attribs=True)
class Verdict:
    """
    Boolean outcome of a check together with the evidence for it:
    ``witness`` on success, ``counterexample`` on failure
    """

    holds: bool
    witness: Any = None
    counterexample: Any = None

    def __bool__(self):
        return self.holds


def _check_labels(instance, attribute, value):
    if len(value) < 1:
        raise ValueError("Ground set must contain at least one element")
    if len(set(value)) != len(value):
        raise ValueError("Ground set labels must be pairwise distinct")


@attr.s(frozen=True, auto_attribs=True)
class GroundSet:
    labels: Tuple[str, ...] = attr.ib(converter=tuple, validator=_check_labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        return cls(tuple(str(i) for i in range(n)))

    def index(self, label: str) -> int:
        try:
            return self._positions()[label]
        except KeyError:
            raise KeyError("Unknown element: {}".format(label))

    def _positions(self):
        cache = self.__dict__.get("_pos")
        if cache is None:
            cache = {label: i for i, label in enumerate(self.labels)}
            object.__setattr__(self, "_pos", cache)
        return cache

    def subset(self, ids: Iterable[int]) -> "Subset":
        return Subset(self, mask_of(ids))

    def subset_of_labels(self, labels: Iterable[str]) -> "Subset":
        return Subset(self, mask_of(self.index(label) for label in labels))

    def whole(self) -> "Subset":
        return Subset(self, self.full)

    def __len__(self):
        return len(self.labels)


def same_ground(a: GroundSet, b: GroundSet, what: str = "operands"):
    if a is not b and a != b:
        raise GroundSetMismatch(what)


@attr.s(frozen=True, auto_attribs=True)
class Subset:
    ground: GroundSet
    mask: int

    def __attrs_post_init__(self):
        if self.mask < 0 or self.mask > self.ground.full:
            raise ValueError("Subset references ids outside the ground set")

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(bits(self.mask))

    def labels(self) -> List[str]:
        return [self.ground.labels[i] for i in bits(self.mask)]

    def is_empty(self) -> bool:
        return self.mask == 0

    def issubset(self, other: "Subset") -> bool:
        same_ground(self.ground, other.ground)
        return self.mask & ~other.mask == 0

    def meets(self, other: "Subset") -> bool:
        same_ground(self.ground, other.ground)
        return self.mask & other.mask != 0

    def __and__(self, other: "Subset") -> "Subset":
        same_ground(self.ground, other.ground)
        return Subset(self.ground, self.mask & other.mask)

    def __or__(self, other: "Subset") -> "Subset":
        same_ground(self.ground, other.ground)
        return Subset(self.ground, self.mask | other.mask)

    def __sub__(self, other: "Subset") -> "Subset":
        same_ground(self.ground, other.ground)
        return Subset(self.ground, self.mask & ~other.mask)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self):
        return popcount(self.mask)

    def __iter__(self):
        return bits(self.mask)

    def __str__(self):
        return "{" + ", ".join(self.labels()) + "}"


@attr.s(frozen=True, auto_attribs=True)
class SetFamily:
    """
    Indexed family of subsets of a ground set. Empty elements are
    allowed and inert.
    """

    ground: GroundSet
    masks: Tuple[int, ...] = attr.ib(converter=tuple)

    def __attrs_post_init__(self):
        full = self.ground.full
        for m in self.masks:
            if m < 0 or m & ~full:
                raise ValueError(
                    "Family element references ids outside the ground set"
                )

    @classmethod
    def of(cls, ground: GroundSet, elements: Iterable[Iterable[int]]):
        return cls(ground, tuple(mask_of(e) for e in elements))

    @classmethod
    def of_labels(cls, ground: GroundSet, elements: Iterable[Iterable[str]]):
        return cls(ground, tuple(
            mask_of(ground.index(label) for label in e) for e in elements
        ))

    def element(self, i: int) -> Subset:
        return Subset(self.ground, self.masks[i])

    @property
    def union(self) -> int:
        u = 0
        for m in self.masks:
            u |= m
        return u

    def as_ids(self) -> List[List[int]]:
        return [list(bits(m)) for m in self.masks]

    def as_labels(self) -> List[List[str]]:
        return [self.element(i).labels() for i in range(len(self.masks))]

    def nonempty(self) -> "SetFamily":
        return SetFamily(self.ground, tuple(m for m in self.masks if m))

    def __len__(self):
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return (Subset(self.ground, m) for m in self.masks)


@attr.s(frozen=True, auto_attribs=True)
class Scale(SetFamily):
    """
    A family that covers the ground set and has no empty elements
    """

    def __attrs_post_init__(self):
        super().__attrs_post_init__()
        for i, m in enumerate(self.masks):
            if m == 0:
                raise InvalidScale("Scale element {:d} is empty".format(i))
        if self.union != self.ground.full:
            missing = lowest(self.ground.full & ~self.union)
            raise InvalidScale("Scale does not cover element {}"
                               .format(self.ground.labels[missing]))

    @classmethod
    def of_family(cls, family: SetFamily) -> "Scale":
        if isinstance(family, Scale):
            return family
        return cls(family.ground, family.masks)


def singleton_cover(ground: GroundSet) -> Scale:
    return Scale(ground, tuple(1 << i for i in range(ground.size)))


def whole_cover(ground: GroundSet) -> Scale:
    return Scale(ground, (ground.full, ))


def is_trivial(family: SetFamily) -> bool:
    """
    True if every element of the family is a single point
    """
    return all(popcount(m) == 1 for m in family.masks)


def _as_family(ground: GroundSet, masks: Sequence[int], prefer_scale: bool):
    if prefer_scale and all(masks):
        u = 0
        for m in masks:
            u |= m
        if u == ground.full:
            return Scale(ground, masks)
    return SetFamily(ground, masks)


def star_mask(target: int, masks: Sequence[int]) -> int:
    s = 0
    for m in masks:
        if m & target:
            s |= m
    return s


def star(target: Subset, family: SetFamily) -> Subset:
    same_ground(target.ground, family.ground)
    return Subset(family.ground, star_mask(target.mask, family.masks))


def star_family(inner: SetFamily, against: SetFamily) -> SetFamily:
    """
    Element ``i`` of the result is the star of element ``i`` of
    ``inner`` against ``against``. The result is a Scale whenever it
    satisfies the scale conditions.
    """
    same_ground(inner.ground, against.ground)
    masks = tuple(star_mask(m, against.masks) for m in inner.masks)
    return _as_family(inner.ground, masks, isinstance(inner, Scale))


def iterated_star(base: Scale, n: int) -> Scale:
    if n < 0:
        raise ValueError("Star tower height must be non-negative")
    current = base
    for _ in range(n):
        current = Scale.of_family(star_family(base, current))
    return current


def horizon(target: Subset, scale: SetFamily) -> FrozenSet[int]:
    same_ground(target.ground, scale.ground)
    return horizon_mask(target.mask, scale.masks)


def horizon_mask(target: int, masks: Sequence[int]) -> FrozenSet[int]:
    return frozenset(i for i, m in enumerate(masks) if m & target)


def refines(fine: SetFamily, coarse: SetFamily) -> Verdict:
    """
    Checks that every element of ``fine`` lies inside some element of
    ``coarse``.

    :return: on success the witness maps each fine index to the first
        coarse index containing it; on failure the counterexample is
        the first offending fine index
    """
    same_ground(fine.ground, coarse.ground)
    mapping = []
    for i, m in enumerate(fine.masks):
        found = _container(m, coarse.masks)
        if found is None:
            return Verdict(False, counterexample=i)
        mapping.append(found)
    return Verdict(True, witness=tuple(mapping))


def _container(mask: int, masks: Sequence[int]) -> Optional[int]:
    for j, c in enumerate(masks):
        if mask & ~c == 0:
            return j
    return None


def trivial_extension(family: SetFamily) -> Scale:
    ground = family.ground
    masks = [m for m in family.masks if m]
    masks.extend(1 << i for i in range(ground.size))
    return Scale(ground, tuple(masks))


def extend_to_scale(family: SetFamily) -> Scale:
    """
    Returns the family itself when it already is a scale once empty
    elements are dropped, its trivial extension otherwise
    """
    masks = tuple(m for m in family.masks if m)
    u = 0
    for m in masks:
        u |= m
    if u == family.ground.full:
        return Scale(family.ground, masks)
    return trivial_extension(family)


def counts(family: SetFamily) -> List[int]:
    c = [0] * family.ground.size
    for m in family.masks:
        for x in bits(m):
            c[x] += 1
    return c


def multiplicity(family: SetFamily) -> int:
    return max(counts(family), default=0)


def r_multiplicity(scale: SetFamily, metric, r: int) -> int:
    """
    Largest number of scale elements met by a closed ball of radius r.

    :param metric: any object exposing ``ball(x, r)`` returning
        a bitmask, e.g. :class:`lsskit.structure.lss.InfMetric`
    """
    same_ground(scale.ground, metric.ground)
    return max(
        (len(horizon_mask(metric.ball(x, r), scale.masks))
         for x in range(scale.ground.size)),
        default=0
    )
