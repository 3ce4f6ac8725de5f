"""
Asymptotic dimension certificates

A space has asymptotic dimension at most n if every uniformly bounded
scale coarsens to a uniformly bounded scale of multiplicity at most n+1.
On a finite space the maximal bounded partition is always such a
coarsening, so the interesting output is a *fine* one: starting from the
scale itself, :func:`coarsen` repeatedly merges, at the most crowded
point, the two elements containing it whose union is smallest. Both
elements contain the point, so their union stays bounded.
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
from typing import List, Optional, Tuple

import attr

from lsskit.errors import UnboundedFamilyError
from lsskit.structure.core_family import Scale, SetFamily, counts, \
    multiplicity, popcount, refines
from lsskit.structure.lss import LssSpace, is_uniformly_bounded


@attr.s(frozen=True, auto_attribs=True)
class AsdimCertificate:
    n: int
    generators: Tuple[Scale, ...]
    coarsenings: Tuple[Scale, ...]
    """
    Coarsening of the generator with the same index
    """

    def coarsening_for(self, scale: SetFamily) -> Optional[Scale]:
        for g, c in zip(self.generators, self.coarsenings):
            if g == scale:
                return c
        return None

    def is_valid(self, space: LssSpace) -> bool:
        return all(
            multiplicity(c) <= self.n + 1
            and refines(g, c).holds
            and is_uniformly_bounded(c, space).holds
            for g, c in zip(self.generators, self.coarsenings)
        )


def _drop_contained(masks: List[int]) -> List[int]:
    kept = []
    for i, m in enumerate(masks):
        contained = any(
            (m | o == o) and (m != o or j < i)
            for j, o in enumerate(masks) if j != i
        )
        if not contained:
            kept.append(m)
    return kept


def coarsen(scale: SetFamily, n: int) -> Scale:
    """
    Coarsening of ``scale`` with multiplicity at most n+1 whose elements
    are unions of overlapping elements of ``scale``
    """
    masks = _drop_contained([m for m in scale.masks if m])
    while True:
        c = counts(SetFamily(scale.ground, masks))
        top = max(c)
        if top <= n + 1:
            break
        x = c.index(top)
        holders = [i for i, m in enumerate(masks) if m >> x & 1]
        pairs = [(popcount(masks[i] | masks[j]), i, j)
                 for k, i in enumerate(holders) for j in holders[k + 1:]]
        _, i, j = min(pairs)
        merged = masks[i] | masks[j]
        logging.debug("Merging elements {:d} and {:d} at point {:d}"
                      .format(i, j, x))
        masks[i] = merged
        del masks[j]
        masks = _drop_contained(masks)
    return Scale(scale.ground, tuple(masks))


def check_asdim_at_most(space: LssSpace, n: int) -> AsdimCertificate:
    if n < 0:
        raise ValueError("Dimension must be non-negative")
    coarsenings = []
    for i, g in enumerate(space.generators):
        bounded = is_uniformly_bounded(g, space)
        if not bounded:
            raise UnboundedFamilyError("Generator {:d}".format(i),
                                       bounded.counterexample)
        c = coarsen(g, n)
        logging.info("Generator {:d}: coarsening with {:d} elements, "
                     "multiplicity {:d}".format(i, len(c), multiplicity(c)))
        coarsenings.append(c)
    return AsdimCertificate(n, tuple(space.generators), tuple(coarsenings))
