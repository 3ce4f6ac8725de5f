"""
Nets and bounded scale measure

A net of a set A at scale U is a maximal subset of A no two points of
which share an element of U, i.e. a maximal independent set of the
proximity graph of U restricted to A. Bounded scale measure is
certified in three equivalent forms:

* ``all-nets``: the largest size of any net of a queried element;
* ``exists-net``: the largest, over queried elements, of the smallest
  net size;
* ``covering``: the largest, over queried elements, of the minimum
  number of base elements covering it.

:func:`check_bsm` queries the maximal bounded sets of a space.
For all-nets and covering this loses nothing: every uniformly bounded
scale refines the maximal bounded sets up to singletons and both
constants are monotone under inclusion of the queried set, since a net
of a subset extends to a net of the superset and a cover of a superset
covers the subset. The exists-net constant is not monotone in this
sense; it is reported for the coarsest scale as well.
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
from enum import Enum
from typing import List, Tuple

import attr
import networkx as nx

from lsskit.config import OracleLimits, default_limits
from lsskit.errors import GroundSetMismatch, PreconditionError, \
    UnboundedFamilyError
from lsskit.maps import SpaceMap, is_coarse_equivalence
from lsskit.measure.setcover import min_cover
from lsskit.structure.core_family import GroundSet, Scale, SetFamily, \
    Subset, bits, extend_to_scale, mask_of, popcount, same_ground
from lsskit.structure.lss import LssSpace, is_uniformly_bounded
from lsskit.util.executors import evaluate


class BsmMode(Enum):
    all_nets = "all-nets"
    exists_net = "exists-net"
    covering = "covering"


@attr.s(frozen=True, auto_attribs=True)
class ProximityGraph:
    """
    Points are adjacent iff they are distinct and some scale
    element contains both
    """

    ground: GroundSet
    scale: SetFamily
    adjacency: Tuple[int, ...]
    """
    Neighbourhood bitmask of every point
    """

    @classmethod
    def of(cls, scale: SetFamily) -> "ProximityGraph":
        adj = [0] * scale.ground.size
        for m in scale.masks:
            for x in bits(m):
                adj[x] |= m
        for x in range(len(adj)):
            adj[x] &= ~(1 << x)
        return cls(scale.ground, scale, tuple(adj))

    def adjacent(self, x: int, y: int) -> bool:
        return bool(self.adjacency[x] >> y & 1)

    def graph(self, within: int) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(bits(within))
        for x in bits(within):
            g.add_edges_from((x, y) for y in bits(self.adjacency[x] & within)
                             if y > x)
        return g


@attr.s(frozen=True, auto_attribs=True)
class Net:
    within: Subset
    scale: SetFamily
    members: Subset

    def __len__(self):
        return len(self.members)

    def is_valid(self) -> bool:
        """
        Checks that members lie in the ambient set, are pairwise
        non-adjacent and that the net is maximal
        """
        graph = ProximityGraph.of(self.scale)
        if not self.members.issubset(self.within):
            return False
        covered = self.members.mask
        for x in self.members:
            if graph.adjacency[x] & self.members.mask:
                return False
            covered |= graph.adjacency[x]
        return self.within.mask & ~covered == 0


@attr.s(frozen=True, auto_attribs=True)
class BsmCertificate:
    base_scale: Scale
    queried_scale: SetFamily
    mode: BsmMode
    bound: int
    constants: Tuple[int, ...]
    """
    Constant of every queried element
    """
    witnesses: Tuple[Tuple[int, ...], ...]
    """
    Per queried element: member ids of the extremal net, or base
    indices of the minimal cover
    """


def greedy_net(ambient: Subset, scale: SetFamily) -> Net:
    same_ground(ambient.ground, scale.ground)
    graph = ProximityGraph.of(scale)
    chosen = 0
    blocked = 0
    for x in ambient:
        if not blocked >> x & 1:
            chosen |= 1 << x
            blocked |= graph.adjacency[x]
    return Net(ambient, scale, Subset(ambient.ground, chosen))


def enumerate_nets(ambient: Subset, scale: SetFamily,
                   limits: OracleLimits = None) -> List[Net]:
    """
    All nets of ``ambient``, ordered by their sorted member ids.
    Maximal independent sets are found as maximal cliques of the
    complement of the proximity graph.
    """
    same_ground(ambient.ground, scale.ground)
    if limits is None:
        limits = default_limits()
    limits.check("nets", len(ambient))
    if ambient.is_empty():
        return [Net(ambient, scale, ambient)]
    graph = ProximityGraph.of(scale).graph(ambient.mask)
    cliques = sorted(tuple(sorted(c))
                     for c in nx.find_cliques(nx.complement(graph)))
    return [Net(ambient, scale, Subset(ambient.ground, mask_of(c)))
            for c in cliques]


def _extremal_net(ambient: Subset, scale: SetFamily, largest: bool,
                  limits: OracleLimits) -> Tuple[int, Tuple[int, ...]]:
    nets = enumerate_nets(ambient, scale, limits)
    sizes = [len(n) for n in nets]
    size = max(sizes) if largest else min(sizes)
    # first net of the extremal size in enumeration order
    best = nets[sizes.index(size)]
    return size, best.members.members


def _certificate(queried: SetFamily, base: Scale, mode: BsmMode,
                 per_element, limits: OracleLimits) -> BsmCertificate:
    same_ground(queried.ground, base.ground, "queried and base scales")
    results = evaluate(per_element, queried.masks, limits.threads)
    constants = tuple(r[0] for r in results)
    witnesses = tuple(r[1] for r in results)
    bound = max(constants, default=0)
    logging.info("Bounded scale measure ({}): {:d} over {:d} queried "
                 "elements".format(mode.value, bound, len(constants)))
    return BsmCertificate(base, queried, mode, bound, constants, witnesses)


def net_bound_all(queried: SetFamily, base: Scale,
                  limits: OracleLimits = None) -> BsmCertificate:
    if limits is None:
        limits = default_limits()
    return _certificate(queried, base, BsmMode.all_nets, lambda m:
        _extremal_net(Subset(base.ground, m), base, True, limits),
        limits)


def net_bound_exists(queried: SetFamily, base: Scale,
                     limits: OracleLimits = None) -> BsmCertificate:
    if limits is None:
        limits = default_limits()
    return _certificate(queried, base, BsmMode.exists_net, lambda m:
        _extremal_net(Subset(base.ground, m), base, False, limits),
        limits)


def covering_number(queried: SetFamily, base: Scale,
                    limits: OracleLimits = None) -> BsmCertificate:
    if limits is None:
        limits = default_limits()

    def cover(m: int):
        chosen = min_cover(m, base.masks, limits)
        if chosen is None:
            raise PreconditionError("Base scale does not cover a queried "
                                    "element")
        return len(chosen), chosen

    return _certificate(queried, base, BsmMode.covering, cover, limits)


_MODES = {
    BsmMode.all_nets: net_bound_all,
    BsmMode.exists_net: net_bound_exists,
    BsmMode.covering: covering_number,
}


def certify(queried: SetFamily, base: Scale, mode: BsmMode,
            limits: OracleLimits = None) -> BsmCertificate:
    return _MODES[BsmMode(mode)](queried, base, limits)


def check_bsm(space: LssSpace, base: SetFamily, mode: BsmMode,
              limits: OracleLimits = None) -> BsmCertificate:
    bounded = is_uniformly_bounded(base, space)
    if not bounded:
        raise UnboundedFamilyError("Base scale", bounded.counterexample)
    return certify(space.maximal_bounded, Scale.of_family(base), mode, limits)


@attr.s(frozen=True, auto_attribs=True)
class BsmTransfer:
    """
    Certificate carried across a coarse equivalence, with the
    reference constant it is bounded by
    """

    certificate: BsmCertificate
    forward: bool
    reference: BsmCertificate
    """
    Certificate on the other space for the queried scale carried back
    """
    slack: int
    """
    Largest number of points of a queried element outside the image
    (forward transfers only)
    """

    @property
    def law_holds(self) -> bool:
        return self.certificate.bound <= self.reference.bound + self.slack


def bsm_transfer(f: SpaceMap, cert: BsmCertificate,
                 limits: OracleLimits = None) -> BsmTransfer:
    """
    Carries a certificate across a coarse equivalence ``f: X -> Y``.

    A certificate on X at base U becomes a certificate on Y at the
    image f(U), extended by singletons if it does not cover Y: a
    net of V pulls back to a net of the preimage of V, so the Y
    constant is bounded by the X constant of the pulled back queried
    scale plus the points of V outside f(X).

    A covering certificate on Y at base U becomes a covering
    certificate on X at the preimage of U: preimages of a cover of
    f(V) cover V.
    """
    if limits is None:
        limits = default_limits()
    if not is_coarse_equivalence(f).equivalence:
        raise PreconditionError("Map is not a coarse equivalence")
    ground = cert.base_scale.ground
    if ground == f.source.ground:
        base = extend_to_scale(f.image_family(cert.base_scale))
        queried = f.target.maximal_bounded
        result = certify(queried, base, cert.mode, limits)
        reference = certify(
            Scale.of_family(f.preimage_family(queried).nonempty()),
            cert.base_scale, cert.mode, limits
        )
        image = f.image_mask
        slack = max(popcount(m & ~image) for m in queried.masks)
        transfer = BsmTransfer(result, True, reference, slack)
    elif ground == f.target.ground:
        if cert.mode is not BsmMode.covering:
            raise PreconditionError("Transfer to the source requires a "
                                    "covering certificate")
        base = Scale.of_family(f.preimage_family(cert.base_scale).nonempty())
        queried = f.source.maximal_bounded
        result = covering_number(queried, base, limits)
        reference = covering_number(f.image_family(queried),
                                    cert.base_scale, limits)
        transfer = BsmTransfer(result, False, reference, 0)
    else:
        raise GroundSetMismatch("certificate and map")
    logging.info("Transferred {} bound {:d} (reference {:d}, slack {:d})"
                 .format(cert.mode.value, transfer.certificate.bound,
                         transfer.reference.bound, transfer.slack))
    return transfer
