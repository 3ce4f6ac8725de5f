"""
Property A witnesses

A witness at ratio epsilon for a test scale U assigns to every point x a
finite set A_x of (point, level) pairs such that

1. (x, 1) belongs to A_x;
2. every (z, l) in A_x has z in the star of x against a uniformly
   bounded support scale V;
3. |A_x Δ A_y| < epsilon * |A_x ∩ A_y| whenever y lies in the
   star of x against U.

All ratios are exact fractions and the inequality is strict.
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
import logging
import math
from fractions import Fraction
from typing import FrozenSet, Iterator, List, Optional, Tuple, Union

import attr

from lsskit.config import OracleLimits, default_limits
from lsskit.errors import OracleLimitExceeded, PreconditionError, \
    UnboundedFamilyError
from lsskit.maps import SpaceMap, is_coarse_equivalence
from lsskit.propa.asdim import AsdimCertificate, coarsen
from lsskit.structure.core_family import Scale, Verdict, bits, \
    extend_to_scale, iterated_star, lowest, popcount, refines, same_ground, \
    singleton_cover, star_family, star_mask
from lsskit.structure.lss import LssSpace, is_uniformly_bounded
from lsskit.util.executors import evaluate

Pair = Tuple[int, int]
Ratio = Union[Fraction, float]


def as_fraction(value) -> Fraction:
    """
    Exact rational from a Fraction, an int or a "p/q" string
    """
    if isinstance(value, float):
        raise TypeError("Ratios must be exact, got float {}".format(value))
    return Fraction(value)


def ratio(sym_diff: int, intersection: int) -> Ratio:
    if intersection == 0:
        return Fraction(0) if sym_diff == 0 else math.inf
    return Fraction(sym_diff, intersection)


@attr.s(frozen=True, auto_attribs=True)
class Violation:
    kind: str
    """
    One of "diagonal", "support" or "ratio"
    """
    x: int
    y: Optional[int] = None
    sym_diff: int = 0
    intersection: int = 0


@attr.s(frozen=True, auto_attribs=True)
class WitnessCheck:
    holds: bool
    violations: Tuple[Violation, ...]
    max_ratio: Ratio
    """
    Largest measured ratio over the tested pairs
    """
    pairs: int

    def __bool__(self):
        return self.holds


def summarize(violations: List[Violation],
              measured: List[Tuple[int, int]]) -> WitnessCheck:
    top = max((ratio(d, i) for d, i in measured), default=Fraction(0))
    return WitnessCheck(not violations, tuple(violations), top, len(measured))


def compare(epsilon: Fraction, a: FrozenSet, b: FrozenSet) -> Tuple[int, int,
                                                                    bool]:
    d = len(a ^ b)
    i = len(a & b)
    return d, i, d < epsilon * i


@attr.s(frozen=True, auto_attribs=True)
class PropertyAWitness:
    epsilon: Fraction = attr.ib(converter=as_fraction)
    test_scale: Scale
    support_scale: Scale
    sets: Tuple[FrozenSet[Pair], ...] = \
        attr.ib(converter=lambda s: tuple(frozenset(a) for a in s))

    def __attrs_post_init__(self):
        same_ground(self.test_scale.ground, self.support_scale.ground,
                    "test and support scales")
        if len(self.sets) != self.test_scale.ground.size:
            raise ValueError("Witness needs one set per point")

    @property
    def ground(self):
        return self.test_scale.ground

    def at(self, epsilon) -> "PropertyAWitness":
        return attr.evolve(self, epsilon=as_fraction(epsilon))


def has_bounded_geometry(space: LssSpace) -> Verdict:
    """
    Always true on a finite space; the witness is the sharp constant,
    the size of the largest maximal bounded set
    """
    return Verdict(True, witness=max(popcount(b) for b in space.blocks))


def _require_bounded(space: LssSpace, **scales):
    for name, scale in scales.items():
        check = is_uniformly_bounded(scale, space)
        if not check:
            raise UnboundedFamilyError(name.replace('_', ' ').capitalize(),
                                       check.counterexample)


def verify_witness(space: LssSpace, w: PropertyAWitness,
                   limits: OracleLimits = None) -> WitnessCheck:
    if limits is None:
        limits = default_limits()
    same_ground(space.ground, w.ground, "space and witness")
    if w.epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    _require_bounded(space, test_scale=w.test_scale,
                     support_scale=w.support_scale)
    test = w.test_scale.masks
    support = w.support_scale.masks

    def check_point(x: int):
        violations = []
        measured = []
        a = w.sets[x]
        if (x, 1) not in a:
            violations.append(Violation("diagonal", x))
        reach = star_mask(1 << x, support)
        for z, l in sorted(a):
            if not (0 <= z < space.size and reach >> z & 1 and l >= 1):
                violations.append(Violation("support", x, z))
        for y in bits(star_mask(1 << x, test)):
            d, i, ok = compare(w.epsilon, a, w.sets[y])
            measured.append((d, i))
            if not ok:
                violations.append(Violation("ratio", x, y, d, i))
        return violations, measured

    results = evaluate(check_point, range(space.size), limits.threads)
    violations = [v for r in results for v in r[0]]
    measured = [m for r in results for m in r[1]]
    check = summarize(violations, measured)
    logging.debug("Witness check at {}: {:d} pairs, {:d} violations"
                  .format(w.epsilon, check.pairs, len(violations)))
    return check


@attr.s(frozen=True, auto_attribs=True)
class SearchResult:
    witness: Optional[PropertyAWitness]
    explored: int
    """
    Number of candidate assignments tried
    """

    @property
    def exhausted(self) -> bool:
        return self.witness is None


def _candidates(x: int, reach: int, max_level: int) -> Iterator[FrozenSet]:
    pairs = [(z, l) for z in bits(reach) for l in range(1, max_level + 1)
             if (z, l) != (x, 1)]
    for k in range(len(pairs) + 1):
        for extra in itertools.combinations(pairs, k):
            yield frozenset(((x, 1), ) + extra)


def search_witness(space: LssSpace, epsilon, test_scale: Scale,
                   support_scale: Scale, max_level: int,
                   limits: OracleLimits = None) -> SearchResult:
    """
    Backtracking search over points in id order; candidate sets for a
    point are tried by size and then lexicographically. Exhaustion
    refutes only this support scale and level bound, not property A.
    """
    if limits is None:
        limits = default_limits()
    epsilon = as_fraction(epsilon)
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    limits.check("search_points", space.size)
    limits.check("search_levels", max_level)
    if max_level < 1:
        raise PreconditionError("max_level must be at least 1")
    _require_bounded(space, test_scale=test_scale,
                     support_scale=support_scale)
    n = space.size
    near = [star_mask(1 << x, test_scale.masks) for x in range(n)]
    reach = [star_mask(1 << x, support_scale.masks) for x in range(n)]
    chosen: List[FrozenSet] = []
    explored = [0]

    def assign(x: int) -> bool:
        if x == n:
            return True
        for a in _candidates(x, reach[x], max_level):
            explored[0] += 1
            if explored[0] > limits.search_nodes:
                raise OracleLimitExceeded("search_nodes", explored[0],
                                          limits.search_nodes)
            if all(compare(epsilon, a, chosen[y])[2]
                   for y in bits(near[x] & ((1 << x) - 1))):
                chosen.append(a)
                if assign(x + 1):
                    return True
                chosen.pop()
        return False

    found = assign(0)
    logging.info("Witness search at {}: {} after {:d} candidates".format(
        epsilon, "found" if found else "exhausted", explored[0]))
    if not found:
        return SearchResult(None, explored[0])
    return SearchResult(
        PropertyAWitness(epsilon, test_scale, support_scale, chosen),
        explored[0]
    )


def tower_height(k: int, epsilon) -> int:
    """
    Smallest n >= 2 with (4k + 6) / (n - 1) < epsilon
    """
    epsilon = as_fraction(epsilon)
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    n = 2
    while Fraction(4 * k + 6, n - 1) >= epsilon:
        n += 1
    return n


def tower_family(test_scale: Scale, n: int) -> Scale:
    """
    Element x is the star of x against the n-th iterated star of the
    test scale
    """
    ground = test_scale.ground
    return Scale.of_family(
        star_family(singleton_cover(ground), iterated_star(test_scale, n))
    )


def construct_witness_asdim(space: LssSpace, cert: AsdimCertificate,
                            epsilon, test_scale: Scale) -> PropertyAWitness:
    """
    Builds a witness from a coarsening of multiplicity at most k+1 of
    the star tower of height n over ``test_scale``. For every
    element V of the coarsening, z_V is its smallest point, and

        A_x = {(x, 1)} + {(z_V, m) : 1 <= m <= n, V meets but is not
              contained in st(x, st^m U)}.

    The result is not verified here: on finite spaces the star towers
    stabilize and the construction may degenerate.
    """
    epsilon = as_fraction(epsilon)
    k = cert.n
    n = tower_height(k, epsilon)
    same_ground(space.ground, test_scale.ground, "space and test scale")
    _require_bounded(space, test_scale=test_scale)
    tower = tower_family(test_scale, n)
    coarsening = cert.coarsening_for(tower)
    if coarsening is None:
        coarsening = coarsen(tower, k)
    if not is_uniformly_bounded(coarsening, space) or \
            not refines(tower, coarsening):
        raise PreconditionError("Tower coarsening unavailable at height {:d}"
                                .format(n))
    logging.info("Tower height {:d} for k = {:d}, epsilon = {}; coarsening "
                 "with {:d} elements".format(n, k, epsilon, len(coarsening)))
    levels = [iterated_star(test_scale, m).masks for m in range(1, n + 1)]
    anchors = [(v, lowest(v)) for v in coarsening.masks]
    sets = []
    for x in range(space.size):
        a = {(x, 1)}
        for m, masks in enumerate(levels, start=1):
            s = star_mask(1 << x, masks)
            for v, z in anchors:
                if v & s and v & ~s:
                    a.add((z, m))
        sets.append(frozenset(a))
    support = Scale.of_family(star_family(tower, coarsening))
    return PropertyAWitness(epsilon, test_scale, support, sets)


@attr.s(frozen=True, auto_attribs=True)
class TransferredWitness:
    witness: PropertyAWitness
    check: WitnessCheck
    """
    Verification of the transferred witness at the requested epsilon
    """
    fiber_bound: int

    @property
    def holds(self) -> bool:
        return self.check.holds


def transfer_witness(f: SpaceMap, target_witness: PropertyAWitness,
                     epsilon, test_scale: Scale = None,
                     limits: OracleLimits = None) -> TransferredWitness:
    """
    Pulls a witness on Y back along a coarse equivalence ``f: X -> Y``:

        A_x = {(z, l) : (f(z), l) in B_f(x)}.

    With N the largest fiber of f, the target witness must verify at
    epsilon / N. The test scale on X defaults to the preimage of the
    target test scale; an explicit one must map into it.
    """
    if limits is None:
        limits = default_limits()
    epsilon = as_fraction(epsilon)
    same_ground(f.target.ground, target_witness.ground,
                "map target and witness")
    if not is_coarse_equivalence(f).equivalence:
        raise PreconditionError("Map is not a coarse equivalence")
    fiber = f.max_fiber
    budget = epsilon / fiber
    if not verify_witness(f.target, target_witness.at(budget), limits):
        raise PreconditionError("Target witness does not verify at {}"
                                .format(budget))
    if test_scale is None:
        test_scale = extend_to_scale(
            f.preimage_family(target_witness.test_scale))
    elif not refines(f.image_family(test_scale), target_witness.test_scale):
        raise PreconditionError("Image of the test scale does not refine "
                                "the target test scale")
    support = extend_to_scale(f.preimage_family(target_witness.support_scale))
    fibers = [[] for _ in range(f.target.size)]
    for z, y in enumerate(f.table):
        fibers[y].append(z)
    sets = []
    for x in range(f.source.size):
        b = target_witness.sets[f.table[x]]
        sets.append(frozenset((z, l) for w, l in b for z in fibers[w]))
    witness = PropertyAWitness(epsilon, test_scale, support, sets)
    check = verify_witness(f.source, witness, limits)
    logging.info("Transferred witness with fiber bound {:d}: {}"
                 .format(fiber, "verified" if check else "fails"))
    return TransferredWitness(witness, check, fiber)
