"""
Property A at a scale

Elements of a base scale U play the role of points. A witness assigns
to every base index u a finite set A_u of (base index, level) pairs with

1. (u, 1) in A_u;
2. every (u', l) in A_u has U_u' in the horizon against U of the star
   of U_u against a horizon scale W;
3. |A_u Δ A_v| < epsilon * |A_u ∩ A_v| whenever the horizons of U_u
   and U_v against a queried scale V intersect.

The queried scale may not be a trivial cover (every element a single
point) unless ``allow_trivial`` is set; finite spaces whose uniformly
bounded scales are all trivial need the flag.
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
from typing import FrozenSet, List, Tuple

import attr

from lsskit.config import OracleLimits, default_limits
from lsskit.errors import PreconditionError, TrivialScaleError
from lsskit.maps import SpaceMap, is_coarse_equivalence
from lsskit.measure.setcover import min_cover
from lsskit.propa.prop_a import PropertyAWitness, Violation, WitnessCheck, \
    _require_bounded, as_fraction, compare, summarize
from lsskit.structure.core_family import Scale, horizon_mask, is_trivial, \
    lowest, refines, same_ground, singleton_cover, star_family, \
    star_mask
from lsskit.structure.lss import LssSpace
from lsskit.util.executors import evaluate

TRIGGER_TRANSLATION = \
    "hor({x},V) meets hor({y},V) iff y is in st({x},V): test scale = V"


@attr.s(frozen=True, auto_attribs=True)
class ScaledPropertyAWitness:
    base_scale: Scale
    epsilon: Fraction = attr.ib(converter=as_fraction)
    queried_scale: Scale
    horizon_scale: Scale
    sets: Tuple[FrozenSet[Tuple[int, int]], ...] = \
        attr.ib(converter=lambda s: tuple(frozenset(a) for a in s))

    def __attrs_post_init__(self):
        for scale in (self.queried_scale, self.horizon_scale):
            same_ground(self.base_scale.ground, scale.ground, "witness scales")
        if len(self.sets) != len(self.base_scale):
            raise ValueError("Witness needs one set per base element")

    @property
    def ground(self):
        return self.base_scale.ground

    def at(self, epsilon) -> "ScaledPropertyAWitness":
        return attr.evolve(self, epsilon=as_fraction(epsilon))


def _require_nontrivial(scale: Scale, allow_trivial: bool):
    if is_trivial(scale) and not allow_trivial:
        raise TrivialScaleError("Queried scale is a trivial cover")


def verify_scaled_witness(space: LssSpace, w: ScaledPropertyAWitness,
                          allow_trivial: bool = False,
                          limits: OracleLimits = None) -> WitnessCheck:
    if limits is None:
        limits = default_limits()
    same_ground(space.ground, w.ground, "space and witness")
    if w.epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    _require_nontrivial(w.queried_scale, allow_trivial)
    _require_bounded(space, base_scale=w.base_scale,
                     queried_scale=w.queried_scale,
                     horizon_scale=w.horizon_scale)
    base = w.base_scale.masks
    horizons = [horizon_mask(u, w.queried_scale.masks) for u in base]

    def check_element(u: int):
        violations = []
        measured = []
        a = w.sets[u]
        if (u, 1) not in a:
            violations.append(Violation("diagonal", u))
        allowed = horizon_mask(star_mask(base[u], w.horizon_scale.masks), base)
        for v, l in sorted(a):
            if v not in allowed or l < 1:
                violations.append(Violation("support", u, v))
        for v in range(u + 1, len(base)):
            if horizons[u] & horizons[v]:
                d, i, ok = compare(w.epsilon, a, w.sets[v])
                measured.append((d, i))
                if not ok:
                    violations.append(Violation("ratio", u, v, d, i))
        return violations, measured

    results = evaluate(check_element, range(len(base)), limits.threads)
    return summarize([v for r in results for v in r[0]],
                     [m for r in results for m in r[1]])


def _singleton_points(base: Scale) -> List[int]:
    points = [lowest(m) for m in base.masks]
    if not is_trivial(base) or sorted(points) != list(range(base.ground.size)):
        raise PreconditionError("Base scale is not the singleton cover")
    return points


def reduce_trivial_base(w: ScaledPropertyAWitness) -> PropertyAWitness:
    """
    Plain witness from a witness over the singleton base. For singleton
    base elements the horizon trigger is exactly proximity in the
    queried scale, so the queried scale becomes the test scale and the
    horizon scale becomes the support scale.
    """
    points = _singleton_points(w.base_scale)
    sets = [None] * len(points)
    for u, x in enumerate(points):
        sets[x] = frozenset((points[v], l) for v, l in w.sets[u])
    logging.info("Reduced scaled witness: " + TRIGGER_TRANSLATION)
    return PropertyAWitness(w.epsilon, w.queried_scale, w.horizon_scale, sets)


def lift_plain_witness(w: PropertyAWitness) -> ScaledPropertyAWitness:
    return ScaledPropertyAWitness(singleton_cover(w.ground), w.epsilon,
                                  w.test_scale, w.support_scale, w.sets)


@attr.s(frozen=True, auto_attribs=True)
class ScaledTransfer:
    witness: ScaledPropertyAWitness
    check: WitnessCheck
    m: int
    """
    Largest number of target base elements chosen to cover the image
    of a source base element
    """
    n: int
    """
    Largest number of source base elements chosen to cover the
    preimage of a target base element
    """
    budget: Fraction
    chosen_x: Tuple[Tuple[int, ...], ...]
    chosen_y: Tuple[Tuple[int, ...], ...]
    delta_bound_holds: bool
    """
    |A Δ A| <= 2m(n+1) max |B Δ B| on every triggered pair
    """
    intersection_times_m_holds: bool
    """
    |A ∩ A| >= m |B ∩ B| on every triggered pair
    """
    intersection_over_m_holds: bool
    """
    |A ∩ A| >= |B ∩ B| / m on every triggered pair
    """

    @property
    def holds(self) -> bool:
        return self.check.holds


def _covers(targets, masks, limits) -> Tuple[Tuple[int, ...], ...]:
    result = []
    for t in targets:
        cover = min_cover(t, masks, limits)
        if cover is None:
            raise PreconditionError("Base scale does not cover a set")
        result.append(cover)
    return tuple(result)


def transfer_scaled_witness(f: SpaceMap, target: ScaledPropertyAWitness,
                            base_x: Scale, queried_x: Scale, epsilon,
                            allow_trivial: bool = False,
                            limits: OracleLimits = None) -> ScaledTransfer:
    """
    Pulls a scaled witness on Y at base U_Y back along a coarse
    equivalence ``f: X -> Y`` to base U_X.

    Chosen covers are exact minimum covers, lexicographically smallest:
    ``chosen_x[i]`` covers the preimage of U_Y[i] by U_X (n is the
    largest size) and ``chosen_y[a]`` covers the image of U_X[a] by
    U_Y (m is the largest size). The target must verify at
    epsilon / (2 m^2 (n+1)) with a queried scale coarsening the star
    of f(queried_x) against f(base_x). Then

        A_a = {(a, 1)} + {(c, l) : c chosen in some chosen_x,
              hor(f(U_X[c]), U_Y) x {l} meets B_j for some j in chosen_y[a]}

    and the horizon scale is the preimage of st(W_Y, U_Y).
    """
    if limits is None:
        limits = default_limits()
    epsilon = as_fraction(epsilon)
    same_ground(f.source.ground, base_x.ground, "map source and base scale")
    same_ground(f.source.ground, queried_x.ground,
                "map source and queried scale")
    same_ground(f.target.ground, target.ground, "map target and witness")
    if not is_coarse_equivalence(f).equivalence:
        raise PreconditionError("Map is not a coarse equivalence")
    _require_nontrivial(queried_x, allow_trivial)
    _require_bounded(f.source, base_scale=base_x, queried_scale=queried_x)
    u_y = target.base_scale.masks
    u_x = base_x.masks

    chosen_x = _covers([f.preimage(m) for m in u_y], u_x, limits)
    chosen_y = _covers([f.image(m) for m in u_x], u_y, limits)
    n = max(len(c) for c in chosen_x)
    m = max(len(c) for c in chosen_y)
    budget = epsilon / (2 * m * m * (n + 1))
    logging.info("Scaled transfer: m = {:d}, n = {:d}, budget {}"
                 .format(m, n, budget))

    expected = star_family(f.image_family(queried_x), f.image_family(base_x))
    if not refines(expected, target.queried_scale):
        raise PreconditionError("Target queried scale does not coarsen the "
                                "star of the image of the queried scale")
    if not verify_scaled_witness(f.target, target.at(budget),
                                 allow_trivial, limits):
        raise PreconditionError("Target witness does not verify at {}"
                                .format(budget))

    candidates = sorted({c for cover in chosen_x for c in cover})
    reach = {c: horizon_mask(f.image(u_x[c]), u_y) for c in candidates}
    sets = []
    for a in range(len(u_x)):
        pairs = {(i, l) for j in chosen_y[a] for i, l in target.sets[j]}
        result = {(a, 1)}
        for c in candidates:
            result.update((c, l) for i, l in pairs if i in reach[c])
        sets.append(frozenset(result))

    horizon_y = star_family(target.horizon_scale, target.base_scale)
    horizon_x = Scale.of_family(f.preimage_family(horizon_y).nonempty())
    witness = ScaledPropertyAWitness(base_x, epsilon, queried_x, horizon_x,
                                     sets)
    check = verify_scaled_witness(f.source, witness, allow_trivial, limits)

    delta_ok, times_ok, over_ok = True, True, True
    triggers = [horizon_mask(u, queried_x.masks) for u in u_x]
    for a1 in range(len(u_x)):
        for a2 in range(a1 + 1, len(u_x)):
            if not triggers[a1] & triggers[a2]:
                continue
            d, i, _ = compare(epsilon, sets[a1], sets[a2])
            b_pairs = [(len(target.sets[k] ^ target.sets[l]),
                        len(target.sets[k] & target.sets[l]))
                       for k in chosen_y[a1] for l in chosen_y[a2]]
            max_d = max(p[0] for p in b_pairs)
            min_i = min(p[1] for p in b_pairs)
            delta_ok = delta_ok and d <= 2 * m * (n + 1) * max_d
            times_ok = times_ok and i >= m * min_i
            over_ok = over_ok and i >= Fraction(min_i, m)
    logging.info("Scaled transfer {}: delta bound {}, |A∩A| >= m|B∩B| {}, "
                 "|A∩A| >= |B∩B|/m {}".format(
        "verified" if check else "fails", delta_ok, times_ok, over_ok))
    return ScaledTransfer(witness, check, m, n, budget, chosen_x, chosen_y,
                          delta_ok, times_ok, over_ok)
