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

import pytest

from lsskit.cli.fixtures import grid_document, random_bounded_scale, \
    random_equivalence, random_space
from lsskit.config import OracleLimits
from lsskit.errors import OracleLimitExceeded, PreconditionError, \
    UnboundedFamilyError
from lsskit.maps import SpaceMap
from lsskit.measure.nets_bsm import BsmMode, ProximityGraph, bsm_transfer, \
    check_bsm, covering_number, enumerate_nets, greedy_net, net_bound_all, \
    net_bound_exists
from lsskit.structure.core_family import Scale, SetFamily, Subset, \
    singleton_cover, star_family, star_mask
from lsskit.structure.lss import subspace, trace

from .oracles import mask, naive_nets


def test_path_nets(p5):
    balls = p5.metric.ball_cover(1)
    nets = enumerate_nets(p5.ground.whole(), balls)
    assert [n.members.members for n in nets] == \
        [(0, 3), (0, 4), (1, 4), (2, )]
    assert all(n.is_valid() for n in nets)
    greedy = greedy_net(p5.ground.whole(), balls)
    assert greedy.members.members == (0, 3)
    assert greedy.is_valid()


def test_proximity_graph(p5):
    graph = ProximityGraph.of(p5.metric.ball_cover(1))
    assert graph.adjacent(0, 2)
    assert not graph.adjacent(0, 3)
    assert not graph.adjacent(1, 1)


def test_nets_of_empty_set(p5):
    nets = enumerate_nets(Subset(p5.ground, 0), p5.metric.ball_cover(1))
    assert len(nets) == 1
    assert len(nets[0]) == 0


def test_nets_limit(p25):
    with pytest.raises(OracleLimitExceeded):
        enumerate_nets(p25.ground.whole(), p25.metric.ball_cover(1),
                       OracleLimits(nets=24))


def test_components_bsm(d23, comp):
    for mode in BsmMode:
        cert = check_bsm(d23, comp, mode)
        assert cert.bound == 1
        assert cert.constants == (1, 1)


def test_unbounded_base(d23):
    with pytest.raises(UnboundedFamilyError):
        check_bsm(d23, Scale(d23.ground, (d23.ground.full, )),
                  BsmMode.covering)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_grid_covering_number(d):
    space = grid_document(d).to_space()
    cert = covering_number(space.metric.ball_cover(2),
                           space.metric.ball_cover(1))
    assert cert.bound == 2 ** d


def test_mode_relations_on_path(p5):
    balls = p5.metric.ball_cover(1)
    whole = SetFamily(p5.ground, (p5.ground.full, ))
    assert net_bound_exists(whole, balls).bound == 1
    assert net_bound_all(whole, balls).bound == 2
    cover = covering_number(whole, balls)
    assert cover.bound == 2
    assert cover.witnesses == ((0, 3), )


def test_nets_match_brute_force():
    for seed in range(300):
        space = random_space(seed, max_points=6)
        scale = random_bounded_scale(seed + 1, space)
        for block in space.blocks:
            nets = enumerate_nets(Subset(space.ground, block), scale)
            assert [n.members.members for n in nets] == \
                naive_nets(block, scale)


def test_net_laws():
    """
    Over a thousand random spaces: nets of the star family are small,
    n <= u <= k, the star cover built from a largest net covers, a
    coarser base never needs more elements, and subspaces never have
    larger nets
    """
    for seed in range(1000):
        space = random_space(seed)
        base = random_bounded_scale(seed + 7, space)
        queried = space.maximal_bounded
        exists = net_bound_exists(queried, base)
        every = net_bound_all(queried, base)
        cover = covering_number(queried, base)
        coarse = Scale.of_family(star_family(base, base))
        for i, block in enumerate(queried.masks):
            n, u, k = exists.constants[i], every.constants[i], \
                cover.constants[i]
            assert n <= u <= k
            for net in enumerate_nets(Subset(space.ground, block), coarse):
                assert len(net) < 2 * n + 1
            stars = 0
            for x in every.witnesses[i]:
                first = next(m for m in base.masks if m >> x & 1)
                stars |= star_mask(first, base.masks)
            assert block & ~stars == 0
        assert covering_number(queried, coarse).bound <= cover.bound
        assert covering_number(queried, queried).bound == 1

        y = Subset(space.ground, (seed * 2654435761) % space.ground.full + 1)
        sub = subspace(space, y)
        traced = Scale.of_family(trace(base, y.members, sub.ground))
        assert net_bound_all(sub.maximal_bounded, traced).bound <= every.bound


def test_transfer_along_collapse(d23_doc, d23, d2, comp):
    f = d23_doc.space_map("to_d2", d23, d2)
    cert = check_bsm(d23, comp, BsmMode.all_nets)
    transfer = bsm_transfer(f, cert)
    assert transfer.forward
    assert transfer.certificate.bound == 1
    assert transfer.slack == 0
    assert transfer.law_holds


def test_backward_transfer(d2_doc, d2, d23, comp):
    f = d2_doc.space_map("into_d23", d2, d23)
    cert = check_bsm(d23, comp, BsmMode.covering)
    transfer = bsm_transfer(f, cert)
    assert not transfer.forward
    assert transfer.certificate.bound == 1
    assert transfer.certificate.base_scale.masks == (mask(0), mask(1))
    assert transfer.law_holds
    with pytest.raises(PreconditionError):
        bsm_transfer(f, check_bsm(d23, comp, BsmMode.exists_net))


def test_transfer_needs_equivalence(d23_doc, d23, point, comp):
    f = d23_doc.space_map("to_point", d23, point)
    with pytest.raises(PreconditionError):
        bsm_transfer(f, check_bsm(d23, comp, BsmMode.covering))


def test_identity_transfer(p5):
    f = SpaceMap.identity(p5)
    cert = check_bsm(p5, p5.metric.ball_cover(1), BsmMode.covering)
    transfer = bsm_transfer(f, cert)
    assert transfer.certificate.bound == cert.bound
    assert transfer.law_holds


def test_transfer_over_random_equivalences():
    for seed in range(200):
        f = random_equivalence(seed)
        base = random_bounded_scale(seed + 3, f.source)
        for mode in (BsmMode.all_nets, BsmMode.covering):
            transfer = bsm_transfer(f, check_bsm(f.source, base, mode))
            assert transfer.law_holds
        target_base = random_bounded_scale(seed + 5, f.target)
        back = bsm_transfer(f, check_bsm(f.target, target_base,
                                         BsmMode.covering))
        assert back.law_holds


def test_singleton_base_counts_points(d23):
    cert = check_bsm(d23, singleton_cover(d23.ground), BsmMode.covering)
    assert cert.constants == (2, 3)
