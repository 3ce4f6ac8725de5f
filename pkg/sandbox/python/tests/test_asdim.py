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
from hypothesis import given, strategies as st

from lsskit.cli.fixtures import random_space
from lsskit.propa.asdim import check_asdim_at_most, coarsen
from lsskit.structure.core_family import GroundSet, multiplicity, refines, \
    singleton_cover
from lsskit.structure.lss import build_lss

from .oracles import seeds


def test_singletons_have_dimension_zero():
    g = GroundSet.of_size(4)
    space = build_lss(g, [singleton_cover(g)])
    cert = check_asdim_at_most(space, 0)
    assert cert.coarsenings == (singleton_cover(g), )
    assert cert.is_valid(space)


def test_components_have_dimension_zero(d23, comp):
    cert = check_asdim_at_most(d23, 0)
    assert cert.coarsenings == (comp, )
    assert cert.coarsening_for(comp) == comp


def test_path_coarsening(p25):
    balls = p25.metric.ball_cover(1)
    result = coarsen(balls, 1)
    expected = [list(range(2 * k, 2 * k + 4)) for k in range(11)] + \
        [[22, 23, 24]]
    assert result.as_ids() == expected
    assert multiplicity(result) == 2
    assert refines(balls, result)


def test_path_certificate(p25):
    cert = check_asdim_at_most(p25, 1)
    assert len(cert.coarsenings) == 24
    assert cert.is_valid(p25)


def test_negative_dimension(d23):
    with pytest.raises(ValueError):
        check_asdim_at_most(d23, -1)


@given(seeds, st.integers(min_value=0, max_value=2))
def test_certificates_are_valid(seed, n):
    space = random_space(seed)
    cert = check_asdim_at_most(space, n)
    assert cert.is_valid(space)
    for c in cert.coarsenings:
        assert multiplicity(c) <= n + 1
