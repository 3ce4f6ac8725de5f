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

from lsskit.config import OracleLimits, default_limits
from lsskit.errors import ConfigError, LsskitError, OracleLimitExceeded


def test_defaults():
    limits = OracleLimits()
    assert limits.as_dict() == {
        "nets": 20, "cover": 64, "search_points": 10, "search_levels": 3,
        "search_nodes": 200000, "threads": 1
    }
    assert default_limits() == limits


@pytest.mark.parametrize("key, value", [
    ("nets", 0), ("cover", -1), ("search_levels", 4), ("colour", 2)
])
def test_invalid_values(key, value):
    with pytest.raises(ConfigError):
        OracleLimits(**{key: value})


def test_check():
    limits = OracleLimits(nets=5)
    limits.check("nets", 5)
    with pytest.raises(OracleLimitExceeded) as info:
        limits.check("nets", 6)
    assert (info.value.limit, info.value.value, info.value.bound) == \
        ("nets", 6, 5)
    assert "nets = 6 > 5" in str(info.value)


def test_bare_integer_from_environment(monkeypatch):
    monkeypatch.setenv("LSSKIT_ORACLE_LIMIT", "12")
    assert default_limits().nets == 12


def test_pairs_from_environment(monkeypatch):
    monkeypatch.setenv("LSSKIT_ORACLE_LIMIT", "cover=8, search_points=4,")
    limits = default_limits()
    assert (limits.cover, limits.search_points, limits.nets) == (8, 4, 20)
    monkeypatch.setenv("LSSKIT_ORACLE_LIMIT", "depth=3")
    with pytest.raises(ValueError):
        default_limits()


def test_read_config(tmp_path, monkeypatch):
    ini = tmp_path / "limits.ini"
    ini.write_text("[limits]\nnets = 7\nthreads = 2\n\n[small]\ncover = 3\n")
    monkeypatch.setenv("LSSKIT_HOME", str(tmp_path))
    limits = OracleLimits.read_config("limits.ini")
    assert (limits.nets, limits.threads, limits.cover) == (7, 2, 64)
    assert OracleLimits.read_config(str(ini), "small").cover == 3
    with pytest.raises(ConfigError, match="Section other not found") as info:
        OracleLimits.read_config("limits.ini", "other")
    assert isinstance(info.value, LsskitError)
    with pytest.raises(FileNotFoundError):
        OracleLimits.read_config("missing.ini")


def test_precedence(tmp_path, monkeypatch):
    ini = tmp_path / "limits.ini"
    ini.write_text("[limits]\nnets = 7\ncover = 9\nsearch_points = 5\n")
    monkeypatch.setenv("LSSKIT_ORACLE_LIMIT", "cover=11,search_points=6")
    limits = OracleLimits.load(str(ini), search_points=8, threads=None)
    assert (limits.nets, limits.cover, limits.search_points,
            limits.threads) == (7, 11, 8, 1)
