"""
Oracle limits configurator

Exact enumeration of nets, exact set cover and the backtracking witness
search are exponential procedures. Their admissible input sizes are
configured here. Values come, from lowest to highest precedence, from
the built-in defaults, an optional ini file section, the
``LSSKIT_ORACLE_LIMIT`` environment variable and explicit command
line options.

An ini file looks like::

    [limits]
    nets = 20
    cover = 64
    search_points = 10

Relative file names are resolved against ``$LSSKIT_HOME``.
The environment variable accepts either a bare integer, which is
applied to ``nets``, or a comma separated list of ``key=value`` pairs.
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
import os
from configparser import ConfigParser
from typing import Dict, Optional

from lsskit.errors import ConfigError, OracleLimitExceeded

ENV_LIMIT = "LSSKIT_ORACLE_LIMIT"
ENV_HOME = "LSSKIT_HOME"


class OracleLimits:
    """
    Configurator class for exponential oracles
    """

    _fields = ("nets", "cover", "search_points", "search_levels",
               "search_nodes", "threads")

    def __init__(self, **kwargs):
        self.nets: int = 20
        """
        Maximal size of the ambient set for exact net enumeration
        """
        self.cover: int = 64
        """
        Maximal number of candidate base elements left for an exact
        set cover after dominated candidates are removed
        """
        self.search_points: int = 10
        """
        Maximal ground set size for property A witness search
        """
        self.search_levels: int = 3
        """
        Maximal level allowed in a searched witness
        """
        self.search_nodes: int = 200000
        """
        Budget of backtracking nodes for witness search
        """
        self.threads: int = 1
        """
        Number of threads evaluating independent queried elements
        """
        for key, value in kwargs.items():
            self.set(key, value)

    def set(self, key: str, value):
        if key not in self._fields:
            raise ConfigError("Unknown oracle limit: " + key)
        setattr(self, key, self.validate(key, value))

    def validate(self, attr, value):
        value = int(value)
        if attr == "search_levels" and value > 3:
            raise ConfigError("search_levels cannot exceed 3")
        if value < 1:
            raise ConfigError("{} must be positive".format(attr))
        return value

    def as_dict(self) -> Dict[str, int]:
        return {f: getattr(self, f) for f in self._fields}

    def check(self, limit: str, value: int):
        bound = getattr(self, limit)
        if value > bound:
            raise OracleLimitExceeded(limit, value, bound)

    def update(self, values: Dict[str, Optional[int]]):
        for key, value in values.items():
            if value is not None:
                self.set(key, value)
        return self

    def apply_env(self):
        setting = os.getenv(ENV_LIMIT)
        if not setting:
            return self
        setting = setting.strip()
        if setting.isdigit():
            self.set("nets", setting)
            return self
        for item in setting.split(','):
            if not item.strip():
                continue
            key, _, value = item.partition('=')
            self.set(key.strip(), value.strip())
        return self

    @classmethod
    def read_config(cls, filename: str, section: str = "limits"):
        if not os.path.isabs(filename) and os.getenv(ENV_HOME):
            filename = os.path.join(os.getenv(ENV_HOME), filename)
        parser = ConfigParser()
        if not parser.read(filename):
            raise FileNotFoundError(filename)
        limits = cls()
        if parser.has_section(section):
            for key, value in parser.items(section):
                limits.set(key, value)
        else:
            raise ConfigError('Section {0} not found in the {1} file'
                              .format(section, filename))
        logging.debug("Oracle limits from {}: {}"
                      .format(filename, str(limits.as_dict())))
        return limits

    @classmethod
    def load(cls, filename: str = None, section: str = "limits", **overrides):
        if filename:
            limits = cls.read_config(filename, section)
        else:
            limits = cls()
        limits.apply_env()
        return limits.update(overrides)

    def __eq__(self, other):
        return isinstance(other, OracleLimits) \
               and self.as_dict() == other.as_dict()

    def __repr__(self):
        return "OracleLimits({})".format(
            ", ".join("{}={:d}".format(k, v) for k, v in self.as_dict().items())
        )


def default_limits() -> OracleLimits:
    return OracleLimits().apply_env()
