"""
Certificates emitted by the command suite

A certificate is a YAML mapping that records the command that produced
it, the verdict, the constants and witnesses (in label form), the oracle
limits in effect and the tool version. ``lsskit verify`` re-runs the
recorded command and compares verdict and constants.
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

import math
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import attr

from lsskit import __version__
from lsskit.cli.document import format_fraction, read_yaml, write_yaml
from lsskit.errors import DocumentError


class Outcome(Enum):
    true = "true"
    false = "false"
    exhausted = "exhausted"

    @property
    def exit_code(self) -> int:
        return {"true": 0, "false": 1, "exhausted": 3}[self.value]


def plain(value: Any) -> Any:
    """
    Converts constants to YAML scalars: rationals become "p/q",
    infinity becomes "inf", tuples become lists
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, float):
        return "inf" if math.isinf(value) else value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [plain(v) for v in value]
        return sorted(items) if isinstance(value, (set, frozenset)) else items
    return value


@attr.s(frozen=True, auto_attribs=True)
class Certificate:
    command: Tuple[str, ...] = attr.ib(converter=tuple)
    verdict: Outcome = attr.ib(converter=Outcome)
    constants: Dict[str, Any] = attr.ib(factory=dict, converter=plain,
                                        hash=False)
    witnesses: Dict[str, Any] = attr.ib(factory=dict, converter=plain,
                                        hash=False)
    limits: Dict[str, int] = attr.ib(factory=dict, converter=dict,
                                     hash=False)
    version: str = __version__

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def to_data(self) -> Dict[str, Any]:
        return {
            "command": list(self.command),
            "verdict": self.verdict.value,
            "constants": self.constants,
            "witnesses": self.witnesses,
            "limits": self.limits,
            "version": self.version,
        }

    def agrees_with(self, other: "Certificate") -> List[str]:
        """
        :return: names of the fields where a re-run disagrees
        """
        diff = []
        if self.verdict != other.verdict:
            diff.append("verdict")
        for key in sorted(set(self.constants) | set(other.constants)):
            if self.constants.get(key) != other.constants.get(key):
                diff.append("constants." + key)
        return diff


def emit_certificate(cert: Certificate, path: str = None) -> str:
    return write_yaml(cert.to_data(), path, sort_keys=True)


def certificate_from_data(data: Any, origin: str = "certificate") \
        -> Certificate:
    if not isinstance(data, dict):
        raise DocumentError(origin, "expected a mapping")
    for key in ("command", "verdict"):
        if key not in data:
            raise DocumentError(key, "missing")
    command = data["command"]
    if not isinstance(command, list) or not command:
        raise DocumentError("command", "expected a nonempty argument list")
    try:
        verdict = Outcome(data["verdict"])
    except ValueError:
        raise DocumentError("verdict", "unknown verdict: {}"
                            .format(data["verdict"]))
    return Certificate(
        [str(a) for a in command], verdict,
        data.get("constants") or {}, data.get("witnesses") or {},
        data.get("limits") or {}, str(data.get("version", __version__))
    )


def parse_certificate(path: str) -> Certificate:
    return certificate_from_data(read_yaml(path), path)
