"""
Exceptions raised by lsskit operations.

A legitimately negative verdict (a map that is not bornologous, a witness
that fails an inequality) is never an exception: it is returned as a
result object carrying the counterexample. Exceptions are reserved for
inputs the operation cannot be applied to and for exhausted oracle budgets.
"""

#  Copyright (c) 2021. Harvard University
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


class LsskitError(Exception):
    pass


class GroundSetMismatch(LsskitError, ValueError):
    def __init__(self, what: str = "operands"):
        super().__init__("Ground set mismatch between {}".format(what))


class InvalidScale(LsskitError, ValueError):
    pass


class OracleLimitExceeded(LsskitError):
    def __init__(self, limit: str, value: int, bound: int):
        self.limit = limit
        self.value = value
        self.bound = bound
        super().__init__(
            "Oracle limit exceeded: {} = {:d} > {:d}".format(limit, value, bound)
        )


class ConfigError(LsskitError, ValueError):
    pass


class PreconditionError(LsskitError):
    pass


class UnboundedFamilyError(PreconditionError):
    def __init__(self, what: str, index: int):
        self.what = what
        self.index = index
        super().__init__(
            "{} is not uniformly bounded: element {:d} crosses maximal "
            "bounded sets".format(what, index)
        )


class TrivialScaleError(PreconditionError):
    pass


class DocumentError(LsskitError, ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__("{}: {}".format(path, message))


class InconsistentRoutesError(LsskitError, AssertionError):
    pass


class InvalidMetric(LsskitError, ValueError):
    pass


class InvalidMap(LsskitError, ValueError):
    pass
