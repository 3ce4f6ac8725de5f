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
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

SRC = Path(__file__).parents[3] / "src" / "python"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

os.environ.setdefault("LSSKIT_NO_LOGFILE", "1")

from lsskit import init_logging
from lsskit.cli.fixtures import named_document

init_logging(level=logging.INFO)

settings.register_profile(
    "lsskit", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.function_scoped_fixture,
                           HealthCheck.too_slow]
)
settings.load_profile("lsskit")


@pytest.fixture(autouse=True)
def no_env_limits(monkeypatch):
    monkeypatch.delenv("LSSKIT_ORACLE_LIMIT", raising=False)


@pytest.fixture(scope="session")
def p5():
    return named_document("p5").to_space()


@pytest.fixture(scope="session")
def p25():
    return named_document("p25").to_space()


@pytest.fixture(scope="session")
def d23_doc():
    return named_document("d23")


@pytest.fixture(scope="session")
def d23(d23_doc):
    return d23_doc.to_space()


@pytest.fixture(scope="session")
def d2_doc():
    return named_document("d2")


@pytest.fixture(scope="session")
def d2(d2_doc):
    return d2_doc.to_space()


@pytest.fixture(scope="session")
def point():
    return named_document("point").to_space()


@pytest.fixture(scope="session")
def comp(d23_doc, d23):
    return d23_doc.scale("Comp", d23)
