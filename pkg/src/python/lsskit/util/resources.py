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

import glob
import os
import sys
from pathlib import Path
from typing import Dict, Optional


def get_fixture_dir() -> str:
    root = Path(__file__).parents[3]
    return os.path.join(root, "yml")


def get_fixtures() -> Dict[str, str]:
    """
    Shipped fixture documents by name, from the source tree or from an
    installed ``lsskit_fixtures`` package
    """
    dirs = [get_fixture_dir()] + [
        os.path.join(d, "lsskit_fixtures")
        for d in sys.path
    ]
    for d in dirs:
        documents = glob.glob(os.path.join(d, "*.yaml"), recursive=False)
        if documents:
            return {
                os.path.basename(r).rsplit('.', 1)[0]: r
                for r in sorted(documents)
            }
    return {}


def get_fixture(name: str) -> Optional[str]:
    return get_fixtures().get(name)
