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

import threading

from hypothesis import given, strategies as st

from lsskit.util.executors import BlockingThreadPoolExecutor, evaluate


@given(st.lists(st.integers(), max_size=40),
       st.integers(min_value=1, max_value=4))
def test_threads_preserve_order(items, threads):
    assert evaluate(lambda x: x * x, items, threads) == [x * x for x in items]


def test_pool_runs_on_workers():
    names = set()

    def record(x):
        names.add(threading.current_thread().name)
        return x + 1

    with BlockingThreadPoolExecutor(max_queue_size=2,
                                    max_workers=2) as executor:
        assert executor.map_ordered(record, range(10)) == list(range(1, 11))
        assert not executor.tasks
    assert threading.main_thread().name not in names
