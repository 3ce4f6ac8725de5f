"""
This module implements a
`ThreadPoolExecutor https://docs.python.org/3/library/concurrent.futures.html#threadpoolexecutor`_
with a bounded queue of fixed given capacity. When the queue reaches
its maximum capacity, it stops accepting new tasks and blocks
until some tasks are removed from the queue for execution.

Certificate computations submit one task per queried element;
:meth:`BlockingThreadPoolExecutor.map_ordered` returns results
in submission order so that certificates do not depend on the schedule.
"""

#  Copyright (c) 2021. Harvard University
#
#  Developed by Research Software Engineering,
#  Faculty of Arts and Sciences, Research Computing (FAS RC)
#  Author: Michael A Bouzinier
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

import datetime
import logging
from concurrent.futures import ThreadPoolExecutor, wait, \
    FIRST_COMPLETED, ALL_COMPLETED
from typing import Callable, Any, Iterable, List


class BlockingThreadPoolExecutor(ThreadPoolExecutor):
    def __init__(self, max_queue_size: int, timeout=None, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.max_queue_size = max_queue_size
        self.tasks = dict()
        self.timeout = timeout
        self.log_timestamp = datetime.datetime.now()

    def submit(self, __fn: Callable, *args: Any, **kwargs: Any):
        self.wait(self.max_queue_size)
        task = super().submit(__fn, *args, **kwargs)
        self.tasks[task] = datetime.datetime.now()
        return task

    def map_ordered(self, fn: Callable, items: Iterable) -> List:
        futures = [self.submit(fn, item) for item in items]
        self.wait_for_completion()
        return [f.result() for f in futures]

    def wait_for_completion(self):
        self._log()
        self.wait(0)

    def _wait(self, return_when):
        if self.timeout is None:
            return wait(self.tasks, return_when=return_when)
        done, other = wait(self.tasks, timeout=self.timeout,
                           return_when=return_when)
        if not done:
            logging.warning("Long wait on running threads")
            self._log()
            raise TimeoutError
        return done, other

    def _log(self):
        r, d, w = 0, 0, 0
        for task in self.tasks:
            if task.running():
                r += 1
            elif task.done():
                d += 1
            else:
                w += 1
        logging.debug(
            "Tasks in the queue: done: {:d}; running: {:d}; waiting: {:d}"
                .format(d, r, w)
        )
        self.log_timestamp = datetime.datetime.now()

    def wait(self, n: int):
        while len(self.tasks) > n:
            if n > 0:
                w = FIRST_COMPLETED
            else:
                w = ALL_COMPLETED
            done, other = self._wait(return_when=w)
            for task in done:
                del self.tasks[task]
            t = datetime.datetime.now()
            if (t - self.log_timestamp) > datetime.timedelta(minutes=10):
                self._log()


def evaluate(fn: Callable, items: Iterable, threads: int = 1) -> List:
    """
    Applies ``fn`` to every item, in parallel when ``threads > 1``,
    returning results in the order of items
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with BlockingThreadPoolExecutor(max_queue_size=2 * threads,
                                    max_workers=threads) as executor:
        return executor.map_ordered(fn, items)
