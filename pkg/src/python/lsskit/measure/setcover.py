"""
Exact minimum set cover for desk-scale instances

The target and the candidate sets are bitmasks. Candidates are first
restricted to the target; dominated candidates are dropped for the
branch-and-bound that finds the optimal cover size, which is seeded with
the greedy cover as an upper bound. A second pass then picks, in index
order, each candidate that still admits a cover of the optimal size,
which yields the lexicographically smallest optimal cover regardless
of how the optimum was found.
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
from typing import List, Optional, Sequence, Tuple

from lsskit.config import OracleLimits, default_limits
from lsskit.structure.core_family import bits, popcount


def greedy_cover(target: int, masks: Sequence[int]) -> Optional[List[int]]:
    """
    Picks repeatedly the candidate covering the most uncovered points,
    smallest index on ties
    """
    covered = 0
    chosen = []
    while target & ~covered:
        best, gain = None, 0
        for i, m in enumerate(masks):
            g = popcount(m & target & ~covered)
            if g > gain:
                best, gain = i, g
        if best is None:
            return None
        chosen.append(best)
        covered |= masks[best]
    return sorted(chosen)


def remove_dominated(masks: Sequence[int]) -> List[int]:
    """
    Keeps one copy of every candidate that is not a proper subset
    of another candidate
    """
    kept = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if m and not any(m | k == k for k in kept):
            kept.append(m)
    return kept


def _optimal_size(target: int, candidates: List[int], upper: int) -> int:
    by_element = {
        e: [m for m in candidates if m >> e & 1] for e in bits(target)
    }
    largest = max(popcount(m) for m in candidates)
    best = [upper]

    def search(covered: int, used: int):
        uncovered = target & ~covered
        if not uncovered:
            best[0] = min(best[0], used)
            return
        left = popcount(uncovered)
        if used + (left + largest - 1) // largest >= best[0]:
            return
        e = min(bits(uncovered), key=lambda x: (len(by_element[x]), x))
        for m in by_element[e]:
            search(covered | m, used + 1)

    search(0, 0)
    return best[0]


def _cover_size(target: int, masks: Sequence[int], bound: int) -> int:
    """
    Minimum cover size of ``target`` if it is at most ``bound``,
    ``bound + 1`` otherwise
    """
    if not target:
        return 0
    if bound <= 0:
        return bound + 1
    restricted = [m & target for m in masks]
    union = 0
    for m in restricted:
        union |= m
    if target & ~union:
        return bound + 1
    reduced = remove_dominated(restricted)
    upper = min(len(greedy_cover(target, reduced)), bound + 1)
    return _optimal_size(target, reduced, upper)


def _lex_smallest(target: int, masks: Sequence[int], k: int) \
        -> Optional[Tuple[int, ...]]:
    # picks the smallest index that still leaves a cover of size k
    chosen = []
    covered = 0
    start = 0
    while target & ~covered:
        uncovered = target & ~covered
        need = k - len(chosen) - 1
        for i in range(start, len(masks)):
            gain = masks[i] & uncovered
            if not gain:
                continue
            rest = uncovered & ~gain
            if _cover_size(rest, masks[i + 1:], need) <= need:
                chosen.append(i)
                covered |= gain
                start = i + 1
                break
        else:
            return None
    return tuple(chosen)


def min_cover(target: int, masks: Sequence[int],
              limits: OracleLimits = None) -> Optional[Tuple[int, ...]]:
    """
    Lexicographically smallest cover of minimum size.

    :param target: bitmask of points to cover
    :param masks: candidate sets
    :param limits: the ``cover`` limit bounds the number of candidates
        left after dominance reduction
    :return: ascending tuple of candidate indices, empty for an empty
        target, None if the candidates do not cover the target
    """
    if not target:
        return ()
    if limits is None:
        limits = default_limits()
    restricted = [m & target for m in masks]
    union = 0
    for m in restricted:
        union |= m
    if target & ~union:
        return None
    reduced = remove_dominated(restricted)
    limits.check("cover", len(reduced))
    greedy = greedy_cover(target, reduced)
    k = _optimal_size(target, reduced, len(greedy))
    cover = _lex_smallest(target, restricted, k)
    logging.debug("Exact cover of {:d} points: {:d} of {:d} candidates"
                  .format(popcount(target), k, len(reduced)))
    return cover
