"""
Space and witness documents

A space document is a YAML file::

    version: 1
    labels: [a1, a2, b1, b2, b3]
    metric:                 # either a metric ...
      - [0, 1, inf, inf, inf]
      ...
    generators:             # ... or generator scales
      - [[a1, a2], [b1, b2, b3]]
    scales:
      Comp: [[a1, a2], [b1, b2, b3]]
    maps:
      collapse: {a1: p, a2: p, b1: q, b2: q, b3: q}

Exactly one of ``metric`` and ``generators`` must be present;
``inf`` is the only non-numeric distance. Besides the named
scales, every space knows the scales ``singletons``, ``maximal``
(the maximal bounded sets) and ``whole``; metric spaces also know
``Balls<r>``, the cover by closed r-balls.

Witness documents reference scales by name or list them explicitly and
carry ratios as ``"p/q"`` strings. Errors name the offending field.
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

import re
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import attr
import yaml

from lsskit.errors import DocumentError, LsskitError
from lsskit.maps import SpaceMap
from lsskit.propa.prop_a import PropertyAWitness
from lsskit.propa.prop_a_scaled import ScaledPropertyAWitness
from lsskit.structure.coarse_struct import Entourage, SakoWitness
from lsskit.structure.core_family import GroundSet, Scale, SetFamily, \
    singleton_cover, whole_cover
from lsskit.structure.lss import INF, InfMetric, LssSpace, build_lss, \
    metric_lss

FORMAT_VERSION = 1
BALLS = re.compile(r"^Balls(\d+)$")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return "{:d}/{:d}".format(value.numerator, value.denominator)


def parse_fraction(value, path: str) -> Fraction:
    try:
        if isinstance(value, float):
            raise ValueError("floats are not exact")
        result = Fraction(str(value))
    except (ValueError, ZeroDivisionError) as x:
        raise DocumentError(path, "not a rational number: {} ({})"
                            .format(value, str(x)))
    return result


def _load_yaml(text: str, origin: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as x:
        mark = getattr(x, "problem_mark", None)
        where = origin
        if mark is not None:
            where = "{}: line {:d}, column {:d}".format(
                origin, mark.line + 1, mark.column + 1)
        raise DocumentError(where, "malformed YAML: {}".format(
            getattr(x, "problem", None) or str(x)))


def read_yaml(path: str) -> Any:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as x:
        raise DocumentError(path, str(x))
    return _load_yaml(text, path)


def _require(condition: bool, path: str, message: str):
    if not condition:
        raise DocumentError(path, message)


@attr.s(frozen=True, auto_attribs=True, hash=False)
class SpaceDocument:
    labels: Tuple[str, ...] = attr.ib(converter=tuple)
    metric: Optional[Tuple[Tuple[Any, ...], ...]] = None
    generators: Optional[Tuple[Tuple[Tuple[str, ...], ...], ...]] = None
    scales: Dict[str, Tuple[Tuple[str, ...], ...]] = attr.Factory(dict)
    maps: Dict[str, Dict[str, str]] = attr.Factory(dict)
    version: int = FORMAT_VERSION

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.labels)

    def to_space(self) -> LssSpace:
        ground = self.ground
        if self.metric is not None:
            return metric_lss(InfMetric(ground, self.metric))
        return build_lss(ground, [
            Scale(ground, SetFamily.of_labels(ground, g).masks)
            for g in self.generators
        ])

    def scale(self, name: str, space: LssSpace = None) -> Scale:
        if space is None:
            space = self.to_space()
        ground = space.ground
        if name in self.scales:
            return Scale.of_family(
                SetFamily.of_labels(ground, self.scales[name]))
        if name == "singletons":
            return singleton_cover(ground)
        if name == "maximal":
            return space.maximal_bounded
        if name == "whole":
            return whole_cover(ground)
        match = BALLS.match(name)
        if match and space.metric is not None:
            return space.metric.ball_cover(int(match.group(1)))
        raise DocumentError("scales", "unknown scale: {}".format(name))

    def space_map(self, name: str, source: LssSpace,
                  target: LssSpace) -> SpaceMap:
        if name not in self.maps:
            raise DocumentError("maps", "unknown map: {}".format(name))
        try:
            return SpaceMap.of_labels(source, target, self.maps[name])
        except KeyError as x:
            raise DocumentError("maps." + name, str(x))

    def to_data(self) -> Dict[str, Any]:
        data = {"version": self.version, "labels": list(self.labels)}
        if self.metric is not None:
            data["metric"] = [["inf" if v == INF else int(v) for v in row]
                              for row in self.metric]
        else:
            data["generators"] = [[list(e) for e in g]
                                  for g in self.generators]
        if self.scales:
            data["scales"] = {k: [list(e) for e in v]
                              for k, v in self.scales.items()}
        if self.maps:
            data["maps"] = {k: dict(v) for k, v in self.maps.items()}
        return data


def _labels_family(value, path: str, known: set) -> Tuple[Tuple[str, ...], ...]:
    _require(isinstance(value, list), path, "expected a list of sets")
    family = []
    for i, element in enumerate(value):
        p = "{}[{:d}]".format(path, i)
        _require(isinstance(element, list), p, "expected a list of labels")
        for j, label in enumerate(element):
            _require(str(label) in known, "{}[{:d}]".format(p, j),
                     "unknown label: {}".format(label))
        family.append(tuple(str(label) for label in element))
    return tuple(family)


def document_from_data(data: Any, origin: str = "document") -> SpaceDocument:
    _require(isinstance(data, dict), origin, "expected a mapping")
    version = data.get("version", FORMAT_VERSION)
    _require(version == FORMAT_VERSION, "version",
             "unsupported format version: {}".format(version))
    labels = data.get("labels")
    _require(isinstance(labels, list) and len(labels) > 0, "labels",
             "expected a nonempty list of labels")
    labels = tuple(str(label) for label in labels)
    _require(len(set(labels)) == len(labels), "labels",
             "labels must be distinct")
    known = set(labels)
    _require(("metric" in data) != ("generators" in data), origin,
             "exactly one of metric and generators is required")

    metric = None
    generators = None
    if "metric" in data:
        rows = data["metric"]
        _require(isinstance(rows, list) and len(rows) == len(labels),
                 "metric", "expected {:d} rows".format(len(labels)))
        metric = []
        for i, row in enumerate(rows):
            p = "metric[{:d}]".format(i)
            _require(isinstance(row, list) and len(row) == len(labels), p,
                     "expected {:d} entries".format(len(labels)))
            values = []
            for j, v in enumerate(row):
                if isinstance(v, str) and v.strip().lower() == "inf":
                    values.append(INF)
                elif isinstance(v, float) and v == INF:
                    values.append(INF)
                else:
                    _require(isinstance(v, int) and not isinstance(v, bool)
                             and v >= 0, "{}[{:d}]".format(p, j),
                             "expected a natural number or inf")
                    values.append(v)
            metric.append(tuple(values))
        metric = tuple(metric)
    else:
        value = data["generators"]
        _require(isinstance(value, list), "generators",
                 "expected a list of scales")
        generators = tuple(
            _labels_family(g, "generators[{:d}]".format(i), known)
            for i, g in enumerate(value)
        )

    scales = {}
    for name, value in (data.get("scales") or {}).items():
        scales[str(name)] = _labels_family(value, "scales." + str(name), known)

    maps = {}
    for name, table in (data.get("maps") or {}).items():
        p = "maps." + str(name)
        _require(isinstance(table, dict), p, "expected a label table")
        maps[str(name)] = {str(k): str(v) for k, v in table.items()}
        missing = [l for l in labels if l not in maps[str(name)]]
        _require(not missing, p, "no image for {}".format(", ".join(missing)))

    doc = SpaceDocument(labels, metric, generators, scales, maps, version)
    try:
        doc.to_space()
    except LsskitError as x:
        if isinstance(x, DocumentError):
            raise
        raise DocumentError("metric" if metric else "generators", str(x))
    return doc


def parse_space(path: str) -> SpaceDocument:
    return document_from_data(read_yaml(path), path)


def load_document(text: str, origin: str = "document") -> SpaceDocument:
    return document_from_data(_load_yaml(text, origin), origin)


def write_yaml(data: Any, path: str = None, sort_keys: bool = False) -> str:
    text = yaml.safe_dump(data, default_flow_style=None, sort_keys=sort_keys)
    if path:
        with open(path, "w") as f:
            f.write(text)
    return text


def emit_document(doc: SpaceDocument, path: str = None) -> str:
    return write_yaml(doc.to_data(), path)


def _resolve_scale(value, path: str, doc: SpaceDocument,
                   space: LssSpace) -> Scale:
    if isinstance(value, str):
        return doc.scale(value, space)
    family = _labels_family(value, path, set(doc.labels))
    try:
        return Scale.of_family(SetFamily.of_labels(space.ground, family))
    except LsskitError as x:
        raise DocumentError(path, str(x))


def _pairs(value, path: str, resolve) -> frozenset:
    _require(isinstance(value, list), path, "expected a list of pairs")
    result = set()
    for i, item in enumerate(value):
        p = "{}[{:d}]".format(path, i)
        _require(isinstance(item, list) and len(item) == 2, p,
                 "expected [element, level]")
        level = item[1]
        _require(isinstance(level, int) and level >= 1, p + "[1]",
                 "level must be a positive integer")
        result.add((resolve(item[0], p + "[0]"), level))
    return frozenset(result)


def load_witness(path: str, doc: SpaceDocument,
                 space: LssSpace) -> PropertyAWitness:
    data = read_yaml(path)
    _require(isinstance(data, dict), path, "expected a mapping")

    def label(value, p):
        _require(str(value) in doc.labels, p, "unknown label: {}".format(value))
        return space.ground.index(str(value))

    epsilon = parse_fraction(data.get("epsilon"), "epsilon")
    test = _resolve_scale(data.get("test"), "test", doc, space)
    support = _resolve_scale(data.get("support"), "support", doc, space)
    table = data.get("sets")
    _require(isinstance(table, dict), "sets", "expected a table by label")
    sets = [frozenset()] * space.size
    for key, value in table.items():
        x = label(key, "sets")
        sets[x] = _pairs(value, "sets." + str(key), label)
    return PropertyAWitness(epsilon, test, support, sets)


def witness_to_data(w: PropertyAWitness) -> Dict[str, Any]:
    labels = w.ground.labels
    return {
        "epsilon": format_fraction(w.epsilon),
        "test": w.test_scale.as_labels(),
        "support": w.support_scale.as_labels(),
        "sets": {labels[x]: [[labels[z], l] for z, l in sorted(a)]
                 for x, a in enumerate(w.sets)},
    }


def load_scaled_witness(path: str, doc: SpaceDocument,
                        space: LssSpace) -> ScaledPropertyAWitness:
    data = read_yaml(path)
    _require(isinstance(data, dict), path, "expected a mapping")
    epsilon = parse_fraction(data.get("epsilon"), "epsilon")
    base = _resolve_scale(data.get("base"), "base", doc, space)
    queried = _resolve_scale(data.get("queried"), "queried", doc, space)
    horizon = _resolve_scale(data.get("horizon"), "horizon", doc, space)

    def index(value, p):
        _require(isinstance(value, int) and 0 <= value < len(base), p,
                 "not a base index: {}".format(value))
        return value

    table = data.get("sets")
    _require(isinstance(table, list) and len(table) == len(base), "sets",
             "expected one entry per base element")
    sets = [_pairs(v, "sets[{:d}]".format(i), index)
            for i, v in enumerate(table)]
    return ScaledPropertyAWitness(base, epsilon, queried, horizon, sets)


def scaled_witness_to_data(w: ScaledPropertyAWitness) -> Dict[str, Any]:
    return {
        "epsilon": format_fraction(w.epsilon),
        "base": w.base_scale.as_labels(),
        "queried": w.queried_scale.as_labels(),
        "horizon": w.horizon_scale.as_labels(),
        "sets": [[[u, l] for u, l in sorted(a)] for a in w.sets],
    }


def load_sako_witness(path: str, doc: SpaceDocument,
                      space: LssSpace) -> SakoWitness:
    data = read_yaml(path)
    _require(isinstance(data, dict), path, "expected a mapping")
    ground = space.ground

    def label(value, p):
        _require(str(value) in doc.labels, p, "unknown label: {}".format(value))
        return ground.index(str(value))

    def relation(key):
        value = data.get(key)
        _require(isinstance(value, list), key, "expected a list of pairs")
        pairs = set()
        for i, item in enumerate(value):
            p = "{}[{:d}]".format(key, i)
            _require(isinstance(item, list) and len(item) == 2, p,
                     "expected a pair of labels")
            pairs.add((label(item[0], p), label(item[1], p)))
        return Entourage(ground, pairs)

    epsilon = parse_fraction(data.get("epsilon"), "epsilon")
    triples = set()
    value = data.get("A")
    _require(isinstance(value, list), "A", "expected a list of triples")
    for i, item in enumerate(value):
        p = "A[{:d}]".format(i)
        _require(isinstance(item, list) and len(item) == 3
                 and isinstance(item[2], int) and item[2] >= 1, p,
                 "expected [label, label, level]")
        triples.add((label(item[0], p), label(item[1], p), item[2]))
    return SakoWitness(epsilon, relation("T"), relation("S"), triples)


def sako_witness_to_data(w: SakoWitness) -> Dict[str, Any]:
    labels = w.t.ground.labels
    return {
        "epsilon": format_fraction(w.epsilon),
        "T": [[labels[x], labels[y]] for x, y in w.t.sorted_pairs()],
        "S": [[labels[x], labels[y]] for x, y in w.s.sorted_pairs()],
        "A": [[labels[x], labels[y], l] for x, y, l in sorted(w.a)],
    }