"""
Command line interface of lsskit

Every subcommand delegates to one library operation and prints a
certificate (YAML) to stdout or to the file given with ``--out``.
Exit codes: 0 verdict true, 1 verdict false, 2 error, 3 bounded search
exhausted. Documents are paths or names of shipped fixtures
(``lsskit fixtures list``).
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

import functools
import logging
import os
import sys
from typing import List, Optional, Tuple

import attr
import click

from lsskit import __version__, init_logging
from lsskit.cli.certificate import Certificate, Outcome, emit_certificate, \
    parse_certificate
from lsskit.cli.document import SpaceDocument, emit_document, \
    load_sako_witness, load_scaled_witness, load_witness, \
    parse_fraction, parse_space, sako_witness_to_data, \
    scaled_witness_to_data, witness_to_data
from lsskit.cli.fixtures import components_document, grid_document, \
    named_document, named_fixtures, path_document, product_document, \
    random_document
from lsskit.config import OracleLimits
from lsskit.errors import DocumentError, InconsistentRoutesError, \
    LsskitError, OracleLimitExceeded, PreconditionError
from lsskit.maps import construct_coarse_inverse, is_coarse_equivalence
from lsskit.measure.nets_bsm import BsmCertificate, BsmMode, bsm_transfer, \
    certify, check_bsm, enumerate_nets, greedy_net
from lsskit.propa.asdim import check_asdim_at_most
from lsskit.propa.prop_a import WitnessCheck, construct_witness_asdim, \
    has_bounded_geometry, search_witness, tower_height, transfer_witness, \
    verify_witness
from lsskit.propa.prop_a_scaled import TRIGGER_TRANSLATION, \
    reduce_trivial_base, transfer_scaled_witness, verify_scaled_witness
from lsskit.structure.coarse_struct import coarse_to_lss, \
    is_uniformly_locally_finite, lss_to_coarse, verify_sako_witness, \
    witness_lss_to_sako, witness_sako_to_lss
from lsskit.structure.core_family import GroundSet, Subset, multiplicity, \
    star
from lsskit.structure.lss import LssSpace

ARGV = "lsskit.argv"
CAPTURE = "lsskit.capture"
RESULT = "lsskit.certificate"


class CommandError(click.ClickException):
    exit_code = 2


@attr.s(auto_attribs=True)
class Session:
    limits: OracleLimits
    out: Optional[str] = None


class CommandGroup(click.Group):
    """
    Records the raw arguments of the top level invocation so that
    certificates can echo the command that produced them
    """

    def parse_args(self, ctx, args):
        if ctx.parent is None:
            ctx.meta.setdefault(ARGV, list(args))
        return super().parse_args(ctx, args)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OracleLimitExceeded as x:
            raise CommandError("oracle limit exceeded: {}".format(x))
        except DocumentError as x:
            raise CommandError("invalid document: {}".format(x))
        except PreconditionError as x:
            raise CommandError("precondition failed: {}".format(x))
        except InconsistentRoutesError as x:
            raise CommandError("internal inconsistency: {}".format(x))
        except (LsskitError, KeyError, ValueError, OSError) as x:
            raise CommandError("error: {}".format(x))
    return wrapper


def finish(ctx: click.Context, outcome: Outcome, constants: dict = None,
           witnesses: dict = None):
    session = ctx.find_object(Session)
    cert = Certificate(ctx.meta.get(ARGV, []), outcome, constants or {},
                       witnesses or {}, session.limits.as_dict())
    if ctx.meta.get(CAPTURE):
        ctx.meta[RESULT] = cert
        return
    text = emit_certificate(cert, session.out)
    if not session.out:
        click.echo(text, nl=False)
    ctx.exit(cert.exit_code)


def outcome_of(holds) -> Outcome:
    return Outcome.true if holds else Outcome.false


def open_document(ref: str) -> SpaceDocument:
    if os.path.exists(ref):
        return parse_space(ref)
    return named_document(ref)


def open_space(ref: str) -> Tuple[SpaceDocument, LssSpace]:
    doc = open_document(ref)
    return doc, doc.to_space()


def labels_of(ground: GroundSet, mask: int) -> List[str]:
    return Subset(ground, mask).labels()


def parse_labels(ground: GroundSet, value: str) -> Subset:
    labels = [l.strip() for l in value.split(',') if l.strip()]
    return ground.subset_of_labels(labels)


def violations_data(check: WitnessCheck, name=None) -> List[dict]:
    if name is None:
        name = lambda i: i
    return [
        {
            "kind": v.kind,
            "x": name(v.x),
            "y": None if v.y is None else name(v.y),
            "sym_diff": v.sym_diff,
            "intersection": v.intersection,
        } for v in check.violations
    ]


def check_constants(check: WitnessCheck) -> dict:
    return {"max_ratio": check.max_ratio, "pairs": check.pairs,
            "violations": len(check.violations)}


def bsm_data(cert: BsmCertificate) -> Tuple[dict, dict]:
    ground = cert.base_scale.ground
    queried = [labels_of(ground, m) for m in cert.queried_scale.masks]
    if cert.mode is BsmMode.covering:
        witnesses = [[labels_of(ground, cert.base_scale.masks[i]) for i in w]
                     for w in cert.witnesses]
    else:
        witnesses = [[ground.labels[x] for x in w] for w in cert.witnesses]
    constants = {"mode": cert.mode.value, "bound": cert.bound,
                 "per_element": list(cert.constants)}
    return constants, {"queried": queried, "base": cert.base_scale.as_labels(),
                       "per_element": witnesses}


@click.command("validate", help="Parse a space document and report its "
                                "maximal bounded sets")
@click.argument("document")
@click.pass_context
@handle_errors
def space_validate(ctx, document):
    doc, space = open_space(document)
    constants = {
        "points": space.size,
        "generators": len(space.generators),
        "maximal_bounded": len(space.blocks),
        "bounded_geometry": has_bounded_geometry(space).witness,
        "metric": space.metric is not None,
    }
    finish(ctx, Outcome.true, constants,
           {"maximal_bounded": space.maximal_bounded.as_labels()})


@click.command("star", help="Star of a set against a scale")
@click.argument("document")
@click.option("--set", "-s", "target", required=True,
              help="Comma separated labels")
@click.option("--scale", required=True, help="Scale name")
@click.pass_context
@handle_errors
def star_command(ctx, document, target, scale):
    doc, space = open_space(document)
    family = doc.scale(scale, space)
    result = star(parse_labels(space.ground, target), family)
    finish(ctx, Outcome.true, {"size": len(result)},
           {"star": result.labels()})


@click.command("compute", help="Greedy net, or all nets with --all")
@click.argument("document")
@click.option("--scale", required=True, help="Scale name")
@click.option("--within", default=None,
              help="Comma separated labels of the ambient set, "
                   "the whole space by default")
@click.option("--all", "all_nets", default=False, is_flag=True,
              help="Enumerate every net")
@click.pass_context
@handle_errors
def net_compute(ctx, document, scale, within, all_nets):
    doc, space = open_space(document)
    family = doc.scale(scale, space)
    ambient = parse_labels(space.ground, within) if within \
        else space.ground.whole()
    session = ctx.find_object(Session)
    if all_nets:
        nets = enumerate_nets(ambient, family, session.limits)
        sizes = [len(n) for n in nets]
        constants = {"count": len(nets), "smallest": min(sizes),
                     "largest": max(sizes)}
        witnesses = {"nets": [n.members.labels() for n in nets]}
    else:
        net = greedy_net(ambient, family)
        constants = {"size": len(net)}
        witnesses = {"net": net.members.labels()}
    finish(ctx, Outcome.true, constants, witnesses)


@click.command("check", help="Bounded scale measure certificate at a base "
                             "scale")
@click.argument("document")
@click.option("--base", required=True, help="Base scale name")
@click.option("--mode", default=BsmMode.covering.value,
              type=click.Choice([m.value for m in BsmMode]),
              help="Characterization, covering by default")
@click.option("--queried", default=None,
              help="Queried scale name, the maximal bounded sets by default")
@click.pass_context
@handle_errors
def bsm_check(ctx, document, base, mode, queried):
    doc, space = open_space(document)
    limits = ctx.find_object(Session).limits
    base_scale = doc.scale(base, space)
    if queried:
        cert = certify(doc.scale(queried, space), base_scale, BsmMode(mode),
                       limits)
    else:
        cert = check_bsm(space, base_scale, BsmMode(mode), limits)
    constants, witnesses = bsm_data(cert)
    finish(ctx, Outcome.true, constants, witnesses)


@click.command("transfer", help="Carry a bounded scale measure certificate "
                                "across a coarse equivalence")
@click.argument("source")
@click.argument("target")
@click.option("--map", "map_name", required=True,
              help="Map name in the source document")
@click.option("--base", required=True,
              help="Base scale name in the document given by --on")
@click.option("--on", "side", default="source",
              type=click.Choice(["source", "target"]),
              help="Space the certificate lives on, source by default")
@click.option("--mode", default=BsmMode.covering.value,
              type=click.Choice([m.value for m in BsmMode]))
@click.pass_context
@handle_errors
def bsm_transfer_command(ctx, source, target, map_name, base, side, mode):
    source_doc, source_space = open_space(source)
    target_doc, target_space = open_space(target)
    f = source_doc.space_map(map_name, source_space, target_space)
    limits = ctx.find_object(Session).limits
    if side == "source":
        cert = check_bsm(source_space, source_doc.scale(base, source_space),
                         BsmMode(mode), limits)
    else:
        cert = check_bsm(target_space, target_doc.scale(base, target_space),
                         BsmMode(mode), limits)
    transfer = bsm_transfer(f, cert, limits)
    constants, witnesses = bsm_data(transfer.certificate)
    constants.update({
        "forward": transfer.forward,
        "reference_bound": transfer.reference.bound,
        "slack": transfer.slack,
        "original_bound": cert.bound,
    })
    finish(ctx, outcome_of(transfer.law_holds), constants, witnesses)


@click.command("classify", help="Classify a map: bornologous, coarse "
                                "embedding, coarsely surjective, equivalence")
@click.argument("source")
@click.argument("target")
@click.option("--map", "map_name", required=True,
              help="Map name in the source document")
@click.pass_context
@handle_errors
def map_classify(ctx, source, target, map_name):
    source_doc, source_space = open_space(source)
    _, target_space = open_space(target)
    f = source_doc.space_map(map_name, source_space, target_space)
    report = is_coarse_equivalence(f)
    constants = {
        "bornologous": report.bornologous.holds,
        "coarse_embedding": report.coarse_embedding.holds,
        "coarsely_surjective": report.coarsely_surjective.holds,
        "equivalence": report.equivalence.holds,
    }
    witnesses = {}
    for key in ("bornologous", "coarse_embedding", "coarsely_surjective"):
        verdict = getattr(report, key)
        if not verdict:
            witnesses[key] = verdict.counterexample.labels()
    if report.equivalence:
        witnesses["inverse"] = report.inverse.as_labels()
        witnesses["maximal_bounded"] = target_space.maximal_bounded.as_labels()
    else:
        witnesses["equivalence"] = report.equivalence.counterexample
    finish(ctx, outcome_of(report.equivalence.holds), constants, witnesses)


@click.command("invert", help="Construct a coarse inverse")
@click.argument("source")
@click.argument("target")
@click.option("--map", "map_name", required=True,
              help="Map name in the source document")
@click.pass_context
@handle_errors
def map_invert(ctx, source, target, map_name):
    source_doc, source_space = open_space(source)
    _, target_space = open_space(target)
    f = source_doc.space_map(map_name, source_space, target_space)
    g = construct_coarse_inverse(f)
    finish(ctx, Outcome.true, {"max_fiber": f.max_fiber},
           {"inverse": g.as_labels()})


@click.command("verify", help="Verify a property A witness")
@click.argument("document")
@click.argument("witness")
@click.pass_context
@handle_errors
def propa_verify(ctx, document, witness):
    doc, space = open_space(document)
    w = load_witness(witness, doc, space)
    check = verify_witness(space, w, ctx.find_object(Session).limits)
    constants = check_constants(check)
    constants["epsilon"] = w.epsilon
    finish(ctx, outcome_of(check), constants,
           {"violations": violations_data(check,
                                          lambda x: space.ground.labels[x])})


@click.command("search", help="Bounded search for a property A witness; "
                              "exhaustion refutes only the given support "
                              "scale and level bound")
@click.argument("document")
@click.option("--epsilon", "-e", required=True, help="Ratio as p/q")
@click.option("--test", "test_name", required=True, help="Test scale name")
@click.option("--support", "support_name", required=True,
              help="Support scale name")
@click.option("--max-level", default=1, type=click.IntRange(1, 3),
              help="Largest level in the searched sets, 1 by default")
@click.pass_context
@handle_errors
def propa_search(ctx, document, epsilon, test_name, support_name, max_level):
    doc, space = open_space(document)
    epsilon = parse_fraction(epsilon, "--epsilon")
    result = search_witness(space, epsilon, doc.scale(test_name, space),
                            doc.scale(support_name, space), max_level,
                            ctx.find_object(Session).limits)
    constants = {"epsilon": epsilon, "explored": result.explored,
                 "max_level": max_level}
    if result.exhausted:
        finish(ctx, Outcome.exhausted, constants)
        return
    finish(ctx, Outcome.true, constants,
           {"witness": witness_to_data(result.witness)})


@click.command("construct-asdim", help="Construct a property A witness from "
                                       "an asymptotic dimension certificate "
                                       "and verify it")
@click.argument("document")
@click.option("--epsilon", "-e", required=True, help="Ratio as p/q")
@click.option("--test", "test_name", required=True, help="Test scale name")
@click.option("--k", "k", default=0, type=click.IntRange(0),
              help="Dimension bound, 0 by default")
@click.pass_context
@handle_errors
def propa_construct_asdim(ctx, document, epsilon, test_name, k):
    doc, space = open_space(document)
    epsilon = parse_fraction(epsilon, "--epsilon")
    cert = check_asdim_at_most(space, k)
    w = construct_witness_asdim(space, cert, epsilon,
                                doc.scale(test_name, space))
    check = verify_witness(space, w, ctx.find_object(Session).limits)
    constants = check_constants(check)
    constants.update({
        "epsilon": epsilon,
        "k": k,
        "tower_height": tower_height(k, epsilon),
        "multiplicity": max((multiplicity(c) for c in cert.coarsenings),
                            default=0),
    })
    finish(ctx, outcome_of(check), constants, {
        "witness": witness_to_data(w),
        "violations": violations_data(check, lambda x: space.ground.labels[x])
    })


@click.command("transfer", help="Pull a property A witness back along a "
                                "coarse equivalence")
@click.argument("source")
@click.argument("target")
@click.argument("witness")
@click.option("--map", "map_name", required=True,
              help="Map name in the source document")
@click.option("--epsilon", "-e", required=True, help="Ratio as p/q")
@click.pass_context
@handle_errors
def propa_transfer(ctx, source, target, witness, map_name, epsilon):
    source_doc, source_space = open_space(source)
    target_doc, target_space = open_space(target)
    f = source_doc.space_map(map_name, source_space, target_space)
    w = load_witness(witness, target_doc, target_space)
    epsilon = parse_fraction(epsilon, "--epsilon")
    result = transfer_witness(f, w, epsilon,
                              limits=ctx.find_object(Session).limits)
    constants = check_constants(result.check)
    constants.update({"epsilon": epsilon, "fiber_bound": result.fiber_bound})
    finish(ctx, outcome_of(result.holds), constants,
           {"witness": witness_to_data(result.witness)})


@click.command("verify", help="Verify a property A witness at a scale")
@click.argument("document")
@click.argument("witness")
@click.option("--allow-trivial", default=False, is_flag=True,
              help="Accept a queried scale of single points")
@click.pass_context
@handle_errors
def scaled_verify(ctx, document, witness, allow_trivial):
    doc, space = open_space(document)
    w = load_scaled_witness(witness, doc, space)
    check = verify_scaled_witness(space, w, allow_trivial,
                                  ctx.find_object(Session).limits)
    constants = check_constants(check)
    constants["epsilon"] = w.epsilon
    finish(ctx, outcome_of(check), constants,
           {"violations": violations_data(check)})


@click.command("transfer", help="Pull a property A witness at a scale back "
                                "along a coarse equivalence")
@click.argument("source")
@click.argument("target")
@click.argument("witness")
@click.option("--map", "map_name", required=True,
              help="Map name in the source document")
@click.option("--base", required=True, help="Base scale name on the source")
@click.option("--queried", required=True,
              help="Queried scale name on the source")
@click.option("--epsilon", "-e", required=True, help="Ratio as p/q")
@click.option("--allow-trivial", default=False, is_flag=True,
              help="Accept a queried scale of single points")
@click.pass_context
@handle_errors
def scaled_transfer(ctx, source, target, witness, map_name, base, queried,
                    epsilon, allow_trivial):
    source_doc, source_space = open_space(source)
    target_doc, target_space = open_space(target)
    f = source_doc.space_map(map_name, source_space, target_space)
    w = load_scaled_witness(witness, target_doc, target_space)
    epsilon = parse_fraction(epsilon, "--epsilon")
    result = transfer_scaled_witness(
        f, w, source_doc.scale(base, source_space),
        source_doc.scale(queried, source_space), epsilon, allow_trivial,
        ctx.find_object(Session).limits
    )
    constants = check_constants(result.check)
    constants.update({
        "epsilon": epsilon,
        "m": result.m,
        "n": result.n,
        "budget": result.budget,
        "delta_bound_holds": result.delta_bound_holds,
        "intersection_times_m_holds": result.intersection_times_m_holds,
        "intersection_over_m_holds": result.intersection_over_m_holds,
    })
    finish(ctx, outcome_of(result.holds), constants, {
        "witness": scaled_witness_to_data(result.witness),
        "chosen_x": [list(c) for c in result.chosen_x],
        "chosen_y": [list(c) for c in result.chosen_y],
    })


@click.command("reduce", help="Turn a witness over the singleton base into "
                              "a plain property A witness")
@click.argument("document")
@click.argument("witness")
@click.pass_context
@handle_errors
def scaled_reduce(ctx, document, witness):
    doc, space = open_space(document)
    w = reduce_trivial_base(load_scaled_witness(witness, doc, space))
    check = verify_witness(space, w, ctx.find_object(Session).limits)
    constants = check_constants(check)
    constants.update({"epsilon": w.epsilon, "trigger": TRIGGER_TRANSLATION})
    finish(ctx, outcome_of(check), constants,
           {"witness": witness_to_data(w)})


@click.command("convert", help="Coarse structure of a large scale space and "
                               "the round trip back")
@click.argument("document")
@click.pass_context
@handle_errors
def coarse_convert(ctx, document):
    doc, space = open_space(document)
    cs = lss_to_coarse(space)
    back = coarse_to_lss(cs)
    round_trip = back.blocks == space.blocks
    labels = space.ground.labels
    finish(ctx, outcome_of(round_trip), {
        "controlled": len(cs.controlled),
        "uniformly_locally_finite": is_uniformly_locally_finite(cs).witness,
        "round_trip": round_trip,
    }, {
        "controlled": [[[labels[x], labels[y]] for x, y in c.sorted_pairs()]
                       for c in cs.controlled],
        "maximal_bounded": back.maximal_bounded.as_labels(),
    })


@click.command("verify-sako", help="Verify a property A witness on the "
                                   "coarse structure of a space")
@click.argument("document")
@click.argument("witness")
@click.pass_context
@handle_errors
def coarse_verify_sako(ctx, document, witness):
    doc, space = open_space(document)
    cs = lss_to_coarse(space)
    w = load_sako_witness(witness, doc, space)
    check = verify_sako_witness(cs, w)
    constants = check_constants(check)
    constants["epsilon"] = w.epsilon
    finish(ctx, outcome_of(check), constants,
           {"violations": violations_data(check,
                                          lambda x: space.ground.labels[x])})


@click.command("convert-witness", help="Convert a property A witness "
                                       "between the two forms and verify "
                                       "the result")
@click.argument("document")
@click.argument("witness")
@click.option("--to", "target", required=True,
              type=click.Choice(["sako", "lss"]))
@click.pass_context
@handle_errors
def coarse_convert_witness(ctx, document, witness, target):
    doc, space = open_space(document)
    cs = lss_to_coarse(space)
    limits = ctx.find_object(Session).limits
    if target == "sako":
        converted = witness_lss_to_sako(space, load_witness(witness, doc,
                                                             space))
        check = verify_sako_witness(cs, converted)
        data = sako_witness_to_data(converted)
    else:
        converted = witness_sako_to_lss(cs, load_sako_witness(witness, doc,
                                                               space))
        check = verify_witness(space, converted, limits)
        data = witness_to_data(converted)
    constants = check_constants(check)
    constants["epsilon"] = converted.epsilon
    finish(ctx, outcome_of(check), constants, {"witness": data})


@click.command("verify", help="Re-run the command recorded in a certificate "
                              "and compare verdict and constants")
@click.argument("certificate", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
@handle_errors
def verify_certificate(ctx, certificate):
    original = parse_certificate(certificate)
    logging.info("Re-running: " + " ".join(original.command))
    rerun_ctx = cli.make_context("lsskit", list(original.command))
    rerun_ctx.meta[CAPTURE] = True
    with rerun_ctx:
        cli.invoke(rerun_ctx)
    rerun = rerun_ctx.meta.get(RESULT)
    if rerun is None:
        raise CommandError("command does not produce a certificate: "
                           + " ".join(original.command))
    diff = original.agrees_with(rerun)
    finish(ctx, outcome_of(not diff), {
        "verdict": original.verdict.value,
        "version": original.version,
    }, {"disagreements": diff})


def _write_document(ctx: click.Context, doc: SpaceDocument):
    out = ctx.find_object(Session).out
    text = emit_document(doc, out)
    if not out:
        click.echo(text, nl=False)


@click.command("path", help="Path 0..n-1")
@click.option("--n", "n", required=True, type=click.IntRange(1))
@click.pass_context
@handle_errors
def generate_path(ctx, n):
    _write_document(ctx, path_document(n))


@click.command("components", help="Groups at infinite distance")
@click.option("--sizes", required=True,
              help="Comma separated group sizes, e.g. 2,3")
@click.pass_context
@handle_errors
def generate_components(ctx, sizes):
    _write_document(ctx, components_document(
        [int(s) for s in sizes.split(',') if s.strip()]))


@click.command("grid", help="Grid {0..s}^d with the sup metric")
@click.option("--d", "d", required=True, type=click.IntRange(1))
@click.option("--s", "s", default=4, type=click.IntRange(0))
@click.pass_context
@handle_errors
def generate_grid(ctx, d, s):
    _write_document(ctx, grid_document(d, s))


@click.command("product", help="Truncated product of the grids {0..s}^i, "
                               "i = 1..t")
@click.option("--t", "t", required=True, type=click.IntRange(1))
@click.option("--s", "s", default=1, type=click.IntRange(0))
@click.pass_context
@handle_errors
def generate_product(ctx, t, s):
    _write_document(ctx, product_document(t, s))


@click.command("random", help="Seeded random generator-based space")
@click.option("--seed", required=True, type=int)
@click.option("--points", default=8, type=click.IntRange(1))
@click.option("--generators", default=2, type=click.IntRange(1))
@click.pass_context
@handle_errors
def generate_random(ctx, seed, points, generators):
    _write_document(ctx, random_document(seed, points, generators))


@click.command("list", help="Names of the shipped fixture documents")
def fixtures_list():
    for name in named_fixtures():
        click.echo(name)


@click.group("space", help="Space documents")
def space_group(): pass

@click.group("net", help="Nets of a scale")
def net_group(): pass

@click.group("bsm", help="Bounded scale measure")
def bsm_group(): pass

@click.group("map", help="Maps between spaces")
def map_group(): pass

@click.group("propa", help="Property A witnesses")
def propa_group(): pass

@click.group("propa-scaled", help="Property A witnesses at a scale")
def scaled_group(): pass

@click.group("coarse", help="Coarse structures")
def coarse_group(): pass

@click.group("generate", help="Generate a fixture document")
def generate_group(): pass

@click.group("fixtures", help="Fixture documents")
def fixtures_group(): pass


@click.group("lsskit", cls=CommandGroup,
             help="Certificates for finite large scale spaces")
@click.option("--limits", "limits_file", default=None,
              help="ini file with oracle limits, relative to $LSSKIT_HOME")
@click.option("--section", default="limits",
              help="Section of the limits file, 'limits' by default")
@click.option("--limit", "overrides", multiple=True, metavar="KEY=VALUE",
              help="Override one oracle limit, multiple allowed")
@click.option("--threads", default=None, type=click.IntRange(1),
              help="Worker threads for per-element evaluation")
@click.option("--out", "-o", default=None,
              help="Write the certificate to this file instead of stdout")
@click.version_option(__version__)
@click.pass_context
def cli(ctx, limits_file, section, overrides, threads, out):
    init_logging(stream=sys.stderr, level=logging.INFO)
    values = {"threads": threads}
    for item in overrides:
        key, sep, value = item.partition('=')
        if not sep:
            raise click.BadParameter("expected KEY=VALUE, got " + item,
                                     param_hint="--limit")
        values[key.strip()] = value.strip()
    try:
        limits = OracleLimits.load(limits_file, section, **values)
    except (LsskitError, ValueError, OSError) as x:
        raise CommandError("invalid oracle limits: {}".format(x))
    ctx.obj = Session(limits, out)


space_group.add_command(space_validate)
net_group.add_command(net_compute)
bsm_group.add_command(bsm_check)
bsm_group.add_command(bsm_transfer_command)
map_group.add_command(map_classify)
map_group.add_command(map_invert)
propa_group.add_command(propa_verify)
propa_group.add_command(propa_search)
propa_group.add_command(propa_construct_asdim)
propa_group.add_command(propa_transfer)
scaled_group.add_command(scaled_verify)
scaled_group.add_command(scaled_transfer)
scaled_group.add_command(scaled_reduce)
coarse_group.add_command(coarse_convert)
coarse_group.add_command(coarse_verify_sako)
coarse_group.add_command(coarse_convert_witness)
generate_group.add_command(generate_path)
generate_group.add_command(generate_components)
generate_group.add_command(generate_grid)
generate_group.add_command(generate_product)
generate_group.add_command(generate_random)
fixtures_group.add_command(generate_group)
fixtures_group.add_command(fixtures_list)
cli.add_command(space_group)
cli.add_command(star_command)
cli.add_command(net_group)
cli.add_command(bsm_group)
cli.add_command(map_group)
cli.add_command(propa_group)
cli.add_command(scaled_group)
cli.add_command(coarse_group)
cli.add_command(fixtures_group)
cli.add_command(verify_certificate)


if __name__ == '__main__':
    cli()
