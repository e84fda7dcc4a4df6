"""
``verify``: cross-validation of the pipeline against independent oracles.

Three families of checks, selected with ``--against``:

- ``homology``: integral homology survives barycentric subdivision and a
  forced retriangulation round, and matches the abelianized edge-path
  presentation;
- ``hom``: the Kuperberg invariant of each group algebra equals the
  brute-force homomorphism count (and the closed form for cyclic groups);
- ``decomposition``: every transferred tree decomposition is valid and
  within its width bound.
"""
import logging
import re
from typing import List, Tuple

from trisparse.commands.common import load_triangulation, require_closed
from trisparse.config import get_config
from trisparse.data_loader import get_data_loader
from trisparse.errors import VerificationError
from trisparse.graphs import STRATEGIES, heuristic_decomposition, validate_decomposition
from trisparse.heegaard import diagram_graph, heegaard_from_triangulation, orient_diagram
from trisparse.hopf import cyclic_group, group_algebra
from trisparse.kuperberg import kuperberg_invariant, kuperberg_network
from trisparse.oracles import (abelian_hom_count, abelianization, hom_count, homology,
                               pi1_presentation)
from trisparse.report import RunReport
from trisparse.retriangulate import retriangulate_step
from trisparse.skeleton import counting_checks
from trisparse.transforms import (transform_for_diagram, transform_for_network,
                                  transform_for_retriangulation)
from trisparse.triangulation import Triangulation, barycentric_subdivision, dual_graph, orient

logger = logging.getLogger(__name__)

NAME = 'verify'
AGAINST = ('homology', 'hom', 'decomposition', 'all')

Check = Tuple[str, bool, str]


def register(subparsers):
    parser = subparsers.add_parser(NAME, help='cross-validate the pipeline against independent oracles')
    parser.add_argument('path', help='closed gluing table (.tri)')
    parser.add_argument('--against', choices=AGAINST, default='all', help='check family (default all)')
    parser.add_argument('--groups', default=None,
                        help='comma-separated groups for the hom checks (default VERIFY_GROUPS)')
    parser.add_argument('--heuristic', choices=STRATEGIES, default=None)
    parser.set_defaults(handler=run)
    return parser


def homology_checks(tri: Triangulation, report: RunReport) -> List[Check]:
    h = homology(tri)
    report.extend((f"h{k}", h[k]) for k in range(4))
    subdivided = homology(barycentric_subdivision(tri))
    retriangulated = homology(retriangulate_step(tri, force=True)[0])
    h1 = abelianization(pi1_presentation(tri))
    failed = [name for name, holds in counting_checks(tri) if not holds]
    return [
        ('homology_subdivision', subdivided == h, f"homology_subdivision: {h} became {subdivided}"),
        ('homology_retriangulation', retriangulated == h, f"homology_retriangulation: {h} became {retriangulated}"),
        ('h1_abelianization', h1 == h[1], f"h1_abelianization: H1={h[1]} abelianized pi1={h1}"),
        ('counting', not failed, f"counting: {', '.join(failed)} failed"),
    ]


def hom_checks(tri: Triangulation, groups: List[str], heuristic, report: RunReport) -> List[Check]:
    loader = get_data_loader()
    presentation = pi1_presentation(tri)
    h1 = homology(tri)[1]
    checks = []
    for name in groups:
        group = loader.load_group(name)
        value = kuperberg_invariant(tri, group_algebra(group), heuristic=heuristic).value
        count = hom_count(presentation, group)
        report.extend([(f"kuperberg_{name}", value), (f"hom_{name}", count)])
        checks.append((f"hom_{name}", value == count, f"hom_{name}: kuperberg={value} hom_count={count}"))
        cyclic = re.fullmatch(r'Z(\d+)', name)
        if cyclic:
            closed_form = abelian_hom_count(h1, int(cyclic.group(1)))
            checks.append((f"hom_{name}_abelian", closed_form == count,
                           f"hom_{name}_abelian: closed form={closed_form} hom_count={count}"))
    return checks


def _within(name: str, decomposition, graph, bound: int, report: RunReport) -> Check:
    check = validate_decomposition(graph, decomposition)
    report.add(f"{name}_width", decomposition.width)
    ok = bool(check) and decomposition.width <= bound
    reason = check.describe() if not check else f"width {decomposition.width} > {bound}"
    return name, ok, f"{name}: {reason}"


def decomposition_checks(tri: Triangulation, heuristic, report: RunReport) -> List[Check]:
    dual = dual_graph(tri)
    td = heuristic_decomposition(dual, heuristic)
    w = td.width
    checks = [_within('td_dual', td, dual, w, report)]

    diagram = orient_diagram(heegaard_from_triangulation(tri), tri)
    diagram_td = transform_for_diagram(td, tri, diagram)
    checks.append(_within('td_diagram', diagram_td, diagram_graph(diagram), 12 * (w + 1) - 1, report))

    retriangulated, trace = retriangulate_step(tri, force=True)
    retriangulated_td = transform_for_retriangulation(td, trace)
    checks.append(_within('td_retriangulation', retriangulated_td, dual_graph(retriangulated),
                          36 * (w + 1) - 1, report))

    network = kuperberg_network(diagram, group_algebra(cyclic_group(2)))
    wd = diagram_td.width
    core, _ = network.core_graph()
    checks.append(_within('td_network', transform_for_network(diagram_td, network, reattach=False),
                          core, 2 * (wd + 1) - 1, report))
    full = transform_for_network(diagram_td, network)
    check = validate_decomposition(network.coupon_graph(), full)
    checks.append(('td_network_full', bool(check), f"td_network_full: {check.describe()}"))
    limit = 3 * diagram.crossing_count
    checks.append(('coupons', network.coupon_count <= limit,
                   f"coupons: {network.coupon_count} > {limit}"))
    return checks


def run(args, report: RunReport) -> RunReport:
    tri = load_triangulation(args.path)
    require_closed(tri)
    checks: List[Check] = []
    if args.against in ('homology', 'all'):
        checks.extend(homology_checks(tri, report))
    if args.against in ('hom', 'decomposition', 'all'):
        tri = orient(tri)
    if args.against in ('hom', 'all'):
        groups = [g.strip() for g in (args.groups or get_config().VERIFY_GROUPS).split(',') if g.strip()]
        checks.extend(hom_checks(tri, groups, args.heuristic, report))
    if args.against in ('decomposition', 'all'):
        checks.extend(decomposition_checks(tri, args.heuristic, report))

    for name, passed, _ in checks:
        report.add(f"check_{name}", 'pass' if passed else 'fail')
    diffs = [diff for _, passed, diff in checks if not passed]
    report.extend([('checks', len(checks)), ('failed', len(diffs))])
    if diffs:
        raise VerificationError(f"{len(diffs)} of {len(checks)} checks failed", diffs)
    return report
