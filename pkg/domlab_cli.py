#!/usr/bin/env python3
# domlab_cli.py
"""
Command-line surface: generate instances, solve, evaluate formulas, build and
verify certificates, run grid tables and reproduce the erratum counterexamples.

    python domlab_cli.py solve --family cycle-clique --n 6 --m 5 --param dom
    python domlab_cli.py table --param sdom --family path-clique --n-range 3..7 --m-range 3..4 --with-solver
    python domlab_cli.py erratum --which all

Exit codes: 0 success, 1 verification failed, 2 usage, 3 parse or file error,
4 guard or domain error, 5 budget exhausted.
"""

import argparse
import logging
import sys
from typing import List, Optional

from closed_forms import FormulaDomainError, evaluate_formula
from config_schemas import (
    ConfigValidationError, EnvironmentConfigModel, SolveConfig, TableRequestModel,
    validate_config_dict, validate_environment_config,
)
from constants import ExitCodes, LoggingDefaults
from constructions import ConstructionGuardError, ConstructionKind, build_and_verify, construction_graph
from erratum import ClaimId, run_erratum
from graph_core import (
    EdgeListParseError, Graph, GraphError, InvalidSizeError, ProductFamily, product_instance,
    read_edge_list, write_edge_list,
)
from logging_config import log_run_end, log_run_start, setup_logging
from report_schemas import (
    ErratumReportModel, FormulaReportModel, SolveReportModel, VerifyReportModel, to_json_line,
)
from solvers import BudgetExceededError, solve_min
from table_runner import RangeParseError, parse_range, render_json, render_text, run_table
from verifiers import (
    CertificateParseError, ContractError, ParamKind, format_certificate, format_vertex,
    parse_certificate, verify,
)

logger = logging.getLogger("DomLabCLI")

_FAMILIES = [ProductFamily.PATH_CLIQUE.value, ProductFamily.CYCLE_CLIQUE.value]
_PARAMS = [kind.value for kind in ParamKind]


class UsageError(Exception):
    """Raised for flag combinations argparse cannot express"""
    pass


def _load_graph(args) -> Graph:
    """Product instance from --family/--n/--m, or an edge list from --graph"""
    if getattr(args, 'graph', None):
        with open(args.graph, encoding='utf-8') as handle:
            return read_edge_list(handle)
    if args.family is None or args.n is None or args.m is None:
        raise UsageError("give either --graph FILE or all of --family, --n and --m")
    return product_instance(args.family, args.n, args.m)


def _solve_config(args) -> SolveConfig:
    threads = getattr(args, 'threads', 1) or 1
    data = {
        'node_budget': getattr(args, 'budget', None),
        'use_column_pruning': not getattr(args, 'no_column_pruning', False),
        'canonical_certificate': getattr(args, 'canonical', False),
        'parallel_width': threads if threads > 1 else 0,
    }
    return validate_config_dict(data, SolveConfig)


def _vertex_pairs(g: Graph, ids) -> List[List[int]]:
    coords = g.coords
    if coords is None:
        return [[v] for v in ids]
    return [list(coords.coords(v)) for v in ids]


# Command handlers

def cmd_gen(args) -> int:
    g = product_instance(args.family, args.n, args.m)
    text = write_edge_list(g)
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as handle:
            handle.write(text)
        logger.info(f"wrote {g.describe()} to {args.output}")
    else:
        sys.stdout.write(text)
    return ExitCodes.SUCCESS


def cmd_solve(args) -> int:
    g = _load_graph(args)
    kind = ParamKind(args.param)
    result = solve_min(g, kind, _solve_config(args))
    logger.info(f"solve {kind.value} on {g.describe()}: {result.value} in {result.stats.wall_time:.3f}s")

    if args.format == 'json':
        meta = g.meta if g.coords is not None else None
        report = SolveReportModel(
            family=meta.family.value if meta else None,
            param=kind.value,
            n=meta.n if meta else None,
            m=meta.m if meta else None,
            value=result.value,
            certificate=_vertex_pairs(g, result.certificate),
            nodes=result.stats.nodes,
            canonical=result.canonical,
        )
        print(to_json_line(report))
    else:
        print(f"{kind.label} = {result.value}")
        sys.stdout.write(format_certificate(g, result.certificate))
        print(f"nodes: {result.stats.nodes}")
    return ExitCodes.SUCCESS


def cmd_formula(args) -> int:
    kind = ParamKind(args.param)
    result = evaluate_formula(kind, args.family, args.n, args.m)
    if args.format == 'json':
        print(to_json_line(FormulaReportModel(
            family=args.family, param=kind.value, n=args.n, m=args.m,
            value=result.value, source=result.source.value,
        )))
    else:
        print(f"{kind.label} = {result.value} ({result.source.value})")
    return ExitCodes.SUCCESS


def cmd_construct(args) -> int:
    kind = ConstructionKind(args.kind)
    certificate = build_and_verify(kind, args.n, args.m)
    g = construction_graph(kind, args.n, args.m)
    if args.format == 'json':
        print(to_json_line(SolveReportModel(
            family=kind.family.value, param=kind.param.value, n=args.n, m=args.m,
            value=certificate.size, certificate=_vertex_pairs(g, certificate.vertex_set),
            nodes=0, canonical=False,
        )))
    else:
        sys.stdout.write(format_certificate(g, certificate.vertex_set, parenthesized=True))
        for name, verdict in certificate.verdicts.items():
            print(f"# {name}: {'ok' if verdict.ok else 'FAILED'}")
    return ExitCodes.SUCCESS


def cmd_verify(args) -> int:
    g = _load_graph(args)
    kind = ParamKind(args.param)
    with open(args.set, encoding='utf-8') as handle:
        vertex_set = parse_certificate(handle.read(), g)
    verdict = verify(g, kind, vertex_set)

    if args.format == 'json':
        witness = verdict.failure_witness
        print(to_json_line(VerifyReportModel(
            param=kind.value,
            ok=verdict.ok,
            witness=_vertex_pairs(g, [witness.vertex])[0] if witness else None,
            reason=witness.reason.value if witness else None,
        )))
    elif verdict.ok:
        print(f"OK ({kind.description})")
    else:
        witness = verdict.failure_witness
        print(f"FAIL ({kind.description}): vertex {format_vertex(g, witness.vertex)} {witness.reason.value}")
    return ExitCodes.SUCCESS if verdict.ok else ExitCodes.VERIFICATION_FAILED


def cmd_table(args) -> int:
    n_min, n_max = parse_range(args.n_range)
    m_min, m_max = parse_range(args.m_range)
    request = validate_config_dict({
        'param': args.param,
        'family': args.family,
        'n_min': n_min, 'n_max': n_max,
        'm_min': m_min, 'm_max': m_max,
        'with_solver': args.with_solver,
        'with_construction': args.with_construction,
        'workers': args.workers,
    }, TableRequestModel)
    rows = run_table(request, _solve_config(args))

    if args.format == 'json':
        for line in render_json(rows):
            print(line)
    else:
        sys.stdout.write(render_text(rows))
    return ExitCodes.SUCCESS


def cmd_erratum(args) -> int:
    claims = list(ClaimId) if args.which == 'all' else [ClaimId(args.which)]
    cfg = _solve_config(args)
    for claim_id in claims:
        report = run_erratum(claim_id, cfg, gravier_m=args.gravier_m,
                             confirm_with_reference=not args.no_reference)
        if args.format == 'json':
            print(to_json_line(ErratumReportModel(**report.to_dict())))
        else:
            print(f"{claim_id.value}: {report.summary_line()}")
    return ExitCodes.SUCCESS


# Parser

def _add_instance_flags(parser: argparse.ArgumentParser, allow_file: bool):
    parser.add_argument('--family', choices=_FAMILIES, required=not allow_file, help='product family')
    parser.add_argument('--n', type=int, required=not allow_file, help='path/cycle order')
    parser.add_argument('--m', type=int, required=not allow_file, help='clique order')
    if allow_file:
        parser.add_argument('--graph', metavar='FILE', help='edge-list file instead of a product instance')


def _add_solver_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--budget', type=int, help='search node budget (default: DOMLAB_BUDGET or 10^8)')
    parser.add_argument('--threads', type=int, default=1, help='worker processes for the root branches')
    parser.add_argument('--canonical', action='store_true', help='return the lexicographically smallest set')
    parser.add_argument('--no-column-pruning', action='store_true', help='disable column-window bounds')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='domlab',
        description='Domination parameters on direct products of paths and cycles with cliques',
    )
    parser.add_argument('--format', choices=['text', 'json'], default='text', help='output format')
    parser.add_argument('--log-level', default=None, help='console log level (default: DOMLAB_LOG_LEVEL or WARNING)')
    parser.add_argument('--log-dir', default=None, help='directory for per-module log files')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help='write a product instance as an edge list')
    _add_instance_flags(gen, allow_file=False)
    gen.add_argument('--output', metavar='FILE', help='write to FILE instead of stdout')
    gen.set_defaults(handler=cmd_gen)

    solve = sub.add_parser('solve', help='exact minimum with certificate')
    _add_instance_flags(solve, allow_file=True)
    solve.add_argument('--param', choices=_PARAMS, required=True)
    _add_solver_flags(solve)
    solve.set_defaults(handler=cmd_solve)

    formula = sub.add_parser('formula', help='closed-form value')
    _add_instance_flags(formula, allow_file=False)
    formula.add_argument('--param', choices=_PARAMS, required=True)
    formula.set_defaults(handler=cmd_formula)

    construct = sub.add_parser('construct', help='explicit certificate set')
    construct.add_argument('--kind', choices=[kind.value for kind in ConstructionKind], required=True)
    construct.add_argument('--n', type=int, required=True)
    construct.add_argument('--m', type=int, required=True)
    construct.set_defaults(handler=cmd_construct)

    verify_cmd = sub.add_parser('verify', help='check a certificate file')
    _add_instance_flags(verify_cmd, allow_file=True)
    verify_cmd.add_argument('--param', choices=_PARAMS, required=True)
    verify_cmd.add_argument('--set', metavar='FILE', required=True, help='certificate file')
    verify_cmd.set_defaults(handler=cmd_verify)

    table = sub.add_parser('table', help='formula / solver / construction grid')
    table.add_argument('--param', choices=_PARAMS, required=True)
    table.add_argument('--family', choices=_FAMILIES, required=True)
    table.add_argument('--n-range', required=True, metavar='A..B')
    table.add_argument('--m-range', required=True, metavar='C..D')
    table.add_argument('--with-solver', action='store_true')
    table.add_argument('--with-construction', action='store_true')
    table.add_argument('--workers', type=int, default=1, help='rows evaluated concurrently')
    _add_solver_flags(table)
    table.set_defaults(handler=cmd_table)

    erratum = sub.add_parser('erratum', help='reproduce the published counterexamples')
    erratum.add_argument('--which', choices=['all'] + [claim.value for claim in ClaimId], default='all')
    erratum.add_argument('--gravier-m', type=int, default=5, help='clique order for the bound claim')
    erratum.add_argument('--no-reference', action='store_true', help='skip the brute-force confirmation')
    _add_solver_flags(erratum)
    erratum.set_defaults(handler=cmd_erratum)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        env = validate_environment_config()
    except ConfigValidationError as e:
        print(f"warning: ignoring invalid environment settings: {e}", file=sys.stderr)
        env = EnvironmentConfigModel()
    level = args.log_level or env.log_level or LoggingDefaults.LEVEL
    setup_logging(level, log_directory=args.log_dir or env.log_directory)

    log_run_start(args.command)
    status = ExitCodes.SUCCESS
    try:
        status = args.handler(args)
    except UsageError as e:
        status = _fail(ExitCodes.USAGE, f"usage error: {e}")
    except (EdgeListParseError, CertificateParseError, RangeParseError, UnicodeDecodeError, OSError) as e:
        status = _fail(ExitCodes.PARSE_ERROR, f"input error: {e}")
    except BudgetExceededError as e:
        status = _fail(ExitCodes.BUDGET_EXCEEDED, f"budget exceeded: {e}")
    except (FormulaDomainError, ConstructionGuardError, InvalidSizeError, ContractError,
            ConfigValidationError, GraphError) as e:
        status = _fail(ExitCodes.GUARD_ERROR, f"domain error: {e}")
    log_run_end(args.command, status)
    return status


def _fail(code: int, message: str) -> int:
    logger.error(message)
    print(message, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
