# Semichu - Command Line Interface
#
# Subcommands over semilattice documents and fixtures. Every invocation
# writes one schema-versioned JSON envelope to standard output; logs and
# human summaries go to standard error.
#
# Exit codes: 0 success, 1 failed check or internal inconsistency,
# 2 malformed input or unmet precondition, 3 cap exceeded.

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .chu_effects import ChuSpace, check_chu_axioms, max_effects, natural_effects, reduced_effects
from .config import LOG_CONFIG, override_caps
from .documents import (ResultEnvelope, canonical_json, format_pair, format_pairset, parse_pair,
                        parse_pairset, parse_state_list)
from .exceptions import (CapExceededError, InternalConsistencyError, PreconditionError,
                         SchemaError, SemichuError)
from .export import export, fraser_carrier, minimal_carrier
from .fixtures import resolve_operand
from .fraser_canonical import enumerate_fraser, fraser_member
from .lattice_core import (SemiLattice, has_pure_description, is_distributive, is_simplex,
                           non_simplex_witness, validate_star)
from .tensor_products import minimal_leq_criterion, sigma_witness, tensor_space
from .verify import SUITE_NAMES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

Outcome = Tuple[Dict[str, Any], int]


def _space(lattice: SemiLattice, reduced: bool) -> ChuSpace:
    return reduced_effects(lattice) if reduced else natural_effects(lattice)


# ============================================
# Subcommand handlers
# ============================================

def cmd_validate(args: argparse.Namespace) -> Outcome:
    lattice = resolve_operand(args.file)
    return {
        'name': lattice.name,
        'elements': len(lattice),
        'covers': len(lattice.hasse_edges()),
        'bottom': lattice.bottom,
        'has_star': lattice.has_star,
    }, EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> Outcome:
    lattice = resolve_operand(args.file)
    pure = has_pure_description(lattice)
    distributive = is_distributive(lattice)
    result: Dict[str, Any] = {
        'name': lattice.name,
        'pure_states': lattice.meet_irreducibles(),
        'maximal': lattice.maximal_elements(),
        'pure_description': pure,
        'distributive': distributive.holds,
        'distributive_witness': list(distributive.witness) if distributive.witness else None,
    }
    if pure:
        simplex = is_simplex(lattice)
        result['simplex'] = simplex.holds
        result['simplex_witness'] = list(simplex.witness) if simplex.witness else None
        witness = non_simplex_witness(lattice)
        result['non_simplex_witness'] = list(witness) if witness else None
    if lattice.has_star:
        result['star'] = validate_star(lattice).model_dump()
    return result, EXIT_OK


def cmd_effects(args: argparse.Namespace) -> Outcome:
    lattice = resolve_operand(args.file)
    chu = _space(lattice, args.reduced)
    report = check_chu_axioms(chu)
    result: Dict[str, Any] = {
        'space': chu.name,
        'count': chu.size,
        'effects': chu.labels,
        'chu_axioms': report.model_dump(),
    }
    if has_pure_description(lattice):
        result['max_effects'] = [e.label for e in max_effects(chu)]
    return result, EXIT_OK if report.passed else EXIT_FAILED


def cmd_tensor(args: argparse.Namespace) -> Outcome:
    lattice_a, lattice_b = resolve_operand(args.a), resolve_operand(args.b)
    result: Dict[str, Any] = {'kind': args.kind, 'a': lattice_a.name, 'b': lattice_b.name}
    if args.kind == 'fraser':
        bifilters = enumerate_fraser(lattice_a, lattice_b)
        result['count'] = len(bifilters)
        if args.list:
            def key(pair):
                return lattice_a.index(pair[0]), lattice_b.index(pair[1])

            result['elements'] = [format_pairset(sorted(f.pairs, key=key)) for f in bifilters]
        return result, EXIT_OK

    space = tensor_space(_space(lattice_a, args.reduced), _space(lattice_b, args.reduced))
    if args.kind == 'minimal':
        closed = space.enumerate_minimal()
        result['count'] = len(closed)
        if args.list:
            result['elements'] = [format_pairset(space.sorted_pairs(c)) for c in closed]
        return result, EXIT_OK

    tables = space.enumerate_regular() if args.kind == 'regular' else space.enumerate_maximal()
    result['count'] = len(tables)
    if args.list:
        result['elements'] = [t.describe() for t in tables]
    return result, EXIT_OK


def cmd_order(args: argparse.Namespace) -> Outcome:
    lattice_a, lattice_b = resolve_operand(args.a), resolve_operand(args.b)
    left = parse_pairset(args.left)
    right = parse_pair(args.right)
    if args.kind == 'fraser':
        holds = fraser_member(lattice_a, lattice_b, left, right)
    else:
        holds = minimal_leq_criterion(lattice_a, lattice_b, left, right)
    return {'kind': args.kind, 'left': format_pairset(left), 'right': format_pair(right),
            'holds': holds}, EXIT_OK


def cmd_witness(args: argparse.Namespace) -> Outcome:
    lattice_a, lattice_b = resolve_operand(args.a), resolve_operand(args.b)
    states = parse_state_list(args.states)
    if len(states) != 4:
        raise SchemaError("--states expects σ1,σ2,τ1,τ2")
    space = tensor_space(reduced_effects(lattice_a), reduced_effects(lattice_b))
    table = sigma_witness(space, *states)
    return {
        'witness': args.name,
        'states': states,
        'membership': space.classify_table(table),
        'cells': table.describe(),
    }, EXIT_OK


def cmd_verify(args: argparse.Namespace) -> Outcome:
    inputs = [resolve_operand(x) for x in args.inputs]
    report = run_suite(args.suite, inputs or None)
    summary = report.summary()
    if not summary.empty:
        print(summary.to_string(index=False), file=sys.stderr)
    failures = report.failures()
    if failures:
        frame = pd.DataFrame([f.model_dump() for f in failures])
        print(frame[['check_id', 'witness']].to_string(index=False), file=sys.stderr)
    return report.model_dump_result(), EXIT_OK if report.passed else EXIT_FAILED


def cmd_export(args: argparse.Namespace) -> Outcome:
    lattice = resolve_operand(args.file)
    if args.view == 'lattice':
        obj = lattice
    elif args.view == 'effects':
        obj = natural_effects(lattice)
    elif args.view == 'reduced-effects':
        obj = reduced_effects(lattice)
    else:
        other = resolve_operand(args.file2) if args.file2 else lattice
        if args.view == 'minimal':
            obj = minimal_carrier(tensor_space(natural_effects(lattice), natural_effects(other)))
        else:
            obj = fraser_carrier(lattice, other)
    content = export(obj, args.format)
    result: Dict[str, Any] = {'format': args.format, 'view': args.view}
    if args.output:
        Path(args.output).write_text(content, encoding='utf-8')
        result['path'] = str(args.output)
    else:
        result['content'] = content
    return result, EXIT_OK


# ============================================
# Parser
# ============================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='semichu',
        description='Finite semilattices as States/Effects Chu spaces and their tensor products.')
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging on standard error')
    parser.add_argument('--max-size', type=int, default=None,
                        help='Override every enumeration cap for this invocation')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', help='Validate a semilattice document')
    p.add_argument('file', help='JSON document or fixture name')
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser('analyze', help='Pure/simplex/distributive/star report')
    p.add_argument('file')
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser('effects', help='Effect space and Chu-axiom report')
    p.add_argument('file')
    p.add_argument('--reduced', action='store_true', help='Reduced effects (requires a star)')
    p.set_defaults(handler=cmd_effects)

    p = sub.add_parser('tensor', help='Enumerate a tensor product')
    p.add_argument('--kind', choices=['minimal', 'maximal', 'regular', 'fraser'], required=True)
    p.add_argument('a')
    p.add_argument('b')
    p.add_argument('--list', action='store_true', help='List every element besides the count')
    p.add_argument('--reduced', action='store_true')
    p.set_defaults(handler=cmd_tensor)

    p = sub.add_parser('order', help='Decide Ω(left) ⊑ ι(right)')
    p.add_argument('--kind', choices=['minimal', 'fraser'], required=True)
    p.add_argument('a')
    p.add_argument('b')
    p.add_argument('--left', required=True, help='Pair-set literal, e.g. "[(s1,s1),(s2,s2)]"')
    p.add_argument('--right', required=True, help='Pair literal, e.g. "(bot,bot)"')
    p.set_defaults(handler=cmd_order)

    p = sub.add_parser('witness', help='Build a separating witness table')
    p.add_argument('name', choices=['sigma'])
    p.add_argument('a')
    p.add_argument('b')
    p.add_argument('--states', required=True, help='σ1,σ2,τ1,τ2')
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser('verify', help='Run a verification suite')
    p.add_argument('--suite', choices=SUITE_NAMES + ['all'], required=True)
    p.add_argument('inputs', nargs='*', help='Documents or fixture names (suite defaults when empty)')
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser('export', help='Export as DOT or structured JSON')
    p.add_argument('--format', choices=['dot', 'structured'], required=True)
    p.add_argument('--view', choices=['lattice', 'effects', 'reduced-effects', 'minimal', 'fraser'],
                   default='lattice')
    p.add_argument('file')
    p.add_argument('file2', nargs='?', default=None, help='Second factor for tensor carriers')
    p.add_argument('--output', default=None, help='Write the export to a file instead of the envelope')
    p.set_defaults(handler=cmd_export)
    return parser


def _error_payload(error: SemichuError) -> Dict[str, Any]:
    payload: Dict[str, Any] = {'error': str(error), 'kind': error.kind}
    if isinstance(error, CapExceededError):
        payload.update(cap=error.cap_name, limit=error.limit, actual=error.actual)
    return payload


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI

    Args:
        argv: Argument list (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else LOG_CONFIG['level'],
        format=LOG_CONFIG['format'],
        handlers=[logging.StreamHandler(sys.stderr)]
    )

    override_caps(args.max_size)
    try:
        result, code = args.handler(args)
        status = 'success' if code == EXIT_OK else 'failed'
    except CapExceededError as e:
        logger.error(f"Cap exceeded: {e}")
        result, code, status = _error_payload(e), EXIT_CAP, 'error'
    except (SchemaError, PreconditionError) as e:
        logger.error(f"Invalid input: {e}")
        result, code, status = _error_payload(e), EXIT_INPUT, 'error'
    except InternalConsistencyError as e:
        logger.error(f"Internal consistency check failed: {e}")
        result, code, status = _error_payload(e), EXIT_FAILED, 'error'
    finally:
        override_caps(None)

    envelope = ResultEnvelope(command=args.command, status=status, result=result)
    sys.stdout.write(canonical_json(envelope))
    return code


if __name__ == '__main__':
    sys.exit(main())
