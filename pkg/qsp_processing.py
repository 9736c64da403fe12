#!/usr/bin/env python3
"""
qsp_processing.py
-----------------
Command-line front end for the Laurent-polynomial QSP processing toolkit.

Subcommands:
  generate       - build a target polynomial pair and write it as JSON
  complete       - complete (A, B) to a unitary quadruple (A, B, C, D)
  decompose      - peel a quadruple into a QSP projector sequence
  verify         - measure eps_qsp of a sequence against its target
  pipeline       - complete, decompose and verify in one run
  bench          - sweep the random or hs family and tabulate the results
  accessibility  - log10 coefficient magnitudes over a parameter grid

Usage:
    python qsp_processing.py generate --family hs --tau 20 --eps 1e-14 --out hs20.json
    python qsp_processing.py pipeline --target hs20.json --quadruple-out q.json \\
        --sequence-out seq.json --report-out report.json
"""

import argparse
import logging
import math
import os
import sys
import traceback

import pandas as pd

from config import RunConfig
from pipeline import (
    BENCH_FAMILIES, SUMMARY_COLUMNS, PipelineResult,
    run_bench, run_completion, run_decomposition, run_verification,
)
from processing.decompose import BASES, export_gates
from processing.errors import CoefficientOverflow, QspProcessingError, StageFailure
from processing.serialization import (
    gates_to_dict, quadruple_from_dict, quadruple_to_dict, read_json, sequence_from_dict,
    sequence_to_dict, target_from_dict, target_to_dict, write_csv, write_json,
)
from processing.verify import GRIDS, epsilon_qsp
from targets import get_builder, supported_families
from targets.accessibility import (
    DEFAULT_RECT_LOG10_INV_EPS, DEFAULT_RECT_WIDTHS, DEFAULT_THRESHOLD_GAPS,
    DEFAULT_THRESHOLD_LOG10_INV_EPS, FAMILIES as ACCESSIBILITY_FAMILIES,
    accessibility_map, cells_to_frame,
)


TARGET_FLAGS = ('tau', 'eps', 'n', 'k', 'a', 'kappa', 't', 'delta', 'convention')
RULE = "-" * 50


def comma_list(cast):
    """argparse type for a nonempty comma-separated list."""
    def parse(text):
        items = [item.strip() for item in text.split(',') if item.strip()]
        if not items:
            raise argparse.ArgumentTypeError("expected a nonempty comma-separated list")
        try:
            return [cast(item) for item in items]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list entry in {text!r}")
    return parse


def _load(path):
    if not os.path.exists(path):
        raise FileNotFoundError(f"File not found: {path}")
    return read_json(path)


def _configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity and verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)


# =============================================================================
# Subcommands
# =============================================================================

def cmd_generate(args, config):
    builder = get_builder(args.family)
    params = {name: getattr(args, name) for name in TARGET_FLAGS if getattr(args, name, None) is not None}
    if 'seed' in builder.parameters:
        params['seed'] = config.seed

    print(f"Family: {builder.display_name}")
    print(f"Output: {args.out}")
    print(RULE)

    print("Step 1/2: Building target...")
    try:
        pair = builder.build(**params)
    except CoefficientOverflow as e:
        report = {
            'kind': 'overflow_report',
            'family': args.family,
            'params': params,
            'max_log10_coeff': e.max_log10_coeff,
            'message': str(e),
        }
        write_json(args.out, report, config)
        print(f"  ⚠ Coefficients not representable in binary64: {e}")
        print(f"  ⚠ Overflow report saved to: {args.out}")
        return 1
    print(f"  ✓ Degree {pair.degree}, subnormalization {pair.meta.subnormalization:.6g}")
    if pair.meta.nonzeros is not None:
        print(f"  ✓ {pair.meta.nonzeros} nonzero Chebyshev coefficients")

    print("Step 2/2: Writing target...")
    write_json(args.out, target_to_dict(pair), config)
    print(RULE)
    print(f"✅ Success! Target saved to: {args.out}")
    return 0


def _print_completion(completed):
    report = completed.report
    if report.degenerate:
        print("  ⚠ Deficiency vanishes; completed with C = D = 0")
    else:
        print(f"  ✓ Wilson converged in {report.wilson.iterations} iterations "
              f"(residual {report.wilson.residual_linf:.3e})")
    print(f"  ✓ Unitarity residual {report.unitarity_residual:.3e}, completion {report.elapsed_seconds:.3f}s")


def cmd_complete(args, config):
    pair = target_from_dict(_load(args.target))
    print(f"Processing: {args.target} ({pair.meta.family}, degree {pair.degree})")
    print(RULE)

    print("Step 1/1: Completing (A, B)...")
    completed = run_completion(pair, config)
    _print_completion(completed)
    write_json(args.out, quadruple_to_dict(completed), config)
    print(RULE)
    print(f"✅ Success! Quadruple saved to: {args.out}")
    return 0


def cmd_decompose(args, config):
    completed = quadruple_from_dict(_load(args.quadruple))
    print(f"Processing: {args.quadruple} (degree {completed.degree}, basis {config.basis})")
    print(RULE)

    print("Step 1/1: Decomposing...")
    sequence = run_decomposition(completed, config)
    print(f"  ✓ {len(sequence)} projectors, truncation error {sequence.truncation_error:.3e}")
    write_json(args.out, sequence_to_dict(sequence), config)
    if args.gates_out:
        gates = export_gates(sequence)
        write_json(args.gates_out, gates_to_dict(gates), config)
        print(f"  ✓ {len(gates)} gates saved to: {args.gates_out}")
    print(RULE)
    print(f"✅ Success! Sequence saved to: {args.out}")
    return 0


def cmd_verify(args, config):
    sequence = sequence_from_dict(_load(args.sequence))
    pair = target_from_dict(_load(args.target))
    print(f"Processing: {args.sequence} against {args.target}")
    print(RULE)

    print("Step 1/1: Measuring eps_qsp...")
    report = epsilon_qsp(sequence, pair, grid_points=config.grid_points, basis=args.basis,
                         grid=args.grid, csv_path=args.csv, run_config=config)
    print(f"  ✓ eps_qsp {report.eps_qsp:.3e} over {report.grid_points} points ({report.grid} grid)")
    write_json(args.out, report.to_dict(), config)
    print(RULE)
    if args.max_eps is not None and not report.eps_qsp <= args.max_eps:
        print(f"  ⚠ eps_qsp exceeds the requested bound {args.max_eps:.3e}")
        return 1
    print(f"✅ Success! Report saved to: {args.out}")
    return 0


def _write_summary(path, row, config, failed_stage=None):
    frame = pd.DataFrame([row], columns=SUMMARY_COLUMNS)
    notes = {'failed_stage': failed_stage} if failed_stage else None
    write_csv(frame, path, run_config=config, notes=notes)


def cmd_pipeline(args, config):
    pair = target_from_dict(_load(args.target))
    print(f"Processing: {args.target} ({pair.meta.family}, degree {pair.degree})")
    print(RULE)

    failed = {'family': pair.meta.family, 'n': pair.degree, 'iterations': math.nan,
              'residual': math.nan, 'eps_qsp': math.nan, 'seconds': math.nan}
    try:
        print("Step 1/3: Completing (A, B)...")
        completed = run_completion(pair, config)
        _print_completion(completed)
        write_json(args.quadruple_out, quadruple_to_dict(completed), config)

        print("Step 2/3: Decomposing...")
        sequence = run_decomposition(completed, config)
        print(f"  ✓ {len(sequence)} projectors, truncation error {sequence.truncation_error:.3e}")
        write_json(args.sequence_out, sequence_to_dict(sequence), config)

        print("Step 3/3: Verifying...")
        verification = run_verification(sequence, pair, config, csv_path=args.csv)
        print(f"  ✓ eps_qsp {verification.eps_qsp:.3e} over {verification.grid_points} points")
        write_json(args.report_out, verification.to_dict(), config)
    except StageFailure as e:
        if args.summary_out:
            _write_summary(args.summary_out, failed, config, failed_stage=e.stage)
        raise

    row = PipelineResult(pair, completed, sequence, verification).summary()
    if args.summary_out:
        _write_summary(args.summary_out, row, config)
    print(RULE)
    print(','.join(SUMMARY_COLUMNS))
    print(','.join(str(row[name]) for name in SUMMARY_COLUMNS))
    print(f"✅ Success! Artifacts saved to: {args.quadruple_out}, {args.sequence_out}, {args.report_out}")
    return 0


def cmd_bench(args, config):
    params = args.degrees if args.family == 'random' else args.taus
    print(f"Bench: {args.family}, {len(params)} instances, {config.threads} threads")
    print(f"Output: {args.out}")
    print(RULE)

    print("Step 1/2: Running instances...")
    frame = run_bench(args.family, params, config, eps=args.eps)
    failures = int(frame['eps_qsp'].isna().sum())
    if failures:
        print(f"  ⚠ {failures} of {len(frame)} instances failed")
    print(f"  ✓ {len(frame) - failures} instances completed")

    print("Step 2/2: Writing table...")
    write_csv(frame, args.out, run_config=config)
    print(RULE)
    if failures:
        return 1
    print(f"✅ Success! Bench table saved to: {args.out}")
    return 0


def cmd_accessibility(args, config):
    if args.family == 'threshold':
        params = args.params or list(DEFAULT_THRESHOLD_GAPS)
        levels = args.levels or list(DEFAULT_THRESHOLD_LOG10_INV_EPS)
    elif args.family == 'rect':
        params = args.params or list(DEFAULT_RECT_WIDTHS)
        levels = args.levels or list(DEFAULT_RECT_LOG10_INV_EPS)
    else:
        params = args.params
        levels = args.levels or list(DEFAULT_THRESHOLD_LOG10_INV_EPS)
    print(f"Accessibility: {args.family}, {len(params)} x {len(levels)} cells")
    print(f"Output: {args.out}")
    print(RULE)

    print("Step 1/2: Computing log-space magnitudes...")
    cells = accessibility_map(args.family, params, levels, threads=config.threads)
    overflow = sum(cell.overflow for cell in cells)
    print(f"  ✓ {len(cells)} cells, {overflow} beyond binary64")

    print("Step 2/2: Writing map...")
    write_csv(cells_to_frame(cells), args.out, run_config=config)
    print(RULE)
    print(f"✅ Success! Accessibility map saved to: {args.out}")
    return 0


# =============================================================================
# Parser
# =============================================================================

def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log INFO (-v) or DEBUG (-vv) messages to stderr')
    common.add_argument('--eps-fejer', dest='eps_fejer', type=float, default=None,
                        help='Wilson residual tolerance (default 1e-14)')
    common.add_argument('--max-iter', dest='max_iter', type=int, default=None,
                        help='Wilson iteration limit (default 200)')
    common.add_argument('--grid-points', dest='grid_points', type=int, default=None,
                        help='Verification grid size (default 8(2n+1))')
    common.add_argument('--basis', choices=BASES, default=None,
                        help='Measurement basis for assembly and verification (default plus)')
    common.add_argument('--threads', type=int, default=None,
                        help='Worker threads for sweeps (QSP_THREADS overrides)')
    common.add_argument('--seed', type=int, default=None,
                        help='Seed for the random family (default 0)')
    return common


def create_parser():
    """Create argument parser."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        description='Laurent-polynomial QSP processing: completion, decomposition and benchmarks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  %(prog)s generate --family hs --tau 20 --eps 1e-14 --out hs20.json
  %(prog)s generate --family random --n 400 --seed 7 --out r400.json
  %(prog)s pipeline --target hs20.json --quadruple-out q.json --sequence-out s.json --report-out r.json
  %(prog)s bench --family random --degrees 100,200,400 --seed 7 --out bench.csv
  %(prog)s accessibility --family threshold --out threshold.csv

Target families:
  hs, random, threshold, erf, sign, rect, inverse, matrix_inversion
'''
    )
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('generate', parents=[common], help='Build a target polynomial pair')
    gen.add_argument('--family', choices=supported_families(), required=True, help='Target family')
    gen.add_argument('--out', required=True, help='Output target JSON path')
    gen.add_argument('--tau', type=float, help='Evolution time (hs)')
    gen.add_argument('--eps', type=float, help='Approximation error')
    gen.add_argument('--n', type=int, help='Degree (random)')
    gen.add_argument('--k', type=float, help='Steepness (erf)')
    gen.add_argument('--a', type=float, help='Step location (sign)')
    gen.add_argument('--kappa', type=float, help='Transition width (sign) or condition number (inverse)')
    gen.add_argument('--t', type=float, help='Half-width (rect)')
    gen.add_argument('--delta', type=float, help='Transition width (rect) or spectral gap (threshold)')
    gen.add_argument('--convention', choices=('cos', 'sin'), help='Phase convention (hs)')
    gen.set_defaults(handler=cmd_generate)

    comp = sub.add_parser('complete', parents=[common], help='Complete a target to a quadruple')
    comp.add_argument('--target', required=True, help='Input target JSON')
    comp.add_argument('--out', required=True, help='Output quadruple JSON')
    comp.set_defaults(handler=cmd_complete)

    dec = sub.add_parser('decompose', parents=[common], help='Decompose a quadruple into projectors')
    dec.add_argument('--quadruple', required=True, help='Input quadruple JSON')
    dec.add_argument('--out', required=True, help='Output sequence JSON')
    dec.add_argument('--gates-out', dest='gates_out', default=None, help='Optional gate train JSON')
    dec.set_defaults(handler=cmd_decompose)

    ver = sub.add_parser('verify', parents=[common], help='Measure eps_qsp of a sequence')
    ver.add_argument('--sequence', required=True, help='Input sequence JSON')
    ver.add_argument('--target', required=True, help='Input target JSON')
    ver.add_argument('--out', required=True, help='Output verification report JSON')
    ver.add_argument('--csv', default=None, help='Optional per-point CSV')
    ver.add_argument('--grid', choices=GRIDS, default='theta', help='Sampling grid')
    ver.add_argument('--max-eps', dest='max_eps', type=float, default=None,
                     help='Exit 1 when eps_qsp exceeds this bound')
    ver.set_defaults(handler=cmd_verify)

    pipe = sub.add_parser('pipeline', parents=[common], help='Complete, decompose and verify')
    pipe.add_argument('--target', required=True, help='Input target JSON')
    pipe.add_argument('--quadruple-out', dest='quadruple_out', required=True, help='Output quadruple JSON')
    pipe.add_argument('--sequence-out', dest='sequence_out', required=True, help='Output sequence JSON')
    pipe.add_argument('--report-out', dest='report_out', required=True, help='Output verification JSON')
    pipe.add_argument('--summary-out', dest='summary_out', default=None, help='Optional summary CSV')
    pipe.add_argument('--csv', default=None, help='Optional per-point CSV')
    pipe.set_defaults(handler=cmd_pipeline)

    bench = sub.add_parser('bench', parents=[common], help='Sweep a family and tabulate results')
    bench.add_argument('--family', choices=BENCH_FAMILIES, required=True, help='Sweep family')
    bench.add_argument('--degrees', type=comma_list(int), default=None, help='Degrees (random)')
    bench.add_argument('--taus', type=comma_list(float), default=None, help='Evolution times (hs)')
    bench.add_argument('--eps', type=float, default=1e-14, help='Approximation error (hs)')
    bench.add_argument('--out', required=True, help='Output CSV')
    bench.set_defaults(handler=cmd_bench)

    acc = sub.add_parser('accessibility', parents=[common], help='Coefficient magnitude map')
    acc.add_argument('--family', choices=ACCESSIBILITY_FAMILIES, required=True, help='Target family')
    acc.add_argument('--params', type=comma_list(float), default=None,
                     help='Widths (rect), gaps (threshold) or kappas (sign, matrix_inversion)')
    acc.add_argument('--levels', type=comma_list(int), default=None, help='log10(1/eps) values')
    acc.add_argument('--out', required=True, help='Output CSV')
    acc.set_defaults(handler=cmd_accessibility)

    return parser


def _check_usage(parser, args):
    if args.command == 'bench':
        wanted = 'degrees' if args.family == 'random' else 'taus'
        if getattr(args, wanted) is None:
            parser.error(f"bench --family {args.family} needs --{wanted}")
    if args.command == 'accessibility' and args.family not in ('rect', 'threshold') and not args.params:
        parser.error(f"accessibility --family {args.family} needs --params")


def main(argv=None):
    """Command line entry point; returns the exit code."""
    parser = create_parser()
    args = parser.parse_args(argv)
    _check_usage(parser, args)
    _configure_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)
        return args.handler(args, config)
    except QspProcessingError as e:
        print(f"Error ({e.stage}): {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        traceback.print_exc()
        return 1


if __name__ == '__main__':
    sys.exit(main())
