"""
Command-line front end for two-particle Calogero-Sutherland Wigner functions

    eval    one Wigner function value with diagnostics
    grid    a phase-space grid as CSV or JSON
    verify  numerical verification suites
    zeros   asymptotic zero ellipses

Exit codes: 0 success, 1 flag misuse or I/O failure, 2 numerical failure.
"""
import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv

from models.parameters import RawParams, SectorChoice
from models.phase_space import GridSpec, PhasePoint, WignerKind, WignerMethod, WignerSpec
from services.config_manager import TOOL_VERSION, ConfigManager
from services.csm_model import derive_params, omega_bar_from_pair_frequency
from services.grid_service import grid_diagnostics, grid_eval, grid_values
from services.output_writer import build_output_doc, write_output
from services.verification_service import SUITES, VerificationService
from services.wigner_service import WignerService
from services.zero_geometry import zero_ellipses
from utils.error_handler import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, InvalidSpecError, handle_wigner_error
from utils.logger import RunContext, setup_logging
from utils.validation import validate_grid_bounds, validate_k_max, validate_wigner_spec

logger = logging.getLogger(__name__)

KIND_CHOICES = {'cm': WignerKind.CM, 'rel': WignerKind.RELATIVE, 'total': WignerKind.TOTAL}
METHOD_CHOICES = {
    'operator': WignerMethod.OPERATOR,
    'series': WignerMethod.SERIES,
    'quadrature': WignerMethod.QUADRATURE,
    'closed-g0': WignerMethod.CLOSED_G0,
    'asymptotic': WignerMethod.ASYMPTOTIC,
}


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports misuse with exit code 1 instead of 2"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--kind', choices=sorted(KIND_CHOICES), default='rel')
    parser.add_argument('--l', type=int, default=0, help='center-of-mass quantum number')
    parser.add_argument('--n', type=int, default=0, help='relative quantum number')
    parser.add_argument('--alpha', type=float, default=None, help='sector parameter (default 0)')
    parser.add_argument('--g', type=float, default=None,
                        help='coupling in units hbar = m = omega_bullet = 1; derives alpha')
    parser.add_argument('--sector', choices=[s.value for s in SectorChoice], default='positive')
    frequency = parser.add_mutually_exclusive_group()
    frequency.add_argument('--omega-bar', type=float, default=None, help='omega / omega_bullet (default 1)')
    frequency.add_argument('--omega0-bar', type=float, default=None, help='omega_0 / omega_bullet')
    parser.add_argument('--method', choices=list(METHOD_CHOICES), default='operator')
    parser.add_argument('--Q', type=float, default=0.0, help='center-of-mass position')
    parser.add_argument('--P', type=float, default=0.0, help='center-of-mass momentum')


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='cswigner', description=__doc__.strip().splitlines()[0], allow_abbrev=False)
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    eval_parser = subparsers.add_parser('eval', help='evaluate one point', allow_abbrev=False)
    _add_state_flags(eval_parser)
    eval_parser.add_argument('--q', type=float, default=0.0, help='relative position')
    eval_parser.add_argument('--p', type=float, default=0.0, help='relative momentum')

    grid_parser = subparsers.add_parser('grid', help='evaluate a phase-space grid', allow_abbrev=False)
    _add_state_flags(grid_parser)
    grid_parser.add_argument('--preset', default=None, help='named figure preset')
    grid_parser.add_argument('--q-min', type=float, default=-4.0)
    grid_parser.add_argument('--q-max', type=float, default=4.0)
    grid_parser.add_argument('--p-min', type=float, default=-4.0)
    grid_parser.add_argument('--p-max', type=float, default=4.0)
    grid_parser.add_argument('--n-q', type=int, default=121)
    grid_parser.add_argument('--n-p', type=int, default=121)
    grid_parser.add_argument('--format', choices=['csv', 'json'], default=None,
                             help='output format (default from --out suffix, else csv)')
    grid_parser.add_argument('--out', required=True, help='output path')
    grid_parser.add_argument('--threads', type=int, default=None, help='overrides CSWIGNER_THREADS')

    verify_parser = subparsers.add_parser('verify', help='run verification suites', allow_abbrev=False)
    verify_parser.add_argument('--suite', choices=[*SUITES, 'all'], default='all')
    verify_parser.add_argument('--n-max', type=int, default=None)
    verify_parser.add_argument('--tol', type=float, default=None)

    zeros_parser = subparsers.add_parser('zeros', help='asymptotic zero ellipses', allow_abbrev=False)
    zeros_parser.add_argument('--n', type=int, default=0, help='oscillator order j')
    zeros_parser.add_argument('--omega-bar', type=float, default=1.0)
    zeros_parser.add_argument('--k-max', type=int, default=4)

    return parser


def _resolve_alpha(args) -> float:
    if args.g is None:
        return 0.0 if args.alpha is None else args.alpha
    if args.alpha is not None:
        raise InvalidSpecError("--alpha and --g are mutually exclusive")
    omega_0 = args.omega0_bar or 0.0
    params = derive_params(RawParams(m=1.0, omega_bullet=1.0, omega_0=omega_0, g=args.g),
                           SectorChoice(args.sector))
    return params.alpha


def _resolve_omega_bar(args) -> float:
    if args.omega0_bar is not None:
        return omega_bar_from_pair_frequency(args.omega0_bar)
    return 1.0 if args.omega_bar is None else args.omega_bar


def spec_from_args(args) -> WignerSpec:
    """WignerSpec from the state flags; pydantic rejects invalid combinations"""
    spec = WignerSpec(
        kind=KIND_CHOICES[args.kind],
        l=args.l,
        n=args.n,
        alpha=_resolve_alpha(args),
        omega_bar=_resolve_omega_bar(args),
        method=METHOD_CHOICES[args.method],
        Q_bar=args.Q,
        P_bar=args.P,
    )
    is_valid, message = validate_wigner_spec(spec)
    if not is_valid:
        raise InvalidSpecError(message)
    return spec


def cmd_eval(args, config: ConfigManager) -> int:
    spec = spec_from_args(args)
    point = PhasePoint(q=args.Q, p=args.P) if spec.kind == WignerKind.CM else PhasePoint(q=args.q, p=args.p)
    result = WignerService.from_config(config).evaluate(spec, point)

    print(repr(result.value))
    print(json.dumps({
        'kind': spec.kind.value,
        'method': result.method,
        'imag_residue': result.imag_residue,
        'quad_error': result.quad_error,
        'convention_dependent': result.convention_dependent,
    }))
    return EXIT_OK


def cmd_grid(args, config: ConfigManager) -> int:
    if args.preset:
        preset = config.get_preset(args.preset)
        spec, grid = preset.spec, preset.grid
    else:
        is_valid, message = validate_grid_bounds(args.q_min, args.q_max, args.p_min, args.p_max,
                                                 args.n_q, args.n_p)
        if not is_valid:
            raise InvalidSpecError(message)
        spec = spec_from_args(args)
        grid = GridSpec(q_min=args.q_min, q_max=args.q_max, p_min=args.p_min, p_max=args.p_max,
                        n_q=args.n_q, n_p=args.n_p)

    fmt = args.format or ('json' if args.out.endswith('.json') else 'csv')
    threads = args.threads or config.get('threads')
    results = grid_eval(spec, grid, WignerService.from_config(config), threads)

    doc = build_output_doc(
        params=spec.model_dump(mode='json'),
        grid=grid,
        method=spec.method.value,
        values=grid_values(results),
        diagnostics=grid_diagnostics(results),
        version=TOOL_VERSION,
        preset=args.preset,
    )
    write_output(args.out, doc, fmt)
    print(f"wrote {grid.n_p}x{grid.n_q} grid to {args.out} ({fmt})")
    return EXIT_OK


def cmd_verify(args, config: ConfigManager) -> int:
    service = VerificationService(WignerService.from_config(config), config)
    reports = service.run(args.suite, n_max=args.n_max, tol=args.tol)

    for report in reports:
        for check in report.checks:
            status = 'PASS' if check.passed else 'FAIL'
            print(f"{status} {report.suite}/{check.name} max_deviation={check.max_deviation:.3e} "
                  f"tolerance={check.tolerance:.1e}")
    print(json.dumps({'version': TOOL_VERSION, 'suites': [r.summary() for r in reports]}))

    return EXIT_OK if all(report.passed for report in reports) else EXIT_NUMERIC


def cmd_zeros(args, config: ConfigManager) -> int:
    is_valid, message = validate_k_max(args.k_max)
    if not is_valid:
        raise InvalidSpecError(message)

    print("k,r_k,semi_axis_q,semi_axis_p,symplectic_area,gromov_ok")
    for ellipse in zero_ellipses(args.n, args.omega_bar, args.k_max):
        semi_q, semi_p = ellipse.semi_axes
        print(f"{ellipse.k},{ellipse.radial_value:.6f},{semi_q:.6f},{semi_p:.6f},"
              f"{ellipse.symplectic_area:.6f},{str(ellipse.gromov_ok).lower()}")
    return EXIT_OK


COMMANDS = {'eval': cmd_eval, 'grid': cmd_grid, 'verify': cmd_verify, 'zeros': cmd_zeros}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    config = ConfigManager()
    setup_logging(log_level=config.get('log_level'), json_format=config.get('log_json'),
                  log_file_path=config.get('log_file_path'))

    with RunContext():
        logger.info(f"Running command '{args.command}'", extra={'operation': args.command})
        try:
            return COMMANDS[args.command](args, config)
        except Exception as e:
            exit_code, message = handle_wigner_error(e, args.command)
            print(f"error: {message}", file=sys.stderr)
            return exit_code


if __name__ == '__main__':
    sys.exit(main())
