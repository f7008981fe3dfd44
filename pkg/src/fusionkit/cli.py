"""Command line front end: ``python -m fusionkit <command> ...``.

Output is JSON by default (keys sorted, complex numbers as ``[re, im]``,
rationals as ``"p/q"`` strings). Exit codes: 0 ok, 1 argument error,
2 permissibility error, 3 numerical error or failed verification.
The environment variable ``FUSIONKIT_RTOL`` overrides the ODE tolerance.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braiding import BraidContext, abelian_coefficients, braid_matrix, braid_numeric, kz_parameters
from .errors import ArgumentError, FusionKitError, NumericalError, PermissibilityError
from .fusionring import fuse, fuse_numeric, fusion_table
from .repcore import LevelContext, sig_from_str
from .symchar import dimension, eval_character, tensor_decompose
from .transport import (TransportProblem, random_problem, spectral, transport_formula,
                        transport_numeric, validate)
from . import verify as _verify

__all__ = ['CommandResult', 'run', 'main', 'EXIT_CODES']

EXIT_CODES = {'ok': 0, 'argument_error': 1, 'permissibility_error': 2, 'numerical_error': 3}


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def _rtol(default=1e-10) -> float:
    text = os.environ.get('FUSIONKIT_RTOL')
    if not text:
        return default
    try:
        return float(text)
    except ValueError as exc:
        raise ArgumentError(f'FUSIONKIT_RTOL={text!r} is not a number') from exc


def _cplx(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _cmat(M):
    return [[_cplx(x) for x in row] for row in np.asarray(M)]


def _rat(x):
    x = Fraction(x)
    return f'{x.numerator}/{x.denominator}'


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Fraction):
        return _rat(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _cplx(obj)
    return obj


def _ctx(args):
    if args.n is None or args.level is None:
        raise ArgumentError('--n and --level are required')
    return LevelContext(args.n, args.level)


def _sig(text, name):
    if text is None:
        raise ArgumentError(f'--{name} is required')
    return sig_from_str(text)


def _cmd_fuse(args):
    ctx = _ctx(args)
    f, g = _sig(args.f, 'f'), _sig(args.g, 'g')
    if args.method == 'folding':
        elem, resid = fuse(f, g, ctx), 0.0
    else:
        elem, resid = fuse_numeric(f, g, ctx, full_output=True)
    return {'result': elem.to_json(), 'method': args.method, 'residual': resid}


def _cmd_tensor(args):
    f, g = _sig(args.f, 'f'), _sig(args.g, 'g')
    N = args.n or len(f)
    dec = tensor_decompose(f, g, N)
    return {'result': dec.to_json(), 'dimension': dec.total_dimension(N),
            'dimension_product': dimension(f, N) * dimension(g, N)}


def _cmd_table(args):
    table = fusion_table(_ctx(args), method=args.method)
    if args.out:
        with open(args.out, 'w') as fh:
            fh.write(table.dumps() + '\n')
    return table.to_json()


def _parse_point(text):
    pts = []
    for part in text.split(':'):
        nums = [float(x) for x in part.split(',')]
        if len(nums) == 1:
            nums.append(0.0)
        if len(nums) != 2:
            raise ArgumentError(f'cannot parse complex number {part!r}; use re,im')
        pts.append(complex(*nums))
    return pts


def _cmd_character(args):
    f = _sig(args.f, 'f')
    if args.at is None:
        raise ArgumentError('--at is required')
    try:
        z = _parse_point(args.at)
    except ValueError as exc:
        raise ArgumentError(f'cannot parse --at {args.at!r}') from exc
    return {'value': _cplx(eval_character(f, z, args.n or len(f)))}


def _cmd_transport(args):
    if args.random:
        if args.dim is None:
            raise ArgumentError('--random needs --dim')
        prob = random_problem(args.dim, np.random.default_rng(args.seed))
    elif args.problem:
        try:
            with open(args.problem) as fh:
                prob = TransportProblem.from_json(json.load(fh))
        except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ArgumentError(f'cannot read problem file {args.problem!r}: {exc}') from exc
    else:
        raise ArgumentError('give --problem FILE or --random --dim D')
    diag = validate(prob)
    if not diag.ok:
        raise NumericalError('problem not in general position: ' + '; '.join(diag.violations))
    spec = spectral(prob)
    out = {
        'problem': prob.to_json(),
        'lambdas': [_cplx(x) for x in spec.lambdas],
        'mus': [_cplx(x) for x in spec.mus],
        'c_formula': _cmat(transport_formula(prob, spec)),
    }
    if args.verify:
        cn, info = transport_numeric(prob, spec=spec, rtol=_rtol(), full_output=True)
        out['c_numeric'] = _cmat(cn)
        out['max_residual'] = info['max_residual']
    return out


def _cmd_braid(args):
    ctx = _ctx(args)
    case = args.case.upper()
    if case == 'A':
        bc = BraidContext.case_a(ctx, _sig(args.g, 'g'))
    elif case == 'B':
        bc = BraidContext.case_b(ctx, _sig(args.f, 'f'), _sig(args.h, 'h'))
    elif case == 'C':
        bc = BraidContext.case_c(ctx, _sig(args.f, 'f'), _sig(args.g, 'g'), _sig(args.g1, 'g1'))
    elif case == 'D':
        bc = BraidContext.case_d(ctx, _sig(args.f, 'f'), _sig(args.h, 'h'))
    else:
        raise ArgumentError(f'unknown case {args.case!r}')
    p = kz_parameters(bc)
    bm = braid_matrix(bc)
    out = bm.to_json()
    out.update({'lambdas': [_rat(x) for x in p.lambdas], 'mus': [_rat(x) for x in p.mus],
                'alpha': _rat(p.alpha), 'beta': _rat(p.beta)})
    if bc.case in ('C', 'D'):
        out['abelian'] = _cplx(abelian_coefficients(bc))
    if args.verify:
        out['matrix_numeric'] = _cmat(braid_numeric(bc, rtol=_rtol()))
    return out


def _cmd_verify(args):
    single = args.n is not None and args.level is not None
    out = {}
    if args.suite in ('fusion', 'all'):
        grid = [(args.n, args.level)] if single else _verify.FUSION_GRID
        results = [_verify.fusion_suite(N, l) for N, l in grid]
        if single:
            out['fusion'] = results[0]
        else:
            out['fusion'] = {'pass': all(r['pass'] for r in results),
                             'pairs_checked': sum(r['pairs_checked'] for r in results)}
    if args.suite in ('transport', 'all'):
        out['transport'] = _verify.transport_suite(args.problems, seed=args.seed, rtol=_rtol())
    if args.suite in ('braiding', 'all'):
        grid = [(args.n, args.level)] if single else None
        numeric = grid if single else ((2, 2), (3, 2))
        out['braiding'] = _verify.braiding_suite(grid, numeric_grid=numeric)
    if len(out) == 1:
        return next(iter(out.values()))
    out['pass'] = all(v['pass'] for v in out.values())
    return out


def _build_parser():
    parser = _Parser(prog='fusionkit', description='SU(N) fusion rules, tensor products, '
                     'transport matrices and braiding coefficients.')
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument('--json', dest='fmt', action='store_const', const='json')
    fmt.add_argument('--text', dest='fmt', action='store_const', const='text')
    parser.set_defaults(fmt='json')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    def common(p, level=True):
        p.add_argument('--n', type=int)
        if level:
            p.add_argument('--level', type=int)
        p.add_argument('--json', dest='fmt', action='store_const', const='json')
        p.add_argument('--text', dest='fmt', action='store_const', const='text')

    p = sub.add_parser('fuse', help='level-l fusion product of two signatures')
    common(p)
    p.add_argument('--f')
    p.add_argument('--g')
    p.add_argument('--method', choices=['folding', 'verlinde'], default='folding')
    p.set_defaults(func=_cmd_fuse)

    p = sub.add_parser('tensor', help='classical tensor product decomposition')
    common(p, level=False)
    p.add_argument('--f')
    p.add_argument('--g')
    p.set_defaults(func=_cmd_tensor)

    p = sub.add_parser('table', help='fusion table of all permissible pairs')
    common(p)
    p.add_argument('--method', choices=['folding', 'verlinde'], default='folding')
    p.add_argument('--out', help='also write the table JSON to this file')
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser('character', help='Weyl character at a diagonal element')
    common(p, level=False)
    p.add_argument('--f')
    p.add_argument('--at', help='points as re,im separated by colons, e.g. 2,0:3,0')
    p.set_defaults(func=_cmd_character)

    p = sub.add_parser('transport', help='transport matrix of the basic ODE')
    common(p, level=False)
    p.add_argument('--problem', help='problem JSON file')
    p.add_argument('--random', action='store_true')
    p.add_argument('--dim', type=int)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--verify', action='store_true', help='also integrate the ODE')
    p.set_defaults(func=_cmd_transport)

    p = sub.add_parser('braid', help='braiding coefficients from KZ transport')
    common(p)
    p.add_argument('--case', default='A')
    p.add_argument('--g')
    p.add_argument('--g1')
    p.add_argument('--f')
    p.add_argument('--h')
    p.add_argument('--verify', action='store_true')
    p.set_defaults(func=_cmd_braid)

    p = sub.add_parser('verify', help='cross-method acceptance suites')
    common(p)
    p.add_argument('--suite', choices=['fusion', 'transport', 'braiding', 'all'], default='all')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--problems', type=int, default=50)
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None) -> CommandResult:
    """Parse ``argv`` and dispatch; never raises for user-facing errors."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise ArgumentError('missing command; see --help')
        payload = _jsonable(args.func(args))
    except PermissibilityError as exc:
        return CommandResult('permissibility_error', None, [str(exc)])
    except ValueError as exc:
        return CommandResult('argument_error', None, [str(exc)])
    except (NumericalError, ArithmeticError, FusionKitError) as exc:
        return CommandResult('numerical_error', None, [str(exc)])
    if args.command == 'verify' and not payload.get('pass', False):
        return CommandResult('numerical_error', payload, ['verification failed'])
    return CommandResult('ok', payload)


def _text(obj, indent=0) -> str:
    pad = '  ' * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f'{pad}{k}:')
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f'{pad}{k}: {json.dumps(v, sort_keys=True)}')
        return '\n'.join(lines)
    if isinstance(obj, list):
        return '\n'.join(f'{pad}- {json.dumps(v, sort_keys=True)}' if _flat(v) or not isinstance(v, (dict, list))
                         else f'{pad}-\n{_text(v, indent + 1)}' for v in obj)
    return pad + json.dumps(obj)


def _flat(v):
    if isinstance(v, dict):
        return all(not isinstance(x, (dict, list)) for x in v.values())
    if isinstance(v, list):
        return all(not isinstance(x, dict) for x in v) and sum(isinstance(x, list) for x in v) <= 2
    return True


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    fmt = 'text' if '--text' in argv else 'json'
    if '-h' in argv or '--help' in argv:
        _build_parser().parse_args(argv)
    result = run(argv)
    if result.payload is not None:
        if fmt == 'json':
            print(json.dumps(result.payload, sort_keys=True))
        else:
            print(_text(result.payload))
    for msg in result.diagnostics:
        print(f'fusionkit: {result.status}: {msg}', file=sys.stderr)
    return result.exit_code
