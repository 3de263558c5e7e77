"""
Lamsym command line.

Commands:
- analyze         full pipeline on one equation
- corpus          run the worked equations as fixtures
- equiv           equivalence of two lambda-symmetries
- check-integral  symbolic first-integral check
- drift           RK4 drift of a first integral
- multiplier      divergence and Jacobi last multiplier
- raise           two-dimensional order raising

Exit codes: 0 success, 1 negative verdict, 2 parse error, 3 empty solver
result, 4 verification failure, 5 numeric failure.

Usage:
    python -m backend.cli analyze "y'' = 0" --json --no-timings
"""

import functools
import json
import logging
import sys
from typing import Any, Dict, List, Optional

import click

from backend.lamsym import diagnostics
from backend.lamsym.config import get_settings
from backend.lamsym.corpus import run_corpus
from backend.lamsym.corpus.models import CorpusEntry
from backend.lamsym.errors import ExprSyntaxError, LamsymError
from backend.lamsym.jlm import lambda_from_divergence, multiplier, raise_order_2d
from backend.lamsym.parser import parse_expr, parse_ode, parse_system, render
from backend.lamsym.reduce import FirstIntegral, check_first_integral, integrate_trajectory, numeric_drift
from backend.lamsym.expr import total_derivative
from backend.lamsym.report import AnalysisOptions, analyze
from backend.lamsym.symmetry import PointField
from backend.lamsym.symmetry.equivalence import certify, equivalence_residual
from backend.lamsym.expr.canonical import is_zero


logger = logging.getLogger(__name__)

# expressions such as "-y*q(t) + y'" are arguments, not options
EXPRESSION_ARGS = {'ignore_unknown_options': True}


# ============================================================================
# Helpers
# ============================================================================

def _emit(data: Dict[str, Any], as_json: bool, lines: List[str]) -> None:
    if as_json:
        click.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def handle_errors(func):
    """Report LamsymError on stderr (or as JSON) and exit with its code."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except LamsymError as exc:
            if kwargs.get('as_json'):
                click.echo(json.dumps({'error': exc.to_dict()}, indent=2, sort_keys=True))
            else:
                click.echo(f'error [{exc.code}]: {exc.message}', err=True)
            raise click.exceptions.Exit(exc.exit_code)
    return wrapper


def split_top(text: str, sep: str = ',') -> List[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(''.join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append(''.join(current).strip())
    return parts


def _symmetry_option(text: str, option: str):
    parts = split_top(text)
    if len(parts) != 3:
        raise ExprSyntaxError(f'{option} expects tau,eta,lambda', 0, {','})
    tau, eta, lam = (parse_expr(p) for p in parts)
    return PointField(tau, eta), lam


def _pair_option(text: Optional[str]):
    if text is None:
        return None
    parts = split_top(text)
    if len(parts) != 2:
        raise ExprSyntaxError('expected two comma-separated expressions', 0, {','})
    return tuple(parts)


# ============================================================================
# Command Group
# ============================================================================

@click.group()
@click.option('-v', '--verbose', count=True, help='-v for info, -vv for debug logging on stderr')
def cli(verbose: int):
    """Lambda-symmetries and first integrals of second-order ODEs."""
    settings = get_settings()
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


@cli.command('analyze', context_settings=EXPRESSION_ARGS)
@click.argument('ode_text')
@click.option('--basis', 'hints', multiple=True, help='Extra (tau, eta) ansatz generator')
@click.option('--window', type=int, default=None, help='Monomial exponent window')
@click.option('--invariant-basis', 'invariant_hints', multiple=True)
@click.option('--reduce-basis', 'reduce_hints', multiple=True)
@click.option('--reduce-with', default=None, help='tau,eta of the symmetry used for reduction')
@click.option('--pair', default=None, help='t1,y1 invariants to reduce with')
@click.option('--json', 'as_json', is_flag=True, help='Emit the report as JSON')
@click.option('--no-timings', is_flag=True, help='Leave timing fields out of the report')
@handle_errors
def analyze_cmd(ode_text, hints, window, invariant_hints, reduce_hints, reduce_with, pair,
                as_json, no_timings):
    """Run the analysis pipeline on ODE_TEXT."""
    options = AnalysisOptions(
        window=window,
        hints=list(hints),
        invariant_hints=list(invariant_hints),
        reduce_hints=list(reduce_hints),
        reduce_with=_pair_option(reduce_with),
        pair=_pair_option(pair),
    )
    report = analyze(ode_text, options)
    if as_json:
        click.echo(report.to_json(timings=not no_timings))
        return

    click.echo(report.ode)
    flag = '  (zero divergence)' if report.zero_divergence else ''
    click.echo(f'lambda_J = {report.lambda_j}{flag}')
    click.echo('symmetries:')
    for k, s in enumerate(report.symmetries):
        click.echo(f'  [{k}] tau = {s.tau}, eta = {s.eta}  class {s.equivalence_class}')
    for p in report.invariant_pairs[:1]:
        click.echo(f'invariants: t1 = {p.t1}, y1 = {p.y1}')
    if report.reduced_equation is not None:
        click.echo(f'reduced: dy1/dt1 = {report.reduced_equation}')
    for i in report.first_integrals:
        click.echo(f'first integral: {i} = a1')
    for skipped in report.diagnostics.skipped:
        click.echo(f"skipped {skipped['stage']}: [{skipped['code']}] {skipped['message']}")
    if report.diagnostics.probabilistic:
        click.echo('note: some zero tests were decided by evaluation')


@cli.command('corpus')
@click.option('--id', 'ids', multiple=True, help='Run only this entry (repeatable)')
@click.option('--jobs', type=int, default=1, help='Worker processes')
@click.option('--json', 'as_json', is_flag=True)
@handle_errors
def corpus_cmd(ids, jobs, as_json):
    """Run the corpus of worked equations; exit 1 on any failure."""
    table = run_corpus(list(ids) or None, jobs=jobs)
    if as_json:
        click.echo(table.to_json(orient='records', indent=2))
    else:
        click.echo(table.drop(columns=['error']).to_string(index=False))
        for _, row in table[table['error'].notna()].iterrows():
            click.echo(f"{row['id']}: {row['error']}")
        passed = int((table['status'] == 'pass').sum())
        click.echo(f'{passed}/{len(table)} pass')
    if (table['status'] != 'pass').any():
        raise click.exceptions.Exit(1)


@cli.command('equiv', context_settings=EXPRESSION_ARGS)
@click.argument('ode_text')
@click.option('--s1', required=True, help='tau,eta,lambda of the first symmetry')
@click.option('--s2', required=True, help='tau,eta,lambda of the second symmetry')
@click.option('--json', 'as_json', is_flag=True)
@handle_errors
def equiv_cmd(ode_text, s1, s2, as_json):
    """Decide whether two lambda-symmetries of ODE_TEXT are equivalent."""
    ode = parse_ode(ode_text)
    first = certify(ode, *_symmetry_option(s1, '--s1'), label='s1')
    second = certify(ode, *_symmetry_option(s2, '--s2'), label='s2')
    with diagnostics.collecting() as notes:
        residual = equivalence_residual(ode, first, second)
        verdict = is_zero(residual)
    data = {
        'equivalent': verdict,
        'residual': render(residual),
        'probabilistic': any(n.kind == diagnostics.PROBABILISTIC for n in notes),
    }
    lines = ['equivalent'] if verdict else ['not equivalent', f'residual: {render(residual)}']
    _emit(data, as_json, lines)
    if not verdict:
        raise click.exceptions.Exit(1)


@cli.command('check-integral', context_settings=EXPRESSION_ARGS)
@click.argument('ode_text')
@click.argument('expr_text')
@click.option('--json', 'as_json', is_flag=True)
@handle_errors
def check_integral_cmd(ode_text, expr_text, as_json):
    """Check that EXPR_TEXT is constant along solutions of ODE_TEXT."""
    ode = parse_ode(ode_text)
    integral = FirstIntegral(parse_expr(expr_text))
    verdict = check_first_integral(ode, integral)
    derivative = render(total_derivative(integral.i, ode))
    data = {'first_integral': verdict, 'derivative': derivative}
    text = render(integral.i)
    lines = [f'{text}: first integral'] if verdict else [
        f'{text}: not a first integral', f'D_t I = {derivative}',
    ]
    _emit(data, as_json, lines)
    if not verdict:
        raise click.exceptions.Exit(1)


@cli.command('drift', context_settings=EXPRESSION_ARGS)
@click.argument('ode_text')
@click.argument('expr_text')
@click.option('--bind', '--q', 'bindings', multiple=True,
              help="Specialization such as 'q(t) = t' or 'p = 2' (repeatable)")
@click.option('--ic', default='0,1,0', help='t0,y0,yp0')
@click.option('--t-end', type=float, default=1.0)
@click.option('--step', type=float, default=1e-3)
@click.option('--table', is_flag=True, help='Print the trajectory instead of the drift')
@click.option('--json', 'as_json', is_flag=True)
@handle_errors
def drift_cmd(ode_text, expr_text, bindings, ic, t_end, step, table, as_json):
    """RK4 drift of the first integral EXPR_TEXT along ODE_TEXT."""
    ode = parse_ode(ode_text)
    integral = FirstIntegral(parse_expr(expr_text))
    entry = CorpusEntry(id='cli', ode_text=ode_text, expected_lambda='0',
                        specialize='; '.join(bindings) or None)
    try:
        initial = tuple(float(v) for v in ic.split(','))
    except ValueError:
        raise click.BadParameter('expected three numbers t0,y0,yp0', param_hint='--ic')
    if len(initial) != 3:
        raise click.BadParameter('expected three numbers t0,y0,yp0', param_hint='--ic')
    try:
        specialization = entry.bindings()
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint='--bind')

    if table:
        frame = integrate_trajectory(ode, integral, specialization, initial, t_end, step)
        if as_json:
            click.echo(frame.to_json(orient='records', indent=2))
        else:
            click.echo(frame.to_string(index=False))
        return
    value = numeric_drift(ode, integral, specialization, initial, t_end, step)
    _emit({'drift': value, 'step': step, 't_end': t_end}, as_json, [f'drift = {value:.3e}'])


@cli.command('multiplier', context_settings=EXPRESSION_ARGS)
@click.argument('system_text')
@click.option('--json', 'as_json', is_flag=True)
@handle_errors
def multiplier_cmd(system_text, as_json):
    """Divergence and Jacobi last multiplier of a system or a y'' equation."""
    if "''" in system_text:
        system = parse_ode(system_text).system()
    else:
        system = parse_system(system_text)
    with diagnostics.collecting():
        result = multiplier(system)
    data = {
        'system': str(system),
        'divergence': render(result.divergence),
        'multiplier': render(result.m),
        'omega': render(result.omega),
        'zero_divergence': result.zero_divergence,
    }
    lines = [
        str(system),
        f'Div = {data["divergence"]}',
        f'M = {data["multiplier"]}',
        f'omega = {data["omega"]}',
    ]
    if result.zero_divergence:
        lines.append('zero divergence: every first integral is a multiplier')
    _emit(data, as_json, lines)


@cli.command('raise', context_settings=EXPRESSION_ARGS)
@click.argument('system_text')
@click.option('--solve-for', required=True, help='Variable eliminated through the inverse')
@click.option('--inverse', required=True, help='That variable in terms of t, w and w\'')
@click.option('--json', 'as_json', is_flag=True)
@handle_errors
def raise_cmd(system_text, solve_for, inverse, as_json):
    """Raise a two-dimensional system to one second-order equation."""
    system = parse_system(system_text)
    ode = raise_order_2d(system, solve_for, parse_expr(inverse))
    with diagnostics.collecting():
        lam = lambda_from_divergence(ode)
    data = {'ode': str(ode), 'lambda_j': render(lam)}
    _emit(data, as_json, [str(ode), f'lambda_J = {render(lam)}'])


def main():
    cli()


if __name__ == '__main__':
    main()
