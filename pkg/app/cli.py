"""`nsem` command group: the engine on the command line.

Reachable as `flask nsem ...` and through `python nsem.py ...`. Results go to
stdout (text, or canonical JSON with --json), logs and errors to stderr.
Exit status: 0 success (a false formula included), 2 usage, 3 invalid input,
4 a world that is not a solution.
"""
import os
from functools import wraps

import click
from flask import current_app
from flask.cli import AppGroup

from app.errors import NsemError
from app.models.pnsem import render_decimal, render_fraction
from app.services.axioms import SCHEMAS, Mode, SweepConfig, soundness_sweep
from app.services.probabilistic import (cbn_counterfactual, counterfactual_distribution,
                                        counterfactual_probability, induce_cbn, satisfies_p)
from app.services.semantics import Evaluator, actualized_refinement, intervene
from app.services.solver import enumerate_solutions, validate_model
from app.utils.parser import format_formula, parse
from app.utils.serialization import (dump_distribution, dump_model, dump_world, dumps, load_cbn, load_model,
                                     load_pmodel)
from app.utils.validation import build_setting, parse_assignment, parse_intervention

nsem = AppGroup('nsem', help="Exact reasoning over nondeterministic structural equation models.")

MODEL_FILE = click.Path(exists=True, dir_okay=False)


class EngineFailure(click.ClickException):
    """An engine error surfaced with its own exit status"""

    def __init__(self, error):
        super().__init__(str(error))
        self.exit_code = error.exit_code


def engine_command(fn):
    """Adds --json and turns engine errors into exit statuses"""
    @click.option('--json', 'as_json', is_flag=True, help="Canonical JSON output")
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except NsemError as e:
            raise EngineFailure(e) from e

    return wrapper


def _max_worlds():
    return current_app.config['MAX_WORLDS']


def _emit(as_json, data, text):
    click.echo(dumps(data) if as_json else text)


def _render_model(data):
    lines = [f"edges: {', '.join(f'{a}->{b}' for a, b in data['edges']) or 'none'}"]
    for name, rows in data['equations'].items():
        for row in rows:
            when = ','.join(f'{k}={v}' for k, v in row['when'].items())
            values = ','.join(str(v) for v in row['values'])
            lines.append(f"{name}{'|' + when if when else ''} in {{{values}}}")
    return '\n'.join(lines)


def _render_distribution(dist):
    lines = [f"{','.join(f'{n}={v}' for n, v in state.items())}\t{render_fraction(p)}"
             for state, p in dist.items()]
    return '\n'.join(lines)


@nsem.command('validate')
@click.argument('model_file', type=MODEL_FILE)
@engine_command
def validate_command(model_file, as_json):
    """Print the validation report of a model; exit 3 when it is invalid"""
    m = load_model(model_file, validate=False)
    report = validate_model(m)
    text = 'valid' if report.is_valid else '\n'.join(['invalid'] + [f'- {v}' for v in report.violations])
    _emit(as_json, {'valid': report.is_valid, 'report': report.to_dict()}, text)
    if not report.is_valid:
        raise click.exceptions.Exit(3)


@nsem.command('solutions')
@click.argument('model_file', type=MODEL_FILE)
@click.option('--context', help="Exogenous assignment, e.g. U=0")
@engine_command
def solutions_command(model_file, context, as_json):
    """List the solutions of a model in canonical order"""
    m = load_model(model_file)
    ctx = None
    if context is not None:
        ctx = parse_assignment(context, m.signature, m.signature.exogenous, what='context')
    worlds = enumerate_solutions(m, ctx, max_worlds=_max_worlds())
    _emit(as_json, {'count': len(worlds), 'worlds': [dump_world(w) for w in worlds]},
          '\n'.join(w.render() or '∅' for w in worlds))


@nsem.command('eval')
@click.argument('model_file', type=MODEL_FILE)
@click.option('--formula', required=True, help='Causal formula, e.g. "[Y<-1] X=1"')
@click.option('--world', help="Full world, e.g. X=0,Y=0")
@click.option('--context', help="Exogenous context")
@click.option('--state', help="Endogenous state")
@click.option('--trace', is_flag=True, help="Also print every basic causal evaluation")
@engine_command
def eval_command(model_file, formula, world, context, state, trace, as_json):
    """Evaluate a formula at a world, context, state or the whole model"""
    if sum(x is not None for x in (world, context, state)) > 1:
        raise click.UsageError("Use at most one of --world, --context and --state")
    m = load_model(model_file)
    f = parse(formula, m.signature)
    setting = build_setting(m, world=world, context=context, state=state)
    evaluator = Evaluator(m, max_worlds=_max_worlds(), record=trace)
    result = evaluator.evaluate(setting, f)

    data = {'result': result, 'level': setting.level.value, 'setting': setting.to_dict(),
            'formula': format_formula(f)}
    lines = ['true' if result else 'false', f'level: {setting.level.value}']
    if trace:
        data['trace'] = evaluator.trace
        lines.extend(f"{t['world']}: {t['formula']} -> {'true' if t['result'] else 'false'}"
                     for t in evaluator.trace)
    _emit(as_json, data, '\n'.join(lines))


@nsem.command('refine')
@click.argument('model_file', type=MODEL_FILE)
@click.option('--world', required=True)
@engine_command
def refine_command(model_file, world, as_json):
    """Print the actualized refinement of a model at one of its solutions, one line per equation row"""
    m = load_model(model_file)
    w = m.world(parse_assignment(world, m.signature, what='world'))
    data = dump_model(actualized_refinement(m, w))
    _emit(as_json, data, _render_model(data))


@nsem.command('intervene')
@click.argument('model_file', type=MODEL_FILE)
@click.option('--do', 'do', required=True, help="Intervention, e.g. Y=1")
@engine_command
def intervene_command(model_file, do, as_json):
    m = load_model(model_file)
    data = dump_model(intervene(m, parse_intervention(do, m.signature)))
    _emit(as_json, data, _render_model(data))


@nsem.command('axioms')
@click.argument('model_file', type=MODEL_FILE, required=False)
@click.option('--random', 'random_models', type=click.IntRange(min=1), help="Sweep this many random models")
@click.option('--seed', type=int, default=None)
@click.option('--mode', 'modes', type=click.Choice([m.value for m in Mode]), multiple=True,
              help="cf or iv; both when omitted")
@click.option('--axiom', 'axioms', type=click.Choice(list(SCHEMAS)), multiple=True)
@click.option('--budget', type=click.IntRange(min=1), default=None, help="Instances per schema and model")
@click.option('--with-reference/--without-reference', default=True,
              help="Seed the sweep with the built-in reference models (default: on)")
@engine_command
def axioms_command(model_file, random_models, seed, modes, axioms, budget, with_reference, as_json):
    """Check axiom schemas on one model or sweep seeded random models"""
    if (model_file is None) == (random_models is None):
        raise click.UsageError("Give either a model file or --random N")
    overrides = {
        'models': random_models or 0,
        'seed': seed,
        'budget': budget,
        'modes': tuple(Mode(m) for m in modes) or None,
        'axioms': axioms or None,
        'include_reference': with_reference,
    }
    config = SweepConfig.from_app_config(current_app.config, **overrides)
    corpus = None
    if model_file is not None:
        corpus = [(os.path.basename(model_file), load_model(model_file))]
    summary = soundness_sweep(config, corpus)

    lines = [summary.render()]
    for row in summary.rows:
        for name, report in row.counterexamples[:1]:
            lines.append(f"{row.axiom} ({row.mode.value}) fails on {name} at "
                         f"{report.setting.describe()}: {format_formula(report.formula)}")
    _emit(as_json, summary.to_dict(), '\n'.join(lines))


@nsem.command('prob')
@click.argument('model_file', type=MODEL_FILE)
@click.option('--world', required=True)
@click.option('--do', 'do', default='', help="Intervention, e.g. T=1")
@click.option('--phi', help="Basic formula whose counterfactual probability is printed")
@click.option('--formula', help="Probabilistic formula to check, e.g. \"[T<-1] H=1 = 4/5\"")
@engine_command
def prob_command(model_file, world, do, phi, formula, as_json):
    """Counterfactual probability, distribution or probabilistic formula at a world"""
    if phi is not None and formula is not None:
        raise click.UsageError("Use --phi or --formula, not both")
    pm = load_pmodel(model_file)
    sig = pm.signature
    w = parse_assignment(world, sig, what='world')

    if formula is not None:
        f = parse(formula, sig)
        result = satisfies_p(pm, w, f, max_worlds=_max_worlds())
        _emit(as_json, {'result': result, 'formula': format_formula(f)}, 'true' if result else 'false')
        return

    iv = parse_intervention(do, sig)
    if phi is not None:
        p = counterfactual_probability(pm, w, iv, parse(phi, sig), max_worlds=_max_worlds())
        _emit(as_json, {'exact': render_fraction(p), 'decimal': render_decimal(p)},
              f'{render_fraction(p)}\n{render_decimal(p)}')
        return
    dist = counterfactual_distribution(pm, w, iv, max_worlds=_max_worlds())
    _emit(as_json, dump_distribution(dist), _render_distribution(dist))


@nsem.command('cbn')
@click.argument('model_file', type=MODEL_FILE)
@click.option('--induce', is_flag=True, help="Marginalize exogenous variables of a probabilistic model first")
@click.option('--state', required=True)
@click.option('--do', 'do', default='')
@engine_command
def cbn_command(model_file, induce, state, do, as_json):
    """Counterfactual distribution of a causal Bayesian network"""
    network = induce_cbn(load_pmodel(model_file)) if induce else load_cbn(model_file)
    sig = network.signature
    v = parse_assignment(state, sig, sig.endogenous, what='state')
    dist = cbn_counterfactual(network, v, parse_intervention(do, sig), max_worlds=_max_worlds())
    _emit(as_json, dump_distribution(dist), _render_distribution(dist))


def run(argv=None):
    """Run one `nsem` invocation outside the flask launcher; returns the exit status"""
    from app import create_app

    app = create_app(os.getenv('NSEM_ENV', 'default'))
    with app.app_context():
        try:
            result = nsem.main(args=argv, prog_name='nsem', standalone_mode=False)
        except click.ClickException as e:
            e.show()
            return e.exit_code
        except click.exceptions.Abort:
            click.echo('Aborted!', err=True)
            return 1
    return result if isinstance(result, int) else 0
