import json

import pytest

from app.cli import run


def test_eval_false_formula_still_exits_zero(runner, sample):
    result = runner('eval', sample('modelA.json'), '--formula', '[Y<-1] X=1', '--world', 'Y=0,X=0')
    assert result.exit_code == 0
    assert result.output.splitlines() == ['false', 'level: world']


def test_eval_diamond_and_trace(runner, sample):
    result = runner('eval', sample('modelA.json'), '--formula', '<Y<-1> X=1', '--world', 'X=0,Y=0', '--trace')
    lines = result.output.splitlines()
    assert lines[:2] == ['true', 'level: world']
    assert lines[2].startswith('X=0,Y=0: [Y<-1] ')
    assert lines[2].endswith(' -> false')


def test_eval_levels(runner, sample):
    context = runner('eval', sample('modelB.json'), '--formula', '<> X=1 & <> X=0', '--context', '')
    assert context.output.splitlines() == ['true', 'level: context']
    model = runner('eval', sample('modelB.json'), '--formula', '[] X=1')
    assert model.output.splitlines() == ['false', 'level: model']


def test_solutions(runner, sample):
    result = runner('solutions', sample('modelB.json'))
    assert result.exit_code == 0
    assert result.output.splitlines() == ['X=0', 'X=1']


def test_solutions_json(runner, sample):
    result = runner('solutions', sample('modelA.json'), '--json')
    data = json.loads(result.output)
    assert data['count'] == 3
    assert data['worlds'][1] == {'context': {}, 'state': {'X': 0, 'Y': 1}}


def test_validate(runner, sample, tmp_path):
    assert runner('validate', sample('modelA.json')).output.strip() == 'valid'

    broken = json.loads(sample('modelA.json').read_text())
    broken['equations']['X'][1]['values'] = []
    path = tmp_path / 'broken.json'
    path.write_text(json.dumps(broken))
    result = runner('validate', path)
    assert result.exit_code == 3
    assert result.output.startswith('invalid\n- non-total equation for X')


def test_refine_and_intervene(runner, sample):
    refined = json.loads(runner('refine', sample('modelA.json'), '--world', 'X=0,Y=1', '--json').output)
    assert refined['equations']['Y'] == [{'when': {}, 'values': [1]}]
    forced = json.loads(runner('intervene', sample('modelA.json'), '--do', 'X=1', '--json').output)
    assert forced['edges'] == []


def test_refine_and_intervene_text(runner, sample):
    refined = runner('refine', sample('modelA.json'), '--world', 'X=0,Y=1').output.splitlines()
    assert refined[0] == 'edges: Y->X'
    assert {'Y in {1}', 'X|Y=0 in {0}', 'X|Y=1 in {0}'} <= set(refined)
    forced = runner('intervene', sample('modelA.json'), '--do', 'X=1').output.splitlines()
    assert forced[0] == 'edges: none'
    assert 'X in {1}' in forced


class TestProbability:
    def test_counterfactual_probability(self, runner, sample):
        result = runner('prob', sample('suzy.json'), '--world', 'T=0,H=0', '--do', 'T=1', '--phi', 'H=1')
        assert result.exit_code == 0
        assert result.output == '4/5\n0.8\n'

    def test_distribution(self, runner, sample):
        result = runner('prob', sample('suzy.json'), '--world', 'T=0,H=0', '--do', 'T=1')
        assert result.output.splitlines() == ['H=0,T=1\t1/5', 'H=1,T=1\t4/5']

    def test_formula(self, runner, sample):
        result = runner('prob', sample('suzy.json'), '--world', 'T=0,H=0', '--formula', '[T<-1] H=1 = 4/5')
        assert result.output.strip() == 'true'

    def test_cbn_paths_agree(self, runner, sample):
        direct = runner('cbn', sample('suzy.json'), '--state', 'T=0,H=0', '--do', 'T=1')
        induced = runner('cbn', sample('suzy_noise.json'), '--induce', '--state', 'T=0,H=0', '--do', 'T=1')
        assert direct.output.splitlines() == ['H=0,T=1\t1/5', 'H=1,T=1\t4/5']
        assert induced.output == direct.output

    def test_cbn_file_with_exogenous_variables(self, runner, sample):
        result = runner('cbn', sample('suzy_noise.json'), '--state', 'T=0,H=0')
        assert result.exit_code == 3


class TestAxioms:
    def test_single_model(self, runner, sample):
        result = runner('axioms', sample('modelA.json'), '--axiom', 'D10b', '--mode', 'cf')
        assert result.exit_code == 0
        assert 'D10b (cf) fails on modelA.json at X=0,Y=0' in result.output

    def test_random_sweep_is_reproducible(self, runner):
        args = ('axioms', '--random', 5, '--seed', 3, '--budget', 10, '--axiom', 'D4', '--axiom', 'D10c')
        first, second = runner(*args), runner(*args)
        assert first.exit_code == 0
        assert first.output == second.output

    def test_random_sweep_seeds_reference_models(self, runner):
        args = ('axioms', '--random', 2, '--seed', 0, '--budget', 20, '--axiom', 'D10b', '--mode', 'cf')
        result = runner(*args)
        assert result.exit_code == 0
        assert 'D10b (cf) fails on A at X=0,Y=0' in result.output
        bare = runner(*args, '--without-reference', '--json')
        assert json.loads(bare.output)['config']['include_reference'] is False

    def test_json_summary(self, runner):
        result = runner('axioms', '--random', 3, '--seed', 1, '--budget', 10, '--axiom', 'D4', '--json')
        data = json.loads(result.output)
        assert data['config']['models'] == 3
        assert {row['mode'] for row in data['rows']} == {'cf', 'iv'}


class TestExitStatus:
    def test_usage(self, runner, sample):
        assert runner('axioms').exit_code == 2
        assert runner('eval', sample('modelA.json'), '--formula', 'X=1', '--world', 'X=0,Y=0',
                      '--context', '').exit_code == 2
        assert runner('axioms', sample('modelA.json'), '--mode', 'both').exit_code == 2

    @pytest.mark.parametrize('args', [
        ('eval', 'modelA.json', '--formula', 'X=1 & & Y=0'),
        ('eval', 'modelA.json', '--formula', 'X=2'),
        ('eval', 'modelA.json', '--formula', 'X=1', '--world', 'X=0'),
        ('prob', 'suzy.json', '--world', 'T=0,H=0', '--formula', '[T<-1] H=1 = 1/0'),
        ('prob', 'suzy.json', '--world', 'T=0,H=0', '--formula', '[T<-1] H=1 = 0.8/2'),
    ])
    def test_invalid_input(self, runner, sample, args):
        command, name, *rest = args
        result = runner(command, sample(name), *rest)
        assert result.exit_code == 3
        assert 'Error' in result.output

    def test_world_that_is_not_a_solution(self, runner, sample):
        result = runner('eval', sample('modelA.json'), '--formula', 'X=1', '--world', 'X=1,Y=0')
        assert result.exit_code == 4
        assert 'not a solution' in result.output


def test_run_returns_the_exit_status(sample, monkeypatch, capsys):
    monkeypatch.setenv('NSEM_ENV', 'testing')
    assert run(['solutions', str(sample('modelB.json'))]) == 0
    assert capsys.readouterr().out == 'X=0\nX=1\n'
    assert run(['eval', str(sample('modelA.json')), '--formula', 'X=1', '--world', 'X=1,Y=0']) == 4
