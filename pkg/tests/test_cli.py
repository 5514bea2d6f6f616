"""
cli 패키지 테스트: 하위 명령 종료 코드, 설정 우선순위
"""
import json

import pytest

from src.core.problem import parse_problem, validate_problem
from src.cli.commands import EXIT_USAGE, run_cli
from src.cli.config import RunConfig, load_run_config


def run(*argv):
    return run_cli([str(a) for a in argv])


class TestCheck:
    def test_verified_with_conclusion(self, golden):
        result = run('check', golden('mod6_steps_start.ulp'), '--backend', 'none')
        assert result.status == 0
        lines = result.output.splitlines()
        assert lines[0].startswith("Verified (")
        assert lines[-1] == "Conclusion: Unrealizable"

    def test_proof_without_problem_has_no_conclusion(self, golden):
        result = run('check', golden('mod6_steps_even.ulp'), '--backend', 'none')
        assert result.status == 0
        assert result.output.splitlines()[0] == "Verified (11 nodes, 0 trusted)"
        assert "Conclusion:" not in result.output

    def test_rejected(self, golden):
        result = run('check', golden('mod6_steps_start_bad.ulp'), '--backend', 'none')
        assert result.status == 1
        assert result.output.splitlines()[-1] == "Conclusion: Inconclusive (proof was rejected)"

    def test_json_output(self, golden):
        result = run('check', golden('sy_sum.ulp'), '--backend', 'none', '--format', 'json')
        data = json.loads(result.output)
        assert data['status'] == 'Verified'
        assert data['conclusion'] == 'Unrealizable'

    def test_missing_file(self, tmp_path):
        result = run('check', tmp_path / 'nope.ulp')
        assert result.status == EXIT_USAGE
        assert result.diagnostics.startswith("error:")


class TestDecide:
    def test_unrealizable(self, golden):
        result = run('decide', '--domain', 'mod:2', '--width', 1, golden('sy_sum_mod2.ulg'))
        assert (result.status, result.output) == (0, "Unrealizable")

    def test_realizable(self, golden):
        result = run('decide', '--domain', 'mod:2', golden('mod6_steps.ulg'))
        assert result.status == 1
        assert result.output.startswith("Realizable (witness ")

    def test_bad_domain(self, golden):
        assert run('decide', '--domain', 'mod:0', golden('mod6_steps.ulg')).status == EXIT_USAGE

    def test_budget(self, golden):
        result = run('decide', '--domain', 'mod:6', '--budget', 2, golden('mod6_steps.ulg'))
        assert result.status == EXIT_USAGE
        assert "budget" in result.diagnostics


class TestFalsify:
    def test_none_found(self, golden):
        result = run('falsify', golden('mod6_steps.ulg'), '--depth', 2, '--samples', 5, '--seed', 1)
        assert result.status == 0
        assert result.output.startswith("NoneFound (")

    def test_symbolic_problem_is_refused(self, golden):
        assert run('falsify', golden('ite_small_const.ulg')).status == EXIT_USAGE


class TestEmitSmt:
    def test_formula(self):
        result = run('emit-smt', '--formula', '(< x 1)', '--backend', 'none')
        assert result.status == 0
        assert result.output.splitlines()[0] == "(set-logic ALL)"

    def test_from_file(self, tmp_path):
        path = tmp_path / 'p.pred'
        path.write_text("(forall-idx i (= (idx x i) 0))", encoding='utf-8')
        result = run('emit-smt', path, '--width', 2)
        assert "(Array Int Int)" in result.output

    @pytest.mark.parametrize("extra", [(), ('some.pred', '--formula', '(< x 1)')])
    def test_exactly_one_source(self, extra):
        result = run('emit-smt', *extra)
        assert result.status == EXIT_USAGE
        assert "exactly one" in result.diagnostics

    def test_fin_cannot_be_emitted(self):
        assert run('emit-smt', '--formula', '(fin i (= (idx x i) 0))').status == EXIT_USAGE


class TestEncodeCounterMachine:
    @pytest.mark.parametrize("name", ['halting.cm', 'looping.cm'])
    def test_output_is_a_problem(self, golden, name):
        result = run('encode-cm', golden(name))
        assert result.status == 0
        problem = parse_problem(result.output)
        assert problem.width == 1
        assert validate_problem(problem) == []


def test_unknown_command():
    assert run('prove', 'x').status == EXIT_USAGE


class TestRunConfig:
    YAML = {'entailment': {'timeout_secs': 3, 'backend': 'none'}, 'semantics': {'depth': 6},
            'checker': {'width': None}}

    def test_yaml_values(self):
        config = RunConfig.from_sources(config=self.YAML, env={})
        assert config.timeout_secs == 3
        assert config.depth == 6
        assert config.width is None
        assert config.samples == RunConfig().samples

    def test_env_beats_yaml(self):
        config = RunConfig.from_sources(config=self.YAML, env={'UL_SOLVER_TIMEOUT': '5', 'UL_SOLVER': 'z3 -in'})
        assert config.timeout_secs == 5.0
        assert config.solver_path == 'z3 -in'

    def test_args_beat_env(self):
        config = RunConfig.from_sources({'timeout_secs': 7.0, 'depth': None}, self.YAML,
                                        env={'UL_SOLVER_TIMEOUT': '5'})
        assert config.timeout_secs == 7.0
        assert config.depth == 6

    def test_bad_env_number(self):
        with pytest.raises(ValueError, match="must be a number"):
            RunConfig.from_sources(env={'UL_SOLVER_TIMEOUT': 'soon'})

    @pytest.mark.parametrize("kwargs, message", [
        ({'depth': 0}, "depth must be positive"),
        ({'format': 'xml'}, "unknown output format"),
        ({'solver_backend': 'cvc'}, "unknown solver backend"),
        ({'domain': 'mod:0'}, "domain"),
        ({'width': 0}, "width must be positive"),
    ])
    def test_validation(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            RunConfig(**kwargs)

    def test_section_must_be_mapping(self):
        with pytest.raises(ValueError):
            RunConfig.from_sources(config={'gfa': 'mod:2'}, env={})

    def test_load_from_file(self, tmp_path):
        path = tmp_path / 'config.yaml'
        path.write_text("semantics:\n  samples: 9\ngfa:\n  domain: \"set:0,1\"\n", encoding='utf-8')
        config = load_run_config(str(path), {'depth': 2}, env_file=None)
        assert (config.samples, config.domain, config.depth) == (9, 'set:0,1', 2)
