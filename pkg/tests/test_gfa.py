"""
gfa 패키지 테스트: 유한 정의역, 고정점, 유한 정의역 결정 절차
"""
import itertools

import pytest

from src.core.grammar import derives, parse_grammar
from src.core.problem import load_problem
from src.core.terms import Op, parse_term
from src.semantics.enumerator import count_terms, enumerate_terms
from src.semantics.state import VectorState
from src.assertions.evaluation import eval_predicate
from src.gfa.domain import Explicit, ModRing, apply_int, parse_domain
from src.gfa.finite_eval import Diverges, run_term_finite
from src.gfa.fixpoint import BudgetExceeded, Realizable, Unrealizable, decide_finite, gfa_fixpoint


class TestDomain:
    def test_mod_ring_wraps(self):
        d = ModRing(6)
        assert d.normalize(-1) == 5
        assert apply_int(d, Op.PLUS, 4, 3) == 1
        assert str(d) == "mod:6"

    @pytest.mark.parametrize("v, expected", [(-5, 0), (1, 0), (3, 2), (4, 2), (5, 6), (99, 6), (2, 2)])
    def test_explicit_nearest_member(self, v, expected):
        # 동률(1: 0과 2 사이)은 작은 쪽
        assert Explicit((6, 0, 2)).normalize(v) == expected

    def test_division_by_zero(self):
        assert apply_int(ModRing(5), Op.DIV, 3, 0) == 0

    def test_parse(self):
        assert parse_domain('mod:6') == ModRing(6)
        assert parse_domain('set:2,0,1') == Explicit((0, 1, 2))

    @pytest.mark.parametrize("spec", ['mod:0', 'mod:x', 'set:', 'range:3'])
    def test_parse_errors(self, spec):
        with pytest.raises(ValueError, match="domain"):
            parse_domain(spec)


class TestFixpoint:
    def test_behaviours_of_expression_grammar(self):
        g = parse_grammar("(grammar (start E) (nt E int (x) ((+ E E))))")
        analysis = gfa_fixpoint(g, ModRing(3))
        # x, 2x, 3x = 0, 4x = x, ... : 행동은 x ↦ kx (k = 0, 1, 2)
        assert len(analysis.behaviours['E']) == 3
        assert analysis.stats.sizes[-1] == 3

    def test_transfer_map_runs_in_lockstep(self):
        g = parse_grammar("(grammar (start S) (nt S stmt ((assign x (+ x (lit 1))))))")
        analysis = gfa_fixpoint(g, ModRing(4))
        outputs = analysis.outputs('S', VectorState.of(2, {'x': [0, 3]}))
        assert [s.int_vector('x') for s in outputs] == [(1, 0)]

    def test_loop_that_cycles_has_no_output(self):
        g = parse_grammar("(grammar (start S) (nt S stmt ((while (< x (lit 2)) (assign x (var x))))))")
        analysis = gfa_fixpoint(g, ModRing(3))
        outputs = analysis.outputs('S', VectorState.single(x=0))
        assert outputs == {}
        assert len(analysis.outputs('S', VectorState.single(x=2))) == 1

    def test_finite_interpreter_detects_cycles(self):
        loop = parse_term("(while (< (var x) (lit 2)) (assign x (var x)))")
        assert run_term_finite(loop, VectorState.of(2, {'x': [2, 0]}), ModRing(3)) == Diverges(2)


class TestDecide:
    def test_parity_problem_is_unrealizable_mod_6(self, golden):
        verdict = decide_finite(load_problem(golden('mod6_steps.ulg')), ModRing(6))
        assert isinstance(verdict, Unrealizable)
        assert str(verdict) == "Unrealizable"

    def test_mod_2_is_too_coarse(self, golden):
        problem = load_problem(golden('mod6_steps.ulg'))
        verdict = decide_finite(problem, ModRing(2))
        assert isinstance(verdict, Realizable)
        assert derives(problem.grammar, problem.start, verdict.witness)
        # 증인 항을 유한 정의역에서 다시 실행해 출력 명세를 확인
        result = run_term_finite(verdict.witness, VectorState.single(x=0), ModRing(2))
        assert eval_predicate(problem.output_spec, result)

    def test_loop_grammar_mod_2(self, golden):
        verdict = decide_finite(load_problem(golden('sy_sum_mod2.ulg')), ModRing(2), width=1)
        assert isinstance(verdict, Unrealizable)

    def test_budget(self, golden):
        with pytest.raises(BudgetExceeded):
            decide_finite(load_problem(golden('mod6_steps.ulg')), ModRing(6), budget=3)


AGREEMENT_GRAMMARS = [
    "(grammar (start S) (nt S stmt ((assign x E))) (nt E int (x) ((+ E E)) ((lit 1))))",
    """(grammar (start S)
         (nt S stmt ((assign x E)) ((assign y E)) ((seq A A)))
         (nt A stmt ((assign x E)) ((assign y E)))
         (nt E int (x) (y) ((+ E K)))
         (nt K int ((lit 1))))""",
]


def _projection(state: VectorState, names):
    return tuple(state.int_vector(v) for v in names)


def _inputs(names, d, width: int):
    cells = itertools.product(d.values, repeat=len(names) * width)
    for flat in cells:
        yield VectorState.of(width, {v: list(flat[k * width:(k + 1) * width]) for k, v in enumerate(names)})


class TestFixpointAgreement:
    @pytest.mark.parametrize("text", AGREEMENT_GRAMMARS)
    @pytest.mark.parametrize("d", [ModRing(2), ModRing(3), Explicit((0, 1))])
    def test_rounds_grow_until_stable(self, text, d):
        stats = gfa_fixpoint(parse_grammar(text), d).stats
        assert stats.rounds == len(stats.sizes)
        assert all(a < b for a, b in zip(stats.sizes[:-1], stats.sizes[1:-1]))
        assert stats.sizes[-1] == stats.sizes[-2]

    @pytest.mark.parametrize("text", AGREEMENT_GRAMMARS)
    @pytest.mark.parametrize("d", [ModRing(2), ModRing(3), Explicit((0, 1))])
    @pytest.mark.parametrize("width", [1, 2])
    def test_transfer_map_matches_enumeration(self, text, d, width):
        g = parse_grammar(text)
        analysis = gfa_fixpoint(g, d)
        witnesses = set(analysis.behaviours['S'].values())
        for depth in range(1, 7):
            assert count_terms(g, 'S', depth) <= 20000, "witnesses are deeper than the enumeration cap"
            terms = list(enumerate_terms(g, 'S', depth))
            if witnesses <= set(terms):
                break
        else:
            pytest.fail("witnesses not reached by enumeration")

        names = analysis.program_vars
        for sigma in _inputs(names, d, width):
            runs = (run_term_finite(t, sigma, d) for t in terms)
            enumerated = {_projection(out, names) for out in runs if not isinstance(out, Diverges)}
            outputs = analysis.outputs('S', sigma)
            assert {_projection(out, names) for out in outputs} == enumerated
            for out, term in outputs.items():
                assert derives(g, 'S', term)
                assert _projection(run_term_finite(term, sigma, d), names) == _projection(out, names)
