"""
semantics 패키지 테스트: 벡터 상태, 확장 의미론, 열거, 반례 탐색
"""
import pytest

from src.assertions.parser import parse_predicate
from src.core.grammar import GrammarError, derives, parse_grammar
from src.core.problem import load_problem, parse_problem
from src.core.terms import parse_term
from src.semantics.enumerator import count_terms, enumerate_terms
from src.semantics.evaluator import Fuel, Nontermination, RuntimeFault, eval_term, trunc_div
from src.semantics.falsifier import (
    Counterexample, NoneFound, falsify_problem, falsify_triple, search_witness,
)
from src.semantics.search import LoopInGrammar, witness_search
from src.semantics.state import VectorState
from src.utils.seed import make_rng

EXPR_GRAMMAR = """
(grammar (start E)
  (nt E int (x) ((+ E E)) ((lit 1))))
"""

REALIZABLE = """
(problem
  (grammar (start S)
    (nt S stmt ((assign x E)))
    (nt E int (x) ((+ E E)) ((lit 1))))
  (input (= x 0))
  (output (= x 2))
  (width 1))
"""


class TestVectorState:
    def test_reserved_vectors_default(self):
        sigma = VectorState.of(2, {'x': [1, 2]})
        assert sigma.int_vector('e_t') == (0, 0)
        assert sigma.bool_vector('b_t') == (False, False)

    def test_width_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            VectorState.of(2, {'x': [1]})

    def test_examples_and_projection(self):
        sigma = VectorState.from_examples([{'x': 1}, {'x': 4}])
        assert sigma.get('x', 2) == 4
        assert sigma.project(2).int_vector('x') == (4,)


class TestEvaluator:
    def test_expression_only_changes_e_t(self):
        sigma = VectorState.of(2, {'x': [1, 5]})
        out = eval_term(parse_term("(+ (var x) (lit 1))"), sigma)
        assert out.int_vector('e_t') == (2, 6)
        assert out.int_vector('x') == (1, 5)

    def test_assignment_runs_in_lockstep(self):
        sigma = VectorState.of(2, {'x': [1, 5]})
        out = eval_term(parse_term("(assign x (+ (var x) (var x)))"), sigma)
        assert out.int_vector('x') == (2, 10)

    def test_loop_per_example(self):
        sigma = VectorState.of(2, {'x': [0, 10]})
        out = eval_term(parse_term("(while (< (var x) (lit 3)) (assign x (+ (var x) (lit 1))))"), sigma)
        assert out.int_vector('x') == (3, 10)
        assert out.bool_vector('b_t') == (False, False)

    def test_fuel_exhaustion(self):
        sigma = VectorState.of(2, {'x': [5, 0]})
        loop = parse_term("(while (< (var x) (lit 3)) (skip))")
        assert eval_term(loop, sigma, Fuel(5)) == Nontermination(2)

    def test_unbound_variable(self):
        result = eval_term(parse_term("(assign x (var y))"), VectorState.single(x=0))
        assert isinstance(result, RuntimeFault)
        assert result.example == 1

    @pytest.mark.parametrize("a, b, q", [(7, 2, 3), (-7, 2, -3), (7, -2, -3), (5, 0, 0)])
    def test_truncating_division(self, a, b, q):
        assert trunc_div(a, b) == q


class TestEnumerator:
    def test_counts_match_enumeration(self):
        g = parse_grammar(EXPR_GRAMMAR)
        for depth in range(3):
            terms = list(enumerate_terms(g, 'E', depth))
            assert len(terms) == len(set(terms))
            assert len(terms) == count_terms(g, 'E', depth)

    def test_height_one(self):
        g = parse_grammar(EXPR_GRAMMAR)
        assert count_terms(g, 'E', 0) == 2
        assert count_terms(g, 'E', 1) == 6


class TestFalsifier:
    def test_unrealizable_problem_has_no_solution(self, golden):
        problem = load_problem(golden('mod6_steps.ulg'))
        result = falsify_problem(problem, depth=3, samples=10, rng=make_rng(0))
        assert isinstance(result, NoneFound)
        assert result.terms > 0 and result.samples > 0

    def test_realizable_problem_yields_solution(self):
        result = falsify_problem(parse_problem(REALIZABLE), depth=2, rng=make_rng(0))
        assert isinstance(result, Counterexample)
        assert result.result.int_vector('x') == (2,)

    def test_symbolic_problems_are_refused(self, golden):
        with pytest.raises(ValueError, match="symbolic"):
            falsify_problem(load_problem(golden('ite_small_const.ulg')))

    def test_triple_counterexample(self):
        g = parse_problem(REALIZABLE).grammar
        result = falsify_triple(parse_predicate("(<= 0 x)"), 'S', parse_predicate("(< x 5)"), g,
                                depth=2, rng=make_rng(0))
        assert isinstance(result, Counterexample)
        assert result.result.get('x', 1) >= 5
        assert derives(g, 'S', result.term)

    def test_triple_holds_within_bounds(self):
        g = parse_problem(REALIZABLE).grammar
        result = falsify_triple(parse_predicate("(<= 0 x)"), 'S', parse_predicate("(<= 0 x)"), g,
                                depth=2, samples=10, rng=make_rng(0))
        assert result == NoneFound(result.terms, result.samples)
        assert result.terms > 0

    def test_unsatisfiable_pre_is_vacuous(self):
        g = parse_problem(REALIZABLE).grammar
        pre = parse_predicate("(and (< x 0) (< 0 x))")
        result = falsify_triple(pre, 'S', parse_predicate("false"), g, depth=2)
        assert isinstance(result, NoneFound) and result.vacuous


class TestWitnessSearch:
    def test_problem_witness_reaches_output(self):
        problem = parse_problem(REALIZABLE)
        term = search_witness(problem, depth=4)
        assert term is not None
        assert derives(problem.grammar, 'S', term)
        assert eval_term(term, VectorState.single(x=0)).int_vector('x') == (2,)

    def test_unreachable_goal(self):
        g = parse_problem(REALIZABLE).grammar
        assert witness_search(g, 'S', {'x': 0}, lambda out: out['x'] < 0, depth=3) is None

    def test_loops_are_refused(self):
        g = parse_grammar("(grammar (start S) (nt S stmt ((while (< x (lit 2)) (assign x (var x))))))")
        with pytest.raises(LoopInGrammar):
            witness_search(g, 'S', {'x': 0}, lambda out: True, depth=3)

    def test_expression_nonterminal_is_refused(self):
        with pytest.raises(GrammarError):
            witness_search(parse_grammar(EXPR_GRAMMAR), 'E', {'x': 0}, lambda out: True, depth=2)


LAW_GRAMMAR = """
(grammar (start S)
  (nt S stmt ((assign x E)) ((assign y E)) ((seq S S)) ((ite B S S)))
  (nt E int (x) (y) ((+ E E)) ((- E E)) ((lit 1)))
  (nt B bool ((< E E))))
"""


def _random_state(rng, width: int = 2) -> VectorState:
    x, y = (rng.integers(-5, 6, size=width).tolist() for _ in range(2))
    return VectorState.of(width, {'x': x, 'y': y})


class TestSemanticLaws:
    def test_examples_run_in_lockstep(self):
        rng = make_rng(5)
        terms = list(enumerate_terms(parse_grammar(LAW_GRAMMAR), 'S', 2))
        for _ in range(200):
            term = terms[int(rng.integers(len(terms)))]
            sigma = _random_state(rng)
            out = eval_term(term, sigma)
            for i in (1, 2):
                alone = eval_term(term, sigma.project(i))
                assert out.example(i) == alone.example(1), str(term)

    @pytest.mark.parametrize("nonterminal", ['E', 'B'])
    def test_expressions_leave_program_variables(self, nonterminal):
        rng = make_rng(6)
        terms = list(enumerate_terms(parse_grammar(LAW_GRAMMAR), nonterminal, 2))
        for _ in range(200):
            term = terms[int(rng.integers(len(terms)))]
            sigma = _random_state(rng)
            out = eval_term(term, sigma)
            assert out.int_vector('x') == sigma.int_vector('x')
            assert out.int_vector('y') == sigma.int_vector('y')
