"""
core 패키지 테스트: S-식, 항, 문법, 합성 문제, 카운터 머신 환원
"""
import pytest

from src.core.counter_machine import (
    CounterMachine, CounterMachineError, Instruction, encode_counter_machine,
    parse_counter_machine, random_machine, render_counter_machine, run_machine,
)
from src.core.grammar import (
    GrammarError, derives, minimal_terms, parse_grammar, reachable_nonterminals,
    validate_grammar, vars_of_nonterminal,
)
from src.core.problem import load_problem, parse_problem, validate_problem
from src.core.sexpr import SExprSyntaxError, parse_sexpr, parse_sexprs, render_sexpr
from src.core.terms import (
    ONE, Op, Sort, ZERO, assign, binary, lit, literal_value, parse_term, var,
)
from src.semantics.falsifier import search_witness
from src.utils.seed import make_rng

SUM_GRAMMAR = """
(grammar (start E)
  (nt E int (x) ((+ E E)) ((lit 1))))
"""


class TestSExpr:
    def test_comments_and_nesting(self):
        items = parse_sexprs("(a ; comment\n (b 1) \"s t\") (c)")
        assert len(items) == 2
        assert render_sexpr(items[0]) == '(a (b 1) "s t")'
        assert items[0][1][1] == 1

    def test_positions_on_error(self):
        with pytest.raises(SExprSyntaxError) as info:
            parse_sexpr("(a\n  (b)")
        assert info.value.line == 1 and info.value.col == 1

    def test_unexpected_close(self):
        with pytest.raises(SExprSyntaxError, match="unexpected"):
            parse_sexpr("(a))")


class TestTerms:
    def test_literal_desugaring_is_balanced(self):
        assert lit(0) == ZERO
        assert lit(2) == binary(Op.PLUS, ONE, ONE)
        assert lit(3) == binary(Op.PLUS, ONE, binary(Op.PLUS, ONE, ONE))
        assert literal_value(lit(17)) == 17

    def test_parse_term_sorts(self):
        t = parse_term("(assign x (+ (var x) (lit 2)))")
        assert t == assign('x', binary(Op.PLUS, var('x'), lit(2)))
        assert t.sort is Sort.STMT
        assert parse_term("(ite (< x 1) 0 1)").sort is Sort.INT

    def test_type_mismatch(self):
        with pytest.raises(ValueError, match="type mismatch"):
            parse_term("(assign x (< x 1))")


class TestGrammar:
    def test_inline_nonterminals(self, golden):
        g = load_problem(golden('mod6_steps.ulg')).grammar
        assert g.start == 'Start'
        assert [p.rhs.is_chain for p in g.productions_of('Start')] == [True, True]
        inline = [nt for nt in g.nonterminals if nt.inline]
        assert inline and all(nt.name.startswith('#inl') for nt in inline)
        assert validate_grammar(g) == []

    def test_vars_and_reachability(self, golden):
        g = load_problem(golden('mod6_steps.ulg')).grammar
        assert vars_of_nonterminal(g, 'Start') == {'x', 'e_t', 'b_t'}
        assert {'Start', 'S2', 'S3'} <= reachable_nonterminals(g, 'Start')

    def test_derives(self, golden):
        g = load_problem(golden('mod6_steps.ulg')).grammar
        step2 = assign('x', binary(Op.PLUS, var('x'), lit(2)))
        step3 = assign('x', binary(Op.PLUS, var('x'), lit(3)))
        assert derives(g, 'S2', step2)
        assert derives(g, 'Start', parse_term(
            "(seq (assign x (+ (var x) (lit 2))) (assign x (+ (var x) (lit 2))))"))
        assert not derives(g, 'S2', step3)

    def test_minimal_terms(self):
        g = parse_grammar(SUM_GRAMMAR)
        assert minimal_terms(g)['E'] == var('x')

    def test_duplicate_nonterminal(self):
        with pytest.raises(GrammarError, match="duplicate"):
            parse_grammar("(grammar (start S) (nt S int (x)) (nt S int (y)))")

    def test_undeclared_reference(self):
        g = parse_grammar("(grammar (start S) (nt S stmt ((seq S Missing))))")
        assert "undeclared nonterminal Missing" in validate_grammar(g)

    def test_sort_mismatch(self):
        with pytest.raises(GrammarError, match="type mismatch"):
            parse_grammar("(grammar (start S) (nt S stmt ((assign x B))) (nt B bool ((true))))")


class TestProblem:
    def test_load_golden(self, golden):
        problem = load_problem(golden('ite_small_const.ulg'))
        assert problem.symbolic_vars == ('y_aux',)
        assert problem.width == 1
        assert validate_problem(problem) == []

    def test_unknown_spec_variable(self):
        problem = parse_problem(f"(problem {SUM_GRAMMAR} (output (= z 1)))")
        assert validate_problem(problem) == ["output spec mentions unknown variable z"]

    def test_grammar_only_file_has_trivial_specs(self):
        problem = parse_problem(SUM_GRAMMAR)
        assert problem.width is None
        assert validate_problem(problem) == []


class TestCounterMachine:
    def test_run(self, golden):
        halting = parse_counter_machine(golden('halting.cm').read_text(encoding='utf-8'))
        looping = parse_counter_machine(golden('looping.cm').read_text(encoding='utf-8'))
        assert run_machine(halting).halted
        assert run_machine(halting).registers['x'] == 0
        assert not run_machine(looping, max_steps=50).halted

    def test_bad_jump_target(self):
        with pytest.raises(CounterMachineError, match="jez target"):
            CounterMachine((Instruction('jez', 'x', 9),))

    def test_render_parses_back(self):
        m = random_machine(make_rng(3))
        assert parse_counter_machine(render_counter_machine(m)) == m

    def test_encoding_is_well_formed(self, golden):
        m = parse_counter_machine(golden('halting.cm').read_text(encoding='utf-8'))
        problem = encode_counter_machine(m)
        assert validate_problem(problem) == []
        assert problem.width == 1
        assert len(problem.grammar.user_nonterminals()) == len(m.instructions) + 2

    @pytest.mark.parametrize("name, realizable", [('halting.cm', True), ('looping.cm', False)])
    def test_halting_iff_realizable(self, golden, name, realizable):
        m = parse_counter_machine(golden(name).read_text(encoding='utf-8'))
        witness = search_witness(encode_counter_machine(m), depth=12)
        assert (witness is not None) == realizable

    def test_random_machines_agree_with_interpreter(self):
        rng = make_rng(11)
        for _ in range(20):
            m = random_machine(rng, max_instructions=3, max_init=2)
            run = run_machine(m, max_steps=12)
            if not run.halted:
                continue
            assert search_witness(encode_counter_machine(m), depth=3 * run.steps + 4) is not None
