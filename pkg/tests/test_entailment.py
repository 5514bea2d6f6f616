"""
entailment 패키지 테스트: 오라클 판정 순서, Fin 치환, 보조정리 레지스트리, SMT-LIB 출력
"""
import pytest

from src.assertions.evaluation import eval_predicate
from src.assertions.lowering import IndexedFragment
from src.assertions.parser import parse_predicate
from src.assertions.predicate import TOP, Exists, Fin, Not
from src.entailment.lemmas import LemmaRegistry
from src.entailment.oracle import EntailmentOracle, cooper_eliminate, rewrite_fin
from src.entailment.smtlib import UntranslatableAtom, emit_smtlib
from src.entailment.solver import SolverBridge
from src.entailment.verdict import (
    Invalid, Trusted, Unknown, Valid, is_discharged, verdict_from_json,
)
from src.semantics.state import VectorState
from tests.conftest import requires_solver


def P(text, scalars=()):
    return parse_predicate(text, scalars)


class TestOracle:
    def test_valid_by_cooper(self, oracle):
        assert oracle.check_implication(P("(= x 2)"), P("(mod= x 0 2)")) == Valid()

    def test_invalid_with_countermodel(self, oracle):
        verdict = oracle.check_implication(P("(< 0 x)"), P("(< 1 x)"))
        assert isinstance(verdict, Invalid)
        assert verdict.countermodel['x[1]'] == 1

    def test_syntactic_facts_skip_the_decision_procedure(self, oracle):
        hyp = P("(and (forall-idx i (= (idx x i) 0)) (= y 1))")
        concl = P("(forall-idx j (= (idx x j) 0))")
        assert oracle.check_implication(hyp, concl) == Valid()

    def test_false_hypothesis(self, oracle):
        assert oracle.check_implication(P("false"), P("(forall-idx i (= (idx x i) i))")) == Valid()

    def test_indexed_without_solver_is_unknown(self, oracle):
        verdict = oracle.decide_validity(P("(forall-idx i (= (idx x i) (idx x i)))"))
        assert isinstance(verdict, Unknown)
        assert "no solver" in verdict.reason

    def test_width_makes_indexed_decidable(self):
        bounded = EntailmentOracle(SolverBridge('none'), width=2)
        hyp = P("(forall-idx i (= (idx x i) i))")
        assert bounded.check_implication(hyp, P("(= (idx x 2) 2)")) == Valid()
        assert isinstance(bounded.check_implication(hyp, P("(= (idx x 2) 1)")), Invalid)

    def test_symbolic_scalars_are_quantified_over(self, oracle):
        p = P("(exists (k) (forall (y) (implies (= y k) (< y (+ k 1)))))")
        assert oracle.decide_validity(p) == Valid()

    def test_registry_is_consulted_first(self, oracle):
        registry = LemmaRegistry()
        registry.register('fact', P("(implies (= x 1) (= y 2))"))
        assert oracle.check_implication(P("(= x 1)"), P("(= y 2)"), registry) == Trusted('fact')
        assert isinstance(oracle.check_implication(P("(= x 2)"), P("(= y 2)"), registry), Invalid)

    def test_finiteness_without_solver(self, oracle):
        p = P("(implies (forall-idx i (= (idx x i) 0)) (fin i (< 0 (idx x i))))")
        verdict = oracle.decide_validity(p)
        assert isinstance(verdict, Unknown)

    def test_cooper_eliminate_projects_scalars(self):
        qf = cooper_eliminate(P("(exists (k) (and (< x k) (< k 3)))"))
        for value in range(-2, 5):
            assert eval_predicate(qf, VectorState.single(x=value)) == (value <= 1)

    def test_cooper_eliminate_refuses_indexed(self):
        with pytest.raises(IndexedFragment):
            cooper_eliminate(P("(forall-idx i (= (idx x i) 0))"))

    @requires_solver
    def test_nonlinear_goes_to_solver(self):
        with_solver = EntailmentOracle(SolverBridge('z3'))
        assert with_solver.decide_validity(P("(= (* x y) (* y x))")) == Valid()


class TestFinRewrite:
    def test_positive_is_bounded(self):
        fin = Fin('i', P("(forall-idx i (= (idx x i) 0))").body)
        assert isinstance(rewrite_fin(fin), Exists)

    def test_negative_is_dropped(self):
        fin = Fin('i', P("(forall-idx i (= (idx x i) 0))").body)
        assert rewrite_fin(Not(fin)) == Not(TOP)


class TestLemmaRegistry:
    def test_alpha_equivalent_match(self):
        registry = LemmaRegistry()
        registry.register('l', P("(implies (exists-vec (u) (vec= u x)) (= y 0))"))
        assert registry.match(P("(exists-vec (w) (vec= w x))"), P("(= y 0)")) == 'l'
        assert registry.match(P("(exists-vec (w) (vec= w x))"), P("(= y 1)")) is None

    def test_duplicate_ids(self):
        registry = LemmaRegistry()
        registry.register('l', TOP)
        with pytest.raises(ValueError, match="duplicate"):
            registry.register('l', TOP)

    def test_order_is_kept(self):
        registry = LemmaRegistry()
        for name in ('b', 'a', 'c'):
            registry.register(name, TOP)
        assert [lemma_id for lemma_id, _ in registry] == ['b', 'a', 'c']


class TestVerdicts:
    @pytest.mark.parametrize("verdict", [Valid(), Invalid({'x[1]': 3}), Unknown("why"), Trusted("l")])
    def test_json_form(self, verdict):
        assert verdict_from_json(verdict.to_json()) == verdict

    def test_discharged(self):
        assert is_discharged(Valid()) and is_discharged(Trusted('l'))
        assert not is_discharged(Unknown()) and not is_discharged(Invalid())


class TestSmtlib:
    def test_script_is_deterministic(self):
        p = P("(implies (< 0 x) (< 0 (+ x y)))")
        assert emit_smtlib(p) == emit_smtlib(p)

    def test_index_free_declares_cells(self):
        script = emit_smtlib(P("(< (idx x 2) y_aux)", ['y_aux']))
        assert script.splitlines()[0] == "(set-logic ALL)"
        assert "(declare-const |x@2| Int)" in script
        assert "(declare-const y_aux Int)" in script
        assert script.rstrip().endswith("(check-sat)")

    def test_indexed_declares_arrays(self):
        script = emit_smtlib(P("(forall-idx i (= (idx x i) 0))"), width=3)
        assert "(declare-const x (Array Int Int))" in script
        assert "(assert (not" in script

    def test_fin_is_untranslatable(self):
        with pytest.raises(UntranslatableAtom):
            emit_smtlib(P("(fin i (= (idx x i) 0))"))
