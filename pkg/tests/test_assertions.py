"""
assertions 패키지 테스트: 단언 파싱, 평가, 정규화/α-동치, 치환, 표본 추출
"""
import pytest

from src.semantics.state import VectorState
from src.assertions.evaluation import EvaluationError, eval_predicate
from src.assertions.lowering import IndexedFragment, lower
from src.assertions.normalize import alpha_equivalent, canonicalize
from src.assertions.parser import parse_predicate, render_predicate
from src.assertions.predicate import (
    TOP, And, Eq, ExistsVec, ForallIdx, Idx, Lit, Lt, Not, PredicateSyntaxError, Svar,
    free_vars, is_index_free, max_literal_index,
)
from src.assertions.sampling import sample_models
from src.assertions.substitution import CaptureError, conditional_substitute, rename, substitute_vectors
from src.utils.seed import make_rng


class TestParser:
    def test_bare_symbols_read_first_example(self):
        assert parse_predicate("(= x 2)") == Eq(Idx('x', 1), Lit(2))

    def test_sugar_expands_to_core(self):
        assert parse_predicate("(<= x 3)") == Not(Lt(Lit(3), Idx('x', 1)))
        assert parse_predicate("(!= x 3)") == Not(Eq(Idx('x', 1), Lit(3)))

    def test_vec_eq_is_index_quantified(self):
        p = parse_predicate("(vec= x e_t)")
        assert p == ForallIdx('i', Eq(Idx('x', 'i'), Idx('e_t', 'i')))

    def test_declared_scalars(self):
        p = parse_predicate("(= x y_aux)", scalars=['y_aux'])
        assert p == Eq(Idx('x', 1), Svar('y_aux'))
        assert free_vars(p).scalars == {'y_aux'}

    def test_mixed_usage_is_rejected(self):
        with pytest.raises(PredicateSyntaxError, match="mixed index/value"):
            parse_predicate("(forall-idx i (= (idx x i) (idx i 1)))")

    def test_bad_index(self):
        with pytest.raises(PredicateSyntaxError, match="index must be >= 1"):
            parse_predicate("(= (idx x 0) 1)")

    def test_render_reads_back(self):
        text = "(forall-idx i (implies (< (idx x i) 0) (exists (k) (= (idx y i) (svar k)))))"
        p = parse_predicate(text)
        assert parse_predicate(render_predicate(p)) == p


class TestEvaluation:
    def test_indexed_predicate(self):
        sigma = VectorState.of(2, {'x': [1, 2]})
        assert eval_predicate(parse_predicate("(and (= (idx x 1) 1) (= (idx x 2) 2))"), sigma)
        assert not eval_predicate(parse_predicate("(forall-idx i (= (idx x i) 1))"), sigma)
        assert eval_predicate(parse_predicate("(exists-idx i (= (idx x i) 2))"), sigma)

    def test_index_value_terms(self):
        sigma = VectorState.of(3, {'y': [1, 2, 3]})
        assert eval_predicate(parse_predicate("(forall-idx i (= (idx y i) i))"), sigma)

    def test_scalar_environment(self):
        sigma = VectorState.single(x=4)
        p = parse_predicate("(= x k)", scalars=['k'])
        assert eval_predicate(p, sigma, {'k': 4})
        with pytest.raises(EvaluationError, match="unbound scalar"):
            eval_predicate(p, sigma)

    def test_unknown_vector(self):
        with pytest.raises(EvaluationError, match="unknown vector"):
            eval_predicate(parse_predicate("(= z 0)"), VectorState.single(x=0))

    def test_fin_holds_at_finite_width(self):
        sigma = VectorState.of(2, {'x': [0, 0]})
        assert eval_predicate(parse_predicate("(fin i (= (idx x i) 0))"), sigma)

    def test_modular_and_quantified(self):
        sigma = VectorState.single(x=6)
        assert eval_predicate(parse_predicate("(mod= x 0 6)"), sigma)
        assert eval_predicate(parse_predicate("(exists (k) (= x (+ k k)))"), sigma)


class TestLowering:
    def test_index_quantifier_needs_width(self):
        with pytest.raises(IndexedFragment):
            lower(parse_predicate("(forall-idx i (= (idx x i) 0))"))

    def test_index_free_detection(self):
        assert is_index_free(parse_predicate("(and (= x 1) (< (idx y 2) 3))"))
        assert not is_index_free(parse_predicate("(vec= x y)"))
        assert max_literal_index(parse_predicate("(< (idx y 2) 3)")) == 2


class TestNormalize:
    def test_canonicalize_flattens(self):
        p = parse_predicate("(and (and (= x 1) true) (= y 2))")
        assert canonicalize(p) == And((Eq(Idx('x', 1), Lit(1)), Eq(Idx('y', 1), Lit(2))))

    def test_alpha_equivalence_of_binders(self):
        a = parse_predicate("(exists-vec (u) (and (vec= u x) (= u 1)))")
        b = parse_predicate("(exists-vec (w) (and (= w 1) (vec= w x)))")
        assert alpha_equivalent(a, b)

    def test_free_names_must_agree(self):
        assert not alpha_equivalent(parse_predicate("(= x 1)"), parse_predicate("(= y 1)"))

    def test_fresh_names_match_bijectively(self):
        a = ExistsVec(('e_t#1_1',), Eq(Idx('e_t#1_1', 1), Idx('x#0_2', 1)))
        b = ExistsVec(('e_t#4_1',), Eq(Idx('e_t#4_1', 1), Idx('x#3_5', 1)))
        assert alpha_equivalent(a, b)


class TestSubstitution:
    def test_rename_refuses_capture(self):
        p = parse_predicate("(exists-vec (y) (= x y))")
        with pytest.raises(CaptureError):
            rename(p, {'x': 'y'})

    def test_substitute_avoids_capture(self):
        p = parse_predicate("(exists-vec (y) (= x y))")
        q = substitute_vectors(p, {'x': 'y'})
        assert free_vars(q).vectors == {'y'}
        sigma = VectorState.single(y=5)
        assert eval_predicate(q, sigma)

    def test_conditional_substitute(self):
        p = parse_predicate("(= (idx x 1) 1)")
        q = conditional_substitute(p, 'x', 'x0', 'g', True)
        on = VectorState.of(1, {'x': [1], 'x0': [9]}, {'g': [True]})
        off = VectorState.of(1, {'x': [9], 'x0': [1]}, {'g': [False]})
        assert eval_predicate(q, on)
        assert eval_predicate(q, off)


class TestSampling:
    def test_samples_satisfy_predicate(self):
        p = parse_predicate("(and (< 0 x) (mod= x 1 2))")
        models = sample_models(p, 1, bound=8, count=3, rng=make_rng(0))
        assert len(models) == 3
        for sigma, _ in models:
            assert eval_predicate(p, sigma)

    def test_unsatisfiable_in_box(self):
        assert sample_models(parse_predicate("(< 100 x)"), 1, bound=8) == []

    def test_top_fills_requested_vectors(self):
        models = sample_models(TOP, 1, count=1, vectors=['x'])
        assert models[0][0].int_vector('x') is not None
