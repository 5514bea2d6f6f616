"""
유한 경계 반례 탐색기
{P} N {Q}에 대해 L(N)의 항과 P의 표본 상태를 짝지어 Q를 깨는 실행을 찾는다.
반례가 없다는 결과는 타당성의 증명이 아니다
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Union

import numpy as np

from src.core.grammar import Grammar, vars_of_nonterminal
from src.core.problem import SynthesisProblem
from src.core.terms import Term, render_term
from src.semantics.enumerator import enumerate_terms
from src.semantics.evaluator import Fuel, eval_term
from src.semantics.search import witness_search
from src.semantics.state import VectorState
from src.assertions.evaluation import eval_predicate
from src.assertions.predicate import Not, free_vars, is_index_free, max_literal_index
from src.assertions.sampling import sample_models

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Counterexample:
    """P를 만족하는 입력에서 끝나지만 Q를 깨는 (항, 상태) 쌍"""
    term: Term
    state: VectorState
    env: Dict[str, int]
    result: VectorState
    index: int

    def __str__(self) -> str:
        return f"term {render_term(self.term)} from {self.state} reaches {self.result}"


@dataclass(frozen=True)
class NoneFound:
    """경계 안에서 반례 없음 (vacuous면 P의 표본이 없었음)"""
    terms: int = 0
    samples: int = 0
    vacuous: bool = False


FalsifyResult = Union[Counterexample, NoneFound]


def falsify_triple(pre, n: str, post, g: Grammar, depth: int = 4, fuel: Fuel = Fuel(),
                   samples: int = 50, width: Optional[int] = None, bound: int = 8,
                   rng: Optional[np.random.Generator] = None) -> FalsifyResult:
    """
    {pre} n {post}의 반례 탐색

    Args:
        pre: 사전 조건
        n: 비단말
        post: 사후 조건
        g: 문법
        depth: 항 높이 상한
        fuel: 예제당 연료
        samples: 사전 조건 표본 수
        width: 폭 (None이면 리터럴 인덱스 최댓값, 인덱스가 있는 단언이면 필수)
        bound: 표본 값의 절댓값 상한
        rng: 난수 생성기

    Returns:
        Counterexample 또는 NoneFound
    """
    if width is None:
        if not (is_index_free(pre) and is_index_free(post)):
            raise ValueError("indexed predicates need an explicit width")
        width = max(1, max_literal_index(pre), max_literal_index(post))
    vectors = set(vars_of_nonterminal(g, n)) | set(free_vars(post).vectors)
    models = sample_models(pre, width, bound, samples, rng, vectors=sorted(vectors),
                           scalars=sorted(free_vars(post).scalars))
    if not models:
        logger.debug("사전 조건 표본 없음: vacuous")
        return NoneFound(0, 0, vacuous=True)

    count = 0
    for index, term in enumerate(enumerate_terms(g, n, depth)):
        count += 1
        for sigma, env in models:
            result = eval_term(term, sigma, fuel)
            if not isinstance(result, VectorState):
                continue
            if not eval_predicate(post, result, env):
                logger.debug(f"반례 발견: {render_term(term)}")
                return Counterexample(term, sigma, dict(env), result, index)
    logger.debug(f"반례 없음: 항 {count}개 x 표본 {len(models)}개")
    return NoneFound(count, len(models))


def falsify_problem(problem: SynthesisProblem, depth: int = 4, fuel: Fuel = Fuel(),
                    samples: int = 50, bound: int = 8,
                    rng: Optional[np.random.Generator] = None) -> FalsifyResult:
    """{input} Start {¬output}의 반례 = 문제의 해 후보"""
    if problem.symbolic_vars:
        raise ValueError("problems with symbolic variables cannot be falsified by sampling")
    return falsify_triple(problem.input_spec, problem.start, Not(problem.output_spec),
                          problem.grammar, depth, fuel, samples, problem.width, bound, rng)


def search_witness(problem: SynthesisProblem, depth: int) -> Optional[Term]:
    """
    폭 1 문제의 실현 가능성 탐침: 입력 명세가 고정하는 단일 상태에서 출력 명세를
    만족하는 상태에 도달하는 항을 정확 탐색한다 (루프 없는 문법 한정)

    Args:
        problem: 입력 명세가 모든 프로그램 변수를 고정하는 폭 1 문제
        depth: 항 높이 상한

    Returns:
        증인 항 또는 None
    """
    if problem.width not in (None, 1):
        raise ValueError("witness search works on width-1 problems")
    names = sorted(vars_of_nonterminal(problem.grammar, problem.start))
    models = sample_models(problem.input_spec, 1, bound=64, count=2, vectors=names)
    if len(models) != 1:
        raise ValueError("input spec must pin exactly one state")
    sigma, _ = models[0]
    env = {k: v for k, v in sigma.example(1).items() if not isinstance(v, bool)}

    def goal(final: Dict[str, int]) -> bool:
        return eval_predicate(problem.output_spec, VectorState.single(**final))

    return witness_search(problem.grammar, problem.start, env, goal, depth)
