"""
구체 벡터 상태에서 단언 평가
"""
from typing import Mapping, Optional

from src.presburger import formula as pf
from src.presburger.cooper import eliminate
from src.semantics.state import VectorState
from src.assertions.lowering import LoweringError, cell, lower
from src.assertions.predicate import free_vars


class EvaluationError(ValueError):
    """알 수 없는 벡터, 묶이지 않은 스칼라, 폭 밖 인덱스"""


def state_values(sigma: VectorState, env: Optional[Mapping[str, int]] = None) -> dict:
    """상태와 스칼라 환경을 하강용 값 사전으로 변환"""
    values = {}
    for name, vector in sigma.ints + sigma.bools:
        for k, v in enumerate(vector, start=1):
            values[cell(name, k)] = v
    values.update(env or {})
    return values


def eval_predicate(p, sigma: VectorState, env: Optional[Mapping[str, int]] = None) -> bool:
    """
    단언 평가 (Fin은 유한 폭에서 항상 참)

    Args:
        p: 단언
        sigma: 벡터 상태
        env: 자유 스칼라 값 변수의 값

    Returns:
        참/거짓
    """
    env = dict(env or {})
    fv = free_vars(p)
    known = set(sigma.int_names) | set(sigma.bool_names)
    for name in sorted(fv.vectors):
        if name not in known:
            raise EvaluationError(f"unknown vector {name}")
    for name in sorted(fv.scalars):
        if name not in env:
            raise EvaluationError(f"unbound scalar {name}")
    if fv.indices:
        raise EvaluationError(f"free index variable {sorted(fv.indices)[0]}")
    try:
        f = lower(p, sigma.width, state_values(sigma, env))
    except LoweringError as e:
        raise EvaluationError(str(e)) from e
    result = eliminate(f)
    if not isinstance(result, pf.Const):
        raise EvaluationError(f"predicate did not reduce to a constant: {pf.render(result)}")
    return result.value
