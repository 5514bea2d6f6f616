"""
유한 정의역 위 정확 평가
루프마다 방문한 상태를 기록해 같은 상태가 다시 나오면 발산으로 판정한다 (연료 불필요)
"""
from dataclasses import dataclass
from typing import Dict, Union

from src.core.terms import Op, Sort, Term, RESERVED_BOOL, RESERVED_INT, SKIP_VAR
from src.semantics.state import Value, VectorState
from src.gfa.domain import FiniteDomain, apply_bool, apply_int


@dataclass(frozen=True)
class Diverges:
    """index번째 예제가 루프를 빠져나오지 못함"""
    example: int


class _Cycle(Exception):
    pass


class FiniteInterpreter:
    """단일 예제 인터프리터 (정의역 d)"""

    def __init__(self, d: FiniteDomain):
        self.d = d

    def int_value(self, t: Term, env: Dict[str, Value]) -> int:
        op = t.op
        if op is Op.ZERO:
            return self.d.normalize(0)
        if op is Op.ONE:
            return self.d.normalize(1)
        if op is Op.VAR:
            return self.d.normalize(int(env.get(t.name, 0)))
        if op is Op.INT_ITE:
            taken = t.args[1] if self.bool_value(t.args[0], env) else t.args[2]
            return self.int_value(taken, env)
        return apply_int(self.d, op, self.int_value(t.args[0], env), self.int_value(t.args[1], env))

    def bool_value(self, t: Term, env: Dict[str, Value]) -> bool:
        op = t.op
        if op is Op.TRUE:
            return True
        if op is Op.FALSE:
            return False
        if op is Op.NOT:
            return not self.bool_value(t.args[0], env)
        if op is Op.AND:
            return apply_bool(op, self.bool_value(t.args[0], env), self.bool_value(t.args[1], env))
        return apply_bool(op, self.int_value(t.args[0], env), self.int_value(t.args[1], env))

    def execute(self, t: Term, env: Dict[str, Value]):
        op = t.op
        if t.sort is Sort.INT:
            env[RESERVED_INT] = self.int_value(t, env)
        elif t.sort is Sort.BOOL:
            env[RESERVED_BOOL] = self.bool_value(t, env)
        elif op is Op.ASSIGN:
            value = self.int_value(t.args[0], env)
            env[RESERVED_INT] = value
            if t.name != SKIP_VAR:
                env[t.name] = value
        elif op is Op.SEQ:
            self.execute(t.args[0], env)
            self.execute(t.args[1], env)
        elif op is Op.ITE:
            self.execute(t.args[0], env)
            self.execute(t.args[1] if env[RESERVED_BOOL] else t.args[2], env)
        elif op is Op.WHILE:
            seen = set()
            while True:
                key = tuple(sorted(env.items()))
                if key in seen:
                    raise _Cycle()
                seen.add(key)
                self.execute(t.args[0], env)
                if not env[RESERVED_BOOL]:
                    break
                self.execute(t.args[1], env)
        else:
            raise ValueError(f"unknown statement {op.keyword}")


def run_term_finite(t: Term, sigma: VectorState, d: FiniteDomain) -> Union[VectorState, Diverges]:
    """
    유한 정의역 d에서 항 실행

    Args:
        t: 항
        sigma: 입력 벡터 상태 (값은 d의 원소)
        d: 정의역

    Returns:
        출력 VectorState 또는 Diverges(가장 작은 예제 인덱스)
    """
    interp = FiniteInterpreter(d)
    outputs = []
    for index, example in enumerate(sigma.examples(), start=1):
        env = dict(example)
        try:
            interp.execute(t, env)
        except _Cycle:
            return Diverges(index)
        outputs.append(env)
    return VectorState.from_examples(outputs)
