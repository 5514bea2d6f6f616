"""
확장 의미론 평가기
정수식은 e_t만, 불리언식은 b_t만 바꾸고, 문장은 예제별로 같은 항을 동시에(lockstep) 실행한다
"""
import logging
from dataclasses import dataclass
from typing import Dict, Union

from src.core.terms import Op, Sort, Term, RESERVED_BOOL, RESERVED_INT, SKIP_VAR
from src.semantics.state import Value, VectorState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fuel:
    """예제당 루프 본문 실행 횟수 상한"""
    max_steps: int = 64

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError(f"fuel must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class Nontermination:
    """어떤 예제가 연료를 소진함"""
    example: int


@dataclass(frozen=True)
class RuntimeFault:
    """내부 오류 (묶이지 않은 변수 읽기 등)"""
    example: int
    detail: str


EvalResult = Union[VectorState, Nontermination, RuntimeFault]


class _Diverged(Exception):
    pass


class _Fault(Exception):
    pass


def trunc_div(a: int, b: int) -> int:
    """0 방향 절사 나눗셈, x/0 = 0"""
    if b == 0:
        return 0
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


class ScalarInterpreter:
    """
    단일 예제 인터프리터

    Args:
        fuel: 루프 본문 실행 상한
    """

    def __init__(self, fuel: Fuel):
        self.fuel = fuel
        self.steps = 0

    def int_value(self, t: Term, env: Dict[str, Value]) -> int:
        op = t.op
        if op is Op.ZERO:
            return 0
        if op is Op.ONE:
            return 1
        if op is Op.VAR:
            if t.name == SKIP_VAR:
                return int(env.get(SKIP_VAR, 0))
            if t.name not in env:
                raise _Fault(f"unbound variable {t.name}")
            return int(env[t.name])
        if op is Op.INT_ITE:
            cond = self.bool_value(t.args[0], env)
            return self.int_value(t.args[1] if cond else t.args[2], env)
        left = self.int_value(t.args[0], env)
        right = self.int_value(t.args[1], env)
        if op is Op.PLUS:
            return left + right
        if op is Op.MINUS:
            return left - right
        if op is Op.MULT:
            return left * right
        if op is Op.DIV:
            return trunc_div(left, right)
        raise _Fault(f"not an integer expression: {op.keyword}")

    def bool_value(self, t: Term, env: Dict[str, Value]) -> bool:
        op = t.op
        if op is Op.TRUE:
            return True
        if op is Op.FALSE:
            return False
        if op is Op.NOT:
            return not self.bool_value(t.args[0], env)
        if op is Op.AND:
            left = self.bool_value(t.args[0], env)
            right = self.bool_value(t.args[1], env)
            return left and right
        if op is Op.LT:
            return self.int_value(t.args[0], env) < self.int_value(t.args[1], env)
        if op is Op.EQ:
            return self.int_value(t.args[0], env) == self.int_value(t.args[1], env)
        raise _Fault(f"not a boolean expression: {op.keyword}")

    def execute(self, t: Term, env: Dict[str, Value]):
        """env를 제자리에서 갱신하며 항 실행"""
        op = t.op
        if t.sort is Sort.INT:
            env[RESERVED_INT] = self.int_value(t, env)
        elif t.sort is Sort.BOOL:
            env[RESERVED_BOOL] = self.bool_value(t, env)
        elif op is Op.ASSIGN:
            value = self.int_value(t.args[0], env)
            env[RESERVED_INT] = value
            env[t.name] = value
        elif op is Op.SEQ:
            self.execute(t.args[0], env)
            self.execute(t.args[1], env)
        elif op is Op.ITE:
            self.execute(t.args[0], env)
            self.execute(t.args[1] if env[RESERVED_BOOL] else t.args[2], env)
        elif op is Op.WHILE:
            while True:
                self.execute(t.args[0], env)
                if not env[RESERVED_BOOL]:
                    break
                self.steps += 1
                if self.steps > self.fuel.max_steps:
                    raise _Diverged()
                self.execute(t.args[1], env)
        else:
            raise _Fault(f"unknown statement {op.keyword}")


def run_example(t: Term, env: Dict[str, Value], fuel: Fuel) -> Dict[str, Value]:
    """
    단일 예제 실행 (입력 env는 바꾸지 않음)

    Raises:
        _Diverged / _Fault 는 모듈 내부에서만 사용
    """
    out = dict(env)
    out.setdefault(RESERVED_INT, 0)
    out.setdefault(RESERVED_BOOL, False)
    ScalarInterpreter(fuel).execute(t, out)
    out.pop(SKIP_VAR, None)
    return out


def eval_term(t: Term, sigma: VectorState, fuel: Fuel = Fuel()) -> EvalResult:
    """
    벡터 상태에서 항 평가

    Args:
        t: 항
        sigma: 입력 벡터 상태
        fuel: 예제당 연료

    Returns:
        출력 VectorState, 또는 Nontermination / RuntimeFault (가장 작은 예제 인덱스)
    """
    outputs = []
    for index, env in enumerate(sigma.examples(), start=1):
        try:
            outputs.append(run_example(t, env, fuel))
        except _Diverged:
            return Nontermination(index)
        except _Fault as exc:
            return RuntimeFault(index, str(exc))
        except RecursionError:
            return RuntimeFault(index, "term nesting too deep")
    return VectorState.from_examples(outputs)
