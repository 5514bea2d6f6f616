"""
루프 없는 문법의 정확한 증인(witness) 탐색
구체적인 단일 예제 상태에서 도달 가능한 출력마다 증인 항 하나를 기록한다
"""
import logging
from typing import Callable, Dict, Mapping, Optional, Tuple

from src.core.grammar import Grammar, GrammarError, minimal_terms
from src.core.terms import Op, Sort, Term, SKIP_VAR
from src.semantics.evaluator import trunc_div

logger = logging.getLogger(__name__)

Env = Tuple[Tuple[str, int], ...]


class LoopInGrammar(ValueError):
    """탐색 대상 문법에 while 이 있음"""


class WitnessSearch:
    """
    (비단말, 입력 상태, 높이) 단위로 메모이즈한 도달 집합 계산기

    Args:
        grammar: while 이 없는 문법
    """

    def __init__(self, grammar: Grammar):
        self.grammar = grammar
        self.minimal = minimal_terms(grammar)
        self._memo: Dict[Tuple[str, Env, int], Dict[object, Term]] = {}

    def reach(self, nt: str, env: Env, depth: int) -> Dict[object, Term]:
        """
        도달 가능한 결과 → 증인 항

        Args:
            nt: 비단말
            env: 정렬된 (변수, 값) 튜플
            depth: 유도 높이 예산

        Returns:
            문장이면 출력 env, 정수식이면 값, 불리언식이면 진리값을 키로 하는 딕셔너리
        """
        if depth < 0:
            return {}
        key = (nt, env, depth)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        g = self.grammar
        out: Dict[object, Term] = {}
        for p in g.productions_of(nt):
            rhs = p.rhs
            if rhs.is_chain:
                if g.is_declared(rhs.args[0]):
                    for result, wit in self.reach(rhs.args[0], env, depth - 1).items():
                        out.setdefault(result, wit)
                continue
            if any(not g.is_declared(c) for c in rhs.args):
                continue
            for result, wit in self._production(rhs, env, depth).items():
                out.setdefault(result, wit)
        self._memo[key] = out
        return out

    def _child(self, name: str, env: Env, depth: int) -> Dict[object, Term]:
        return self.reach(name, env, depth - self.grammar.child_cost(name))

    def _production(self, rhs, env: Env, depth: int) -> Dict[object, Term]:
        op = rhs.op
        args = rhs.args
        out: Dict[object, Term] = {}
        if op is Op.WHILE:
            raise LoopInGrammar("witness search requires a loop-free grammar")
        if op is Op.ZERO:
            return {0: Term(op)}
        if op is Op.ONE:
            return {1: Term(op)}
        if op in (Op.TRUE, Op.FALSE):
            return {op is Op.TRUE: Term(op)}
        if op is Op.VAR:
            values = dict(env)
            values.setdefault(SKIP_VAR, 0)
            if rhs.name not in values:
                return {}
            return {values[rhs.name]: Term(op, (), rhs.name)}
        if op is Op.ASSIGN:
            for value, wit in self._child(args[0], env, depth).items():
                updated = dict(env)
                if rhs.name != SKIP_VAR:
                    updated[rhs.name] = value
                out.setdefault(tuple(sorted(updated.items())), Term(op, (wit,), rhs.name))
            return out
        if op is Op.SEQ:
            for mid, first in self._child(args[0], env, depth).items():
                for final, second in self._child(args[1], mid, depth).items():
                    out.setdefault(final, Term(op, (first, second)))
            return out
        if op in (Op.ITE, Op.INT_ITE):
            for cond, cwit in self._child(args[0], env, depth).items():
                taken, other = (args[1], args[2]) if cond else (args[2], args[1])
                filler = self.minimal.get(other)
                if filler is None:
                    continue
                for result, wit in self._child(taken, env, depth).items():
                    branches = (wit, filler) if cond else (filler, wit)
                    out.setdefault(result, Term(op, (cwit,) + branches))
            return out
        if op is Op.NOT:
            for value, wit in self._child(args[0], env, depth).items():
                out.setdefault(not value, Term(op, (wit,)))
            return out
        # 이항 연산
        lefts = self._child(args[0], env, depth)
        rights = self._child(args[1], env, depth)
        for a, lw in lefts.items():
            for b, rw in rights.items():
                out.setdefault(_apply(op, a, b), Term(op, (lw, rw)))
        return out


def _apply(op: Op, a, b):
    if op is Op.PLUS:
        return a + b
    if op is Op.MINUS:
        return a - b
    if op is Op.MULT:
        return a * b
    if op is Op.DIV:
        return trunc_div(a, b)
    if op is Op.AND:
        return a and b
    if op is Op.LT:
        return a < b
    if op is Op.EQ:
        return a == b
    raise GrammarError(f"unexpected operator {op.keyword}")


def witness_search(g: Grammar, n: str, env: Mapping[str, int],
                   goal: Callable[[Dict[str, int]], bool], depth: int) -> Optional[Term]:
    """
    goal을 만족하는 출력 상태에 도달하는 문장 항 탐색

    Args:
        g: 루프 없는 문법
        n: 문장 비단말
        env: 입력 상태 (프로그램 변수만)
        goal: 출력 상태 판정 함수
        depth: 유도 높이 예산

    Returns:
        증인 항 또는 None
    """
    if g.sort_of(n) is not Sort.STMT:
        raise GrammarError(f"witness search expects a statement nonterminal, got {n}")
    search = WitnessSearch(g)
    start_env = tuple(sorted(env.items()))
    for final, wit in search.reach(n, start_env, depth).items():
        if goal(dict(final)):
            return wit
    return None
