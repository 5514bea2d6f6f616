"""
문법 흐름 분석(GFA) 고정점과 유한 정의역 결정 절차

비단말마다 "행동(behaviour)" 집합을 계산한다.
행동은 정의역 위 모든 스칼라 입력 상태에 대한 결과표이다
(정수식: 값, 불리언식: 진리값, 문장: 출력 상태 번호 또는 발산 None).
벡터 상태의 전이 맵은 같은 행동을 예제마다 적용한 것(lockstep)이다.
행동마다 처음 발견된 유도(가장 낮은 라운드)의 증인 항을 함께 기록한다
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from src.core.grammar import Grammar, Production, build_term
from src.core.problem import SynthesisProblem
from src.core.terms import Op, Sort, Term, RESERVED_BOOL, RESERVED_INT, SKIP_VAR, render_term
from src.semantics.state import VectorState
from src.assertions.evaluation import eval_predicate
from src.assertions.predicate import free_vars, is_bool_name
from src.gfa.domain import FiniteDomain, apply_bool, apply_int

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000

Behaviour = Tuple
StateVector = Tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """상태 공간 또는 행동 집합이 예산을 넘음"""


@dataclass(frozen=True)
class FixpointStats:
    """
    반복 통계

    Attributes:
        rounds: 반복 횟수 (마지막의 변화 없는 라운드 포함)
        sizes: 라운드가 끝날 때마다의 전체 행동 수
    """
    rounds: int
    sizes: Tuple[int, ...]


class GrammarFlowAnalysis:
    """
    정의역 d 위 최소 고정점 계산기

    Args:
        grammar: 문법
        d: 유한 정의역
        budget: 스칼라 상태 수와 비단말별 행동 수의 상한
        extra_vars: 문법에 없지만 상태에 실어야 하는 변수 (명세 변수 등)
        progress: tqdm 진행 표시 여부
    """

    def __init__(self, grammar: Grammar, d: FiniteDomain, budget: int = DEFAULT_BUDGET,
                 extra_vars: Iterable[str] = (), progress: bool = False):
        self.grammar = grammar
        self.d = d
        self.budget = budget
        self.progress = progress
        names = {p.rhs.name for p in grammar.productions if p.rhs.name}
        names |= set(extra_vars)
        names -= {SKIP_VAR, RESERVED_INT, RESERVED_BOOL}
        self.program_vars: Tuple[str, ...] = tuple(sorted(names))
        capacity = len(d.values) ** len(self.program_vars)
        if capacity > budget:
            raise BudgetExceeded(f"{capacity} scalar states exceed the budget {budget}")
        self.states: Tuple[StateVector, ...] = tuple(itertools.product(d.values, repeat=len(self.program_vars)))
        self.index: Dict[StateVector, int] = {s: k for k, s in enumerate(self.states)}
        self._slot = {v: k for k, v in enumerate(self.program_vars)}
        self.behaviours: Dict[str, Dict[Behaviour, Term]] = {nt.name: {} for nt in grammar.nonterminals}
        self.stats = FixpointStats(0, ())

    # -- 고정점 ----------------------------------------------------------------

    def run(self) -> 'GrammarFlowAnalysis':
        """변화가 없을 때까지 반(semi-naive) 반복"""
        g = self.grammar
        productions = [p for p in g.productions if all(g.is_declared(c) for c in p.rhs.args)]
        delta: Dict[str, Dict[Behaviour, Term]] = {name: {} for name in self.behaviours}
        sizes: List[int] = []
        rounds = 0
        bar = tqdm(desc="gfa", unit="round", disable=not self.progress)
        while True:
            rounds += 1
            found: Dict[str, Dict[Behaviour, Term]] = {name: {} for name in self.behaviours}
            for p in productions:
                for combo in self._combos(p, delta, first=rounds == 1):
                    b = self._apply(p, [c[0] for c in combo])
                    known = self.behaviours[p.lhs]
                    if b in known or b in found[p.lhs]:
                        continue
                    found[p.lhs][b] = build_term(p.rhs, tuple(c[1] for c in combo))
                    if len(known) + len(found[p.lhs]) > self.budget:
                        raise BudgetExceeded(f"behaviours of {p.lhs} exceed the budget {self.budget}")
            for name, new in found.items():
                self.behaviours[name].update(new)
            delta = found
            total = sum(len(bs) for bs in self.behaviours.values())
            sizes.append(total)
            bar.update(1)
            logger.debug(f"GFA 라운드 {rounds}: 행동 {total}개")
            if not any(found.values()):
                break
        bar.close()
        self.stats = FixpointStats(rounds, tuple(sizes))
        logger.info(f"GFA 고정점 도달: {rounds} 라운드, 행동 {sizes[-1]}개 ({self.d})")
        return self

    def _combos(self, p: Production, delta, first: bool):
        """자식 중 적어도 하나가 지난 라운드의 새 행동인 조합 (첫 라운드는 0항 규칙만)"""
        args = p.rhs.args
        if not args:
            if first:
                yield ()
            return
        if first:
            return
        for j in range(len(args)):
            new_j = delta[args[j]]
            if not new_j:
                continue
            lists = []
            for k, child in enumerate(args):
                if k < j:
                    lists.append([(b, t) for b, t in self.behaviours[child].items() if b not in delta[child]])
                elif k == j:
                    lists.append(list(new_j.items()))
                else:
                    lists.append(list(self.behaviours[child].items()))
            yield from itertools.product(*lists)

    # -- 규칙별 전이 -----------------------------------------------------------

    def _const(self, value) -> Behaviour:
        return (value,) * len(self.states)

    def _apply(self, p: Production, kids: Sequence[Behaviour]) -> Behaviour:
        rhs = p.rhs
        op = rhs.op
        n = range(len(self.states))
        if rhs.is_chain:
            return kids[0]
        if op is Op.ZERO:
            return self._const(self.d.normalize(0))
        if op is Op.ONE:
            return self._const(self.d.normalize(1))
        if op in (Op.TRUE, Op.FALSE):
            return self._const(op is Op.TRUE)
        if op is Op.VAR:
            if rhs.name not in self._slot:
                return self._const(self.d.normalize(0))
            slot = self._slot[rhs.name]
            return tuple(s[slot] for s in self.states)
        if op is Op.NOT:
            return tuple(not v for v in kids[0])
        if op in (Op.PLUS, Op.MINUS, Op.MULT, Op.DIV):
            a, b = kids
            return tuple(apply_int(self.d, op, a[i], b[i]) for i in n)
        if op in (Op.LT, Op.EQ, Op.AND):
            a, b = kids
            return tuple(apply_bool(op, a[i], b[i]) for i in n)
        if op is Op.INT_ITE:
            c, a, b = kids
            return tuple(a[i] if c[i] else b[i] for i in n)
        if op is Op.ASSIGN:
            if rhs.name == SKIP_VAR:
                return tuple(n)
            slot = self._slot[rhs.name]
            e = kids[0]
            return tuple(self.index[s[:slot] + (e[i],) + s[slot + 1:]] for i, s in enumerate(self.states))
        if op is Op.SEQ:
            first, second = kids
            return tuple(None if first[i] is None else second[first[i]] for i in n)
        if op is Op.ITE:
            c, a, b = kids
            return tuple(a[i] if c[i] else b[i] for i in n)
        if op is Op.WHILE:
            c, body = kids
            return tuple(self._loop(c, body, i) for i in n)
        raise ValueError(f"unknown operator {op.keyword}")

    @staticmethod
    def _loop(guard: Behaviour, body: Behaviour, start: int) -> Optional[int]:
        seen = set()
        current = start
        while guard[current]:
            if current in seen:
                return None
            seen.add(current)
            current = body[current]
            if current is None:
                return None
        return current

    # -- 벡터 전이 맵 -----------------------------------------------------------

    def state_index(self, example: Dict) -> int:
        return self.index[tuple(self.d.normalize(int(example.get(v, 0))) for v in self.program_vars)]

    def vector_output(self, nt: str, b: Behaviour, sigma: VectorState) -> Optional[VectorState]:
        """
        행동 b를 sigma의 모든 예제에 적용 (어느 예제든 발산하면 None)

        문장의 출력은 프로그램 변수만 담는다
        """
        indices = [self.state_index(ex) for ex in sigma.examples()]
        sort = self.grammar.sort_of(nt)
        if sort is Sort.INT:
            return sigma.replace(ints={RESERVED_INT: [b[i] for i in indices]})
        if sort is Sort.BOOL:
            return sigma.replace(bools={RESERVED_BOOL: [b[i] for i in indices]})
        outs = [b[i] for i in indices]
        if any(o is None for o in outs):
            return None
        return VectorState.from_examples([dict(zip(self.program_vars, self.states[o])) for o in outs])

    def outputs(self, nt: str, sigma: VectorState) -> Dict[VectorState, Term]:
        """
        전이 맵 T_N(sigma): 도달 가능한 출력 벡터 상태 → 증인 항

        Args:
            nt: 비단말
            sigma: 입력 벡터 상태

        Returns:
            출력 상태별 증인 (발산은 제외)
        """
        out: Dict[VectorState, Term] = {}
        for b, term in self.behaviours[nt].items():
            result = self.vector_output(nt, b, sigma)
            if result is not None:
                out.setdefault(result, term)
        return out


def gfa_fixpoint(g: Grammar, d: FiniteDomain, budget: int = DEFAULT_BUDGET,
                 extra_vars: Iterable[str] = (), progress: bool = False) -> GrammarFlowAnalysis:
    """
    문법 전체의 최소 고정점 계산

    Args:
        g: 문법
        d: 유한 정의역
        budget: 예산
        extra_vars: 추가 상태 변수
        progress: 진행 표시

    Returns:
        고정점에 도달한 GrammarFlowAnalysis (전이 맵은 outputs)

    Raises:
        BudgetExceeded: 예산 초과
    """
    return GrammarFlowAnalysis(g, d, budget, extra_vars, progress).run()


# ---------------------------------------------------------------------------
# 결정 절차
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Realizable:
    witness: Term

    def __str__(self) -> str:
        return f"Realizable (witness {render_term(self.witness)})"


@dataclass(frozen=True)
class Unrealizable:
    inputs: int = 0

    def __str__(self) -> str:
        return "Unrealizable"


FiniteVerdict = Union[Realizable, Unrealizable]


def input_models(problem: SynthesisProblem, analysis: GrammarFlowAnalysis, width: int):
    """
    입력 명세를 만족하는 (벡터 상태, 기호 변수 값) 전부

    Args:
        problem: 합성 문제
        analysis: 상태 공간을 정한 분석기
        width: 예제 수

    Returns:
        [(VectorState, env)]
    """
    d = analysis.d
    count = len(analysis.states) ** width * len(d.values) ** len(problem.symbolic_vars)
    if count > analysis.budget:
        raise BudgetExceeded(f"{count} candidate inputs exceed the budget {analysis.budget}")
    models = []
    for row in itertools.product(analysis.states, repeat=width):
        examples = [dict(zip(analysis.program_vars, s)) for s in row]
        sigma = VectorState.from_examples(examples)
        for values in itertools.product(d.values, repeat=len(problem.symbolic_vars)):
            env = dict(zip(problem.symbolic_vars, values))
            if eval_predicate(problem.input_spec, sigma, env):
                models.append((sigma, env))
    return models


def decide_finite(problem: SynthesisProblem, d: FiniteDomain, width: Optional[int] = None,
                  budget: int = DEFAULT_BUDGET, progress: bool = False) -> FiniteVerdict:
    """
    유한 정의역에서 실현 가능성 결정

    행동 하나가 입력 명세의 모든 모델에서 끝나고 출력 명세를 만족하면 Realizable이다

    Args:
        problem: 합성 문제
        d: 정의역
        width: 예제 수 (None이면 문제의 width, 그것도 없으면 1)
        budget: 예산
        progress: 진행 표시

    Returns:
        Realizable(증인) 또는 Unrealizable
    """
    width = width or problem.width or 1
    spec_vars = set()
    for spec in (problem.input_spec, problem.output_spec):
        spec_vars |= {v for v in free_vars(spec).vectors if not is_bool_name(v)}
    analysis = gfa_fixpoint(problem.grammar, d, budget, spec_vars, progress)
    models = input_models(problem, analysis, width)
    start = problem.start
    logger.info(f"입력 모델 {len(models)}개, 시작 비단말 행동 {len(analysis.behaviours[start])}개")

    verdicts: Dict[Tuple, bool] = {}
    for b, term in analysis.behaviours[start].items():
        if _realizes(analysis, start, b, models, problem.output_spec, verdicts):
            logger.info("실현 가능: 증인 발견")
            return Realizable(term)
    return Unrealizable(len(models))


def _realizes(analysis: GrammarFlowAnalysis, start: str, b: Behaviour, models, output_spec, cache) -> bool:
    for sigma, env in models:
        result = analysis.vector_output(start, b, sigma)
        if result is None:
            return False
        key = (result, tuple(sorted(env.items())))
        if key not in cache:
            cache[key] = eval_predicate(output_spec, result, env)
        if not cache[key]:
            return False
    return True
