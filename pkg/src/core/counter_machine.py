"""
두 카운터 머신과 합성 문제로의 환원
머신 파일(.cm) 형식:
    (machine (init x y) (inc x) (dec y) (jez x 3) ...)
위치는 1부터 n+1까지이며 n+1에 도달하면 정지한다
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from src.core.grammar import parse_grammar
from src.core.problem import SynthesisProblem
from src.core.sexpr import head, parse_sexpr, position, render_sexpr
from src.assertions.parser import parse_predicate

logger = logging.getLogger(__name__)

REGISTERS = ('x', 'y')
HALT_FLAG = 'h'
KINDS = ('inc', 'dec', 'jez')


class CounterMachineError(ValueError):
    """잘못된 명령어 또는 Jez 대상 위치"""


@dataclass(frozen=True)
class Instruction:
    kind: str
    reg: str
    target: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == 'jez':
            return f"jez {self.reg} {self.target}"
        return f"{self.kind} {self.reg}"


@dataclass(frozen=True)
class CounterMachine:
    """
    두 카운터 머신

    Attributes:
        instructions: 명령어 튜플 (위치 1..n)
        init: 초기 레지스터 값 (x, y)
    """
    instructions: Tuple[Instruction, ...]
    init: Tuple[int, int] = (0, 0)

    def __post_init__(self):
        n = len(self.instructions)
        for k, ins in enumerate(self.instructions, start=1):
            if ins.kind not in KINDS:
                raise CounterMachineError(f"instruction {k}: unknown kind {ins.kind!r}")
            if ins.reg not in REGISTERS:
                raise CounterMachineError(f"instruction {k}: unknown register {ins.reg!r}")
            if ins.kind == 'jez' and (ins.target is None or not 1 <= ins.target <= n + 1):
                raise CounterMachineError(f"instruction {k}: jez target {ins.target} outside 1..{n + 1}")


@dataclass
class MachineRun:
    halted: bool
    steps: int
    registers: Dict[str, int] = field(default_factory=dict)


def run_machine(m: CounterMachine, max_steps: int = 64) -> MachineRun:
    """
    직접 단계 인터프리터

    Args:
        m: 카운터 머신
        max_steps: 실행할 최대 명령어 수

    Returns:
        MachineRun (Dec은 0 아래로 내려갈 수 있음)
    """
    regs = {'x': m.init[0], 'y': m.init[1]}
    loc = 1
    n = len(m.instructions)
    steps = 0
    while loc != n + 1:
        if steps >= max_steps:
            return MachineRun(False, steps, regs)
        ins = m.instructions[loc - 1]
        steps += 1
        if ins.kind == 'inc':
            regs[ins.reg] += 1
            loc += 1
        elif ins.kind == 'dec':
            regs[ins.reg] -= 1
            loc += 1
        else:
            loc = ins.target if regs[ins.reg] == 0 else loc + 1
    return MachineRun(True, steps, regs)


def _production(ins: Instruction, k: int) -> str:
    nxt = f"S{k + 1}"
    if ins.kind == 'inc':
        return f"((seq (assign {ins.reg} (+ (var {ins.reg}) (lit 1))) {nxt}))"
    if ins.kind == 'dec':
        return f"((seq (assign {ins.reg} (- (var {ins.reg}) (lit 1))) {nxt}))"
    return f"((ite (== (var {ins.reg}) (lit 0)) S{ins.target} {nxt}))"


def encode_counter_machine(m: CounterMachine) -> SynthesisProblem:
    """
    머신을 "정지 ⟺ 실현 가능"인 합성 문제로 환원

    S_k ::= r := r±1; S_{k+1} | skip        (Inc/Dec)
    S_k ::= if r == 0 then S_l else S_{k+1} | skip   (Jez)
    S_{n+1} ::= h := 1, Start ::= S_1

    Args:
        m: 카운터 머신

    Returns:
        입력 (x, y, h) = (x_c, y_c, 0), 출력 h = 1, 폭 1인 문제
    """
    n = len(m.instructions)
    lines = ["(grammar (start Start)", "  (nt Start stmt (S1))"]
    for k, ins in enumerate(m.instructions, start=1):
        lines.append(f"  (nt S{k} stmt {_production(ins, k)} ((skip)))")
    lines.append(f"  (nt S{n + 1} stmt ((assign {HALT_FLAG} (lit 1)))))")
    grammar = parse_grammar('\n'.join(lines))
    x0, y0 = m.init
    input_spec = parse_predicate(f"(and (= x {x0}) (= y {y0}) (= {HALT_FLAG} 0))")
    output_spec = parse_predicate(f"(= {HALT_FLAG} 1)")
    logger.debug(f"카운터 머신 환원: 명령어 {n}개 → 비단말 {n + 2}개")
    return SynthesisProblem(grammar, input_spec, output_spec, (), 1)


def machine_from_sexpr(expr) -> CounterMachine:
    if head(expr) != 'machine':
        raise CounterMachineError(f"{position(expr)}: expected (machine ...)")
    init = (0, 0)
    instructions = []
    for item in expr[1:]:
        key = head(item)
        if key == 'init':
            if len(item) != 3 or not all(isinstance(v, int) for v in item[1:]):
                raise CounterMachineError(f"{position(item)}: (init x y) expects two integers")
            init = (item[1], item[2])
        elif key in ('inc', 'dec'):
            if len(item) != 2:
                raise CounterMachineError(f"{position(item)}: ({key} r) expects one register")
            instructions.append(Instruction(key, str(item[1])))
        elif key == 'jez':
            if len(item) != 3 or not isinstance(item[2], int):
                raise CounterMachineError(f"{position(item)}: (jez r target) expects a register and a location")
            instructions.append(Instruction('jez', str(item[1]), item[2]))
        else:
            raise CounterMachineError(f"{position(item)}: unknown machine item {render_sexpr(item)}")
    return CounterMachine(tuple(instructions), init)


def parse_counter_machine(text: str) -> CounterMachine:
    """머신 파일 텍스트 파싱"""
    return machine_from_sexpr(parse_sexpr(text))


def render_counter_machine(m: CounterMachine) -> str:
    """parse_counter_machine의 역"""
    parts = [f"(init {m.init[0]} {m.init[1]})"] + [f"({ins})" for ins in m.instructions]
    return f"(machine {' '.join(parts)})"


def random_machine(rng: np.random.Generator, max_instructions: int = 3,
                   max_init: int = 3) -> CounterMachine:
    """
    무작위 머신 생성 (환원 검증 퍼징용)

    Args:
        rng: numpy 난수 생성기
        max_instructions: 최대 명령어 수
        max_init: 초기 레지스터 값 상한

    Returns:
        CounterMachine
    """
    n = int(rng.integers(1, max_instructions + 1))
    instructions = []
    for _ in range(n):
        kind = KINDS[int(rng.integers(0, len(KINDS)))]
        reg = REGISTERS[int(rng.integers(0, 2))]
        target = int(rng.integers(1, n + 2)) if kind == 'jez' else None
        instructions.append(Instruction(kind, reg, target))
    init = (int(rng.integers(0, max_init + 1)), int(rng.integers(0, max_init + 1)))
    return CounterMachine(tuple(instructions), init)
