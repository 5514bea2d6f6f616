"""
합성 문제(SynthesisProblem) 모듈
문제 파일(.ulg) 형식:
    (problem (grammar ...) (input <pred>) (output <pred>) (symbolic y_aux ...)? (width n)?)
(grammar ...)만 있는 파일은 입력/출력 명세가 ⊤인 문제로 읽는다
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from src.core.grammar import (
    Grammar, GrammarError, grammar_from_sexpr, render_grammar,
    validate_grammar, vars_of_nonterminal,
)
from src.core.sexpr import head, parse_sexpr, position, render_sexpr
from src.assertions.parser import predicate_from_sexpr, render_predicate
from src.assertions.predicate import TOP, free_vars

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthesisProblem:
    """
    합성 문제 ⟨G, I, ψ⟩ (+ 바깥에서 한정되는 기호 변수)

    Attributes:
        grammar: 탐색 공간 문법
        input_spec: 벡터화된 입력 조건 I
        output_spec: 벡터화된 출력 명세 ψ
        symbolic_vars: 기호 보조 변수 이름 (비어 있을 수 있음)
        width: 예제 수 (None이면 무한 예제 / 지정 안 함)
    """
    grammar: Grammar
    input_spec: object = TOP
    output_spec: object = TOP
    symbolic_vars: Tuple[str, ...] = ()
    width: Optional[int] = None

    @property
    def start(self) -> str:
        return self.grammar.start


def problem_from_sexpr(expr) -> SynthesisProblem:
    """
    (problem ...) 또는 (grammar ...) S-식을 문제로 변환

    Args:
        expr: S-식

    Returns:
        SynthesisProblem
    """
    if head(expr) == 'grammar':
        return SynthesisProblem(grammar_from_sexpr(expr))
    if head(expr) != 'problem':
        raise GrammarError(f"{position(expr)}: expected (problem ...) or (grammar ...)")

    grammar = None
    symbolic: Tuple[str, ...] = ()
    width = None
    specs = {}
    for item in expr[1:]:
        key = head(item)
        if key == 'grammar':
            grammar = grammar_from_sexpr(item)
        elif key == 'symbolic':
            symbolic = tuple(str(s) for s in item[1:])
        elif key == 'width':
            if len(item) != 2 or not isinstance(item[1], int) or item[1] < 1:
                raise GrammarError(f"{position(item)}: (width n) expects a positive integer")
            width = item[1]
        elif key in ('input', 'output'):
            if len(item) != 2:
                raise GrammarError(f"{position(item)}: ({key} <pred>) expects one predicate")
            specs[key] = item[1]
        else:
            raise GrammarError(f"{position(item)}: unexpected problem item {render_sexpr(item)}")
    if grammar is None:
        raise GrammarError(f"{position(expr)}: problem has no (grammar ...)")

    # 기호 변수가 정해진 뒤에 명세를 읽는다
    input_spec = predicate_from_sexpr(specs['input'], symbolic) if 'input' in specs else TOP
    output_spec = predicate_from_sexpr(specs['output'], symbolic) if 'output' in specs else TOP
    return SynthesisProblem(grammar, input_spec, output_spec, symbolic, width)


def parse_problem(text: str) -> SynthesisProblem:
    """문제 파일 텍스트 파싱"""
    return problem_from_sexpr(parse_sexpr(text))


def load_problem(path: Union[str, Path]) -> SynthesisProblem:
    """
    문제 파일 로드

    Args:
        path: .ulg 파일 경로

    Returns:
        SynthesisProblem
    """
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        problem = parse_problem(f.read())
    logger.debug(f"문제 로드: {path} (시작 비단말 {problem.start})")
    return problem


def render_problem(problem: SynthesisProblem) -> str:
    """
    문제를 파일 형식 텍스트로 렌더링 (parse_problem의 역)

    Args:
        problem: 합성 문제

    Returns:
        텍스트
    """
    grammar_text = render_grammar(problem.grammar).replace('\n', '\n  ')
    lines = ["(problem", f"  {grammar_text}"]
    lines.append(f"  (input {render_predicate(problem.input_spec)})")
    lines.append(f"  (output {render_predicate(problem.output_spec)})")
    if problem.symbolic_vars:
        lines.append(f"  (symbolic {' '.join(problem.symbolic_vars)})")
    if problem.width is not None:
        lines.append(f"  (width {problem.width})")
    return '\n'.join(lines) + ')'


def validate_problem(problem: SynthesisProblem) -> List[str]:
    """
    문제 적합성 검사: 명세의 자유 벡터는 프로그램 변수/예약 변수, 자유 스칼라는 기호 변수

    Args:
        problem: 합성 문제

    Returns:
        진단 메시지 리스트
    """
    diagnostics = validate_grammar(problem.grammar)
    if diagnostics:
        return diagnostics
    allowed = vars_of_nonterminal(problem.grammar, problem.start)
    for label, spec in (('input', problem.input_spec), ('output', problem.output_spec)):
        fv = free_vars(spec)
        for name in sorted(fv.vectors - allowed):
            diagnostics.append(f"{label} spec mentions unknown variable {name}")
        for name in sorted(fv.scalars - set(problem.symbolic_vars)):
            diagnostics.append(f"{label} spec mentions undeclared symbolic variable {name}")
    return diagnostics
