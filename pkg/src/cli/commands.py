"""
명령행 하위 명령

    check     <proof.ulp>          증명 검사 (+ 문제가 있으면 비실현성 결론)
    decide    <problem.ulg>        유한 정의역 GFA 결정 절차
    falsify   <problem.ulg>        {input} Start {¬output} 반례(= 해 후보) 탐색
    emit-smt  <pred file> | --formula <text>
    encode-cm <machine.cm>         카운터 기계 → 합성 문제

종료 코드: check는 Verified 0 / VerifiedWithTrust 2 / Rejected 1,
decide는 Unrealizable 0 / Realizable 1, falsify는 NoneFound 0 / Counterexample 1,
파일/파싱/설정 오류는 64
"""
import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from src.utils.logger import setup_logger
from src.utils.seed import make_rng
from src.core.counter_machine import encode_counter_machine, parse_counter_machine
from src.core.problem import load_problem, render_problem, validate_problem
from src.semantics.evaluator import Fuel
from src.semantics.falsifier import Counterexample, falsify_problem
from src.assertions.parser import parse_predicate
from src.entailment.oracle import EntailmentOracle
from src.entailment.smtlib import emit_smtlib
from src.entailment.solver import SolverBridge
from src.kernel.checker import check_document
from src.kernel.conclusion import ConclusionError, conclude_unrealizability
from src.kernel.proof_file import load_proof
from src.kernel.report import Overall, render_report
from src.gfa.domain import parse_domain
from src.gfa.fixpoint import BudgetExceeded, Realizable, decide_finite
from src.cli.config import RunConfig, load_run_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_TRUSTED = 2
EXIT_USAGE = 64

CHECK_EXIT = {Overall.VERIFIED: EXIT_OK, Overall.VERIFIED_WITH_TRUST: EXIT_TRUSTED, Overall.REJECTED: EXIT_FAIL}


@dataclass(frozen=True)
class CliResult:
    """명령 결과 (표준 출력 텍스트, 표준 오류 진단)"""
    status: int
    output: str = ''
    diagnostics: str = ''


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ulcheck', description="비실현성 논리 증명 검사기")
    parser.add_argument("--config", type=str, default=None, help="설정 파일 경로")
    parser.add_argument("--log-level", dest="log_level", type=str, default=None, help="로그 레벨")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--solver", dest="solver_path", type=str, default=None, help="외부 SMT solver 명령어")
        p.add_argument("--backend", dest="solver_backend", type=str, default=None, help="auto|process|z3|none")
        p.add_argument("--timeout", dest="timeout_secs", type=float, default=None, help="solver 시간 제한 (초)")
        p.add_argument("--format", type=str, default=None, help="text|json")

    check = sub.add_parser("check", help="증명 파일 검사")
    check.add_argument("file")
    check.add_argument("--width", type=int, default=None, help="예제 폭")
    common(check)

    decide = sub.add_parser("decide", help="유한 정의역 결정 절차")
    decide.add_argument("file")
    decide.add_argument("--domain", type=str, default=None, help="mod:<m> | set:<v,...>")
    decide.add_argument("--width", dest="gfa_width", type=int, default=None, help="예제 수")
    decide.add_argument("--budget", type=int, default=None, help="행동 수 상한")
    common(decide)

    falsify = sub.add_parser("falsify", help="경계 반례 탐색")
    falsify.add_argument("file")
    falsify.add_argument("--depth", type=int, default=None)
    falsify.add_argument("--fuel", type=int, default=None)
    falsify.add_argument("--samples", type=int, default=None)
    falsify.add_argument("--bound", type=int, default=None)
    falsify.add_argument("--seed", type=int, default=None)
    common(falsify)

    emit = sub.add_parser("emit-smt", help="SMT-LIB 스크립트 출력")
    emit.add_argument("file", nargs='?', default=None)
    emit.add_argument("--formula", type=str, default=None, help="단언 텍스트")
    emit.add_argument("--width", type=int, default=None)
    common(emit)

    encode = sub.add_parser("encode-cm", help="카운터 기계를 합성 문제로 변환")
    encode.add_argument("file")
    common(encode)
    return parser


def make_oracle(config: RunConfig, width: Optional[int] = None) -> EntailmentOracle:
    """설정대로 solver와 오라클 구성"""
    solver = SolverBridge(config.solver_backend, config.solver_path, config.timeout_secs)
    if not solver.available:
        logger.warning("SMT solver 없음: 인덱스 단언 의무는 Unknown으로 남는다")
    return EntailmentOracle(solver, config.max_dnf, width)


# ---------------------------------------------------------------------------
# 하위 명령
# ---------------------------------------------------------------------------

def cmd_check(args, config: RunConfig) -> CliResult:
    doc = load_proof(args.file)
    width = args.width if args.width is not None else (doc.width if doc.width is not None else config.width)
    oracle = make_oracle(config, width)
    report = check_document(doc, oracle)
    conclusion = None
    if doc.problem is not None:
        try:
            conclusion = str(conclude_unrealizability(doc.problem, report, report.root, oracle))
        except ConclusionError as e:
            conclusion = f"Inconclusive ({e})"
    text = render_report(report, config.format, conclusion)
    return CliResult(CHECK_EXIT[report.overall], text)


def cmd_decide(args, config: RunConfig) -> CliResult:
    problem = load_problem(args.file)
    diagnostics = validate_problem(problem)
    if diagnostics:
        return CliResult(EXIT_USAGE, '', '\n'.join(diagnostics))
    d = parse_domain(config.domain)
    verdict = decide_finite(problem, d, config.gfa_width, config.budget)
    return CliResult(EXIT_FAIL if isinstance(verdict, Realizable) else EXIT_OK, str(verdict))


def cmd_falsify(args, config: RunConfig) -> CliResult:
    problem = load_problem(args.file)
    result = falsify_problem(problem, config.depth, Fuel(config.fuel), config.samples, config.bound,
                             make_rng(config.seed))
    if isinstance(result, Counterexample):
        return CliResult(EXIT_FAIL, f"Counterexample: {result}")
    suffix = " (no input samples)" if result.vacuous else ""
    return CliResult(EXIT_OK, f"NoneFound ({result.terms} terms, {result.samples} samples){suffix}")


def cmd_emit_smt(args, config: RunConfig) -> CliResult:
    if (args.file is None) == (args.formula is None):
        return CliResult(EXIT_USAGE, '', "emit-smt expects exactly one of a file or --formula")
    text = args.formula if args.formula is not None else Path(args.file).read_text(encoding='utf-8')
    return CliResult(EXIT_OK, emit_smtlib(parse_predicate(text), args.width).rstrip('\n'))


def cmd_encode_cm(args, config: RunConfig) -> CliResult:
    machine = parse_counter_machine(Path(args.file).read_text(encoding='utf-8'))
    return CliResult(EXIT_OK, render_problem(encode_counter_machine(machine)))


COMMANDS = {
    'check': cmd_check,
    'decide': cmd_decide,
    'falsify': cmd_falsify,
    'emit-smt': cmd_emit_smt,
    'encode-cm': cmd_encode_cm,
}

CONFIG_KEYS = ('solver_path', 'solver_backend', 'timeout_secs', 'format', 'domain', 'gfa_width', 'budget',
               'depth', 'fuel', 'samples', 'bound', 'seed', 'log_level')


def run_cli(argv: Sequence[str]) -> CliResult:
    """
    명령 하나 실행

    Args:
        argv: 프로그램 이름을 뺀 인자

    Returns:
        CliResult (종료 코드는 결과 상태만의 함수)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return CliResult(EXIT_USAGE if e.code else EXIT_OK, '', "invalid command line")
    try:
        overrides = {k: getattr(args, k) for k in CONFIG_KEYS if hasattr(args, k)}
        config = load_run_config(args.config, overrides)
        logging.getLogger("src").setLevel(config.log_level.upper())
        return COMMANDS[args.command](args, config)
    except (OSError, ValueError, BudgetExceeded) as e:
        logger.debug(f"명령 실패: {type(e).__name__}: {e}")
        return CliResult(EXIT_USAGE, '', f"error: {e}")


def main(argv: Optional[List[str]] = None) -> int:
    """python -m src.cli.commands 진입점"""
    argv = sys.argv[1:] if argv is None else argv
    setup_logger("src", log_dir=None, level="WARNING")
    result = run_cli(argv)
    if result.output:
        print(result.output)
    if result.diagnostics:
        print(result.diagnostics, file=sys.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
