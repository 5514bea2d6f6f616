"""
외부 SMT solver 연결
- process: 설정된 명령어에 스크립트를 표준 입력으로 넘기고 첫 줄(sat/unsat/unknown)을 읽는다
- z3: 프로세스 안에서 z3.Solver().from_string 사용
- auto: 경로가 있으면 process, 없으면 z3를 import할 수 있을 때 z3, 둘 다 아니면 none
"""
import logging
import shlex
import subprocess
from typing import Optional

from src.entailment.smtlib import UntranslatableAtom, emit_smtlib
from src.entailment.verdict import Unknown, Valid, Verdict

logger = logging.getLogger(__name__)

BACKENDS = ('auto', 'process', 'z3', 'none')


def z3_available() -> bool:
    """z3 패키지 import 가능 여부"""
    try:
        import z3  # noqa: F401
    except ImportError:
        return False
    return True


class SolverBridge:
    """
    SMT-LIB 스크립트를 외부/내장 solver로 판정

    Args:
        backend: auto | process | z3 | none
        solver_path: process 백엔드 명령어 (인자 포함 가능, 예: "z3 -in")
        timeout_secs: 판정 시간 제한
    """

    def __init__(self, backend: str = 'auto', solver_path: Optional[str] = None,
                 timeout_secs: float = 10.0):
        if backend not in BACKENDS:
            raise ValueError(f"unknown solver backend: {backend}")
        self.solver_path = solver_path
        self.timeout_secs = timeout_secs
        self.backend = self._resolve(backend)
        logger.debug(f"solver 백엔드: {self.backend}")

    def _resolve(self, backend: str) -> str:
        if backend != 'auto':
            return backend
        if self.solver_path:
            return 'process'
        if z3_available():
            return 'z3'
        return 'none'

    @property
    def available(self) -> bool:
        return self.backend != 'none'

    def check_validity(self, p, width: Optional[int] = None) -> Verdict:
        """
        p의 타당성 판정 (sat 응답은 재현 가능한 반례가 없으므로 Unknown)

        Args:
            p: 단언
            width: 인덱스 범위 상한

        Returns:
            Valid 또는 Unknown
        """
        if not self.available:
            return Unknown("no solver configured")
        try:
            script = emit_smtlib(p, width)
        except UntranslatableAtom as e:
            return Unknown(str(e))
        if self.backend == 'process':
            answer = self._run_process(script)
        else:
            answer = self._run_z3(script)
        if answer == 'unsat':
            return Valid()
        if answer == 'sat':
            return Unknown("solver reported sat")
        return Unknown(f"solver reported {answer}")

    def _run_process(self, script: str) -> str:
        command = shlex.split(self.solver_path or '')
        if not command:
            return 'unknown (empty solver command)'
        try:
            completed = subprocess.run(command, input=script, capture_output=True, text=True,
                                       timeout=self.timeout_secs)
        except subprocess.TimeoutExpired:
            logger.warning(f"solver 시간 초과 ({self.timeout_secs}s)")
            return 'timeout'
        except OSError as e:
            logger.warning(f"solver 실행 실패: {e}")
            return f"unknown ({e.strerror or e})"
        lines = completed.stdout.strip().splitlines()
        return lines[0].strip() if lines else 'unknown (no output)'

    def _run_z3(self, script: str) -> str:
        import z3

        solver = z3.Solver()
        solver.set('timeout', int(self.timeout_secs * 1000))
        try:
            solver.from_string(script.replace('(check-sat)', ''))
        except z3.Z3Exception as e:
            logger.warning(f"z3 파싱 실패: {e}")
            return 'unknown (parse error)'
        result = solver.check()
        if result == z3.unsat:
            return 'unsat'
        if result == z3.sat:
            return 'sat'
        return f"unknown ({solver.reason_unknown()})"
