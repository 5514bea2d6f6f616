#!/usr/bin/env python3
"""
증명 검사기 실행 스크립트
예) python scripts/run_checker.py check golden/mod6_steps_even.ulp
"""
import sys
from pathlib import Path

# 프로젝트 루트를 경로에 추가
SCRIPT_DIR = Path(__file__).parent.resolve()
PROJECT_ROOT = SCRIPT_DIR.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.cli.commands import run_cli
from src.utils.logger import setup_logger

logger = setup_logger("checker", log_dir=None, level="WARNING")


def main():
    """메인 함수"""
    argv = sys.argv[1:]
    if not argv:
        print("usage: run_checker.py {check,decide,falsify,emit-smt,encode-cm} <file> [options]", file=sys.stderr)
        return 64

    verbose = sys.stdout.isatty() and '--format' not in argv
    if verbose:
        print("=" * 70)
        print(f"{argv[0]} 실행: {' '.join(argv[1:])}")
        print("=" * 70)

    result = run_cli(argv)
    if result.output:
        print(result.output)
    if result.diagnostics:
        logger.error(result.diagnostics)
        print(result.diagnostics, file=sys.stderr)

    if verbose:
        print("=" * 70)
        print(f"종료 코드: {result.status}")
        print("=" * 70)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
