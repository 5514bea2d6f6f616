"""
공용 픽스처
"""
from pathlib import Path

import pytest

from src.entailment.oracle import EntailmentOracle
from src.entailment.solver import SolverBridge, z3_available

GOLDEN_DIR = Path(__file__).resolve().parent.parent / 'golden'

requires_solver = pytest.mark.skipif(not z3_available(), reason="z3 is not installed")


@pytest.fixture
def golden():
    """golden/ 파일 경로 생성 함수"""
    return lambda name: GOLDEN_DIR / name


@pytest.fixture
def oracle():
    """solver 없이 쿠퍼만 쓰는 오라클"""
    return EntailmentOracle(SolverBridge('none'))

