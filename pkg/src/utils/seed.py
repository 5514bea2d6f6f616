"""
랜덤 시드 고정 모듈
"""
import random
from typing import Optional

import numpy as np


def set_seed(seed: int = 42):
    """
    모든 랜덤 시드 고정

    Args:
        seed: 시드 값
    """
    random.seed(seed)
    np.random.seed(seed)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """
    모델 샘플링/퍼징용 난수 생성기 생성

    Args:
        seed: 시드 값 (None이면 비결정적)

    Returns:
        numpy Generator
    """
    return np.random.default_rng(seed)
