"""
단언을 만족하는 벡터 상태 표본 추출
상자 [-bound, bound] 안에서 작으면 전수 열거, 크면 쿠퍼 모델 + 난수 시도로 뽑는다
"""
import logging
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from src.core.terms import RESERVED_BOOL, RESERVED_INT
from src.presburger import formula as pf
from src.presburger.cooper import eliminate, find_model
from src.presburger.formula import BOOL, Lin
from src.semantics.state import VectorState
from src.utils.seed import make_rng
from src.assertions.lowering import cell, lower, split_cell
from src.assertions.predicate import bool_vectors, free_vars, is_bool_name

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 4096
RANDOM_TRIES_PER_SAMPLE = 200

Model = Tuple[VectorState, Dict[str, int]]


def model_to_state(model: Mapping[str, Union[int, bool]], width: int,
                   bools: Iterable[str] = ()) -> Model:
    """
    칸 변수 모델('x[1]' → 값)을 벡터 상태와 스칼라 환경으로 변환

    Args:
        model: 변수 → 값
        width: 폭
        bools: 불리언 벡터 이름

    Returns:
        (VectorState, 스칼라 환경)
    """
    bools = set(bools)
    ints: Dict[str, List[int]] = {}
    bvecs: Dict[str, List[bool]] = {}
    env: Dict[str, int] = {}
    for name, value in model.items():
        parts = split_cell(name)
        if parts is None:
            env[name] = int(value)
            continue
        vec, k = parts
        if not 1 <= k <= width:
            continue
        if vec in bools or isinstance(value, bool) or is_bool_name(vec):
            bvecs.setdefault(vec, [False] * width)[k - 1] = bool(value)
        else:
            ints.setdefault(vec, [0] * width)[k - 1] = int(value)
    return VectorState.of(width, ints, bvecs), env


def _box(names: List[str], bound: int) -> pf.Formula:
    parts = []
    for n in names:
        parts.append(pf.le2(Lin.constant(-bound), Lin.var(n)))
        parts.append(pf.le2(Lin.var(n), Lin.constant(bound)))
    return pf.and_(*parts)


def sample_models(p, width: int, bound: int = 8, count: int = 16,
                  rng: Optional[np.random.Generator] = None,
                  vectors: Iterable[str] = (), scalars: Iterable[str] = ()) -> List[Model]:
    """
    단언 p를 만족하는 상태 표본

    Args:
        p: 단언
        width: 폭
        bound: 정수 칸의 절댓값 상한
        count: 최대 표본 수
        rng: 난수 생성기 (None이면 시드 0)
        vectors: p에 없어도 채울 벡터 이름
        scalars: p에 없어도 채울 스칼라 이름

    Returns:
        (VectorState, 스칼라 환경) 리스트, p가 상자 안에서 불만족이면 빈 리스트
    """
    rng = rng if rng is not None else make_rng(0)
    bools = set(bool_vectors(p)) | {v for v in vectors if is_bool_name(v)}
    f = eliminate(lower(p, width))
    free = pf.free_vars(f)
    int_vars = sorted(n for n, s in free.items() if s != BOOL)
    bool_vars = sorted(n for n, s in free.items() if s == BOOL)
    box = _box(int_vars, bound)

    if find_model(pf.and_(f, box)) is None:
        logger.debug("predicate has no model within bound %d", bound)
        return []

    total = (2 * bound + 1) ** len(int_vars) * 2 ** len(bool_vars)
    models: List[Dict[str, Union[int, bool]]] = []
    if total <= ENUMERATION_LIMIT:
        for ints in product(range(-bound, bound + 1), repeat=len(int_vars)):
            for flags in product((False, True), repeat=len(bool_vars)):
                model = dict(zip(int_vars, ints))
                model.update(zip(bool_vars, flags))
                if pf.evaluate(f, model):
                    models.append(model)
        if len(models) > count:
            chosen = sorted(rng.choice(len(models), size=count, replace=False))
            models = [models[i] for i in chosen]
    else:
        seen = set()
        first = find_model(pf.and_(f, box))
        candidates = [first] if first is not None else []
        for _ in range(count * RANDOM_TRIES_PER_SAMPLE):
            if len(models) >= count:
                break
            if candidates:
                model = candidates.pop()
            else:
                model = {n: int(rng.integers(-bound, bound + 1)) for n in int_vars}
                model.update({n: bool(rng.integers(0, 2)) for n in bool_vars})
            model = {n: model.get(n, 0 if n in int_vars else False) for n in int_vars + bool_vars}
            key = tuple(sorted(model.items()))
            if key in seen or not pf.evaluate(f, model):
                continue
            seen.add(key)
            models.append(model)

    fv = free_vars(p)
    all_vectors = sorted(set(fv.vectors) | set(vectors))
    all_scalars = sorted(set(fv.scalars) | set(scalars))
    out = []
    for model in models:
        full = dict(model)
        for vec in all_vectors:
            for k in range(1, width + 1):
                name = cell(vec, k)
                if name in full:
                    continue
                if vec in bools:
                    full[name] = False if vec == RESERVED_BOOL else bool(rng.integers(0, 2))
                else:
                    full[name] = 0 if vec == RESERVED_INT else int(rng.integers(-bound, bound + 1))
        for name in all_scalars:
            if name not in full:
                full[name] = int(rng.integers(-bound, bound + 1))
        out.append(model_to_state(full, width, bools))
    logger.debug("sampled %d model(s) at width %d", len(out), width)
    return out
