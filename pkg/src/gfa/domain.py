"""
유한 정의역 모듈
ModRing(m)은 m을 법으로 감싸고, Explicit(값 집합)은 가장 가까운 원소로 맞춘다 (동률이면 작은 쪽)
"""
import bisect
from dataclasses import dataclass
from typing import Tuple, Union

from src.core.terms import Op
from src.semantics.evaluator import trunc_div


@dataclass(frozen=True)
class ModRing:
    """정수 mod m (대표값 0..m-1)"""
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be >= 1, got {self.m}")

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(range(self.m))

    def normalize(self, v: int) -> int:
        return v % self.m

    def __str__(self) -> str:
        return f"mod:{self.m}"


@dataclass(frozen=True)
class Explicit:
    """명시적 값 집합 (밖의 결과는 가장 가까운 원소로, 동률이면 작은 쪽)"""
    members: Tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("explicit domain needs at least one value")
        object.__setattr__(self, 'members', tuple(sorted(set(self.members))))

    @property
    def values(self) -> Tuple[int, ...]:
        return self.members

    def normalize(self, v: int) -> int:
        ms = self.members
        k = bisect.bisect_left(ms, v)
        if k < len(ms) and ms[k] == v:
            return v
        if k == 0:
            return ms[0]
        if k == len(ms):
            return ms[-1]
        lo, hi = ms[k - 1], ms[k]
        return lo if v - lo <= hi - v else hi

    def __str__(self) -> str:
        return "set:" + ','.join(str(v) for v in self.members)


FiniteDomain = Union[ModRing, Explicit]


def domain_size(d: FiniteDomain) -> int:
    return len(d.values)


def apply_int(d: FiniteDomain, op: Op, a: int, b: int) -> int:
    """
    정의역 위 정수 이항 연산 (대표값으로 계산 후 정규화, x/0 = 0)

    Args:
        d: 정의역
        op: PLUS / MINUS / MULT / DIV
        a, b: 정의역 원소

    Returns:
        정의역 원소
    """
    if op is Op.PLUS:
        return d.normalize(a + b)
    if op is Op.MINUS:
        return d.normalize(a - b)
    if op is Op.MULT:
        return d.normalize(a * b)
    if op is Op.DIV:
        return d.normalize(trunc_div(a, b))
    raise ValueError(f"not an integer operator: {op.keyword}")


def apply_bool(op: Op, a, b) -> bool:
    """비교(대표값 기준)와 논리곱"""
    if op is Op.LT:
        return a < b
    if op is Op.EQ:
        return a == b
    if op is Op.AND:
        return bool(a and b)
    raise ValueError(f"not a boolean operator: {op.keyword}")


def parse_domain(spec: str) -> FiniteDomain:
    """
    'mod:<m>' 또는 'set:<v,...>' 파싱

    Args:
        spec: 정의역 문자열

    Returns:
        FiniteDomain
    """
    kind, _, rest = spec.partition(':')
    try:
        if kind == 'mod':
            return ModRing(int(rest))
        if kind == 'set':
            return Explicit(tuple(int(v) for v in rest.split(',') if v.strip()))
    except ValueError as e:
        raise ValueError(f"bad domain spec {spec!r}: {e}") from e
    raise ValueError(f"bad domain spec {spec!r}: expected mod:<m> or set:<v,...>")
