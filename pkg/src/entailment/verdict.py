"""
판정 결과 타입
"""
from dataclasses import dataclass, field
from typing import ClassVar, Dict, Union


@dataclass(frozen=True)
class Valid:
    kind: ClassVar[str] = 'valid'

    def to_json(self) -> dict:
        return {'kind': self.kind}

    def __str__(self) -> str:
        return 'Valid'


@dataclass(frozen=True)
class Invalid:
    """반례 모델: 칸 변수 'x[1]'와 스칼라 이름 → 값"""
    countermodel: Dict[str, Union[int, bool]] = field(default_factory=dict, hash=False)
    kind: ClassVar[str] = 'invalid'

    def to_json(self) -> dict:
        return {'kind': self.kind, 'countermodel': dict(sorted(self.countermodel.items()))}

    def __str__(self) -> str:
        cells = ', '.join(f"{k}={v}" for k, v in sorted(self.countermodel.items()))
        return f"Invalid({cells})"


@dataclass(frozen=True)
class Unknown:
    reason: str = ''
    kind: ClassVar[str] = 'unknown'

    def to_json(self) -> dict:
        return {'kind': self.kind, 'reason': self.reason}

    def __str__(self) -> str:
        return f"Unknown({self.reason})"


@dataclass(frozen=True)
class Trusted:
    lemma_id: str
    kind: ClassVar[str] = 'trusted'

    def to_json(self) -> dict:
        return {'kind': self.kind, 'lemma': self.lemma_id}

    def __str__(self) -> str:
        return f"Trusted({self.lemma_id})"


Verdict = Union[Valid, Invalid, Unknown, Trusted]


def verdict_from_json(data: dict) -> Verdict:
    """
    to_json의 역

    Args:
        data: {'kind': ..., ...}

    Returns:
        Verdict
    """
    kind = data.get('kind')
    if kind == Valid.kind:
        return Valid()
    if kind == Invalid.kind:
        return Invalid(dict(data.get('countermodel', {})))
    if kind == Unknown.kind:
        return Unknown(data.get('reason', ''))
    if kind == Trusted.kind:
        return Trusted(data['lemma'])
    raise ValueError(f"unknown verdict kind: {kind!r}")


def is_discharged(v: Verdict) -> bool:
    """Valid 또는 Trusted"""
    return isinstance(v, (Valid, Trusted))
