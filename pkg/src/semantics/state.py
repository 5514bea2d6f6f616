"""
벡터 상태(VectorState) 모듈
예제 i의 변수 x는 벡터 x의 i번째 칸(1부터 시작)에 저장된다
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from src.core.terms import RESERVED_BOOL, RESERVED_INT

Value = Union[int, bool]


@dataclass(frozen=True)
class VectorState:
    """
    불변 벡터 상태

    Attributes:
        width: 예제 개수 (1 이상)
        ints: (이름, 정수 벡터) 정렬 튜플, e_t 포함
        bools: (이름, 불리언 벡터) 정렬 튜플, b_t 포함
    """
    width: int
    ints: Tuple[Tuple[str, Tuple[int, ...]], ...]
    bools: Tuple[Tuple[str, Tuple[bool, ...]], ...]

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        for name, vector in self.ints + self.bools:
            if len(vector) != self.width:
                raise ValueError(f"vector {name} has length {len(vector)}, expected {self.width}")
        if self.int_vector(RESERVED_INT) is None or self.bool_vector(RESERVED_BOOL) is None:
            raise ValueError("reserved vectors e_t and b_t must be present")

    @classmethod
    def of(cls, width: int, ints: Optional[Mapping[str, Iterable[int]]] = None,
           bools: Optional[Mapping[str, Iterable[bool]]] = None) -> 'VectorState':
        """
        벡터 딕셔너리로 상태 생성 (e_t=0, b_t=False 기본값 추가)

        Args:
            width: 예제 개수
            ints: 이름 → 정수 벡터
            bools: 이름 → 불리언 벡터

        Returns:
            VectorState
        """
        int_map = {k: tuple(int(v) for v in vec) for k, vec in (ints or {}).items()}
        bool_map = {k: tuple(bool(v) for v in vec) for k, vec in (bools or {}).items()}
        int_map.setdefault(RESERVED_INT, (0,) * width)
        bool_map.setdefault(RESERVED_BOOL, (False,) * width)
        return cls(width, tuple(sorted(int_map.items())), tuple(sorted(bool_map.items())))

    @classmethod
    def from_examples(cls, examples: List[Mapping[str, Value]]) -> 'VectorState':
        """
        예제별 스칼라 상태 리스트를 하나의 벡터 상태로 묶기
        일부 예제에만 있는 변수는 0 / False로 채운다

        Args:
            examples: 예제별 {변수: 값}

        Returns:
            VectorState
        """
        if not examples:
            raise ValueError("at least one example is required")
        int_names, bool_names = set(), set()
        for ex in examples:
            for name, value in ex.items():
                (bool_names if isinstance(value, bool) else int_names).add(name)
        ints = {n: [ex.get(n, 0) for ex in examples] for n in int_names}
        bools = {n: [ex.get(n, False) for ex in examples] for n in bool_names}
        return cls.of(len(examples), ints, bools)

    @classmethod
    def single(cls, **values: Value) -> 'VectorState':
        """폭 1 상태 생성 단축 함수"""
        return cls.from_examples([values])

    def int_vector(self, name: str) -> Optional[Tuple[int, ...]]:
        for key, vector in self.ints:
            if key == name:
                return vector
        return None

    def bool_vector(self, name: str) -> Optional[Tuple[bool, ...]]:
        for key, vector in self.bools:
            if key == name:
                return vector
        return None

    @property
    def int_names(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self.ints)

    @property
    def bool_names(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self.bools)

    def get(self, name: str, index: int) -> Value:
        """이름과 1부터 시작하는 인덱스로 값 조회"""
        if not 1 <= index <= self.width:
            raise IndexError(f"index {index} out of width {self.width}")
        vector = self.int_vector(name)
        if vector is None:
            vector = self.bool_vector(name)
        if vector is None:
            raise KeyError(name)
        return vector[index - 1]

    def example(self, index: int) -> Dict[str, Value]:
        """index번째 예제의 스칼라 상태"""
        if not 1 <= index <= self.width:
            raise IndexError(f"index {index} out of width {self.width}")
        env: Dict[str, Value] = {k: v[index - 1] for k, v in self.ints}
        env.update({k: v[index - 1] for k, v in self.bools})
        return env

    def examples(self) -> List[Dict[str, Value]]:
        return [self.example(i) for i in range(1, self.width + 1)]

    def project(self, index: int) -> 'VectorState':
        """index번째 예제만 남긴 폭 1 상태"""
        return VectorState.from_examples([self.example(index)])

    def replace(self, ints: Optional[Mapping[str, Iterable[int]]] = None,
                bools: Optional[Mapping[str, Iterable[bool]]] = None) -> 'VectorState':
        """일부 벡터를 바꾼 새 상태"""
        int_map = dict(self.ints)
        bool_map = dict(self.bools)
        int_map.update({k: tuple(v) for k, v in (ints or {}).items()})
        bool_map.update({k: tuple(v) for k, v in (bools or {}).items()})
        return VectorState.of(self.width, int_map, bool_map)

    def restrict(self, names: Iterable[str]) -> 'VectorState':
        """주어진 이름(+ e_t, b_t)만 남긴 상태"""
        keep = set(names) | {RESERVED_INT, RESERVED_BOOL}
        return VectorState.of(self.width,
                              {k: v for k, v in self.ints if k in keep},
                              {k: v for k, v in self.bools if k in keep})

    def __str__(self) -> str:
        parts = [f"{k}={list(v)}" for k, v in self.ints + self.bools]
        return '⟨' + ', '.join(parts) + '⟩'
