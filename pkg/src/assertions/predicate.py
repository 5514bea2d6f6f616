"""
단언 AST
정수 항, 원자식, 연결사, 스칼라/인덱스/벡터 한정자로 이루어진다.
벡터 x의 i번째 칸 읽기는 Idx(x, i)이며 인덱스는 정수 리터럴 또는 인덱스 변수 이름이다
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, NamedTuple, Set, Tuple, Union

from src.core.terms import RESERVED_BOOL

BOOL_VECTOR_BASES = (RESERVED_BOOL, 'b_loop')
DEFAULT_INDEX = 'i'

Index = Union[int, str]


class PredicateSyntaxError(ValueError):
    """단언 구문 오류 (혼용된 인덱스/값 이름 포함)"""


# ---------------------------------------------------------------------------
# 항
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Idx:
    vec: str
    index: Index


@dataclass(frozen=True)
class IndexVal:
    """값 위치에 쓰인 인덱스 변수"""
    name: str


@dataclass(frozen=True)
class Svar:
    """스칼라 값 변수 (y_aux, k 등)"""
    name: str


@dataclass(frozen=True)
class Add:
    a: 'PTerm'
    b: 'PTerm'


@dataclass(frozen=True)
class Sub:
    a: 'PTerm'
    b: 'PTerm'


@dataclass(frozen=True)
class Scale:
    c: int
    t: 'PTerm'


@dataclass(frozen=True)
class Mul:
    """비선형 곱 (규칙 템플릿에서만 생김)"""
    a: 'PTerm'
    b: 'PTerm'


@dataclass(frozen=True)
class Div:
    """0 방향 절사 나눗셈, x/0 = 0"""
    a: 'PTerm'
    b: 'PTerm'


@dataclass(frozen=True)
class Ite:
    cond: 'Predicate'
    then: 'PTerm'
    other: 'PTerm'


PTerm = Union[Lit, Idx, IndexVal, Svar, Add, Sub, Scale, Mul, Div, Ite]


# ---------------------------------------------------------------------------
# 공식
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Eq:
    a: PTerm
    b: PTerm


@dataclass(frozen=True)
class Lt:
    a: PTerm
    b: PTerm


@dataclass(frozen=True)
class ModEq:
    """t ≡ r (mod m)"""
    t: PTerm
    r: int
    m: int


@dataclass(frozen=True)
class BIdx:
    vec: str
    index: Index


@dataclass(frozen=True)
class Fin:
    """body(i)를 만족하는 인덱스 i가 유한 개"""
    var: str
    body: 'Predicate'


@dataclass(frozen=True)
class Not:
    arg: 'Predicate'


@dataclass(frozen=True)
class And:
    args: Tuple['Predicate', ...]


@dataclass(frozen=True)
class Or:
    args: Tuple['Predicate', ...]


@dataclass(frozen=True)
class Implies:
    a: 'Predicate'
    b: 'Predicate'


@dataclass(frozen=True)
class Iff:
    a: 'Predicate'
    b: 'Predicate'


@dataclass(frozen=True)
class Exists:
    names: Tuple[str, ...]
    body: 'Predicate'


@dataclass(frozen=True)
class Forall:
    names: Tuple[str, ...]
    body: 'Predicate'


@dataclass(frozen=True)
class ExistsIdx:
    var: str
    body: 'Predicate'


@dataclass(frozen=True)
class ForallIdx:
    var: str
    body: 'Predicate'


@dataclass(frozen=True)
class ExistsVec:
    names: Tuple[str, ...]
    body: 'Predicate'


@dataclass(frozen=True)
class ForallVec:
    names: Tuple[str, ...]
    body: 'Predicate'


Predicate = Union[Top, Bot, Eq, Lt, ModEq, BIdx, Fin, Not, And, Or, Implies, Iff,
                  Exists, Forall, ExistsIdx, ForallIdx, ExistsVec, ForallVec]

TOP = Top()
BOT = Bot()

SCALAR_BINDERS = (Exists, Forall)
INDEX_BINDERS = (ExistsIdx, ForallIdx, Fin)
VECTOR_BINDERS = (ExistsVec, ForallVec)


# ---------------------------------------------------------------------------
# 생성 보조 함수
# ---------------------------------------------------------------------------

def conj(*parts: 'Predicate') -> 'Predicate':
    """Top을 빼고 묶은 논리곱 (하나면 그대로)"""
    items = tuple(p for p in parts if not isinstance(p, Top))
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(*parts: 'Predicate') -> 'Predicate':
    items = tuple(p for p in parts if not isinstance(p, Bot))
    if not items:
        return BOT
    if len(items) == 1:
        return items[0]
    return Or(items)


def vec_eq(a: str, b: str, is_bool: bool = False, index: str = DEFAULT_INDEX) -> 'Predicate':
    """벡터 동등 ∀i. a[i] = b[i] (불리언이면 ⟺)"""
    if is_bool:
        return ForallIdx(index, Iff(BIdx(a, index), BIdx(b, index)))
    return ForallIdx(index, Eq(Idx(a, index), Idx(b, index)))


def base_name(name: str) -> str:
    """새 이름 'x#3'의 기본 이름 'x'"""
    return name.split('#', 1)[0]


# ---------------------------------------------------------------------------
# 자유 변수
# ---------------------------------------------------------------------------

class FreeVars(NamedTuple):
    vectors: FrozenSet[str]
    scalars: FrozenSet[str]
    indices: FrozenSet[str]


def free_vars(p) -> FreeVars:
    """
    자유 이름 집합 (벡터, 스칼라, 인덱스)

    Args:
        p: 단언 또는 항

    Returns:
        FreeVars
    """
    vectors: Set[str] = set()
    scalars: Set[str] = set()
    indices: Set[str] = set()
    _free(p, frozenset(), frozenset(), frozenset(), vectors, scalars, indices)
    return FreeVars(frozenset(vectors), frozenset(scalars), frozenset(indices))


def _free(p, bv, bs, bi, vectors, scalars, indices):
    def index(i):
        if isinstance(i, str) and i not in bi:
            indices.add(i)

    if isinstance(p, (Idx, BIdx)):
        if p.vec not in bv:
            vectors.add(p.vec)
        index(p.index)
    elif isinstance(p, IndexVal):
        index(p.name)
    elif isinstance(p, Svar):
        if p.name not in bs:
            scalars.add(p.name)
    elif isinstance(p, (Lit, Top, Bot)):
        return
    elif isinstance(p, Scale):
        _free(p.t, bv, bs, bi, vectors, scalars, indices)
    elif isinstance(p, (Add, Sub, Mul, Div, Eq, Lt, Implies, Iff)):
        _free(p.a, bv, bs, bi, vectors, scalars, indices)
        _free(p.b, bv, bs, bi, vectors, scalars, indices)
    elif isinstance(p, Ite):
        for part in (p.cond, p.then, p.other):
            _free(part, bv, bs, bi, vectors, scalars, indices)
    elif isinstance(p, ModEq):
        _free(p.t, bv, bs, bi, vectors, scalars, indices)
    elif isinstance(p, Not):
        _free(p.arg, bv, bs, bi, vectors, scalars, indices)
    elif isinstance(p, (And, Or)):
        for a in p.args:
            _free(a, bv, bs, bi, vectors, scalars, indices)
    elif isinstance(p, SCALAR_BINDERS):
        _free(p.body, bv, bs | set(p.names), bi, vectors, scalars, indices)
    elif isinstance(p, INDEX_BINDERS):
        _free(p.body, bv, bs, bi | {p.var}, vectors, scalars, indices)
    elif isinstance(p, VECTOR_BINDERS):
        _free(p.body, bv | set(p.names), bs, bi, vectors, scalars, indices)
    else:
        raise TypeError(f"not a predicate: {p!r}")


def all_names(p) -> FrozenSet[str]:
    """자유/묶인 이름 전부"""
    out: Set[str] = set()
    for node in walk(p):
        if isinstance(node, (Idx, BIdx)):
            out.add(node.vec)
            if isinstance(node.index, str):
                out.add(node.index)
        elif isinstance(node, (IndexVal, Svar)):
            out.add(node.name)
        elif isinstance(node, SCALAR_BINDERS + VECTOR_BINDERS):
            out.update(node.names)
        elif isinstance(node, INDEX_BINDERS):
            out.add(node.var)
    return frozenset(out)


def bound_names(p) -> FrozenSet[str]:
    out: Set[str] = set()
    for node in walk(p):
        if isinstance(node, SCALAR_BINDERS + VECTOR_BINDERS):
            out.update(node.names)
        elif isinstance(node, INDEX_BINDERS):
            out.add(node.var)
    return frozenset(out)


def children(p) -> Tuple:
    """직속 하위 노드 (항과 공식)"""
    if isinstance(p, Scale):
        return (p.t,)
    if isinstance(p, (Add, Sub, Mul, Div, Eq, Lt, Implies, Iff)):
        return (p.a, p.b)
    if isinstance(p, Ite):
        return (p.cond, p.then, p.other)
    if isinstance(p, ModEq):
        return (p.t,)
    if isinstance(p, Not):
        return (p.arg,)
    if isinstance(p, (And, Or)):
        return p.args
    if isinstance(p, SCALAR_BINDERS + INDEX_BINDERS + VECTOR_BINDERS):
        return (p.body,)
    return ()


def walk(p) -> Iterable:
    """전위 순회"""
    stack = [p]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def bool_vectors(p) -> FrozenSet[str]:
    """불리언 벡터 이름: bidx로 읽히거나 기본 이름이 b_t / b_loop"""
    out: Set[str] = set()
    for node in walk(p):
        if isinstance(node, BIdx):
            out.add(node.vec)
        elif isinstance(node, VECTOR_BINDERS):
            out.update(n for n in node.names if is_bool_name(n))
        elif isinstance(node, Idx) and is_bool_name(node.vec):
            out.add(node.vec)
    return frozenset(out)


def is_bool_name(name: str) -> bool:
    return base_name(name) in BOOL_VECTOR_BASES


def is_index_free(p) -> bool:
    """모든 인덱스가 리터럴이고 Fin/인덱스 한정자가 없으면 True"""
    for node in walk(p):
        if isinstance(node, INDEX_BINDERS + (IndexVal,)):
            return False
        if isinstance(node, (Idx, BIdx)) and not isinstance(node.index, int):
            return False
    return True


def has_fin(p) -> bool:
    return any(isinstance(node, Fin) for node in walk(p))


def is_linear(p) -> bool:
    return not any(isinstance(node, (Mul, Div)) for node in walk(p))


def max_literal_index(p) -> int:
    """리터럴 인덱스의 최댓값 (없으면 0)"""
    best = 0
    for node in walk(p):
        if isinstance(node, (Idx, BIdx)) and isinstance(node.index, int):
            best = max(best, node.index)
    return best


def map_children(p, fn):
    """직속 하위 노드에 fn을 적용한 새 노드"""
    if isinstance(p, Scale):
        return Scale(p.c, fn(p.t))
    if isinstance(p, (Add, Sub, Mul, Div, Eq, Lt, Implies, Iff)):
        return type(p)(fn(p.a), fn(p.b))
    if isinstance(p, Ite):
        return Ite(fn(p.cond), fn(p.then), fn(p.other))
    if isinstance(p, ModEq):
        return ModEq(fn(p.t), p.r, p.m)
    if isinstance(p, Not):
        return Not(fn(p.arg))
    if isinstance(p, (And, Or)):
        return type(p)(tuple(fn(a) for a in p.args))
    if isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        return type(p)(p.names, fn(p.body))
    if isinstance(p, INDEX_BINDERS):
        return type(p)(p.var, fn(p.body))
    return p
