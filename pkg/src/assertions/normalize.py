"""
단언 정규화와 α-동치 판정
- canonicalize: And/Or 평탄화, 단위원 제거, 중첩 한정자 병합, 안 쓰는 묶인 이름 제거
- nnf_predicate: 부정을 원자까지 밀어 넣기
- alpha_equivalent: 묶인 이름 전단사, '#' 새 이름 전단사, And/Or 교환법칙을 허용하는 동치
"""
import itertools
import logging
from typing import Dict, Iterator, Optional, Tuple

from src.assertions.predicate import (
    BOT, INDEX_BINDERS, SCALAR_BINDERS, TOP, VECTOR_BINDERS, Add, And, BIdx, Bot, Div, Eq,
    Exists, ExistsIdx, ExistsVec, Fin, Forall, ForallIdx, ForallVec, Iff, Implies, Idx,
    IndexVal, Ite, Lit, Lt, ModEq, Mul, Not, Or, Scale, Sub, Svar, Top, base_name, free_vars,
    map_children,
)

logger = logging.getLogger(__name__)

_DUAL = {Exists: Forall, Forall: Exists, ExistsIdx: ForallIdx, ForallIdx: ExistsIdx,
         ExistsVec: ForallVec, ForallVec: ExistsVec}


def canonicalize(p):
    """구조 정규화 (의미 보존)"""
    if isinstance(p, (And, Or)):
        unit, zero = (Top, Bot) if isinstance(p, And) else (Bot, Top)
        items = []
        for a in p.args:
            a = canonicalize(a)
            if isinstance(a, unit):
                continue
            if isinstance(a, zero):
                return a
            if isinstance(a, type(p)):
                items.extend(a.args)
            else:
                items.append(a)
        if not items:
            return TOP if isinstance(p, And) else BOT
        if len(items) == 1:
            return items[0]
        return type(p)(tuple(items))
    if isinstance(p, Not):
        inner = canonicalize(p.arg)
        if isinstance(inner, Not):
            return inner.arg
        if isinstance(inner, Top):
            return BOT
        if isinstance(inner, Bot):
            return TOP
        return Not(inner)
    if isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        body = canonicalize(p.body)
        names = list(p.names)
        if isinstance(body, type(p)):
            names = [n for n in names if n not in body.names] + list(body.names)
            body = body.body
        fv = free_vars(body)
        used = fv.scalars if isinstance(p, SCALAR_BINDERS) else fv.vectors
        names = [n for n in names if n in used]
        if not names:
            return body
        return type(p)(tuple(names), body)
    if isinstance(p, (ExistsIdx, ForallIdx)):
        body = canonicalize(p.body)
        if p.var not in free_vars(body).indices:
            return body
        return type(p)(p.var, body)
    return map_children(p, canonicalize)


def nnf_predicate(p):
    """부정 정규형 (Implies는 Or로 풀고 Iff와 Fin은 원자로 취급)"""
    return canonicalize(_nnf(p, True))


def _nnf(p, positive: bool):
    if isinstance(p, Not):
        return _nnf(p.arg, not positive)
    if isinstance(p, Implies):
        if positive:
            return Or((_nnf(p.a, False), _nnf(p.b, True)))
        return And((_nnf(p.a, True), _nnf(p.b, False)))
    if isinstance(p, (And, Or)):
        cls = type(p) if positive else (Or if isinstance(p, And) else And)
        return cls(tuple(_nnf(a, positive) for a in p.args))
    if isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        cls = type(p) if positive else _DUAL[type(p)]
        return cls(p.names, _nnf(p.body, positive))
    if isinstance(p, (ExistsIdx, ForallIdx)):
        cls = type(p) if positive else _DUAL[type(p)]
        return cls(p.var, _nnf(p.body, positive))
    if isinstance(p, Top):
        return TOP if positive else BOT
    if isinstance(p, Bot):
        return BOT if positive else TOP
    return p if positive else Not(p)


# ---------------------------------------------------------------------------
# α-동치
# ---------------------------------------------------------------------------

def _uniquify(p, tag: str):
    """모든 묶인 이름을 서로 다른 이름으로 바꿈 (그림자 가림 제거)"""
    counter = itertools.count()

    def fresh():
        return f"?{tag}{next(counter)}"

    def go(node, env: Dict[str, str]):
        if isinstance(node, Idx):
            index = env.get(node.index, node.index) if isinstance(node.index, str) else node.index
            return Idx(env.get(node.vec, node.vec), index)
        if isinstance(node, BIdx):
            index = env.get(node.index, node.index) if isinstance(node.index, str) else node.index
            return BIdx(env.get(node.vec, node.vec), index)
        if isinstance(node, IndexVal):
            return IndexVal(env.get(node.name, node.name))
        if isinstance(node, Svar):
            return Svar(env.get(node.name, node.name))
        if isinstance(node, SCALAR_BINDERS + VECTOR_BINDERS):
            inner = dict(env)
            names = []
            for n in node.names:
                inner[n] = fresh()
                names.append(inner[n])
            return type(node)(tuple(names), go(node.body, inner))
        if isinstance(node, INDEX_BINDERS):
            inner = dict(env)
            inner[node.var] = fresh()
            return type(node)(inner[node.var], go(node.body, inner))
        return map_children(node, lambda c: go(c, env))

    return go(p, {})


def _is_bound(name) -> bool:
    return isinstance(name, str) and name.startswith('?')


def _skeleton(p) -> int:
    """이름을 추상화한 구조 해시 (교환 가능한 연산은 순서 무관)"""
    def name_key(n):
        if isinstance(n, int):
            return ('lit', n)
        if _is_bound(n):
            return ('bound',)
        if '#' in n:
            return ('fresh', base_name(n))
        return ('free', n)

    if isinstance(p, (Idx, BIdx)):
        return hash((type(p).__name__, name_key(p.vec), name_key(p.index)))
    if isinstance(p, (IndexVal, Svar)):
        return hash((type(p).__name__, name_key(p.name)))
    if isinstance(p, Lit):
        return hash(('Lit', p.value))
    if isinstance(p, (And, Or)):
        return hash((type(p).__name__, tuple(sorted(_skeleton(a) for a in p.args))))
    if isinstance(p, (Eq, Iff)):
        return hash((type(p).__name__, tuple(sorted((_skeleton(p.a), _skeleton(p.b))))))
    if isinstance(p, ModEq):
        return hash(('ModEq', p.r % p.m, p.m, _skeleton(p.t)))
    if isinstance(p, Scale):
        return hash(('Scale', p.c, _skeleton(p.t)))
    if isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        return hash((type(p).__name__, len(p.names), _skeleton(p.body)))
    if isinstance(p, INDEX_BINDERS):
        return hash((type(p).__name__, _skeleton(p.body)))
    return hash((type(p).__name__,) + tuple(_skeleton(c) for c in _kids(p)))


def _kids(p):
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
    return ()


class _Bijection:
    """묶인 이름 / 새 이름 대응 (불변, 확장 시 복사)"""

    __slots__ = ('fwd', 'bwd', 'allowed')

    def __init__(self, fwd=None, bwd=None, allowed=None):
        self.fwd: Dict[str, str] = fwd or {}
        self.bwd: Dict[str, str] = bwd or {}
        self.allowed: Dict[str, frozenset] = allowed or {}

    def allow(self, left, right) -> '_Bijection':
        allowed = dict(self.allowed)
        group = frozenset(right)
        for n in left:
            allowed[n] = group
        return _Bijection(self.fwd, self.bwd, allowed)

    def bind(self, a, b) -> Optional['_Bijection']:
        if isinstance(a, int) or isinstance(b, int):
            return self if a == b else None
        if _is_bound(a) != _is_bound(b):
            return None
        if not _is_bound(a) and ('#' in a) != ('#' in b):
            return None
        if not _is_bound(a) and '#' not in a:
            return self if a == b else None
        if not _is_bound(a) and base_name(a) != base_name(b):
            return None
        if a in self.fwd:
            return self if self.fwd[a] == b else None
        if b in self.bwd:
            return None
        if _is_bound(a) and b not in self.allowed.get(a, ()):
            return None
        fwd = dict(self.fwd)
        bwd = dict(self.bwd)
        fwd[a] = b
        bwd[b] = a
        return _Bijection(fwd, bwd, self.allowed)


def _match(p, q, m: _Bijection) -> Iterator[_Bijection]:
    if type(p) is not type(q):
        return
    if isinstance(p, (Top, Bot)):
        yield m
    elif isinstance(p, Lit):
        if p.value == q.value:
            yield m
    elif isinstance(p, (Idx, BIdx)):
        m1 = m.bind(p.vec, q.vec)
        m2 = m1.bind(p.index, q.index) if m1 is not None else None
        if m2 is not None:
            yield m2
    elif isinstance(p, (IndexVal, Svar)):
        m1 = m.bind(p.name, q.name)
        if m1 is not None:
            yield m1
    elif isinstance(p, ModEq):
        if p.m == q.m and (p.r - q.r) % p.m == 0:
            yield from _match(p.t, q.t, m)
    elif isinstance(p, Scale):
        if p.c == q.c:
            yield from _match(p.t, q.t, m)
    elif isinstance(p, (Eq, Iff)):
        yield from _match_seq((p.a, p.b), (q.a, q.b), m)
        yield from _match_seq((p.a, p.b), (q.b, q.a), m)
    elif isinstance(p, (And, Or)):
        if len(p.args) == len(q.args):
            keys_q = [_skeleton(a) for a in q.args]
            yield from _match_ac(list(p.args), list(q.args), keys_q, m)
    elif isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        if len(p.names) == len(q.names):
            for inner in _match(p.body, q.body, m.allow(p.names, q.names)):
                if all(n in inner.fwd for n in p.names):
                    yield inner
    elif isinstance(p, INDEX_BINDERS):
        for inner in _match(p.body, q.body, m.allow((p.var,), (q.var,))):
            yield inner
    else:
        yield from _match_seq(_kids(p), _kids(q), m)


def _match_seq(ps: Tuple, qs: Tuple, m: _Bijection) -> Iterator[_Bijection]:
    if not ps:
        yield m
        return
    for m1 in _match(ps[0], qs[0], m):
        yield from _match_seq(ps[1:], qs[1:], m1)


def _match_ac(ps, qs, keys_q, m: _Bijection) -> Iterator[_Bijection]:
    if not ps:
        yield m
        return
    first, rest = ps[0], ps[1:]
    key = _skeleton(first)
    for j, candidate in enumerate(qs):
        if keys_q[j] != key:
            continue
        for m1 in _match(first, candidate, m):
            yield from _match_ac(rest, qs[:j] + qs[j + 1:], keys_q[:j] + keys_q[j + 1:], m1)


def alpha_equivalent(p, q) -> bool:
    """
    α-동치 판정

    묶인 이름은 전단사로 대응되고, 자유 이름 중 '#'이 붙은 새 이름은 기본 이름이
    같은 새 이름과 전단사로 대응된다. And/Or 인자 순서와 =/⟺ 좌우는 무시한다.

    Args:
        p: 단언
        q: 단언

    Returns:
        동치면 True
    """
    a = _uniquify(canonicalize(p), 'a')
    b = _uniquify(canonicalize(q), 'b')
    if _skeleton(a) != _skeleton(b):
        return False
    return next(_match(a, b, _Bijection()), None) is not None
