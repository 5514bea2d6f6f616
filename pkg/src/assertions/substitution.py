"""
단언 이름 치환 모듈
- rename: 엄격한 이름 바꾸기 (포획이 생기면 CaptureError)
- substitute_vectors: 포획 회피 치환 (묶인 이름을 α-변환)
- conditional_substitute: 조건부 벡터 치환 (ITE/While 규칙용)
"""
import itertools
from dataclasses import replace
from typing import Dict, Mapping

from src.assertions.predicate import (
    INDEX_BINDERS, SCALAR_BINDERS, VECTOR_BINDERS, BIdx, Idx, IndexVal, Ite, Not, Or, And,
    Svar, all_names, base_name, bound_names, free_vars, map_children,
)


class CaptureError(ValueError):
    """이름 바꾸기 대상이 묶인 이름과 충돌"""


def rename(p, mapping: Mapping[str, str]):
    """
    자유 벡터/스칼라 이름 바꾸기

    대상 이름이 p 안에 이미 (자유든 묶인 것이든) 있거나 두 원본이 같은 대상으로
    가면 CaptureError를 던진다.

    Args:
        p: 단언
        mapping: {원래 이름: 새 이름}

    Returns:
        이름이 바뀐 단언
    """
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return p
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise CaptureError(f"rename is not injective: {dict(mapping)}")
    fv = free_vars(p)
    free = fv.vectors | fv.scalars | fv.indices
    bound = bound_names(p)
    for source, target in mapping.items():
        if target in bound:
            raise CaptureError(f"renaming '{source}' to '{target}' would be captured by a binder")
        if target in free and target not in mapping:
            raise CaptureError(f"renaming '{source}' to '{target}' clashes with a free name")
    return _rename(p, dict(mapping))


def _rename(p, mapping: Dict[str, str]):
    if not mapping:
        return p
    if isinstance(p, (Idx, BIdx)):
        return replace(p, vec=mapping.get(p.vec, p.vec))
    if isinstance(p, Svar):
        return Svar(mapping.get(p.name, p.name))
    if isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        inner = {k: v for k, v in mapping.items() if k not in p.names}
        return replace(p, body=_rename(p.body, inner))
    if isinstance(p, INDEX_BINDERS):
        inner = {k: v for k, v in mapping.items() if k != p.var}
        return replace(p, body=_rename(p.body, inner))
    return map_children(p, lambda c: _rename(c, mapping))


class _FreshBinders:
    """α-변환용 새 묶인 이름 공급기"""

    def __init__(self, avoid):
        self.avoid = set(avoid)
        self.counter = itertools.count(1)

    def __call__(self, name: str) -> str:
        while True:
            candidate = f"{base_name(name)}#r{next(self.counter)}"
            if candidate not in self.avoid:
                self.avoid.add(candidate)
                return candidate


def substitute_vectors(p, mapping: Mapping[str, str]):
    """
    포획 회피 이름 치환

    치환 대상과 같은 이름을 묶는 한정자는 새 이름으로 α-변환한 뒤 치환한다.
    """
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return p
    fresh = _FreshBinders(all_names(p) | set(mapping) | set(mapping.values()))
    return _subst(p, mapping, set(mapping.values()), fresh)


def _subst(p, mapping, targets, fresh):
    if not mapping:
        return p
    if isinstance(p, (Idx, BIdx)):
        return replace(p, vec=mapping.get(p.vec, p.vec))
    if isinstance(p, Svar):
        return Svar(mapping.get(p.name, p.name))
    if isinstance(p, SCALAR_BINDERS + VECTOR_BINDERS):
        inner = {k: v for k, v in mapping.items() if k not in p.names}
        names, body = list(p.names), p.body
        clash = {n: fresh(n) for n in names if n in targets}
        if clash:
            body = _rename(body, clash)
            names = [clash.get(n, n) for n in names]
        return replace(p, names=tuple(names), body=_subst(body, inner, targets, fresh))
    if isinstance(p, INDEX_BINDERS):
        inner = {k: v for k, v in mapping.items() if k != p.var}
        var, body = p.var, p.body
        if var in targets:
            new = fresh(var)
            body = _rename_index(body, var, new)
            var = new
        return replace(p, var=var, body=_subst(body, inner, targets, fresh))
    return map_children(p, lambda c: _subst(c, mapping, targets, fresh))


def _rename_index(p, old: str, new: str):
    if isinstance(p, (Idx, BIdx)):
        return replace(p, index=new) if p.index == old else p
    if isinstance(p, IndexVal):
        return IndexVal(new) if p.name == old else p
    if isinstance(p, INDEX_BINDERS) and p.var == old:
        return p
    return map_children(p, lambda c: _rename_index(c, old, new))


def rename_index_var(p, old: str, new: str):
    """자유 인덱스 변수 이름 바꾸기"""
    return _rename_index(p, old, new)


def conditional_substitute(p, vec: str, fresh: str, guard: str, polarity: bool):
    """
    조건부 치환: vec[i]를 ite(guard[i] 조건, vec[i], fresh[i])로 바꾼다

    polarity가 True면 조건은 guard[i], False면 ¬guard[i]이다.
    vec를 묶는 한정자 안에서는 멈춘다.

    Args:
        p: 단언
        vec: 치환할 벡터 이름
        fresh: 조건이 거짓인 칸에 쓸 벡터 이름
        guard: 불리언 가드 벡터 이름
        polarity: 가드 극성

    Returns:
        치환된 단언
    """
    def cond(i):
        atom = BIdx(guard, i)
        return atom if polarity else Not(atom)

    def go(node):
        if isinstance(node, Idx) and node.vec == vec:
            return Ite(cond(node.index), node, Idx(fresh, node.index))
        if isinstance(node, BIdx) and node.vec == vec:
            c = cond(node.index)
            return Or((And((c, node)), And((_negate(c), BIdx(fresh, node.index)))))
        if isinstance(node, SCALAR_BINDERS + VECTOR_BINDERS) and vec in node.names:
            return node
        return map_children(node, go)

    return go(p)


def _negate(p):
    return p.arg if isinstance(p, Not) else Not(p)
