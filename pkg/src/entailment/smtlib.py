"""
SMT-LIB v2.6 스크립트 생성
스크립트는 ¬p를 단언하므로 solver의 unsat 응답은 p가 타당함을 뜻한다.
인덱스 없는 단언은 칸마다 Int 상수를, 인덱스 단언은 벡터마다 (Array Int Int)를 선언한다
"""
from typing import Dict, List, Optional, Set

from src.assertions.predicate import (
    Add, And, BIdx, Bot, Div, Eq, Exists, ExistsIdx, ExistsVec, Fin, Forall, ForallIdx,
    ForallVec, Iff, Implies, Idx, IndexVal, Ite, Lit, Lt, ModEq, Mul, Not, Or, Scale, Sub,
    Svar, Top, bool_vectors, free_vars, is_index_free,
)


class UntranslatableAtom(ValueError):
    """SMT-LIB로 표현할 수 없는 원자 (Fin)"""


def _numeral(n: int) -> str:
    return str(n) if n >= 0 else f"(- {-n})"


def _quote(name: str) -> str:
    if all(c.isalnum() or c in '_.-+*/<>=!?$%^&~' for c in name) and not name[0].isdigit():
        return name
    return f"|{name}|"


class _Emitter:
    def __init__(self, indexed: bool, width: Optional[int], bools: Set[str]):
        self.indexed = indexed
        self.width = width
        self.bools = bools
        self.cells: Dict[str, str] = {}

    def cell(self, vec: str, index) -> str:
        if self.indexed:
            i = _numeral(index) if isinstance(index, int) else _quote(index)
            return f"(select {_quote(vec)} {i})"
        name = vec if index == 1 else f"{vec}@{index}"
        self.cells[name] = 'Bool' if vec in self.bools else 'Int'
        return _quote(name)

    def term(self, t) -> str:
        if isinstance(t, Lit):
            return _numeral(t.value)
        if isinstance(t, Idx):
            return self.cell(t.vec, t.index)
        if isinstance(t, (IndexVal, Svar)):
            return _quote(t.name)
        if isinstance(t, Add):
            return f"(+ {self.term(t.a)} {self.term(t.b)})"
        if isinstance(t, Sub):
            return f"(- {self.term(t.a)} {self.term(t.b)})"
        if isinstance(t, Scale):
            return f"(* {_numeral(t.c)} {self.term(t.t)})"
        if isinstance(t, Mul):
            return f"(* {self.term(t.a)} {self.term(t.b)})"
        if isinstance(t, Div):
            a, b = self.term(t.a), self.term(t.b)
            # 0 방향 절사, x/0 = 0
            return (f"(ite (= {b} 0) 0 (* (ite (>= (* {a} {b}) 0) 1 (- 1)) "
                    f"(div (abs {a}) (abs {b}))))")
        if isinstance(t, Ite):
            return f"(ite {self.formula(t.cond)} {self.term(t.then)} {self.term(t.other)})"
        raise TypeError(f"not a term: {t!r}")

    def _index_range(self, var: str) -> str:
        v = _quote(var)
        if self.width is None:
            return f"(>= {v} 1)"
        return f"(and (>= {v} 1) (<= {v} {self.width}))"

    def formula(self, p) -> str:
        if isinstance(p, Top):
            return 'true'
        if isinstance(p, Bot):
            return 'false'
        if isinstance(p, Eq):
            return f"(= {self.term(p.a)} {self.term(p.b)})"
        if isinstance(p, Lt):
            return f"(< {self.term(p.a)} {self.term(p.b)})"
        if isinstance(p, ModEq):
            return f"(= (mod {self.term(p.t)} {p.m}) {p.r % p.m})"
        if isinstance(p, BIdx):
            return self.cell(p.vec, p.index)
        if isinstance(p, Fin):
            raise UntranslatableAtom("untranslatable atom: fin")
        if isinstance(p, Not):
            return f"(not {self.formula(p.arg)})"
        if isinstance(p, (And, Or)):
            if not p.args:
                return 'true' if isinstance(p, And) else 'false'
            tag = 'and' if isinstance(p, And) else 'or'
            return f"({tag} {' '.join(self.formula(a) for a in p.args)})"
        if isinstance(p, Implies):
            return f"(=> {self.formula(p.a)} {self.formula(p.b)})"
        if isinstance(p, Iff):
            return f"(= {self.formula(p.a)} {self.formula(p.b)})"
        if isinstance(p, (Exists, Forall)):
            tag = 'exists' if isinstance(p, Exists) else 'forall'
            binders = ' '.join(f"({_quote(n)} Int)" for n in p.names)
            return f"({tag} ({binders}) {self.formula(p.body)})"
        if isinstance(p, ExistsIdx):
            return f"(exists (({_quote(p.var)} Int)) (and {self._index_range(p.var)} {self.formula(p.body)}))"
        if isinstance(p, ForallIdx):
            return f"(forall (({_quote(p.var)} Int)) (=> {self._index_range(p.var)} {self.formula(p.body)}))"
        if isinstance(p, (ExistsVec, ForallVec)):
            tag = 'exists' if isinstance(p, ExistsVec) else 'forall'
            if self.indexed:
                binders = ' '.join(f"({_quote(n)} {self._array_sort(n)})" for n in p.names)
                return f"({tag} ({binders}) {self.formula(p.body)})"
            before = dict(self.cells)
            body = self.formula(p.body)
            local = sorted(k for k in self.cells
                           if k.split('@', 1)[0] in p.names)
            binders = ' '.join(f"({_quote(k)} {self.cells[k]})" for k in local)
            self.cells = {k: v for k, v in self.cells.items() if k not in local or k in before}
            if not local:
                return body
            return f"({tag} ({binders}) {body})"
        raise TypeError(f"not a predicate: {p!r}")

    def _array_sort(self, vec: str) -> str:
        return '(Array Int Bool)' if vec in self.bools else '(Array Int Int)'


def emit_smtlib(p, width: Optional[int] = None) -> str:
    """
    ¬p를 단언하는 SMT-LIB 스크립트 (같은 p에 대해 바이트 단위로 같다)

    Args:
        p: 단언
        width: 인덱스 한정자 범위 상한 (None이면 1 이상의 모든 정수)

    Returns:
        스크립트 텍스트
    """
    indexed = not is_index_free(p)
    emitter = _Emitter(indexed, width, set(bool_vectors(p)))
    body = emitter.formula(p)
    fv = free_vars(p)
    lines: List[str] = ["(set-logic ALL)"]
    if indexed:
        for vec in sorted(fv.vectors):
            lines.append(f"(declare-const {_quote(vec)} {emitter._array_sort(vec)})")
    else:
        for name in sorted(emitter.cells):
            lines.append(f"(declare-const {_quote(name)} {emitter.cells[name]})")
    for name in sorted(fv.scalars):
        lines.append(f"(declare-const {_quote(name)} Int)")
    for name in sorted(fv.indices):
        lines.append(f"(declare-const {_quote(name)} Int)")
    lines.append(f"(assert (not {body}))")
    lines.append("(check-sat)")
    return '\n'.join(lines) + '\n'
