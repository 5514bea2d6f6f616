"""
단언 → 프레스버거 공식 하강 모듈
폭 w가 주어지면 인덱스 한정자를 1..w로 펼치고 Fin은 참이 된다.
벡터 x의 k번째 칸은 변수 'x[k]'가 된다
"""
import logging
from itertools import product
from typing import Dict, List, Mapping, Optional, Tuple, Union

from src.presburger import formula as pf
from src.presburger.formula import BOOL, INT, Lin
from src.semantics.evaluator import trunc_div
from src.assertions.predicate import (
    BOT, TOP, Add, And, BIdx, Bot, Div, Eq, Exists, ExistsIdx, ExistsVec, Fin, Forall, ForallIdx,
    ForallVec, Iff, Implies, Idx, IndexVal, Ite, Lit, Lt, ModEq, Mul, Not, Or, Scale, Sub,
    Svar, Top, bool_vectors, max_literal_index,
)

logger = logging.getLogger(__name__)

Value = Union[int, bool]


class LoweringError(ValueError):
    """단언을 프레스버거 공식으로 바꿀 수 없음"""


class IndexedFragment(LoweringError):
    """폭 없이 인덱스 한정자/Fin/인덱스 변수를 만남"""


class NonlinearAtom(LoweringError):
    """상수가 아닌 두 항의 곱/나눗셈"""


class IndexOutOfRange(LoweringError):
    """리터럴 인덱스가 폭을 벗어남"""


def cell(vec: str, index: int) -> str:
    """벡터 칸 변수 이름"""
    return f"{vec}[{index}]"


def split_cell(name: str) -> Optional[Tuple[str, int]]:
    """'x[3]' → ('x', 3), 칸 이름이 아니면 None"""
    if not name.endswith(']') or '[' not in name:
        return None
    vec, _, rest = name.rpartition('[')
    try:
        return vec, int(rest[:-1])
    except ValueError:
        return None


class _Lowerer:
    def __init__(self, width: Optional[int], values: Mapping[str, Value], bools):
        self.width = width
        self.values = dict(values)
        self.bools = bools

    # -- 인덱스 ---------------------------------------------------------------

    def index(self, i, env: Dict[str, int]) -> int:
        if isinstance(i, str):
            if i not in env:
                raise IndexedFragment(f"free index variable '{i}'")
            return env[i]
        if self.width is not None and not 1 <= i <= self.width:
            raise IndexOutOfRange(f"index {i} out of width {self.width}")
        return i

    # -- 항 -------------------------------------------------------------------

    def term(self, t, env, values) -> List[Tuple[pf.Formula, Lin]]:
        """항 → (가드, 선형식) 경우 목록"""
        if isinstance(t, Lit):
            return [(pf.TRUE, Lin.constant(t.value))]
        if isinstance(t, Idx):
            name = cell(t.vec, self.index(t.index, env))
            if name in values:
                return [(pf.TRUE, Lin.constant(int(values[name])))]
            return [(pf.TRUE, Lin.var(name))]
        if isinstance(t, IndexVal):
            return [(pf.TRUE, Lin.constant(self.index(t.name, env)))]
        if isinstance(t, Svar):
            if t.name in values:
                return [(pf.TRUE, Lin.constant(int(values[t.name])))]
            return [(pf.TRUE, Lin.var(t.name))]
        if isinstance(t, (Add, Sub)):
            sign = 1 if isinstance(t, Add) else -1
            return [(pf.and_(ga, gb), la + lb.scale(sign))
                    for (ga, la), (gb, lb) in product(self.term(t.a, env, values), self.term(t.b, env, values))]
        if isinstance(t, Scale):
            return [(g, lin.scale(t.c)) for g, lin in self.term(t.t, env, values)]
        if isinstance(t, (Mul, Div)):
            out = []
            for (ga, la), (gb, lb) in product(self.term(t.a, env, values), self.term(t.b, env, values)):
                out.append((pf.and_(ga, gb), self._nonlinear(t, la, lb)))
            return out
        if isinstance(t, Ite):
            g = self.formula(t.cond, env, values)
            out = [(pf.and_(g, g1), l1) for g1, l1 in self.term(t.then, env, values)]
            out += [(pf.and_(pf.not_(g), g2), l2) for g2, l2 in self.term(t.other, env, values)]
            return [(g, lin) for g, lin in out if g != pf.FALSE]
        raise TypeError(f"not a term: {t!r}")

    @staticmethod
    def _nonlinear(t, la: Lin, lb: Lin) -> Lin:
        if isinstance(t, Mul):
            if la.is_const:
                return lb.scale(la.const)
            if lb.is_const:
                return la.scale(lb.const)
            raise NonlinearAtom(f"product of non-constant terms: {la} * {lb}")
        if la.is_const and lb.is_const:
            return Lin.constant(trunc_div(la.const, lb.const))
        raise NonlinearAtom(f"division with non-constant operands: {la} / {lb}")

    def _compare(self, t, env, values, build) -> pf.Formula:
        cases = []
        for (ga, la), (gb, lb) in product(self.term(t.a, env, values), self.term(t.b, env, values)):
            cases.append(pf.and_(ga, gb, build(la, lb)))
        return pf.or_(*cases)

    # -- 공식 -----------------------------------------------------------------

    def formula(self, p, env: Dict[str, int], values: Mapping[str, Value]) -> pf.Formula:
        if isinstance(p, Top):
            return pf.TRUE
        if isinstance(p, Bot):
            return pf.FALSE
        if isinstance(p, Eq):
            return self._compare(p, env, values, pf.eq2)
        if isinstance(p, Lt):
            return self._compare(p, env, values, pf.lt2)
        if isinstance(p, ModEq):
            return pf.or_(*[pf.and_(g, pf.dvd(p.m, lin.add_const(-p.r)))
                            for g, lin in self.term(p.t, env, values)])
        if isinstance(p, BIdx):
            name = cell(p.vec, self.index(p.index, env))
            if name in values:
                return pf.Const(bool(values[name]))
            return pf.bool_var(name)
        if isinstance(p, Fin):
            if self.width is None:
                raise IndexedFragment("finiteness atom needs a width")
            return pf.TRUE
        if isinstance(p, Not):
            return pf.not_(self.formula(p.arg, env, values))
        if isinstance(p, And):
            return pf.and_(*[self.formula(a, env, values) for a in p.args])
        if isinstance(p, Or):
            return pf.or_(*[self.formula(a, env, values) for a in p.args])
        if isinstance(p, Implies):
            return pf.implies(self.formula(p.a, env, values), self.formula(p.b, env, values))
        if isinstance(p, Iff):
            a = self.formula(p.a, env, values)
            b = self.formula(p.b, env, values)
            if isinstance(a, pf.BoolVar) and isinstance(b, pf.BoolVar):
                return pf.bool_eq(a.name, b.name)
            return pf.iff(a, b)
        if isinstance(p, (ExistsIdx, ForallIdx)):
            if self.width is None:
                raise IndexedFragment(f"index quantifier over '{p.var}' needs a width")
            parts = [self.formula(p.body, {**env, p.var: k}, values) for k in range(1, self.width + 1)]
            return pf.or_(*parts) if isinstance(p, ExistsIdx) else pf.and_(*parts)
        if isinstance(p, (Exists, Forall)):
            inner = {k: v for k, v in values.items() if k not in p.names}
            body = self.formula(p.body, env, inner)
            vars_ = [(n, INT) for n in p.names]
            return pf.exists(vars_, body) if isinstance(p, Exists) else pf.forall(vars_, body)
        if isinstance(p, (ExistsVec, ForallVec)):
            width = self.width if self.width is not None else max_literal_index(p.body)
            cells = [(cell(n, k), BOOL if n in self.bools else INT)
                     for n in p.names for k in range(1, width + 1)]
            hidden = {c for c, _ in cells}
            inner = {k: v for k, v in values.items() if k not in hidden}
            body = self.formula(p.body, env, inner)
            return pf.exists(cells, body) if isinstance(p, ExistsVec) else pf.forall(cells, body)
        raise TypeError(f"not a predicate: {p!r}")


def lower(p, width: Optional[int] = None, values: Optional[Mapping[str, Value]] = None,
          index_env: Optional[Mapping[str, int]] = None) -> pf.Formula:
    """
    단언을 프레스버거 공식으로 변환

    Args:
        p: 단언
        width: 예제 폭 (None이면 인덱스 없는 단언만 허용)
        values: 상수로 고정할 칸/스칼라 값 ('x[1]' → 3, 'k' → 0)
        index_env: 자유 인덱스 변수의 값

    Returns:
        프레스버거 공식
    """
    lowerer = _Lowerer(width, values or {}, bool_vectors(p))
    return lowerer.formula(p, dict(index_env or {}), lowerer.values)


def _lin_term(lin: Lin):
    terms = []
    for name, c in lin.coeffs:
        parts = split_cell(name)
        base = Idx(parts[0], parts[1]) if parts else Svar(name)
        terms.append(base if c == 1 else Scale(c, base))
    if lin.const or not terms:
        terms.append(Lit(lin.const))
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def to_predicate(f: pf.Formula):
    """
    프레스버거 공식을 단언으로 되돌림 ('x[k]' → x[k], 그 밖의 변수 → 스칼라)

    Args:
        f: 프레스버거 공식

    Returns:
        단언
    """
    if isinstance(f, pf.Const):
        return TOP if f.value else BOT
    if isinstance(f, pf.LtZero):
        return Lt(_lin_term(f.lin), Lit(0))
    if isinstance(f, pf.EqZero):
        return Eq(_lin_term(f.lin), Lit(0))
    if isinstance(f, pf.Dvd):
        atom = ModEq(_lin_term(f.lin), 0, f.d)
        return atom if f.positive else Not(atom)
    if isinstance(f, pf.BoolVar):
        parts = split_cell(f.name)
        return BIdx(parts[0], parts[1]) if parts else BIdx(f.name, 1)
    if isinstance(f, pf.BoolEq):
        return Iff(to_predicate(pf.BoolVar(f.a)), to_predicate(pf.BoolVar(f.b)))
    if isinstance(f, pf.Not):
        return Not(to_predicate(f.arg))
    if isinstance(f, (pf.And, pf.Or)):
        cls = And if isinstance(f, pf.And) else Or
        return cls(tuple(to_predicate(a) for a in f.args))
    if isinstance(f, (pf.Exists, pf.Forall)):
        names = tuple(n for n, _ in f.vars)
        if any(split_cell(n) for n in names):
            raise LoweringError("vector cell binders cannot be lifted back")
        cls = Exists if isinstance(f, pf.Exists) else Forall
        return cls(names, to_predicate(f.body))
    raise TypeError(f"not a formula: {f!r}")
