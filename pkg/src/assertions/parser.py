"""
단언 S-식 파서/렌더러
설탕 구문(<=, >, >=, !=, vec=, bvec=, 맨 심볼 x)은 핵심 형태로 풀어서 읽는다
"""
from functools import reduce
from typing import FrozenSet, Iterable

from src.core.sexpr import QuotedString, SList, Symbol, parse_sexpr, position, render_sexpr
from src.assertions.predicate import (
    DEFAULT_INDEX, BOT, TOP, Add, And, BIdx, Bot, Div, Eq, Exists, ExistsIdx, ExistsVec, Fin,
    Forall, ForallIdx, ForallVec, Iff, Implies, Idx, IndexVal, Ite, Lit, Lt, ModEq, Mul, Not,
    Or, PredicateSyntaxError, Scale, Sub, Svar, Top, free_vars, vec_eq,
)

_BINDERS = {
    'exists': Exists, 'forall': Forall,
    'exists-vec': ExistsVec, 'forall-vec': ForallVec,
}
_INDEX_BINDERS = {'exists-idx': ExistsIdx, 'forall-idx': ForallIdx, 'fin': Fin}


class _Scope:
    """묶인 이름 환경"""

    def __init__(self, scalars: FrozenSet[str], indices: FrozenSet[str], vectors: FrozenSet[str]):
        self.scalars = scalars
        self.indices = indices
        self.vectors = vectors

    def with_scalars(self, names):
        return _Scope(self.scalars | set(names), self.indices - set(names), self.vectors - set(names))

    def with_index(self, name):
        return _Scope(self.scalars - {name}, self.indices | {name}, self.vectors - {name})

    def with_vectors(self, names):
        return _Scope(self.scalars - set(names), self.indices - set(names), self.vectors | set(names))


def _error(message: str, expr) -> PredicateSyntaxError:
    return PredicateSyntaxError(f"{position(expr)}: {message}")


def _symbol(expr, what: str) -> str:
    if not isinstance(expr, str) or isinstance(expr, QuotedString):
        raise _error(f"expected {what}, got {render_sexpr(expr)}", expr)
    return str(expr)


def _names(expr) -> tuple:
    if not isinstance(expr, list) or not expr:
        raise _error("expected a non-empty binder list", expr)
    return tuple(_symbol(e, 'a binder name') for e in expr)


def _expect_arity(expr, n: int):
    if len(expr) - 1 != n:
        raise _error(f"'{expr[0]}' expects {n} argument(s), got {len(expr) - 1}", expr)


def _index(expr, scope: _Scope):
    if isinstance(expr, int):
        if expr < 1:
            raise _error(f"index must be >= 1, got {expr}", expr)
        return expr
    name = _symbol(expr, 'an index')
    if name in scope.scalars:
        raise _error(f"mixed index/value usage of '{name}'", expr)
    return name


def _vector(expr, scope: _Scope) -> str:
    name = _symbol(expr, 'a vector name')
    if name in scope.scalars or name in scope.indices:
        raise _error(f"mixed index/value usage of '{name}'", expr)
    return name


def _term(expr, scope: _Scope):
    """정수 항 파싱"""
    if isinstance(expr, bool):
        raise _error("expected an integer term", expr)
    if isinstance(expr, int):
        return Lit(expr)
    if isinstance(expr, str) and not isinstance(expr, QuotedString):
        name = str(expr)
        if name in scope.indices:
            return IndexVal(name)
        if name in scope.scalars:
            return Svar(name)
        return Idx(name, 1)
    if not isinstance(expr, list) or not expr:
        raise _error(f"expected an integer term, got {render_sexpr(expr)}", expr)

    op = _symbol(expr[0], 'an operator')
    args = expr[1:]
    if op == 'lit':
        _expect_arity(expr, 1)
        if not isinstance(args[0], int):
            raise _error("'lit' expects an integer", expr)
        return Lit(args[0])
    if op == 'idx':
        _expect_arity(expr, 2)
        return Idx(_vector(args[0], scope), _index(args[1], scope))
    if op == 'svar':
        _expect_arity(expr, 1)
        name = _symbol(args[0], 'a scalar name')
        if name in scope.indices:
            raise _error(f"mixed index/value usage of '{name}'", expr)
        return Svar(name)
    if op == '+':
        if len(args) < 2:
            raise _error("'+' expects at least 2 arguments", expr)
        return reduce(Add, [_term(a, scope) for a in args])
    if op == '-':
        if len(args) == 1:
            return Scale(-1, _term(args[0], scope))
        _expect_arity(expr, 2)
        return Sub(_term(args[0], scope), _term(args[1], scope))
    if op == 'scale':
        _expect_arity(expr, 2)
        if not isinstance(args[0], int):
            raise _error("'scale' expects an integer coefficient", expr)
        return Scale(args[0], _term(args[1], scope))
    if op == '*':
        _expect_arity(expr, 2)
        a, b = _term(args[0], scope), _term(args[1], scope)
        if isinstance(a, Lit):
            return Scale(a.value, b)
        if isinstance(b, Lit):
            return Scale(b.value, a)
        return Mul(a, b)
    if op == '/':
        _expect_arity(expr, 2)
        return Div(_term(args[0], scope), _term(args[1], scope))
    if op == 'ite':
        _expect_arity(expr, 3)
        return Ite(_formula(args[0], scope), _term(args[1], scope), _term(args[2], scope))
    raise _error(f"unknown term operator '{op}'", expr)


def _formula(expr, scope: _Scope):
    """공식 파싱"""
    if isinstance(expr, str) and not isinstance(expr, QuotedString):
        name = str(expr)
        if name == 'true':
            return TOP
        if name == 'false':
            return BOT
        return BIdx(_vector(expr, scope), 1)
    if not isinstance(expr, list) or not expr:
        raise _error(f"expected a formula, got {render_sexpr(expr)}", expr)

    op = _symbol(expr[0], 'an operator')
    args = expr[1:]
    if op in ('true', 'false'):
        _expect_arity(expr, 0)
        return TOP if op == 'true' else BOT
    if op in ('=', '<', '<=', '>', '>=', '!='):
        _expect_arity(expr, 2)
        a, b = _term(args[0], scope), _term(args[1], scope)
        return {
            '=': lambda: Eq(a, b),
            '<': lambda: Lt(a, b),
            '<=': lambda: Not(Lt(b, a)),
            '>': lambda: Lt(b, a),
            '>=': lambda: Not(Lt(a, b)),
            '!=': lambda: Not(Eq(a, b)),
        }[op]()
    if op == 'mod=':
        _expect_arity(expr, 3)
        r, m = args[1], args[2]
        if not isinstance(r, int) or not isinstance(m, int) or m < 1:
            raise _error("'mod=' expects an integer residue and a positive modulus", expr)
        return ModEq(_term(args[0], scope), r, m)
    if op == 'bidx':
        _expect_arity(expr, 2)
        return BIdx(_vector(args[0], scope), _index(args[1], scope))
    if op in ('vec=', 'bvec='):
        _expect_arity(expr, 2)
        return vec_eq(_vector(args[0], scope), _vector(args[1], scope), is_bool=(op == 'bvec='),
                      index=_fresh_index(scope))
    if op == 'not':
        _expect_arity(expr, 1)
        return Not(_formula(args[0], scope))
    if op in ('and', 'or'):
        parts = tuple(_formula(a, scope) for a in args)
        if len(parts) == 1:
            return parts[0]
        if not parts:
            return TOP if op == 'and' else BOT
        return And(parts) if op == 'and' else Or(parts)
    if op == 'implies':
        _expect_arity(expr, 2)
        return Implies(_formula(args[0], scope), _formula(args[1], scope))
    if op == 'iff':
        _expect_arity(expr, 2)
        return Iff(_formula(args[0], scope), _formula(args[1], scope))
    if op in _BINDERS:
        _expect_arity(expr, 2)
        names = _names(args[0])
        cls = _BINDERS[op]
        inner = scope.with_scalars(names) if cls in (Exists, Forall) else scope.with_vectors(names)
        return cls(names, _formula(args[1], inner))
    if op in _INDEX_BINDERS:
        _expect_arity(expr, 2)
        name = _symbol(args[0], 'an index variable')
        return _INDEX_BINDERS[op](name, _formula(args[1], scope.with_index(name)))
    raise _error(f"unknown formula operator '{op}'", expr)


def _fresh_index(scope: _Scope) -> str:
    name, k = DEFAULT_INDEX, 0
    while name in scope.indices or name in scope.scalars or name in scope.vectors:
        k += 1
        name = f"{DEFAULT_INDEX}{k}"
    return name


def predicate_from_sexpr(expr, scalars: Iterable[str] = ()):
    """
    S-식을 단언으로 변환

    Args:
        expr: S-식
        scalars: 자유 스칼라 값 변수로 선언된 이름 (맨 심볼이 벡터가 아니라 스칼라로 읽힘)

    Returns:
        Predicate
    """
    scope = _Scope(frozenset(scalars), frozenset(), frozenset())
    p = _formula(expr, scope)
    fv = free_vars(p)
    clash = (fv.vectors & (fv.scalars | fv.indices)) | (fv.scalars & fv.indices)
    if clash:
        raise PredicateSyntaxError(
            f"{position(expr)}: mixed index/value usage of '{sorted(clash)[0]}'")
    return p


def parse_predicate(text: str, scalars: Iterable[str] = ()):
    """텍스트 단언 파싱"""
    return predicate_from_sexpr(parse_sexpr(text), scalars)


# ---------------------------------------------------------------------------
# 렌더링
# ---------------------------------------------------------------------------

def _sym(name: str) -> Symbol:
    return Symbol(name)


def term_to_sexpr(t):
    if isinstance(t, Lit):
        return t.value
    if isinstance(t, Idx):
        return SList([_sym('idx'), _sym(t.vec), t.index if isinstance(t.index, int) else _sym(t.index)])
    if isinstance(t, IndexVal):
        return _sym(t.name)
    if isinstance(t, Svar):
        return SList([_sym('svar'), _sym(t.name)])
    if isinstance(t, Add):
        return SList([_sym('+'), term_to_sexpr(t.a), term_to_sexpr(t.b)])
    if isinstance(t, Sub):
        return SList([_sym('-'), term_to_sexpr(t.a), term_to_sexpr(t.b)])
    if isinstance(t, Scale):
        return SList([_sym('scale'), t.c, term_to_sexpr(t.t)])
    if isinstance(t, Mul):
        return SList([_sym('*'), term_to_sexpr(t.a), term_to_sexpr(t.b)])
    if isinstance(t, Div):
        return SList([_sym('/'), term_to_sexpr(t.a), term_to_sexpr(t.b)])
    if isinstance(t, Ite):
        return SList([_sym('ite'), predicate_to_sexpr(t.cond), term_to_sexpr(t.then), term_to_sexpr(t.other)])
    raise TypeError(f"not a term: {t!r}")


def predicate_to_sexpr(p):
    """단언을 핵심 형태 S-식으로 변환"""
    if isinstance(p, Top):
        return SList([_sym('true')])
    if isinstance(p, Bot):
        return SList([_sym('false')])
    if isinstance(p, Eq):
        return SList([_sym('='), term_to_sexpr(p.a), term_to_sexpr(p.b)])
    if isinstance(p, Lt):
        return SList([_sym('<'), term_to_sexpr(p.a), term_to_sexpr(p.b)])
    if isinstance(p, ModEq):
        return SList([_sym('mod='), term_to_sexpr(p.t), p.r, p.m])
    if isinstance(p, BIdx):
        return SList([_sym('bidx'), _sym(p.vec), p.index if isinstance(p.index, int) else _sym(p.index)])
    if isinstance(p, Not):
        return SList([_sym('not'), predicate_to_sexpr(p.arg)])
    if isinstance(p, (And, Or)):
        if not p.args:
            return SList([_sym('true' if isinstance(p, And) else 'false')])
        tag = 'and' if isinstance(p, And) else 'or'
        return SList([_sym(tag)] + [predicate_to_sexpr(a) for a in p.args])
    if isinstance(p, Implies):
        return SList([_sym('implies'), predicate_to_sexpr(p.a), predicate_to_sexpr(p.b)])
    if isinstance(p, Iff):
        return SList([_sym('iff'), predicate_to_sexpr(p.a), predicate_to_sexpr(p.b)])
    for tag, cls in _BINDERS.items():
        if isinstance(p, cls):
            return SList([_sym(tag), SList([_sym(n) for n in p.names]), predicate_to_sexpr(p.body)])
    for tag, cls in _INDEX_BINDERS.items():
        if isinstance(p, cls):
            return SList([_sym(tag), _sym(p.var), predicate_to_sexpr(p.body)])
    raise TypeError(f"not a predicate: {p!r}")


def render_predicate(p) -> str:
    """단언을 한 줄 텍스트로 변환 (parse_predicate로 다시 읽을 수 있음)"""
    return render_sexpr(predicate_to_sexpr(p))
