"""
명령형 기본 언어의 항(Term) 모듈
문장(stmt), 정수식(int), 불리언식(bool) 세 가지 정렬(sort)을 가진다
"""
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Optional, Tuple

from src.core.sexpr import Symbol, parse_sexpr, position, render_sexpr


RESERVED_INT = 'e_t'
RESERVED_BOOL = 'b_t'
SKIP_VAR = '_skip'


class Sort(Enum):
    """항의 정렬"""
    STMT = 'stmt'
    INT = 'int'
    BOOL = 'bool'


class Op(Enum):
    """연산자: (키워드, 결과 정렬, 자식 정렬들, 변수 이름 사용 여부)"""
    ASSIGN = ('assign', Sort.STMT, (Sort.INT,), True)
    SEQ = ('seq', Sort.STMT, (Sort.STMT, Sort.STMT), False)
    ITE = ('ite', Sort.STMT, (Sort.BOOL, Sort.STMT, Sort.STMT), False)
    WHILE = ('while', Sort.STMT, (Sort.BOOL, Sort.STMT), False)
    ZERO = ('zero', Sort.INT, (), False)
    ONE = ('one', Sort.INT, (), False)
    VAR = ('var', Sort.INT, (), True)
    PLUS = ('+', Sort.INT, (Sort.INT, Sort.INT), False)
    MINUS = ('-', Sort.INT, (Sort.INT, Sort.INT), False)
    MULT = ('*', Sort.INT, (Sort.INT, Sort.INT), False)
    DIV = ('/', Sort.INT, (Sort.INT, Sort.INT), False)
    INT_ITE = ('ite', Sort.INT, (Sort.BOOL, Sort.INT, Sort.INT), False)
    TRUE = ('true', Sort.BOOL, (), False)
    FALSE = ('false', Sort.BOOL, (), False)
    NOT = ('not', Sort.BOOL, (Sort.BOOL,), False)
    AND = ('and', Sort.BOOL, (Sort.BOOL, Sort.BOOL), False)
    LT = ('<', Sort.BOOL, (Sort.INT, Sort.INT), False)
    EQ = ('==', Sort.BOOL, (Sort.INT, Sort.INT), False)

    def __init__(self, keyword, sort, child_sorts, named):
        self.keyword = keyword
        self.sort = sort
        self.child_sorts = child_sorts
        self.named = named

    @property
    def arity(self) -> int:
        return len(self.child_sorts)


BINARY_INT_OPS = (Op.PLUS, Op.MINUS, Op.MULT, Op.DIV)
COMPARISON_OPS = (Op.LT, Op.EQ)


@dataclass(frozen=True)
class Term:
    """불변 항 노드"""
    op: Op
    args: Tuple['Term', ...] = ()
    name: Optional[str] = None

    @property
    def sort(self) -> Sort:
        return self.op.sort

    def __str__(self) -> str:
        return render_term(self)


def var(name: str) -> Term:
    return Term(Op.VAR, (), name)


def assign(name: str, expr: Term) -> Term:
    return Term(Op.ASSIGN, (expr,), name)


def seq(first: Term, second: Term) -> Term:
    return Term(Op.SEQ, (first, second))


def ite(cond: Term, then: Term, other: Term) -> Term:
    op = Op.INT_ITE if then.sort is Sort.INT else Op.ITE
    return Term(op, (cond, then, other))


def while_(cond: Term, body: Term) -> Term:
    return Term(Op.WHILE, (cond, body))


def binary(op: Op, left: Term, right: Term) -> Term:
    return Term(op, (left, right))


def not_(arg: Term) -> Term:
    return Term(Op.NOT, (arg,))


ZERO = Term(Op.ZERO)
ONE = Term(Op.ONE)
TRUE = Term(Op.TRUE)
FALSE = Term(Op.FALSE)
SKIP = Term(Op.ASSIGN, (Term(Op.VAR, (), SKIP_VAR),), SKIP_VAR)


def lit(n: int) -> Term:
    """
    음이 아닌 정수 리터럴을 0/1과 +로 이루어진 균형 트리로 변환

    Args:
        n: 리터럴 값 (0 이상)

    Returns:
        정수식 항
    """
    if n < 0:
        raise ValueError(f"literal must be non-negative, got {n}")
    if n == 0:
        return ZERO
    if n == 1:
        return ONE
    half = n // 2
    return binary(Op.PLUS, lit(half), lit(n - half))


def height(t: Term) -> int:
    """항의 높이 (리프 0)"""
    if not t.args:
        return 0
    return 1 + max(height(a) for a in t.args)


def term_vars(t: Term) -> FrozenSet[str]:
    """항에서 읽거나 쓰는 프로그램 변수 집합"""
    names = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if node.op.named:
            names.add(node.name)
        stack.extend(node.args)
    return frozenset(names)


def literal_value(t: Term) -> Optional[int]:
    """0/1/+ 로만 이루어진 리터럴 트리의 값 (아니면 None)"""
    if t.op is Op.ZERO:
        return 0
    if t.op is Op.ONE:
        return 1
    if t.op is Op.PLUS:
        left, right = (literal_value(a) for a in t.args)
        if left is not None and right is not None:
            return left + right
    return None


def term_to_sexpr(t: Term):
    """항을 S-식 리스트로 변환"""
    if t.op is Op.ZERO:
        return ['lit', 0]
    if t.op is Op.ONE:
        return ['lit', 1]
    if t.op is Op.VAR:
        return ['var', t.name]
    if t.op in (Op.TRUE, Op.FALSE):
        return [t.op.keyword]
    if t == SKIP:
        return ['skip']
    items = [t.op.keyword]
    if t.op is Op.ASSIGN:
        items.append(t.name)
    items.extend(term_to_sexpr(a) for a in t.args)
    return items


def render_term(t: Term) -> str:
    """항을 S-식 텍스트로 렌더링"""
    return render_sexpr(term_to_sexpr(t))


_BY_KEYWORD = {}
for _op in Op:
    _BY_KEYWORD.setdefault(_op.keyword, []).append(_op)


def term_from_sexpr(expr, sort: Optional[Sort] = None) -> Term:
    """
    S-식을 항으로 변환 (정렬은 문맥에서 추론)

    Args:
        expr: S-식
        sort: 기대 정렬 (None이면 연산자로 추론)

    Returns:
        항
    """
    if isinstance(expr, int) and not isinstance(expr, bool):
        return _check_sort(lit(expr), sort, expr)
    if isinstance(expr, Symbol):
        if expr in ('true', 'false'):
            return _check_sort(TRUE if expr == 'true' else FALSE, sort, expr)
        return _check_sort(var(str(expr)), sort, expr)
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], str):
        raise ValueError(f"{position(expr)}: malformed term {render_sexpr(expr)}")
    key = str(expr[0])
    rest = expr[1:]
    if key == 'lit':
        if len(rest) != 1 or not isinstance(rest[0], int):
            raise ValueError(f"{position(expr)}: (lit n) expects one integer")
        return _check_sort(lit(rest[0]), sort, expr)
    if key == 'var':
        if len(rest) != 1:
            raise ValueError(f"{position(expr)}: (var x) expects one name")
        return _check_sort(var(str(rest[0])), sort, expr)
    if key == 'skip':
        return _check_sort(SKIP, sort, expr)
    candidates = _BY_KEYWORD.get(key)
    if not candidates:
        raise ValueError(f"{position(expr)}: unknown operator {key}")
    if len(candidates) > 1:
        # ite: 기대 정렬 또는 then 가지로 결정
        if sort is None:
            branch = term_from_sexpr(rest[1]) if len(rest) == 3 else None
            sort = branch.sort if branch is not None else Sort.STMT
        candidates = [c for c in candidates if c.sort is sort] or candidates
    op = candidates[0]
    name = None
    if op.named:
        if not rest or not isinstance(rest[0], Symbol):
            raise ValueError(f"{position(expr)}: ({key} x ...) expects a variable name")
        name = str(rest[0])
        rest = rest[1:]
    if len(rest) != op.arity:
        raise ValueError(f"{position(expr)}: {key} expects {op.arity} arguments, got {len(rest)}")
    args = tuple(term_from_sexpr(a, s) for a, s in zip(rest, op.child_sorts))
    return _check_sort(Term(op, args, name), sort, expr)


def _check_sort(t: Term, sort: Optional[Sort], expr) -> Term:
    if sort is not None and t.sort is not sort:
        raise ValueError(f"{position(expr)}: type mismatch: expected {sort.value}, found {t.sort.value}")
    return t


def parse_term(text: str, sort: Optional[Sort] = None) -> Term:
    """텍스트를 항으로 파싱"""
    return term_from_sexpr(parse_sexpr(text), sort)
