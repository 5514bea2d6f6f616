"""
프레스버거 공식 IR
원자식은 정규화된 선형식 l에 대해 l < 0, l = 0, d | l 세 가지와 불리언 변수 원자다
"""
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple, Union

INT = 'int'
BOOL = 'bool'


# ---------------------------------------------------------------------------
# 선형식
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lin:
    """정렬된 (변수, 계수) 쌍과 상수항으로 이루어진 선형식"""
    coeffs: Tuple[Tuple[str, int], ...] = ()
    const: int = 0

    @staticmethod
    def of(coeffs: Mapping[str, int] = None, const: int = 0) -> 'Lin':
        items = tuple(sorted((k, v) for k, v in (coeffs or {}).items() if v != 0))
        return Lin(items, const)

    @staticmethod
    def var(name: str, coeff: int = 1) -> 'Lin':
        return Lin.of({name: coeff})

    @staticmethod
    def constant(value: int) -> 'Lin':
        return Lin((), value)

    def coeff(self, name: str) -> int:
        for k, v in self.coeffs:
            if k == name:
                return v
        return 0

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(k for k, _ in self.coeffs)

    @property
    def is_const(self) -> bool:
        return not self.coeffs

    def _combine(self, other: 'Lin', sign: int) -> 'Lin':
        merged: Dict[str, int] = dict(self.coeffs)
        for k, v in other.coeffs:
            merged[k] = merged.get(k, 0) + sign * v
        return Lin.of(merged, self.const + sign * other.const)

    def __add__(self, other: 'Lin') -> 'Lin':
        return self._combine(other, 1)

    def __sub__(self, other: 'Lin') -> 'Lin':
        return self._combine(other, -1)

    def __neg__(self) -> 'Lin':
        return self.scale(-1)

    def scale(self, k: int) -> 'Lin':
        if k == 0:
            return Lin()
        return Lin(tuple((n, v * k) for n, v in self.coeffs), self.const * k)

    def add_const(self, c: int) -> 'Lin':
        return Lin(self.coeffs, self.const + c)

    def without(self, name: str) -> 'Lin':
        return Lin(tuple((k, v) for k, v in self.coeffs if k != name), self.const)

    def substitute(self, name: str, value: 'Lin') -> 'Lin':
        c = self.coeff(name)
        if c == 0:
            return self
        return self.without(name) + value.scale(c)

    def evaluate(self, model: Mapping[str, int]) -> int:
        return self.const + sum(v * int(model[k]) for k, v in self.coeffs)

    def content(self) -> int:
        """계수들의 최대공약수 (상수항 제외)"""
        return reduce(gcd, (abs(v) for _, v in self.coeffs), 0)

    def __str__(self) -> str:
        parts = [(f"{v}*{k}" if v != 1 else k) for k, v in self.coeffs]
        if self.const or not parts:
            parts.append(str(self.const))
        return ' + '.join(parts)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


# ---------------------------------------------------------------------------
# 공식 노드
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class LtZero:
    lin: Lin


@dataclass(frozen=True)
class EqZero:
    lin: Lin


@dataclass(frozen=True)
class Dvd:
    """d | lin (positive=False이면 d ∤ lin)"""
    d: int
    lin: Lin
    positive: bool = True


@dataclass(frozen=True)
class BoolVar:
    name: str


@dataclass(frozen=True)
class BoolEq:
    a: str
    b: str


@dataclass(frozen=True)
class Not:
    arg: 'Formula'


@dataclass(frozen=True)
class And:
    args: Tuple['Formula', ...]


@dataclass(frozen=True)
class Or:
    args: Tuple['Formula', ...]


@dataclass(frozen=True)
class Exists:
    vars: Tuple[Tuple[str, str], ...]
    body: 'Formula'


@dataclass(frozen=True)
class Forall:
    vars: Tuple[Tuple[str, str], ...]
    body: 'Formula'


Formula = Union[Const, LtZero, EqZero, Dvd, BoolVar, BoolEq, Not, And, Or, Exists, Forall]
ATOMS = (Const, LtZero, EqZero, Dvd, BoolVar, BoolEq)

TRUE = Const(True)
FALSE = Const(False)


# ---------------------------------------------------------------------------
# 스마트 생성자
# ---------------------------------------------------------------------------

def lt(lin: Lin) -> Formula:
    """lin < 0 (계수 최대공약수로 약분)"""
    if lin.is_const:
        return Const(lin.const < 0)
    g = lin.content()
    if g > 1:
        lin = Lin(tuple((k, v // g) for k, v in lin.coeffs), lin.const // g)
    return LtZero(lin)


def lt2(a: Lin, b: Lin) -> Formula:
    """a < b"""
    return lt(a - b)


def le2(a: Lin, b: Lin) -> Formula:
    """a <= b"""
    return lt((a - b).add_const(-1))


def eq(lin: Lin) -> Formula:
    """lin = 0 (약분, 첫 계수 양수로 정규화)"""
    if lin.is_const:
        return Const(lin.const == 0)
    g = lin.content()
    if lin.const % g != 0:
        return FALSE
    if g > 1:
        lin = Lin(tuple((k, v // g) for k, v in lin.coeffs), lin.const // g)
    if lin.coeffs[0][1] < 0:
        lin = -lin
    return EqZero(lin)


def eq2(a: Lin, b: Lin) -> Formula:
    return eq(a - b)


def dvd(d: int, lin: Lin, positive: bool = True) -> Formula:
    """d | lin (d >= 1, 계수와 상수를 d로 나눈 나머지로 축약)"""
    if d < 1:
        raise ValueError(f"divisor must be >= 1, got {d}")
    if d == 1:
        return Const(positive)
    lin = Lin.of({k: v % d for k, v in lin.coeffs}, lin.const % d)
    if lin.is_const:
        return Const((lin.const % d == 0) == positive)
    g = reduce(gcd, [abs(v) for _, v in lin.coeffs] + [lin.const, d])
    if g > 1:
        d //= g
        lin = Lin(tuple((k, v // g) for k, v in lin.coeffs), lin.const // g)
        if d == 1:
            return Const(positive)
    return Dvd(d, lin, positive)


def bool_var(name: str) -> Formula:
    return BoolVar(name)


def bool_eq(a: str, b: str) -> Formula:
    if a == b:
        return TRUE
    return BoolEq(*sorted((a, b)))


def not_(f: Formula) -> Formula:
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, Not):
        return f.arg
    if isinstance(f, Dvd):
        return Dvd(f.d, f.lin, not f.positive)
    return Not(f)


def _flatten(kind, args: Iterable[Formula], unit: bool):
    out = []
    seen = set()
    for a in args:
        if isinstance(a, kind):
            items = a.args
        else:
            items = (a,)
        for item in items:
            if isinstance(item, Const):
                if item.value == unit:
                    continue
                return Const(not unit)
            if item not in seen:
                seen.add(item)
                out.append(item)
    if not out:
        return Const(unit)
    if len(out) == 1:
        return out[0]
    return kind(tuple(out))


def and_(*args: Formula) -> Formula:
    return _flatten(And, args, True)


def or_(*args: Formula) -> Formula:
    return _flatten(Or, args, False)


def implies(a: Formula, b: Formula) -> Formula:
    return or_(not_(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return or_(and_(a, b), and_(not_(a), not_(b)))


def exists(vars_: Iterable[Tuple[str, str]], body: Formula) -> Formula:
    free = free_vars(body)
    kept = tuple(v for v in vars_ if v[0] in free)
    if not kept:
        return body
    return Exists(kept, body)


def forall(vars_: Iterable[Tuple[str, str]], body: Formula) -> Formula:
    free = free_vars(body)
    kept = tuple(v for v in vars_ if v[0] in free)
    if not kept:
        return body
    return Forall(kept, body)


# ---------------------------------------------------------------------------
# 질의와 변환
# ---------------------------------------------------------------------------

def free_vars(f: Formula) -> Dict[str, str]:
    """자유 변수 → 정렬(int/bool)"""
    out: Dict[str, str] = {}
    _collect_free(f, frozenset(), out)
    return out


def _collect_free(f: Formula, bound, out: Dict[str, str]):
    if isinstance(f, (LtZero, EqZero, Dvd)):
        for name in f.lin.vars:
            if name not in bound:
                out[name] = INT
    elif isinstance(f, BoolVar):
        if f.name not in bound:
            out[f.name] = BOOL
    elif isinstance(f, BoolEq):
        for name in (f.a, f.b):
            if name not in bound:
                out[name] = BOOL
    elif isinstance(f, Not):
        _collect_free(f.arg, bound, out)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _collect_free(a, bound, out)
    elif isinstance(f, (Exists, Forall)):
        _collect_free(f.body, bound | {n for n, _ in f.vars}, out)


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return False
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(a) for a in f.args)
    return True


def nnf(f: Formula) -> Formula:
    """
    부정 정규형 변환
    ¬(l<0) ⇒ −l−1<0, ¬(l=0) ⇒ l<0 ∨ −l<0, ¬d|l ⇒ d∤l
    """
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Const):
            return Const(not g.value)
        if isinstance(g, LtZero):
            return lt((-g.lin).add_const(-1))
        if isinstance(g, EqZero):
            return or_(lt(g.lin), lt(-g.lin))
        if isinstance(g, Dvd):
            return Dvd(g.d, g.lin, not g.positive)
        if isinstance(g, (BoolVar, BoolEq)):
            return f
        if isinstance(g, Not):
            return nnf(g.arg)
        if isinstance(g, And):
            return or_(*(nnf(not_(a)) for a in g.args))
        if isinstance(g, Or):
            return and_(*(nnf(not_(a)) for a in g.args))
        if isinstance(g, Exists):
            return Forall(g.vars, nnf(not_(g.body)))
        if isinstance(g, Forall):
            return Exists(g.vars, nnf(not_(g.body)))
    if isinstance(f, And):
        return and_(*(nnf(a) for a in f.args))
    if isinstance(f, Or):
        return or_(*(nnf(a) for a in f.args))
    if isinstance(f, Exists):
        return Exists(f.vars, nnf(f.body))
    if isinstance(f, Forall):
        return Forall(f.vars, nnf(f.body))
    return f


def substitute_int(f: Formula, name: str, value: Lin) -> Formula:
    """정수 변수 name을 선형식 value로 치환 (같은 이름을 묶는 한정자 아래는 건너뜀)"""
    if isinstance(f, LtZero):
        return lt(f.lin.substitute(name, value)) if f.lin.coeff(name) else f
    if isinstance(f, EqZero):
        return eq(f.lin.substitute(name, value)) if f.lin.coeff(name) else f
    if isinstance(f, Dvd):
        return dvd(f.d, f.lin.substitute(name, value), f.positive) if f.lin.coeff(name) else f
    if isinstance(f, Not):
        return not_(substitute_int(f.arg, name, value))
    if isinstance(f, And):
        return and_(*(substitute_int(a, name, value) for a in f.args))
    if isinstance(f, Or):
        return or_(*(substitute_int(a, name, value) for a in f.args))
    if isinstance(f, (Exists, Forall)):
        if any(n == name for n, _ in f.vars):
            return f
        if any(n in value.vars for n, _ in f.vars):
            raise ValueError(f"substitution for {name} would be captured")
        return type(f)(f.vars, substitute_int(f.body, name, value))
    return f


def substitute_bool(f: Formula, name: str, value: Union[bool, str]) -> Formula:
    """불리언 변수 name을 상수 또는 다른 불리언 변수로 치환"""
    if isinstance(f, BoolVar):
        if f.name != name:
            return f
        return Const(value) if isinstance(value, bool) else BoolVar(value)
    if isinstance(f, BoolEq):
        if name not in (f.a, f.b):
            return f
        other = f.b if f.a == name else f.a
        if other == name:
            return TRUE
        if isinstance(value, bool):
            return BoolVar(other) if value else Not(BoolVar(other))
        return bool_eq(value, other)
    if isinstance(f, Not):
        return not_(substitute_bool(f.arg, name, value))
    if isinstance(f, And):
        return and_(*(substitute_bool(a, name, value) for a in f.args))
    if isinstance(f, Or):
        return or_(*(substitute_bool(a, name, value) for a in f.args))
    if isinstance(f, (Exists, Forall)):
        if any(n == name for n, _ in f.vars):
            return f
        return type(f)(f.vars, substitute_bool(f.body, name, value))
    return f


def evaluate(f: Formula, model: Mapping[str, Union[int, bool]]) -> bool:
    """
    한정자 없는 공식의 진리값

    Args:
        f: 한정자 없는 공식
        model: 변수 → 값 (빠진 변수는 KeyError)

    Returns:
        진리값
    """
    if isinstance(f, Const):
        return f.value
    if isinstance(f, LtZero):
        return f.lin.evaluate(model) < 0
    if isinstance(f, EqZero):
        return f.lin.evaluate(model) == 0
    if isinstance(f, Dvd):
        return (f.lin.evaluate(model) % f.d == 0) == f.positive
    if isinstance(f, BoolVar):
        return bool(model[f.name])
    if isinstance(f, BoolEq):
        return bool(model[f.a]) == bool(model[f.b])
    if isinstance(f, Not):
        return not evaluate(f.arg, model)
    if isinstance(f, And):
        return all(evaluate(a, model) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, model) for a in f.args)
    raise ValueError("evaluate expects a quantifier-free formula")


def size(f: Formula) -> int:
    """노드 개수"""
    if isinstance(f, Not):
        return 1 + size(f.arg)
    if isinstance(f, (And, Or)):
        return 1 + sum(size(a) for a in f.args)
    if isinstance(f, (Exists, Forall)):
        return 1 + size(f.body)
    return 1


def render(f: Formula) -> str:
    """디버그용 텍스트"""
    if isinstance(f, Const):
        return 'true' if f.value else 'false'
    if isinstance(f, LtZero):
        return f"({f.lin} < 0)"
    if isinstance(f, EqZero):
        return f"({f.lin} = 0)"
    if isinstance(f, Dvd):
        return f"({f.d} {'|' if f.positive else '∤'} {f.lin})"
    if isinstance(f, BoolVar):
        return f.name
    if isinstance(f, BoolEq):
        return f"({f.a} <-> {f.b})"
    if isinstance(f, Not):
        return f"¬{render(f.arg)}"
    if isinstance(f, And):
        return '(' + ' ∧ '.join(render(a) for a in f.args) + ')'
    if isinstance(f, Or):
        return '(' + ' ∨ '.join(render(a) for a in f.args) + ')'
    names = ', '.join(n for n, _ in f.vars)
    q = '∃' if isinstance(f, Exists) else '∀'
    return f"{q}{names}. {render(f.body)}"
