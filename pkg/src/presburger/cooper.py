"""
Cooper 한정자 제거와 모델 탐색
"""
import logging
from functools import reduce
from typing import Dict, List, Optional, Tuple, Union

from src.presburger.formula import (
    BOOL, FALSE, TRUE, And, BoolEq, Const, Dvd, EqZero, Exists, Forall,
    Formula, Lin, LtZero, Not, Or, and_, dvd, eq, evaluate, free_vars, lcm, lt, nnf,
    not_, or_, substitute_bool, substitute_int,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_DNF = 64


class CooperEngine:
    """
    프레스버거 한정자 제거기

    Args:
        max_dnf: 합취 안의 논리합을 DNF로 펼칠 최대 항 수
    """

    def __init__(self, max_dnf: int = DEFAULT_MAX_DNF):
        self.max_dnf = max_dnf

    # ------------------------------------------------------------------
    # 한정자 제거
    # ------------------------------------------------------------------

    def eliminate(self, f: Formula) -> Formula:
        """
        모든 한정자를 아래에서부터 제거

        Args:
            f: 공식

        Returns:
            동치인 한정자 없는 공식
        """
        if isinstance(f, Not):
            return not_(self.eliminate(f.arg))
        if isinstance(f, And):
            return and_(*(self.eliminate(a) for a in f.args))
        if isinstance(f, Or):
            return or_(*(self.eliminate(a) for a in f.args))
        if isinstance(f, Exists):
            return self.exists_block(f.vars, self.eliminate(f.body))
        if isinstance(f, Forall):
            inner = self.exists_block(f.vars, nnf(not_(self.eliminate(f.body))))
            return nnf(not_(inner))
        return f

    def exists_block(self, vars_: Tuple[Tuple[str, str], ...], body: Formula) -> Formula:
        """한정자 없는 body에 대해 ∃vars. body 제거"""
        body = nnf(body)
        pending = dict(vars_)
        while pending:
            free = free_vars(body)
            for name in [n for n in pending if n not in free]:
                del pending[name]
            if not pending:
                break
            name = self._pick(pending, body)
            sort = pending.pop(name)
            body = self.exists_one(name, sort, body)
        return body

    def _pick(self, pending: Dict[str, str], body: Formula) -> str:
        bools = sorted(n for n, s in pending.items() if s == BOOL)
        if bools:
            return bools[0]
        conjuncts = body.args if isinstance(body, And) else (body,)
        units = set()
        for c in conjuncts:
            if isinstance(c, EqZero):
                units.update(n for n, v in c.lin.coeffs if abs(v) == 1)
        stats = {}
        for name in pending:
            stats[name] = (name not in units, *_coefficient_stats(body, name), name)
        return min(pending, key=lambda n: stats[n])

    def exists_one(self, x: str, sort: str, f: Formula) -> Formula:
        """부정 정규형 f에 대해 ∃x. f 제거"""
        if x not in free_vars(f):
            return f
        if isinstance(f, Or):
            return or_(*(self.exists_one(x, sort, d) for d in f.args))
        conjuncts = f.args if isinstance(f, And) else (f,)
        outside = [c for c in conjuncts if x not in free_vars(c)]
        inside = [c for c in conjuncts if x in free_vars(c)]
        core = and_(*inside)
        expanded = self._dnf(inside, x)
        if expanded is not None:
            result = or_(*(self._exists_conj(x, sort, d) for d in expanded))
        else:
            result = self._exists_conj(x, sort, core)
        return and_(*outside, result)

    def _dnf(self, inside: List[Formula], x: str) -> Optional[List[Formula]]:
        """x를 포함한 논리합이 있고 작으면 DNF 분배"""
        disjunctive = [c for c in inside if isinstance(c, Or)]
        if not disjunctive:
            return None
        total = 1
        for c in disjunctive:
            total *= len(c.args)
            if total > self.max_dnf:
                return None
        plain = [c for c in inside if not isinstance(c, Or)]
        branches = [plain]
        for c in disjunctive:
            branches = [b + [alt] for b in branches for alt in c.args]
        return [and_(*b) for b in branches]

    def _exists_conj(self, x: str, sort: str, f: Formula) -> Formula:
        if x not in free_vars(f):
            return f
        if isinstance(f, Or):
            return or_(*(self.exists_one(x, sort, d) for d in f.args))
        if isinstance(f, Const):
            return f
        conjuncts = f.args if isinstance(f, And) else (f,)
        if sort == BOOL:
            for c in conjuncts:
                if isinstance(c, BoolEq) and x in (c.a, c.b):
                    other = c.b if c.a == x else c.a
                    return nnf(substitute_bool(f, x, other))
            return or_(nnf(substitute_bool(f, x, True)), nnf(substitute_bool(f, x, False)))
        for c in conjuncts:
            if isinstance(c, EqZero) and abs(c.lin.coeff(x)) == 1:
                a = c.lin.coeff(x)
                value = c.lin.without(x).scale(-a)
                return nnf(substitute_int(f, x, value))
        return self.cooper(x, f)

    def cooper(self, x: str, f: Formula) -> Formula:
        """
        Cooper 단계: 부정 정규형 한정자 없는 f에 대해 ∃x. f

        Args:
            x: 제거할 정수 변수
            f: 부정 정규형 공식

        Returns:
            x가 없는 동치 공식
        """
        coeffs = _x_coefficients(f, x)
        ell = reduce(lcm, (abs(c) for c in coeffs), 1)
        f = _unit_normalize(f, x, ell)
        if ell > 1:
            f = and_(f, dvd(ell, Lin.var(x)))
        lowers: List[Lin] = []
        uppers: List[Lin] = []
        moduli: List[int] = []
        _bounds(f, x, lowers, uppers, moduli)
        delta = reduce(lcm, moduli, 1)
        use_lower = len(lowers) <= len(uppers)
        candidates = _unique(lowers if use_lower else uppers)
        projected = _project(f, x, minus_infinity=use_lower)
        disjuncts = []
        for j in range(1, delta + 1):
            offset = j if use_lower else -j
            disjuncts.append(nnf(substitute_int(projected, x, Lin.constant(offset))))
            for bound in candidates:
                disjuncts.append(nnf(substitute_int(f, x, bound.add_const(offset))))
                if disjuncts[-1] == TRUE:
                    return TRUE
        return or_(*disjuncts)

    # ------------------------------------------------------------------
    # 충족 가능성과 모델
    # ------------------------------------------------------------------

    def is_satisfiable(self, f: Formula) -> bool:
        qf = self.eliminate(f)
        closed = self.exists_block(tuple(free_vars(qf).items()), qf)
        if not isinstance(closed, Const):
            raise RuntimeError(f"elimination left a non-constant formula: {closed}")
        return closed.value

    def is_valid(self, f: Formula) -> bool:
        return not self.is_satisfiable(not_(f))

    def find_model(self, f: Formula, order: Optional[List[str]] = None) -> Optional[Dict[str, Union[int, bool]]]:
        """
        충족 모델 탐색 (변수를 하나씩 고정)

        Args:
            f: 공식 (한정자 허용)
            order: 변수 고정 순서 (None이면 불리언 먼저, 이름순)

        Returns:
            모든 자유 변수에 값을 준 모델 또는 None (충족 불가)
        """
        current = self.eliminate(f)
        sorts = free_vars(current)
        closed = self.exists_block(tuple(sorts.items()), current)
        if closed != TRUE:
            return None
        names = sorted(sorts, key=lambda n: (sorts[n] != BOOL, n))
        if order:
            names = [n for n in order if n in sorts] + [n for n in names if n not in order]
        model: Dict[str, Union[int, bool]] = {}
        for name in names:
            if name in model:
                continue
            others = tuple((n, s) for n, s in free_vars(current).items() if n != name)
            projection = self.exists_block(others, current)
            value = _scan(projection, name, sorts[name])
            if value is None:
                raise RuntimeError(f"no value found for {name} in a satisfiable formula")
            model[name] = value
            if sorts[name] == BOOL:
                current = nnf(substitute_bool(current, name, value))
            else:
                current = substitute_int(current, name, Lin.constant(value))
        # 원래 공식의 자유 변수 중 제거 과정에서 사라진 것
        for name, sort in free_vars(f).items():
            model.setdefault(name, False if sort == BOOL else 0)
        return model


def _coefficient_stats(f: Formula, x: str) -> Tuple[int, int]:
    coeffs = _x_coefficients(f, x)
    return (max((abs(c) for c in coeffs), default=0), len(coeffs))


def _x_coefficients(f: Formula, x: str) -> List[int]:
    out: List[int] = []

    def walk(g):
        if isinstance(g, (LtZero, EqZero, Dvd)):
            c = g.lin.coeff(x)
            if c:
                out.append(c)
        elif isinstance(g, Not):
            walk(g.arg)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)

    walk(f)
    return out


def _unit_normalize(f: Formula, x: str, ell: int) -> Formula:
    """x의 계수를 ±1로 맞춤 (x는 이후 ell·x를 뜻함)"""
    if isinstance(f, (LtZero, EqZero, Dvd)):
        a = f.lin.coeff(x)
        if a == 0:
            return f
        m = ell // abs(a)
        rest = f.lin.without(x).scale(m)
        sign = 1 if a > 0 else -1
        lin = rest + Lin.var(x, sign)
        if isinstance(f, LtZero):
            return lt(lin)
        if isinstance(f, EqZero):
            return eq(lin)
        if sign < 0:
            lin = -lin
        return dvd(f.d * m, lin, f.positive)
    if isinstance(f, Not):
        return not_(_unit_normalize(f.arg, x, ell))
    if isinstance(f, And):
        return and_(*(_unit_normalize(a, x, ell) for a in f.args))
    if isinstance(f, Or):
        return or_(*(_unit_normalize(a, x, ell) for a in f.args))
    return f


def _bounds(f: Formula, x: str, lowers: List[Lin], uppers: List[Lin], moduli: List[int]):
    """x > b 하한 후보 b와 x < a 상한 후보 a, 나눗셈 법 수집"""
    if isinstance(f, LtZero):
        a = f.lin.coeff(x)
        t = f.lin.without(x)
        if a == 1:
            # x + t < 0  ⇒  x < -t
            uppers.append(-t)
        elif a == -1:
            # -x + t < 0  ⇒  x > t
            lowers.append(t)
    elif isinstance(f, EqZero):
        a = f.lin.coeff(x)
        t = f.lin.without(x)
        if a:
            value = -t if a == 1 else t
            lowers.append(value.add_const(-1))
            uppers.append(value.add_const(1))
    elif isinstance(f, Dvd):
        if f.lin.coeff(x):
            moduli.append(f.d)
    elif isinstance(f, Not):
        _bounds(f.arg, x, lowers, uppers, moduli)
    elif isinstance(f, (And, Or)):
        for a in f.args:
            _bounds(a, x, lowers, uppers, moduli)


def _project(f: Formula, x: str, minus_infinity: bool) -> Formula:
    """x → −∞ (또는 +∞) 극한 공식"""
    if isinstance(f, LtZero):
        a = f.lin.coeff(x)
        if a == 0:
            return f
        upper = a == 1
        return Const(upper if minus_infinity else not upper)
    if isinstance(f, EqZero):
        return FALSE if f.lin.coeff(x) else f
    if isinstance(f, And):
        return and_(*(_project(a, x, minus_infinity) for a in f.args))
    if isinstance(f, Or):
        return or_(*(_project(a, x, minus_infinity) for a in f.args))
    return f


def _unique(items: List[Lin]) -> List[Lin]:
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def _scan(f: Formula, name: str, sort: str) -> Optional[Union[int, bool]]:
    """단일 변수 공식의 해를 0, 1, −1, 2, −2, ... 순서로 탐색"""
    if sort == BOOL:
        for value in (False, True):
            if evaluate(f, {name: value}):
                return value
        return None
    bound = 1
    moduli = [1]

    def walk(g):
        nonlocal bound
        if isinstance(g, (LtZero, EqZero, Dvd)):
            bound = max(bound, abs(g.lin.const) + 1)
            if isinstance(g, Dvd):
                moduli.append(g.d)
        elif isinstance(g, Not):
            walk(g.arg)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)

    walk(f)
    limit = bound + reduce(lcm, moduli, 1) + 1
    for magnitude in range(limit + 1):
        for value in ((0,) if magnitude == 0 else (magnitude, -magnitude)):
            if evaluate(f, {name: value}):
                return value
    return None


_DEFAULT = CooperEngine()


def eliminate(f: Formula, max_dnf: int = DEFAULT_MAX_DNF) -> Formula:
    """기본 엔진으로 한정자 제거"""
    engine = _DEFAULT if max_dnf == DEFAULT_MAX_DNF else CooperEngine(max_dnf)
    return engine.eliminate(f)


def find_model(f: Formula, max_dnf: int = DEFAULT_MAX_DNF) -> Optional[Dict[str, Union[int, bool]]]:
    """기본 엔진으로 모델 탐색"""
    engine = _DEFAULT if max_dnf == DEFAULT_MAX_DNF else CooperEngine(max_dnf)
    return engine.find_model(f)


def is_valid(f: Formula, max_dnf: int = DEFAULT_MAX_DNF) -> bool:
    engine = _DEFAULT if max_dnf == DEFAULT_MAX_DNF else CooperEngine(max_dnf)
    return engine.is_valid(f)
